"""Tests para validadores del cliente."""

from __future__ import annotations

import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from cliente.backend.validators import (
    parse_index_range,
    validate_fraction,
    validate_omega,
    validate_output_path,
    validate_point_spec,
    validate_positive,
    validate_real_spec,
)
from shared.errors import GrammarError, ValidationError


class IndexRangeTests(unittest.TestCase):
    """Valida la sintaxis de rangos de indices."""

    def test_ranges(self) -> None:
        """Debe aceptar a..b, n y filtros de paridad."""
        self.assertEqual(parse_index_range("3..6"), [3, 4, 5, 6])
        self.assertEqual(parse_index_range("7"), [7])
        self.assertEqual(parse_index_range(["odd", "9..15"]), [9, 11, 13, 15])
        self.assertEqual(parse_index_range("even 1..6"), [2, 4, 6])

    def test_invalid_ranges(self) -> None:
        """Debe rechazar rangos vacios o mal escritos."""
        for text in ("6..3", "a..b", "odd 2..2", ""):
            with self.subTest(text=text):
                with self.assertRaises(ValidationError):
                    parse_index_range(text)


class ValueValidatorTests(unittest.TestCase):
    """Valida reales, racionales, omega y enteros positivos."""

    def test_real_and_point_specs(self) -> None:
        """Debe validar la gramatica sin construir los valores."""
        self.assertEqual(validate_real_spec(" surd:(-1+1*sqrt(5))/2 "), "surd:(-1+1*sqrt(5))/2")
        self.assertEqual(validate_point_spec("1,2"), "1,2")
        with self.assertRaises(GrammarError):
            validate_real_spec("pi")
        with self.assertRaises(GrammarError):
            validate_point_spec("1")

    def test_fraction_bounds(self) -> None:
        """Debe aplicar los limites inclusivos."""
        self.assertIsNone(validate_fraction(None, "--mu"))
        self.assertEqual(validate_fraction("1/4", "--mu", Fraction(0), Fraction(1)), "1/4")
        with self.assertRaises(ValidationError):
            validate_fraction("3/2", "--mu", Fraction(0), Fraction(1))
        with self.assertRaises(ValidationError):
            validate_fraction("uno", "--mu")

    def test_omega(self) -> None:
        """Debe aceptar omega >= 1 o inf."""
        self.assertEqual(validate_omega("inf", "--omega"), "inf")
        self.assertEqual(validate_omega("5/2", "--omega"), "5/2")
        with self.assertRaises(ValidationError):
            validate_omega("1/2", "--omega")

    def test_positive(self) -> None:
        """Debe aceptar None y enteros >= 1."""
        self.assertIsNone(validate_positive(None, "--T"))
        self.assertEqual(validate_positive(3, "--T"), 3)
        with self.assertRaises(ValidationError):
            validate_positive(0, "--T")


class OutputPathTests(unittest.TestCase):
    """Valida rutas de salida."""

    def test_creates_missing_parent(self) -> None:
        """Debe crear el directorio padre cuando no existe."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "nuevo" / "salida.csv"

            validate_output_path(path)

            self.assertTrue(path.parent.is_dir())

    def test_directory_is_rejected(self) -> None:
        """Debe rechazar una ruta que es directorio."""
        with tempfile.TemporaryDirectory() as temp_dir:
            with self.assertRaises(ValidationError):
                validate_output_path(Path(temp_dir))

    def test_parent_file_is_rejected(self) -> None:
        """Debe rechazar un padre que es archivo."""
        with tempfile.TemporaryDirectory() as temp_dir:
            parent = Path(temp_dir) / "archivo.txt"
            parent.write_text("x", encoding="utf-8")
            with self.assertRaises(ValidationError):
                validate_output_path(parent / "salida.csv")


if __name__ == "__main__":
    unittest.main()
