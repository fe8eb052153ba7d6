"""Tests para la CLI y el punto de entrada."""

from __future__ import annotations

import contextlib
import io
import json
import unittest

from cliente.frontend.cli import apply_runtime_flags, config_from_args, parse_args
from cliente.main import main
from parametros import EXIT_INPUT, EXIT_OK
from shared.errors import ValidationError


class CliParsingTests(unittest.TestCase):
    """Valida la traduccion de argumentos a RunConfig."""

    def test_approx_ranges(self) -> None:
        """Debe expandir rangos de k con filtros de paridad."""
        args = parse_args(["approx", "--method", "signed", "--y", "1,2", "--k", "odd", "9..15", "--mu", "1/3"])
        config = config_from_args(args)

        self.assertEqual(config.method, "signed")
        self.assertEqual(config.k_values, [9, 11, 13, 15])
        self.assertEqual(config.j0_values, [3, 4, 5, 6, 7, 8])
        self.assertEqual((config.y, config.mu), ("1,2", "1/3"))

    def test_approx_default_k_range(self) -> None:
        """Debe usar k = 1..10 por defecto."""
        config = config_from_args(parse_args(["approx", "--method", "origin"]))

        self.assertEqual(config.k_values, list(range(1, 11)))

    def test_verify_arguments(self) -> None:
        """Debe copiar check, k, T, mu y j."""
        args = parse_args(
            ["--format", "json", "verify", "lemma7", "--y", "1,2", "--k", "6", "--T", "136", "--mu", "1/4", "--j", "1"]
        )
        config = config_from_args(args)

        self.assertEqual(config.output_format, "json")
        self.assertEqual((config.check, config.k, config.bound, config.mu, config.j), ("lemma7", 6, 136, "1/4", 1))

    def test_exponents_and_enumerate(self) -> None:
        """Debe trasladar T y parametros propios de cada subcomando."""
        exponents = config_from_args(
            parse_args(["exponents", "--y", "1,2", "--T", "64", "--ratio", "3/2", "--omega-xi", "1"])
        )
        self.assertEqual((exponents.t_max, exponents.ratio, exponents.omega_xi), (64, "3/2", "1"))
        self.assertEqual(exponents.source, "oracle")

        enumerate_config = config_from_args(parse_args(["enumerate", "--T", "5", "--partitions", "3"]))
        self.assertEqual((enumerate_config.t_max, enumerate_config.partitions), (5, 3))

    def test_invalid_caps(self) -> None:
        """Debe rechazar limites no positivos."""
        for flag in ("--oracle-cap", "--precision-cap"):
            with self.subTest(flag=flag):
                args = parse_args([flag, "0", "enumerate", "--T", "1"])
                with self.assertRaises(ValidationError):
                    apply_runtime_flags(args)


class MainTests(unittest.TestCase):
    """Valida el flujo completo desde argv hasta el codigo de salida."""

    def test_enumerate_identity_ball(self) -> None:
        """Debe listar las 20 matrices de norma 1 en JSON."""
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            code = main(["--format", "json", "enumerate", "--T", "1"])

        self.assertEqual(code, EXIT_OK)
        payload = json.loads(stdout.getvalue())
        self.assertEqual(payload["summary"]["count"], "20")
        self.assertTrue(all(row["norm"] == "1" for row in payload["rows"]))

    def test_invalid_cap_exit_code(self) -> None:
        """Debe salir con 2 ante un limite del oraculo invalido."""
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr):
            code = main(["--oracle-cap", "0", "enumerate", "--T", "1"])

        self.assertEqual(code, EXIT_INPUT)
        self.assertTrue(stderr.getvalue().startswith("Validation:"))

    def test_cap_exceeded_exit_code(self) -> None:
        """Debe salir con 2 cuando T supera el limite del oraculo."""
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr):
            code = main(["--oracle-cap", "3", "enumerate", "--T", "4"])

        self.assertEqual(code, EXIT_INPUT)
        self.assertTrue(stderr.getvalue().startswith("CapExceeded:"))

    def test_invalid_range_exit_code(self) -> None:
        """Debe salir con 2 ante un rango de indices vacio."""
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr):
            code = main(["approx", "--method", "origin", "--k", "5..2"])

        self.assertEqual(code, EXIT_INPUT)


if __name__ == "__main__":
    unittest.main()
