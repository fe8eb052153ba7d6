"""Tests para la aritmetica exacta de surds."""

from __future__ import annotations

import unittest
from fractions import Fraction

from servidor.domain.surds import SurdSum, squarefree_decomposition
from shared.errors import DivisionByZeroError


def sqrt(value: int) -> SurdSum:
    return SurdSum.sqrt(value)


class SurdSumTests(unittest.TestCase):
    """Valida forma canonica, aritmetica y signo exacto."""

    def test_radicands_are_squarefree(self) -> None:
        """Debe extraer los factores cuadrados del radicando."""
        self.assertEqual(squarefree_decomposition(72), (6, 2))
        self.assertEqual(sqrt(8), sqrt(2) * 2)
        self.assertEqual(sqrt(Fraction(1, 2)), sqrt(2) / 2)

    def test_products_collapse_to_rationals(self) -> None:
        """Debe reconocer productos racionales."""
        product = sqrt(6) * sqrt(3) * sqrt(2)

        self.assertTrue(product.is_rational)
        self.assertEqual(product, 6)

    def test_golden_ratio_identity(self) -> None:
        """Debe cumplir phi^2 = phi + 1 exactamente."""
        phi = (sqrt(5) + 1) / 2

        self.assertEqual(phi * phi, phi + 1)
        self.assertEqual(phi.inverse(), phi - 1)

    def test_inverse_in_multiquadratic_field(self) -> None:
        """Debe racionalizar denominadores con varios radicales."""
        value = sqrt(2) + sqrt(3)

        self.assertEqual(value.inverse(), sqrt(3) - sqrt(2))
        self.assertEqual((value + sqrt(5)) * (value + sqrt(5)).inverse(), 1)

    def test_inverse_of_zero_raises(self) -> None:
        """Debe rechazar la inversion de cero."""
        with self.assertRaises(DivisionByZeroError):
            SurdSum().inverse()

    def test_sign_of_close_values(self) -> None:
        """Debe decidir signos de diferencias muy pequenas."""
        self.assertEqual((sqrt(2) - Fraction(99, 70)).sign(), -1)
        self.assertEqual((sqrt(2) - Fraction(140, 99)).sign(), 1)
        self.assertEqual((sqrt(2) + sqrt(3) - sqrt(10)).sign(), -1)
        self.assertEqual((sqrt(2) * sqrt(2) - 2).sign(), 0)

    def test_floor_and_enclosure(self) -> None:
        """Debe acotar el valor en un intervalo angosto y calcular la parte entera."""
        lower, upper = sqrt(5).enclosure(40)

        self.assertLessEqual(lower * lower, 5)
        self.assertGreaterEqual(upper * upper, 5)
        self.assertLessEqual(upper - lower, Fraction(1, 2**40))
        self.assertEqual(sqrt(5).floor(), 2)
        self.assertEqual((-sqrt(5)).floor(), -3)

    def test_rational_part_and_string(self) -> None:
        """Debe exponer la parte racional y un texto legible."""
        value = sqrt(5) * Fraction(-1, 2) + Fraction(1, 2)

        self.assertEqual(value.rational_part, Fraction(1, 2))
        self.assertEqual(str(value), "1/2 - 1/2*sqrt(5)")

    def test_negative_square_root_is_rejected(self) -> None:
        """Debe rechazar raices de negativos."""
        with self.assertRaises(ValueError):
            sqrt(-2)


if __name__ == "__main__":
    unittest.main()
