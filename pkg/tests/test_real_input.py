"""Tests para la gramatica de numeros reales."""

from __future__ import annotations

import unittest
from fractions import Fraction

from shared.errors import GrammarError, ValidationError
from shared.real_input import (
    CFDigits,
    DecimalInterval,
    DigitRule,
    QuadraticSurd,
    Rational,
    format_real,
    parse_point,
    parse_real,
    split_top_level,
)


class ParseRealTests(unittest.TestCase):
    """Valida cada variante de la gramatica de reales."""

    def test_rational_is_reduced(self) -> None:
        """Debe reducir p/q y conservar el signo en el numerador."""
        self.assertEqual(parse_real("rat:6/4"), Rational(3, 2))
        self.assertEqual(parse_real("rat:-10/4").numerator, -5)

    def test_rational_with_zero_denominator_is_rejected(self) -> None:
        """Debe rechazar un denominador nulo."""
        with self.assertRaises(ValidationError):
            parse_real("rat:5/0")

    def test_surd_is_canonicalized(self) -> None:
        """Debe normalizar el signo de c y dividir por el mcd."""
        surd = parse_real("surd:(2+4*sqrt(5))/-6")

        self.assertEqual(surd, QuadraticSurd(-1, -2, 5, 3))

    def test_surd_requires_squarefree_radicand(self) -> None:
        """Debe rechazar radicandos con factores cuadrados."""
        with self.assertRaises(ValidationError):
            parse_real("surd:(1+1*sqrt(8))/2")

    def test_periodic_continued_fraction(self) -> None:
        """Debe separar prefijo y periodo."""
        value = parse_real("cf:[0;1, 2]repeat:[3]")

        self.assertEqual(value, CFDigits(0, (1, 2), (3,)))
        self.assertFalse(value.is_finite)

    def test_rule_continued_fractions(self) -> None:
        """Debe aceptar reglas multiplicativas, de potencia y de Euler."""
        self.assertEqual(parse_real("cf:[1;2]rule:mul(2)").rule, DigitRule("mul", 2))
        self.assertEqual(parse_real("cf:[1;2]rule:pow(3)").rule, DigitRule("pow", 3))
        self.assertEqual(parse_real("cf:[2]rule:euler").rule, DigitRule("euler"))

    def test_euler_rule_digits(self) -> None:
        """Debe producir los cocientes 1, 2, 1, 1, 4, 1 de e."""
        rule = DigitRule("euler")

        digits = [rule.next_digit(index, 0) for index in range(1, 7)]

        self.assertEqual(digits, [1, 2, 1, 1, 4, 1])

    def test_partial_quotients_must_be_positive(self) -> None:
        """Debe rechazar cocientes parciales nulos despues de a0."""
        with self.assertRaises(ValidationError):
            parse_real("cf:[0;0,1]")

    def test_decimal_interval(self) -> None:
        """Debe leer punto medio y radio exactos."""
        value = parse_real("dec:3.14~1/100")

        self.assertEqual(value, DecimalInterval("3.14", Fraction(1, 100)))
        self.assertEqual(value.midpoint_value, Fraction(157, 50))

    def test_shorthand_numbers(self) -> None:
        """Debe aceptar enteros, p/q y decimales simples."""
        self.assertEqual(parse_real("-3"), Rational(-3))
        self.assertEqual(parse_real("1/2"), Rational(1, 2))
        self.assertEqual(parse_real("0.25"), Rational(1, 4))

    def test_unknown_format_raises_grammar_error(self) -> None:
        """Debe reportar GrammarError ante texto no reconocido."""
        for text in ("", "pi", "surd:(1+sqrt(5))/2", "cf:[1;a]"):
            with self.subTest(text=text):
                with self.assertRaises(GrammarError):
                    parse_real(text)

    def test_format_real_is_canonical(self) -> None:
        """Debe reproducir el texto canonico de cada variante."""
        for text in (
            "rat:3/2",
            "surd:(-1+1*sqrt(5))/2",
            "cf:[0;1,2]repeat:[3]",
            "cf:[1;2]rule:mul(2)",
            "dec:3.14~1/100",
        ):
            with self.subTest(text=text):
                self.assertEqual(format_real(parse_real(text)), text)


class ParsePointTests(unittest.TestCase):
    """Valida la lectura de puntos del plano."""

    def test_commas_inside_brackets_do_not_split(self) -> None:
        """Debe dividir solo por la coma de nivel superior."""
        self.assertEqual(
            split_top_level("cf:[0;1,2]repeat:[3],1/2"),
            ["cf:[0;1,2]repeat:[3]", "1/2"],
        )

    def test_point_with_mixed_coordinates(self) -> None:
        """Debe parsear ambas coordenadas con la gramatica completa."""
        first, second = parse_point("surd:(-1+1*sqrt(2))/1,1")

        self.assertEqual(first, QuadraticSurd(-1, 1, 2, 1))
        self.assertEqual(second, Rational(1))

    def test_point_requires_two_coordinates(self) -> None:
        """Debe rechazar puntos con una o tres coordenadas."""
        for text in ("1", "1,2,3"):
            with self.subTest(text=text):
                with self.assertRaises(GrammarError):
                    parse_point(text)


if __name__ == "__main__":
    unittest.main()
