"""Tests para la fachada OrbitService."""

from __future__ import annotations

import unittest
from fractions import Fraction

from servidor.services import analysis, constructions
from servidor.services.oracle import enumerate_norm_bounded
from servidor.services.orbit_service import (
    STATUS_K_TOO_SMALL,
    STATUS_OK,
    OrbitService,
)
from shared.errors import CapExceededError, StreamEmptyError, ValidationError

GOLDEN = "surd:(-1+1*sqrt(5))/2"
SILVER = "surd:(-1+1*sqrt(2))/1"


class OrbitServiceTests(unittest.TestCase):
    """Valida despacho por metodo, limites y estados por indice."""

    def setUp(self) -> None:
        self.service = OrbitService(oracle_cap=200)
        self.x = OrbitService.build_point(GOLDEN, "1")

    def test_convergents(self) -> None:
        """Debe certificar count + 1 convergentes."""
        table, rows = self.service.convergents(self.x, 8)

        self.assertEqual(len(rows), 9)
        self.assertEqual(rows[-1].q, 34)
        self.assertIs(table.value, self.x.x1)

    def test_convergents_require_positive_count(self) -> None:
        """Debe rechazar count < 1."""
        with self.assertRaises(ValidationError):
            self.service.convergents(self.x, 0)

    def test_origin_method(self) -> None:
        """Debe producir un resultado ok por cada k."""
        y = OrbitService.build_target("0,0")

        outcomes = self.service.approximate(self.x, y, constructions.METHOD_ORIGIN, k_values=[1, 2, 3])

        self.assertEqual([outcome.index for outcome in outcomes], [1, 2, 3])
        self.assertTrue(all(outcome.status == STATUS_OK for outcome in outcomes))

    def test_origin_method_requires_zero_target(self) -> None:
        """Debe exigir y = 0 para el metodo origin."""
        y = OrbitService.build_target("1,2")
        with self.assertRaises(ValidationError):
            self.service.approximate(self.x, y, constructions.METHOD_ORIGIN, k_values=[1])

    def test_rational_method_keeps_attempts(self) -> None:
        """Debe conservar el intento cuando k es demasiado pequeno."""
        y = OrbitService.build_target("1,2")

        outcomes = self.service.approximate(self.x, y, constructions.METHOD_RATIONAL, k_values=range(1, 13))

        self.assertEqual(len(outcomes), 12)
        for outcome in outcomes:
            self.assertIn(outcome.status, (STATUS_OK, STATUS_K_TOO_SMALL))
            self.assertIsNotNone(outcome.result)

    def test_small_omega_iterates_j0(self) -> None:
        """Debe indexar los resultados por j0."""
        y = OrbitService.build_target(f"{SILVER},1")

        outcomes = self.service.approximate(self.x, y, constructions.METHOD_SMALL_OMEGA, j0_values=[3, 4])

        self.assertEqual([outcome.index for outcome in outcomes], [3, 4])
        self.assertTrue(all(outcome.status == STATUS_OK for outcome in outcomes))

    def test_large_omega_requires_omega(self) -> None:
        """Debe exigir omega y reportar rangos sin indices."""
        y = OrbitService.build_target(f"{SILVER},1")
        with self.assertRaises(ValidationError):
            self.service.approximate(self.x, y, constructions.METHOD_LARGE_OMEGA, k_values=[5])
        with self.assertRaises(StreamEmptyError):
            self.service.approximate(
                self.x, y, constructions.METHOD_LARGE_OMEGA, k_values=range(1, 10), omega=Fraction(3)
            )

    def test_uniform_method_marks_small_k(self) -> None:
        """Debe marcar k-too-small cuando no existe j."""
        y = OrbitService.build_target(f"{SILVER},1")

        outcomes = self.service.approximate(self.x, y, constructions.METHOD_UNIFORM, k_values=[1, 10])

        self.assertEqual(outcomes[0].status, STATUS_K_TOO_SMALL)
        self.assertIsNone(outcomes[0].result)
        self.assertEqual(outcomes[1].status, STATUS_OK)

    def test_unknown_method(self) -> None:
        """Debe rechazar metodos desconocidos."""
        y = OrbitService.build_target("1,2")
        with self.assertRaises(ValidationError):
            self.service.approximate(self.x, y, "magic", k_values=[1])

    def test_exponents_with_theory(self) -> None:
        """Debe adjuntar valores teoricos y cotas para pendiente racional."""
        y = OrbitService.build_target("1,2")

        sequence, estimate = self.service.exponents(self.x, y, 128, omega_xi=Fraction(1), window_start=2)

        self.assertEqual(sequence.source, analysis.SOURCE_ORACLE)
        self.assertEqual(estimate.theory.kind, analysis.KIND_RATIONAL)
        self.assertEqual(estimate.upper_caps, (Fraction(1, 2), Fraction(1, 2)))

    def test_exponents_respect_cap(self) -> None:
        """Debe rechazar T por encima del limite del oraculo."""
        y = OrbitService.build_target("1,2")
        with self.assertRaises(CapExceededError):
            self.service.exponents(self.x, y, 500)

    def test_exponents_from_constructions(self) -> None:
        """Debe construir la escalera con candidatos del metodo origin."""
        y = OrbitService.build_target("0,0")

        sequence, estimate = self.service.exponents(
            self.x, y, 10_000, source=analysis.SOURCE_CONSTRUCTIONS, omega_xi=Fraction(1)
        )

        self.assertEqual(sequence.source, analysis.SOURCE_CONSTRUCTIONS)
        self.assertEqual((estimate.theory.mu, estimate.theory.mu_hat), (Fraction(1), Fraction(1)))
        self.assertIsNone(estimate.upper_caps)

    def test_enumerate_with_partitions(self) -> None:
        """Debe unir particiones en el orden canonico."""
        merged = self.service.enumerate(4, partitions=3)

        self.assertEqual(merged, list(enumerate_norm_bounded(4)))
        with self.assertRaises(CapExceededError):
            self.service.enumerate(201)
        with self.assertRaises(ValidationError):
            self.service.enumerate(4, partitions=0)

    def test_invalid_cap(self) -> None:
        """Debe rechazar limites de oraculo no positivos."""
        with self.assertRaises(ValidationError):
            OrbitService(oracle_cap=0)


if __name__ == "__main__":
    unittest.main()
