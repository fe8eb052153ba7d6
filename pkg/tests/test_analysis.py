"""Tests para escaleras, exponentes y verificaciones exhaustivas."""

from __future__ import annotations

import math
import unittest
from fractions import Fraction

from servidor.domain.real_numbers import compare
from servidor.domain.sl2 import UnimodularMatrix
from servidor.services import analysis, constructions
from servidor.services.oracle import count_norm_bounded, exhaustive_scan
from servidor.services.orbit_service import OrbitService
from shared.errors import (
    CapExceededError,
    InsufficientDataError,
    PreconditionFailedError,
    ValidationError,
)

GOLDEN = "surd:(-1+1*sqrt(5))/2"


class GridTests(unittest.TestCase):
    """Valida la grilla geometrica de T."""

    def test_default_ratio(self) -> None:
        """Debe duplicar y cerrar en T maximo."""
        self.assertEqual(analysis.geometric_grid(10), [1, 2, 4, 8, 10])
        self.assertEqual(analysis.geometric_grid(1), [1])

    def test_fractional_ratio_always_advances(self) -> None:
        """Debe avanzar al menos una unidad por paso."""
        self.assertEqual(analysis.geometric_grid(10, Fraction(3, 2)), [1, 2, 3, 4, 6, 9, 10])

    def test_invalid_arguments(self) -> None:
        """Debe rechazar razones <= 1 y T < 1."""
        with self.assertRaises(ValidationError):
            analysis.geometric_grid(10, 1)
        with self.assertRaises(ValidationError):
            analysis.geometric_grid(0)


class TheoryTests(unittest.TestCase):
    """Valida los exponentes teoricos."""

    def test_rational_upper_bounds(self) -> None:
        """Debe dar (omega/(omega+1), 1/(omega+1))."""
        self.assertEqual(analysis.upper_bound_exponents_rational(Fraction(1)), (Fraction(1, 2), Fraction(1, 2)))
        self.assertEqual(analysis.upper_bound_exponents_rational(Fraction(2)), (Fraction(2, 3), Fraction(1, 3)))
        self.assertEqual(analysis.upper_bound_exponents_rational(math.inf), (Fraction(1), Fraction(0)))

    def test_theory_by_kind(self) -> None:
        """Debe distinguir origen, pendiente racional e irracional."""
        origin = analysis.theory_exponents(analysis.KIND_ORIGIN, Fraction(2))
        irrational = analysis.theory_exponents(analysis.KIND_IRRATIONAL, Fraction(1), Fraction(1))

        self.assertEqual((origin.mu, origin.mu_hat), (Fraction(1), Fraction(1, 2)))
        self.assertEqual((irrational.mu, irrational.mu_hat), (Fraction(1, 3), Fraction(1, 3)))
        self.assertTrue(irrational.mu_is_lower_bound)
        self.assertEqual(
            analysis.theory_exponents(analysis.KIND_IRRATIONAL, Fraction(1), math.inf).mu_hat,
            Fraction(1, 4),
        )

    def test_invalid_theory_inputs(self) -> None:
        """Debe rechazar omega < 1 y omega(y) ausente para pendiente irracional."""
        with self.assertRaises(ValidationError):
            analysis.theory_exponents(analysis.KIND_RATIONAL, Fraction(1, 2))
        with self.assertRaises(ValidationError):
            analysis.theory_exponents(analysis.KIND_IRRATIONAL, Fraction(1))


class StaircaseTests(unittest.TestCase):
    """Valida la escalera D(T) y los registros."""

    def setUp(self) -> None:
        self.x = OrbitService.build_point(GOLDEN, "1")
        self.y = OrbitService.build_target("1,2")

    def test_oracle_staircase_is_monotone_and_exact(self) -> None:
        """Debe ser no creciente y coincidir con el minimo exhaustivo."""
        sequence = analysis.staircase(self.x, self.y, analysis.geometric_grid(32))

        distances = [point.distance for point in sequence.staircase]
        for previous, current in zip(distances, distances[1:]):
            self.assertLessEqual(compare(current, previous), 0)
        for point in sequence.staircase[:4]:
            full = exhaustive_scan(self.x, self.y, point.bound)
            self.assertEqual(compare(point.distance, full.min_distance), 0)

    def test_records_improve_strictly(self) -> None:
        """Debe listar registros con norma creciente y distancia estrictamente menor."""
        sequence = analysis.staircase(self.x, self.y, analysis.geometric_grid(32))
        records = sequence.records

        self.assertGreaterEqual(len(records), 2)
        for previous, current in zip(records, records[1:]):
            self.assertLess(previous.norm, current.norm)
            self.assertLess(compare(current.distance, previous.distance), 0)
        for record in records:
            if record.norm <= 8:
                full = exhaustive_scan(self.x, self.y, record.norm)
                self.assertEqual(compare(record.distance, full.min_distance), 0)

    def test_oracle_cap(self) -> None:
        """Debe rechazar grillas por encima del limite del oraculo."""
        with self.assertRaises(CapExceededError):
            analysis.staircase(self.x, self.y, [1, 2, 50], cap=10)

    def test_construction_staircase_envelope(self) -> None:
        """Debe tomar el mejor candidato con norma <= T."""
        origin = OrbitService.build_target("0,0")
        table = constructions.slope_table(self.x)
        candidates = [constructions.approx_origin(self.x, k, table) for k in range(1, 9)]

        sequence = analysis.staircase(
            self.x, origin, [1, 5, 40], analysis.SOURCE_CONSTRUCTIONS, candidates
        )

        self.assertEqual([point.bound for point in sequence.staircase], [1, 5, 40])
        self.assertEqual(sequence.staircase[1].minimizer, table.matrix(4).matrix)
        self.assertEqual(sequence.staircase[2].minimizer, table.matrix(8).matrix)

    def test_construction_source_needs_candidates(self) -> None:
        """Debe exigir candidatos para la fuente de construcciones."""
        with self.assertRaises(ValidationError):
            analysis.staircase(self.x, self.y, [1, 2], analysis.SOURCE_CONSTRUCTIONS)

    def test_insufficient_data(self) -> None:
        """Debe reportar datos insuficientes con muy pocos registros."""
        sequence = analysis.staircase(self.x, self.y, [1, 2])

        with self.assertRaises(InsufficientDataError):
            analysis.estimate_exponents(sequence)

    def test_origin_exponents_near_one(self) -> None:
        """Debe estimar mu cercano a 1 para el origen con la razon aurea."""
        origin = OrbitService.build_target("0,0")
        sequence = analysis.staircase(self.x, origin, analysis.geometric_grid(200))

        estimate = analysis.estimate_exponents(sequence)

        self.assertGreaterEqual(estimate.records, analysis.MIN_WINDOW_RECORDS)
        self.assertLessEqual(estimate.mu_hat, estimate.mu)
        self.assertGreater(estimate.mu, 0.8)


class VerificationTests(unittest.TestCase):
    """Valida las verificaciones exhaustivas de cotas inferiores."""

    def setUp(self) -> None:
        self.x = OrbitService.build_point(GOLDEN, "1")
        self.y = OrbitService.build_target("1,2")

    def test_origin_lower_bound(self) -> None:
        """Debe recorrer |gamma| <= q_(k+1)/2 sin violaciones."""
        for k, bound in ((4, 4), (6, 10)):
            with self.subTest(k=k):
                certificate = analysis.verify_lemma1(self.x, k)
                self.assertTrue(certificate.passed)
                self.assertEqual(certificate.bound, bound)
                self.assertEqual(certificate.examined, count_norm_bounded(bound))

    def test_rational_lower_bound(self) -> None:
        """Debe usar T = 136 y umbral 1/104 para k = 6."""
        certificate = analysis.verify_theorem4(self.x, self.y, 6)

        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.bound, 136)
        self.assertEqual(compare(certificate.threshold, Fraction(1, 104)), 0)
        self.assertGreaterEqual(compare(certificate.min_distance, certificate.threshold), 0)

    def test_rational_lower_bound_precondition(self) -> None:
        """Debe rechazar k con q_k < 12 b |x2| / |y2|."""
        with self.assertRaises(PreconditionFailedError):
            analysis.verify_theorem4(self.x, self.y, 4)

    def test_rational_lower_bound_requires_rational_slope(self) -> None:
        """Debe rechazar objetivos de pendiente irracional."""
        y = OrbitService.build_target("surd:(-1+1*sqrt(2))/1,1")
        with self.assertRaises(ValidationError):
            analysis.verify_theorem4(self.x, y, 6)

    def test_verification_cap(self) -> None:
        """Debe respetar el limite del oraculo."""
        with self.assertRaises(CapExceededError):
            analysis.verify_theorem4(self.x, self.y, 6, cap=100)

    def test_factorization_certificate(self) -> None:
        """Debe certificar las cotas de columnas de G en el caso de demostracion."""
        factorization = analysis.verify_lemma7(self.x, self.y, 6, 136, Fraction(1, 4), 1)

        self.assertTrue(factorization.certified)
        self.assertEqual(factorization.n_matrix, UnimodularMatrix(1, 0, 2, 1))
        self.assertEqual(
            factorization.n_matrix @ factorization.g_matrix @ factorization.m_matrix.matrix,
            factorization.gamma,
        )
        self.assertLessEqual(factorization.gamma.norm(), 136)


if __name__ == "__main__":
    unittest.main()
