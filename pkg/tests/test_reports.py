"""Tests para la conversion de resultados a reportes."""

from __future__ import annotations

import unittest
from fractions import Fraction

from servidor.domain.models import ApproxOutcome, BoundCheck, Certificate
from servidor.domain.real_numbers import ExactReal, build_real
from servidor.domain.sl2 import IDENTITY
from servidor.domain.surds import SurdSum
from servidor.services import constructions, reports
from servidor.services.orbit_service import STATUS_K_TOO_SMALL, STATUS_OK, OrbitService
from shared.csv_schema import APPROX_HEADERS, CONVERGENT_HEADERS, ENUMERATION_HEADERS
from shared.real_input import parse_real

GOLDEN = "surd:(-1+1*sqrt(5))/2"


class ValueTextTests(unittest.TestCase):
    """Valida el texto de valores exactos y aproximados."""

    def test_exact_values_are_printed_exactly(self) -> None:
        """Debe imprimir racionales y surds sin aproximar."""
        self.assertEqual(reports.value_text(Fraction(1, 104)), "1/104")
        self.assertEqual(reports.value_text(ExactReal(SurdSum.sqrt(5))), "sqrt(5)")
        self.assertEqual(reports.value_text(None), "")

    def test_lazy_values_are_marked(self) -> None:
        """Debe anteponer ~ a valores perezosos."""
        text = reports.value_text(build_real(parse_real("cf:[2]rule:euler")))

        self.assertTrue(text.startswith("~2.71828"))

    def test_checks_text_marks_unproven(self) -> None:
        """Debe marcar con ~ las cotas no demostradas."""
        checks = (
            BoundCheck("a", "", "", True),
            BoundCheck("b", "", "", False, proven=False),
        )

        self.assertEqual(reports.checks_text(checks), "a:PASS;~b:FAIL")

    def test_checks_text_carries_statement_and_value(self) -> None:
        """Debe incluir enunciado y valor exacto de cada cota."""
        checks = (BoundCheck("residuo", "|gamma x - y| <= 1/2", "1/3 <= 1/2", True),)

        self.assertEqual(reports.checks_text(checks), "residuo[|gamma x - y| <= 1/2]=1/3 <= 1/2:PASS")


class ReportTests(unittest.TestCase):
    """Valida columnas y resumenes de cada reporte."""

    def setUp(self) -> None:
        self.service = OrbitService()
        self.x = OrbitService.build_point(GOLDEN, "1")

    def test_convergents_report(self) -> None:
        """Debe listar k, a_k, p, q y las cotas de epsilon."""
        table, rows = self.service.convergents(self.x, 3)

        report = reports.convergents_report(table, rows)

        self.assertEqual(report.headers, CONVERGENT_HEADERS)
        self.assertEqual(report.rows[2]["q"], "2")
        self.assertEqual(report.rows[2]["sign_eps"], "+")
        self.assertEqual(report.rows[2]["eps_lower"], "1/6")
        self.assertEqual(report.summary["count"], "4")

    def test_approx_report_keeps_status_rows(self) -> None:
        """Debe incluir filas sin resultado con su estado."""
        table = constructions.slope_table(self.x)
        outcomes = [
            ApproxOutcome(1, STATUS_OK, constructions.approx_origin(self.x, 1, table)),
            ApproxOutcome(2, STATUS_K_TOO_SMALL, None, "sin intento"),
        ]

        report = reports.approx_report(constructions.METHOD_ORIGIN, outcomes)

        self.assertEqual(report.headers, APPROX_HEADERS)
        self.assertEqual(report.rows[0]["gamma"], table.matrix(1).matrix.to_text())
        self.assertIn("origin_product[|gamma x| |gamma| <= |x|]=", report.rows[0]["checks"])
        self.assertEqual(report.rows[0]["n_matrix"], "")
        self.assertEqual(report.rows[1], {"index": "2", "status": STATUS_K_TOO_SMALL})
        self.assertEqual(report.summary["ok"], "1")

    def test_rational_approx_report_has_trace_and_bounds(self) -> None:
        """Debe exponer N de la traza y el valor exacto de cada cota."""
        y = OrbitService.build_target("1,2")
        outcomes = self.service.approximate(self.x, y, constructions.METHOD_RATIONAL, k_values=[8])
        result = outcomes[0].result

        report = reports.approx_report(constructions.METHOD_RATIONAL, outcomes)
        row = report.rows[0]

        self.assertIn("n_matrix", report.headers)
        self.assertEqual(row["n_matrix"], result.trace.n_matrix.to_text())
        self.assertNotEqual(row["n_matrix"], "")
        self.assertIn("residual_rational[|gamma x - y| q_k <= 2 b |x2|]=", row["checks"])
        self.assertIn("residual_norm_rational[", row["checks"])
        for piece in row["checks"].split(";"):
            with self.subTest(piece=piece):
                self.assertIn("=", piece)

    def test_certificate_report_carries_status(self) -> None:
        """Debe propagar passed y el resumen del certificado."""
        certificate = Certificate(
            name="lemma1",
            inputs={"k": "4"},
            bound=4,
            examined=10,
            threshold=Fraction(1, 10),
            passed=False,
            minimizer=IDENTITY,
        )

        report = reports.certificate_report(certificate)

        self.assertFalse(report.passed)
        self.assertEqual(report.summary["status"], "FAIL")
        self.assertEqual(report.summary["threshold"], "1/10")
        self.assertEqual(report.summary["input.k"], "4")
        self.assertEqual(report.rows, [])

    def test_enumeration_report(self) -> None:
        """Debe listar las entradas y la norma de cada matriz."""
        report = reports.enumeration_report(self.service.enumerate(1), 1, 1)

        self.assertEqual(report.headers, ENUMERATION_HEADERS)
        self.assertEqual(report.summary["count"], "20")
        self.assertTrue(all(row["norm"] == "1" for row in report.rows))


if __name__ == "__main__":
    unittest.main()
