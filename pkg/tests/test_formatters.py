"""Tests para los formateadores de reportes."""

from __future__ import annotations

import json
import unittest

from cliente.backend.formatters import (
    FORMAT_CSV,
    FORMAT_JSON,
    FORMAT_TABLE,
    format_csv,
    format_json,
    format_table,
    render,
)
from shared.errors import ValidationError
from shared.protocol import Report


def sample_report() -> Report:
    return Report(
        kind="enumerate",
        headers=("v1", "u1", "norm"),
        rows=[{"v1": "1", "u1": "0", "norm": "1"}, {"v1": "-10", "norm": "10"}],
        summary={"T": "10", "count": "2"},
    )


class FormatterTests(unittest.TestCase):
    """Valida tabla, JSON y CSV."""

    def test_table_aligns_columns(self) -> None:
        """Debe imprimir resumen y columnas alineadas."""
        text = format_table(sample_report())

        lines = text.splitlines()
        self.assertEqual(lines[:3], ["[enumerate]", "T: 10", "count: 2"])
        self.assertEqual(lines[4], "v1   u1  norm")
        self.assertEqual(lines[7], "-10      10")

    def test_json_is_stable(self) -> None:
        """Debe producir JSON con claves ordenadas y columnas completas."""
        text = format_json(sample_report())
        payload = json.loads(text)

        self.assertEqual(text, format_json(sample_report()))
        self.assertTrue(payload["passed"])
        self.assertEqual(payload["rows"][1], {"v1": "-10", "u1": "", "norm": "10"})

    def test_csv_rows_and_summary_only(self) -> None:
        """Debe escribir filas o, sin filas, el resumen clave-valor."""
        self.assertEqual(format_csv(sample_report()), "v1,u1,norm\n1,0,1\n-10,,10\n")

        summary_only = Report(kind="certificate", headers=("key", "value"), summary={"status": "PASS"})
        self.assertEqual(format_csv(summary_only), "key,value\nstatus,PASS\n")

    def test_render_dispatch(self) -> None:
        """Debe despachar por formato y rechazar formatos desconocidos."""
        report = sample_report()
        self.assertEqual(render(report, FORMAT_TABLE), format_table(report))
        self.assertEqual(render(report, FORMAT_JSON), format_json(report))
        self.assertEqual(render(report, FORMAT_CSV), format_csv(report))
        with self.assertRaises(ValidationError):
            render(report, "xml")


if __name__ == "__main__":
    unittest.main()
