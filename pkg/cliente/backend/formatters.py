"""Formateadores puros de reportes: tabla legible, JSON y CSV."""

from __future__ import annotations

import csv
import io
import json

from shared.csv_schema import SUMMARY_HEADERS, row_from_mapping
from shared.errors import ValidationError
from shared.protocol import Report

FORMAT_TABLE = "table"
FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMATS = (FORMAT_TABLE, FORMAT_JSON, FORMAT_CSV)


def render(report: Report, output_format: str) -> str:
    """Renderiza un reporte; JSON y CSV son identicos byte a byte para reportes iguales."""
    if output_format == FORMAT_TABLE:
        return format_table(report)
    if output_format == FORMAT_JSON:
        return format_json(report)
    if output_format == FORMAT_CSV:
        return format_csv(report)
    raise ValidationError(f"Formato de salida desconocido: {output_format!r}")


def format_table(report: Report) -> str:
    """Lineas ``clave: valor`` seguidas de una tabla alineada cuando hay filas."""
    lines = [f"[{report.kind}]"]
    lines.extend(f"{key}: {value}" for key, value in report.summary.items())
    if report.rows:
        cells = [list(report.headers)]
        cells.extend(row_from_mapping(report.headers, row) for row in report.rows)
        widths = [max(len(row[index]) for row in cells) for index in range(len(report.headers))]
        lines.append("")
        for position, row in enumerate(cells):
            lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
            if position == 0:
                lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def format_json(report: Report) -> str:
    payload = {
        "kind": report.kind,
        "passed": report.passed,
        "summary": report.summary,
        "rows": [dict(zip(report.headers, row_from_mapping(report.headers, row))) for row in report.rows],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def format_csv(report: Report) -> str:
    """Filas bajo los headers del reporte; sin filas se escribe el resumen ``key,value``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if report.rows:
        writer.writerow(report.headers)
        writer.writerows(row_from_mapping(report.headers, row) for row in report.rows)
    else:
        writer.writerow(SUMMARY_HEADERS)
        writer.writerows(report.summary.items())
    return buffer.getvalue()
