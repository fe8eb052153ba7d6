"""Conversion de resultados de dominio a reportes tabulares del protocolo."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import mpmath

from servidor.domain.contfrac import Convergent, ConvergentTable
from servidor.domain.models import (
    ApproxOutcome,
    BoundCheck,
    Certificate,
    ExponentEstimate,
    Factorization,
    RecordSequence,
)
from servidor.domain.real_numbers import RealValue
from servidor.domain.sl2 import UnimodularMatrix
from shared.csv_schema import (
    APPROX_HEADERS,
    CHECK_HEADERS,
    CONVERGENT_HEADERS,
    ENUMERATION_HEADERS,
    STAIRCASE_HEADERS,
    SUMMARY_HEADERS,
)
from shared.protocol import Report

DISPLAY_DIGITS = 15
EXPONENT_DIGITS = 6


def value_text(value: RealValue | Fraction | int | None) -> str:
    """Valor exacto cuando existe; si no, decimal con prefijo ``~``."""
    if value is None:
        return ""
    if isinstance(value, (int, Fraction)):
        return str(value)
    if value.exact is not None:
        return str(value.exact)
    return f"~{value.nstr(DISPLAY_DIGITS)}"


def approx_text(value: RealValue | Fraction | None) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return mpmath.nstr(mpmath.mpf(value.numerator) / value.denominator, DISPLAY_DIGITS)
    return value.nstr(DISPLAY_DIGITS)


def _mpf_text(value: mpmath.mpf | None) -> str:
    return "" if value is None else mpmath.nstr(value, EXPONENT_DIGITS)


def _matrix_text(matrix: UnimodularMatrix | None) -> str:
    return "" if matrix is None else matrix.to_text()


def _matrix_columns(matrix: UnimodularMatrix | None) -> dict[str, str]:
    if matrix is None:
        return {}
    return {
        "v1": str(matrix.v1),
        "u1": str(matrix.u1),
        "v2": str(matrix.v2),
        "u2": str(matrix.u2),
        "norm": str(matrix.norm()),
    }


def checks_text(checks: Sequence[BoundCheck]) -> str:
    """``nombre[enunciado]=valor:PASS`` separados por ``;``.

    Las cotas asintoticas llevan ``~``; enunciado y valor se omiten si estan vacios.
    """
    pieces = []
    for check in checks:
        status = "PASS" if check.holds else "FAIL"
        marker = "" if check.proven else "~"
        statement = f"[{check.statement}]" if check.statement else ""
        value = f"={check.value}" if check.value else ""
        pieces.append(f"{marker}{check.name}{statement}{value}:{status}")
    return ";".join(pieces)


def _check_row(check: BoundCheck) -> dict[str, str]:
    return {
        "name": check.name,
        "statement": check.statement,
        "value": check.value,
        "holds": "PASS" if check.holds else "FAIL",
        "proven": "yes" if check.proven else "no",
    }


def convergents_report(table: ConvergentTable, rows: Sequence[Convergent]) -> Report:
    body = []
    for convergent in rows:
        q_next = table.q(convergent.k + 1)
        body.append(
            {
                "k": str(convergent.k),
                "a_k": str(table.partial_quotient(convergent.k)),
                "p": str(convergent.p),
                "q": str(convergent.q),
                "sign_eps": "+" if convergent.sign > 0 else "-",
                "eps_lower": str(Fraction(1, 2 * q_next)),
                "eps_upper": str(Fraction(1, q_next)),
                "eps": value_text(convergent.epsilon),
            }
        )
    summary = {"xi": table.value.describe(), "count": str(len(body))}
    return Report("convergents", CONVERGENT_HEADERS, body, summary)


def approx_report(method: str, outcomes: Sequence[ApproxOutcome]) -> Report:
    body = []
    for outcome in outcomes:
        row = {"index": str(outcome.index), "status": outcome.status}
        result = outcome.result
        if result is not None:
            trace = result.trace
            row.update(
                {
                    "k": str(trace.k),
                    "j": "" if trace.j is None else str(trace.j),
                    "ell": "" if trace.ell is None else str(trace.ell),
                    "n_matrix": _matrix_text(trace.n_matrix),
                    "gamma": result.gamma.to_text(),
                    "norm": str(result.norm),
                    "lambda1": value_text(result.residual[0]),
                    "lambda2": value_text(result.residual[1]),
                    "distance": approx_text(result.distance),
                    "checks": checks_text(result.checks),
                }
            )
        body.append(row)
    ok = sum(1 for outcome in outcomes if outcome.status == "ok")
    summary = {"method": method, "indices": str(len(outcomes)), "ok": str(ok)}
    return Report("approx", APPROX_HEADERS, body, summary)


def certificate_report(certificate: Certificate) -> Report:
    summary = {
        "name": certificate.name,
        "status": "PASS" if certificate.passed else "FAIL",
        "bound": str(certificate.bound),
        "examined": str(certificate.examined),
        "threshold": value_text(certificate.threshold),
        "minimizer": _matrix_text(certificate.minimizer),
        "min_distance": value_text(certificate.min_distance),
        "min_distance_approx": approx_text(certificate.min_distance),
    }
    for key, value in certificate.inputs.items():
        summary[f"input.{key}"] = value
    return Report("certificate", SUMMARY_HEADERS, [], summary, passed=certificate.passed)


def factorization_report(factorization: Factorization) -> Report:
    summary = {
        "status": "PASS" if factorization.certified else "FAIL",
        "gamma": factorization.gamma.to_text(),
        "n_matrix": factorization.n_matrix.to_text(),
        "g_matrix": factorization.g_matrix.to_text(),
        "m_matrix": factorization.m_matrix.matrix.to_text(),
        "k": str(factorization.m_matrix.k),
        "first_column_norm": str(factorization.first_column_norm),
        "first_column_bound": _mpf_text(factorization.first_column_bound),
        "second_column_norm": str(factorization.second_column_norm),
        "second_column_bound": _mpf_text(factorization.second_column_bound),
    }
    rows = [_check_row(check) for check in factorization.checks]
    return Report("factorization", CHECK_HEADERS, rows, summary, passed=factorization.certified)


def exponents_report(sequence: RecordSequence, estimate: ExponentEstimate) -> Report:
    body = []
    for point in sequence.staircase:
        row = {"T": str(point.bound), "distance": value_text(point.distance)}
        row.update(_matrix_columns(point.minimizer))
        body.append(row)
    summary = {
        "source": sequence.source,
        "grid_ratio": str(sequence.grid_ratio),
        "records_total": str(len(sequence.records)),
        "window": f"{estimate.window_start}..{estimate.window_stop}",
        "window_grid_points": str(estimate.grid_points),
        "window_records": str(estimate.records),
        "mu_empirical": _mpf_text(estimate.mu),
        "mu_hat_empirical": _mpf_text(estimate.mu_hat),
    }
    theory = estimate.theory
    if theory is not None:
        summary["theory_kind"] = theory.kind
        summary["mu_theory"] = (">= " if theory.mu_is_lower_bound else "") + str(theory.mu)
        summary["mu_hat_theory"] = (">= " if theory.mu_hat_is_lower_bound else "") + str(theory.mu_hat)
    if estimate.upper_caps is not None:
        summary["mu_cap"] = str(estimate.upper_caps[0])
        summary["mu_hat_cap"] = str(estimate.upper_caps[1])
    return Report("exponents", STAIRCASE_HEADERS, body, summary)


def enumeration_report(matrices: Sequence[UnimodularMatrix], bound: int, partitions: int) -> Report:
    rows = [_matrix_columns(matrix) for matrix in matrices]
    summary = {"T": str(bound), "count": str(len(rows)), "partitions": str(partitions)}
    return Report("enumerate", ENUMERATION_HEADERS, rows, summary)
