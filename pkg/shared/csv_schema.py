"""Esquema canonico de columnas CSV compartido por cliente/servidor."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

CONVERGENT_HEADERS: tuple[str, ...] = (
    "k",
    "a_k",
    "p",
    "q",
    "sign_eps",
    "eps_lower",
    "eps_upper",
    "eps",
)

APPROX_HEADERS: tuple[str, ...] = (
    "index",
    "status",
    "k",
    "j",
    "ell",
    "n_matrix",
    "gamma",
    "norm",
    "lambda1",
    "lambda2",
    "distance",
    "checks",
)

ENUMERATION_HEADERS: tuple[str, ...] = ("v1", "u1", "v2", "u2", "norm")

STAIRCASE_HEADERS: tuple[str, ...] = ("T", "v1", "u1", "v2", "u2", "norm", "distance")

CHECK_HEADERS: tuple[str, ...] = ("name", "statement", "value", "holds", "proven")

SUMMARY_HEADERS: tuple[str, ...] = ("key", "value")


def row_from_mapping(headers: Sequence[str], values: Mapping[str, str]) -> list[str]:
    """Ordena una fila segun headers; las columnas ausentes quedan vacias."""
    return [values.get(header, "") for header in headers]
