"""Factorizacion gamma = N G M_k y cotas por columna de G."""

from __future__ import annotations

import logging
from dataclasses import replace
from fractions import Fraction

import mpmath

from servidor.domain.contfrac import ConvergentMatrix, ConvergentTable
from servidor.domain.models import BoundCheck, Factorization
from servidor.domain.real_numbers import RealValue, compare, real_max
from servidor.domain.sl2 import PlanePoint, UnimodularMatrix, apply
from shared.errors import BoundViolatedError, PreconditionFailedError, ValidationError

LOGGER = logging.getLogger(__name__)


def factorize(
    gamma: UnimodularMatrix,
    n_matrix: UnimodularMatrix,
    m_matrix: ConvergentMatrix,
) -> Factorization:
    """G = N^-1 gamma M^-1 con verificacion exacta de N G M = gamma."""
    g_matrix = n_matrix.inverse() @ gamma @ m_matrix.matrix.inverse()
    if n_matrix @ g_matrix @ m_matrix.matrix != gamma:
        raise BoundViolatedError(f"La factorizacion de {gamma} no reconstruye la matriz.")
    return Factorization(gamma, n_matrix, g_matrix, m_matrix)


def determinant_identities(
    gamma: UnimodularMatrix,
    x: PlanePoint,
    y: PlanePoint,
) -> list[BoundCheck]:
    """Identidades v1 y2 - v2 y1 = 1 + L1 v2 - L2 v1 y u1 y2 - u2 y1 = -xi + L1 u2 - L2 u1.

    Solo se evaluan para x2 = 1 y coordenadas exactas.
    """
    image = apply(gamma, x) - y
    lambda1, lambda2 = image.x1, image.x2
    xi = x.x1
    pairs = (
        (
            "identity_first_column",
            "v1 y2 - v2 y1 = 1 + Lambda1 v2 - Lambda2 v1",
            gamma.v1 * y.x2 - gamma.v2 * y.x1,
            1 + lambda1 * gamma.v2 - lambda2 * gamma.v1,
        ),
        (
            "identity_second_column",
            "u1 y2 - u2 y1 = -xi + Lambda1 u2 - Lambda2 u1",
            gamma.u1 * y.x2 - gamma.u2 * y.x1,
            -xi + lambda1 * gamma.u2 - lambda2 * gamma.u1,
        ),
    )
    checks: list[BoundCheck] = []
    for name, statement, left, right in pairs:
        if left.exact is None or right.exact is None:
            continue
        checks.append(BoundCheck(name, statement, "igualdad exacta", left.exact == right.exact))
    return checks


def _require_hypothesis(condition: bool, message: str) -> None:
    if not condition:
        raise PreconditionFailedError(message)


def certify_factorization(
    factorization: Factorization,
    x: PlanePoint,
    y: PlanePoint,
    table: ConvergentTable,
    bound: int,
    mu: Fraction,
) -> Factorization:
    """Certifica las cotas de columnas de G bajo las hipotesis de norma y residuo.

    Hipotesis: x = (xi, 1) con |xi| < 1, |y| = |y2|, 0 <= mu <= 1,
    q_(k-1) q_k <= T <= q_k q_(k+1), |gamma| <= 2T, |gamma x - y| <= T^-mu
    y s_j >= T^(mu/2) donde s_j es la entrada inferior izquierda de N.
    Todas las potencias se comparan con mu = p/r elevando a r.
    """
    mu = Fraction(mu)
    k = factorization.m_matrix.k
    gamma = factorization.gamma
    _require_hypothesis(0 <= mu <= 1, "mu debe estar en [0, 1].")
    _require_hypothesis(compare(x.x2, 1) == 0, "La factorizacion certificada requiere x2 = 1.")
    _require_hypothesis(compare(abs(x.x1), 1) < 0, "Se requiere |xi| < 1 (x normalizado).")
    _require_hypothesis(
        compare(abs(y.x1), abs(y.x2)) <= 0 and compare(abs(y.x2), 0) > 0,
        "Se requiere |y| = |y2| > 0 (y normalizado).",
    )
    q_prev, q_k, q_next = table.q(k - 1), table.q(k), table.q(k + 1)
    _require_hypothesis(
        q_prev * q_k <= bound <= q_k * q_next,
        f"T={bound} fuera de [q_(k-1) q_k, q_k q_(k+1)] = [{q_prev * q_k}, {q_k * q_next}].",
    )
    _require_hypothesis(gamma.norm() <= 2 * bound, f"|gamma| = {gamma.norm()} > 2T.")

    power, root = mu.numerator, mu.denominator
    image = apply(gamma, x) - y
    distance: RealValue = real_max(abs(image.x1), abs(image.x2))
    _require_hypothesis(
        compare(distance**root * bound**power, 1) <= 0,
        f"|gamma x - y| = {distance.nstr(12)} supera T^-mu.",
    )
    s_j = factorization.n_matrix.v2
    _require_hypothesis(
        s_j ** (2 * root) >= bound**power,
        f"s_j = {s_j} < T^(mu/2).",
    )

    y_norm = abs(y.x2)
    constant = 10 * real_max(y_norm, 1 / y_norm)
    first_norm = factorization.first_column_norm
    second_norm = factorization.second_column_norm
    first_limit = (constant * s_j) ** root * bound ** (root - power)
    second_limit = (constant * (s_j * q_k)) ** root
    checks = [
        BoundCheck(
            "column_first",
            "max(|m|, |m'|) <= c s_j T^(1-mu) / q_k",
            f"{first_norm}",
            compare((first_norm * q_k) ** root, first_limit) <= 0,
        ),
        BoundCheck(
            "column_second",
            "max(|l|, |l'|) <= c s_j q_k T^(-mu)",
            f"{second_norm}",
            compare(second_norm**root * bound**power, second_limit) <= 0,
        ),
        *determinant_identities(gamma, x, y),
    ]
    for check in checks:
        if not check.holds:
            raise BoundViolatedError(f"Cota de factorizacion violada ({check.name}): {check.statement}")

    with mpmath.workdps(30):
        c_value = constant.to_mpf(30)
        scale = mpmath.mpf(bound)
        first_bound = c_value * s_j * scale ** (1 - mpmath.mpf(mu.numerator) / mu.denominator) / q_k
        second_bound = c_value * s_j * q_k * scale ** (-mpmath.mpf(mu.numerator) / mu.denominator)
    LOGGER.debug("Factorizacion certificada k=%s T=%s G=%s", k, bound, factorization.g_matrix)
    return replace(
        factorization,
        first_column_bound=first_bound,
        second_column_bound=second_bound,
        checks=tuple(checks),
    )


def validate_mu(mu: Fraction) -> Fraction:
    value = Fraction(mu)
    if not 0 <= value <= 1:
        raise ValidationError("mu debe estar en [0, 1].")
    return value
