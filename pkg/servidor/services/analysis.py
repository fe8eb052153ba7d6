"""Estimacion empirica de exponentes y verificaciones exhaustivas de cotas inferiores."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

import mpmath

from parametros import ORACLE_CAP
from servidor.domain.contfrac import ConvergentTable, Omega
from servidor.domain.models import (
    ApproxResult,
    Certificate,
    ExponentEstimate,
    Factorization,
    Record,
    RecordSequence,
    StaircasePoint,
    TheoryExponents,
)
from servidor.domain.real_numbers import RealValue, compare, decide_sign, floor as real_floor
from servidor.domain.sl2 import PlanePoint
from servidor.services.constructions import RationalSlope, slope_table, target_slope
from servidor.services.factorization import certify_factorization, factorize, validate_mu
from servidor.services.oracle import ResidualEvaluator, best_approximation, exhaustive_scan
from shared.errors import (
    CapExceededError,
    InsufficientDataError,
    PreconditionFailedError,
    ValidationError,
)

LOGGER = logging.getLogger(__name__)

SOURCE_ORACLE = "oracle"
SOURCE_CONSTRUCTIONS = "constructions"
SOURCES = (SOURCE_ORACLE, SOURCE_CONSTRUCTIONS)

KIND_ORIGIN = "origin"
KIND_RATIONAL = "rational"
KIND_IRRATIONAL = "irrational"

MIN_WINDOW_RECORDS = 3


def geometric_grid(t_max: int, ratio: Fraction | int = 2) -> list[int]:
    """1, r, r^2, ... <= t_max, cerrando siempre en t_max."""
    ratio = Fraction(ratio)
    if t_max < 1:
        raise ValidationError("T maximo debe ser >= 1.")
    if ratio <= 1:
        raise ValidationError("La razon de la grilla debe ser > 1.")
    grid = [1]
    while grid[-1] < t_max:
        grid.append(min(t_max, max(grid[-1] + 1, math.floor(grid[-1] * ratio))))
    return grid


def _check_cap(bound: int, cap: int) -> None:
    if bound > cap:
        raise CapExceededError(f"La cota T={bound} supera el limite del oraculo ({cap}).")


def _strict_records(candidates: Iterable[Record]) -> tuple[Record, ...]:
    """Registros ordenados por norma que mejoran estrictamente la distancia."""
    kept: list[Record] = []
    for record in sorted(candidates, key=lambda item: item.norm):
        if kept and record.norm == kept[-1].norm:
            if compare(record.distance, kept[-1].distance) < 0:
                kept[-1] = record
            continue
        if not kept or compare(record.distance, kept[-1].distance) < 0:
            kept.append(record)
    return tuple(kept)


def _oracle_staircase(
    x: PlanePoint,
    y: PlanePoint,
    bounds: Sequence[int],
) -> tuple[tuple[StaircasePoint, ...], tuple[Record, ...]]:
    evaluator = ResidualEvaluator(x, y)
    points: list[StaircasePoint] = []
    candidates: list[Record] = []
    previous: StaircasePoint | None = None
    for bound in bounds:
        radius = None if previous is None else previous.distance
        best = best_approximation(x, y, bound, radius=radius, evaluator=evaluator)
        point = StaircasePoint(bound, best.distance, best.gamma)
        points.append(point)
        # registros entre el punto anterior de la grilla y este
        floor_bound = 0 if previous is None else previous.bound
        gamma, distance = best.gamma, best.distance
        while gamma is not None and distance is not None and gamma.norm() > floor_bound:
            candidates.append(Record(gamma, gamma.norm(), distance))
            below = gamma.norm() - 1
            if below < 1:
                break
            refined = best_approximation(x, y, below, radius=radius, evaluator=evaluator)
            gamma, distance = refined.gamma, refined.distance
        previous = point
        LOGGER.debug("D(%s) calculado", bound)
    return tuple(points), _strict_records(candidates)


def _construction_staircase(
    candidates: Iterable[ApproxResult],
    bounds: Sequence[int],
) -> tuple[tuple[StaircasePoint, ...], tuple[Record, ...]]:
    ordered = sorted(candidates, key=lambda result: result.norm)
    records = _strict_records(Record(result.gamma, result.norm, result.distance) for result in ordered)
    points: list[StaircasePoint] = []
    index = 0
    best: Record | None = None
    for bound in bounds:
        while index < len(records) and records[index].norm <= bound:
            best = records[index]
            index += 1
        if best is None:
            points.append(StaircasePoint(bound, None, None))
        else:
            points.append(StaircasePoint(bound, best.distance, best.gamma))
    return tuple(points), records


def staircase(
    x: PlanePoint,
    y: PlanePoint,
    grid: Iterable[int],
    source: str = SOURCE_ORACLE,
    candidates: Iterable[ApproxResult] | None = None,
    cap: int = ORACLE_CAP,
    grid_ratio: Fraction | int = 2,
) -> RecordSequence:
    """Escalera D(T) sobre la grilla y registros estrictos.

    Con ``source="oracle"`` los valores son minimos exactos; con
    ``source="constructions"`` son la envolvente de ``candidates``.
    """
    bounds = sorted(set(grid))
    if not bounds or bounds[0] < 1:
        raise ValidationError("La grilla de T debe contener enteros >= 1.")
    if source == SOURCE_ORACLE:
        _check_cap(bounds[-1], cap)
        points, records = _oracle_staircase(x, y, bounds)
    elif source == SOURCE_CONSTRUCTIONS:
        if candidates is None:
            raise ValidationError("La escalera por construcciones requiere candidatos.")
        points, records = _construction_staircase(candidates, bounds)
    else:
        raise ValidationError(f"Fuente desconocida: {source!r}")
    LOGGER.info("Escalera %s: %s puntos, %s registros", source, len(points), len(records))
    return RecordSequence(source, records, points, Fraction(grid_ratio))


def _exponent(distance: RealValue, norm: int) -> mpmath.mpf:
    with mpmath.workdps(30):
        return -mpmath.log(distance.to_mpf(30)) / mpmath.log(mpmath.mpf(norm))


def estimate_exponents(
    sequence: RecordSequence,
    window_start: int | None = None,
    window_stop: int | None = None,
    theory: TheoryExponents | None = None,
    upper_caps: tuple[Fraction, Fraction] | None = None,
) -> ExponentEstimate:
    """mu (max sobre registros) y mu gorro (min sobre la grilla) en una ventana de T.

    Los registros considerados son los activos en algun T de la ventana: los
    de norma en [inicio, fin] y el ultimo anterior al inicio.
    """
    points = [point for point in sequence.staircase if point.distance is not None]
    if not points:
        raise InsufficientDataError("La escalera no tiene puntos con distancia.")
    t_max = max(point.bound for point in points)
    start = window_start if window_start is not None else max(2, math.isqrt(t_max))
    stop = window_stop if window_stop is not None else t_max
    if start > stop:
        raise ValidationError(f"Ventana vacia: [{start}, {stop}].")

    window_points = [
        point
        for point in points
        if start <= point.bound <= stop and point.bound >= 2 and decide_sign(point.distance) > 0
    ]
    before = [record for record in sequence.records if record.norm < start]
    window_records = [record for record in sequence.records if start <= record.norm <= stop]
    if before:
        window_records.insert(0, before[-1])
    window_records = [
        record for record in window_records if record.norm >= 2 and decide_sign(record.distance) > 0
    ]
    if len(window_records) < MIN_WINDOW_RECORDS or not window_points:
        raise InsufficientDataError(
            f"Datos insuficientes en la ventana [{start}, {stop}]: "
            f"{len(window_records)} registros, {len(window_points)} puntos de grilla."
        )

    mu = max(_exponent(record.distance, record.norm) for record in window_records)
    mu_hat = min(_exponent(point.distance, point.bound) for point in window_points)
    return ExponentEstimate(
        mu=mu,
        mu_hat=mu_hat,
        window_start=start,
        window_stop=stop,
        grid_points=len(window_points),
        records=len(window_records),
        theory=theory,
        upper_caps=upper_caps,
    )


def _reciprocal(omega: Omega) -> Fraction:
    return Fraction(0) if _is_infinite(omega) else 1 / Fraction(omega)


def _is_infinite(omega: Omega) -> bool:
    return isinstance(omega, float) and math.isinf(omega)


def _validate_omega(omega: Omega, name: str) -> None:
    if isinstance(omega, float) and not math.isinf(omega):
        raise ValidationError(f"{name} debe ser racional o infinito.")
    if not _is_infinite(omega) and Fraction(omega) < 1:
        raise ValidationError(f"{name} debe ser >= 1.")


def upper_bound_exponents_rational(omega: Omega) -> tuple[Fraction, Fraction]:
    """(omega/(omega+1), 1/(omega+1)); (1, 0) para omega infinito."""
    _validate_omega(omega, "omega(xi)")
    if _is_infinite(omega):
        return Fraction(1), Fraction(0)
    value = Fraction(omega)
    return value / (value + 1), 1 / (value + 1)


def theory_exponents(kind: str, omega_xi: Omega, omega_y: Omega | None = None) -> TheoryExponents:
    """Valores exactos (origen, pendiente racional) o cotas inferiores (pendiente irracional)."""
    _validate_omega(omega_xi, "omega(xi)")
    if kind == KIND_ORIGIN:
        return TheoryExponents(kind, Fraction(1), _reciprocal(omega_xi))
    if kind == KIND_RATIONAL:
        mu, mu_hat = upper_bound_exponents_rational(omega_xi)
        return TheoryExponents(kind, mu, mu_hat)
    if kind == KIND_IRRATIONAL:
        if omega_y is None:
            raise ValidationError("La cota para pendiente irracional requiere omega(y).")
        _validate_omega(omega_y, "omega(y)")
        if _is_infinite(omega_y):
            mu_hat = _reciprocal(omega_xi) / 4
        else:
            value_y = Fraction(omega_y)
            mu_hat = (value_y + 1) / (2 * (2 * value_y + 1)) * _reciprocal(omega_xi)
        return TheoryExponents(
            kind,
            Fraction(1, 3),
            mu_hat,
            mu_is_lower_bound=True,
            mu_hat_is_lower_bound=True,
        )
    raise ValidationError(f"Tipo de objetivo desconocido: {kind!r}")


def verify_lemma1(
    x: PlanePoint,
    k: int,
    cap: int = ORACLE_CAP,
    table: ConvergentTable | None = None,
) -> Certificate:
    """Recorre |gamma| <= q_(k+1)/2 y verifica |gamma x| >= |x2| / (2 q_k)."""
    if k < 1:
        raise ValidationError("k debe ser >= 1.")
    table = table or slope_table(x)
    q_k = table.q(k)
    bound = table.q(k + 1) // 2
    if bound < 1:
        raise PreconditionFailedError(f"q_(k+1) = {table.q(k + 1)} no deja matrices por revisar.")
    _check_cap(bound, cap)
    threshold = abs(x.x2) / (2 * q_k)
    scan = exhaustive_scan(x, PlanePoint.of(0, 0), bound, threshold, cap)
    passed = not scan.violations
    LOGGER.info("Lema de origen k=%s T=%s: %s", k, bound, "PASS" if passed else "FAIL")
    return Certificate(
        name="lemma1",
        inputs={"x": x.describe(), "k": str(k), "q_k": str(q_k), "q_k+1": str(table.q(k + 1))},
        bound=bound,
        examined=scan.examined,
        threshold=threshold,
        passed=passed,
        minimizer=scan.minimizer,
        min_distance=scan.min_distance,
    )


def verify_theorem4(
    x: PlanePoint,
    y: PlanePoint,
    k: int,
    cap: int = ORACLE_CAP,
    table: ConvergentTable | None = None,
) -> Certificate:
    """Recorre |gamma| <= |y2| q_k q_(k+1) / (4 |x2|) y verifica |gamma x - y| >= |x2| / (4 b q_k)."""
    if k < 1:
        raise ValidationError("k debe ser >= 1.")
    slope = target_slope(y)
    if not isinstance(slope, RationalSlope):
        raise ValidationError("La cota inferior exhaustiva requiere pendiente racional.")
    if slope.b < 1 or abs(slope.a) > slope.b:
        raise PreconditionFailedError(f"Se requiere |a| <= b en la pendiente {slope.a}/{slope.b}.")
    table = table or slope_table(x)
    q_k, q_next = table.q(k), table.q(k + 1)
    ratio = abs(y.x2) / abs(x.x2)
    if compare(ratio * q_k, 12 * slope.b) < 0:
        raise PreconditionFailedError(
            f"q_k = {q_k} < 12 b |x2| / |y2| (b = {slope.b}, y2 = {y.x2.describe()})."
        )
    bound = real_floor(ratio * Fraction(q_k * q_next, 4))
    _check_cap(bound, cap)
    threshold = abs(x.x2) / (4 * slope.b * q_k)
    scan = exhaustive_scan(x, y, bound, threshold, cap)
    passed = not scan.violations
    LOGGER.info("Cota inferior racional k=%s T=%s: %s", k, bound, "PASS" if passed else "FAIL")
    return Certificate(
        name="thm4",
        inputs={
            "x": x.describe(),
            "y": y.describe(),
            "k": str(k),
            "a": str(slope.a),
            "b": str(slope.b),
        },
        bound=bound,
        examined=scan.examined,
        threshold=threshold,
        passed=passed,
        minimizer=scan.minimizer,
        min_distance=scan.min_distance,
    )


def verify_lemma7(
    x: PlanePoint,
    y: PlanePoint,
    k: int,
    bound: int,
    mu: Fraction,
    j: int,
    cap: int = ORACLE_CAP,
    table: ConvergentTable | None = None,
) -> Factorization:
    """Toma la mejor aproximacion con |gamma| <= T, la factoriza como N_j G M_k y certifica G."""
    mu = validate_mu(mu)
    if bound < 1:
        raise ValidationError("T debe ser >= 1.")
    _check_cap(bound, cap)
    table = table or slope_table(x)
    best = best_approximation(x, y, bound)
    if best.gamma is None:
        raise InsufficientDataError(f"No hay matrices con |gamma| <= {bound}.")
    n_matrix = target_slope(y).n_matrix(j)
    factorization = factorize(best.gamma, n_matrix, table.matrix(k))
    return certify_factorization(factorization, x, y, table, bound, mu)
