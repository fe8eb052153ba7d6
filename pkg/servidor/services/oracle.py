"""Oraculo de fuerza bruta: enumeracion de SL(2,Z) acotada por norma.

Orden de emision: lexicografico en (v2, u2, v1, u1). Cada segunda fila
coprima (v2, u2) se levanta con el algoritmo extendido de Euclides a una
solucion (v1, u1) de v1*u2 - u1*v2 = 1 y se emite la familia
(v1 + t*v2, u1 + t*u2) restringida a entradas de valor absoluto <= T.
"""

from __future__ import annotations

import heapq
import logging
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from servidor.domain.real_numbers import RealValue, as_real, compare
from servidor.domain.sl2 import PlanePoint, UnimodularMatrix
from shared.errors import CapExceededError, ValidationError

LOGGER = logging.getLogger(__name__)

Entries = tuple[int, int, int, int]
ScaledInterval = tuple[int, int]

DEFAULT_SCALE_BITS = 96


def emission_key(gamma: UnimodularMatrix) -> tuple[int, int, int, int]:
    return gamma.v2, gamma.u2, gamma.v1, gamma.u1


def lift_row(v2: int, u2: int) -> tuple[int, int]:
    """Solucion (v1, u1) de v1*u2 - u1*v2 = 1 para una fila coprima."""
    v1, u1, divisor = (int(item) for item in igcdex(u2, -v2))
    if divisor != 1:
        raise ValidationError(f"La fila ({v2}, {u2}) no es coprima.")
    return v1, u1


def _t_interval(base: int, step: int, bound: int) -> tuple[int, int] | None:
    """Rango de t con |base + t*step| <= bound; None si es todo Z."""
    if step == 0:
        return None if abs(base) <= bound else (1, 0)
    if step < 0:
        low, high = _t_interval(base, -step, bound)  # type: ignore[misc]
        return -high, -low
    return -((bound + base) // step), (bound - base) // step


def family_range(v2: int, u2: int, v1_base: int, u1_base: int, bound: int) -> tuple[int, int]:
    """Interseccion de rangos de t para ambas entradas de la primera fila."""
    low, high = -(10**30), 10**30
    for base, step in ((v1_base, v2), (u1_base, u2)):
        interval = _t_interval(base, step, bound)
        if interval is None:
            continue
        low, high = max(low, interval[0]), min(high, interval[1])
    return low, high


def _ordered_family(v2: int, u2: int, bound: int) -> Iterator[Entries]:
    v1_base, u1_base = lift_row(v2, u2)
    low, high = family_range(v2, u2, v1_base, u1_base, bound)
    if low > high:
        return
    # v1 creciente; si v2 = 0, u1 creciente
    increasing = v2 > 0 or (v2 == 0 and u2 > 0)
    steps = range(low, high + 1) if increasing else range(high, low - 1, -1)
    for t in steps:
        yield v1_base + t * v2, u1_base + t * u2, v2, u2


def _coprime_rows(bound: int, partition: tuple[int, int] | None) -> Iterator[tuple[int, int]]:
    for v2 in range(-bound, bound + 1):
        if partition is not None and (v2 + bound) % partition[1] != partition[0]:
            continue
        for u2 in range(-bound, bound + 1):
            if gcd(v2, u2) == 1:
                yield v2, u2


def iter_entries(bound: int, partition: tuple[int, int] | None = None) -> Iterator[Entries]:
    """Tuplas (v1, u1, v2, u2) en orden de emision."""
    if bound < 1:
        raise ValidationError("La cota de norma T debe ser >= 1.")
    if partition is not None:
        index, count = partition
        if count < 1 or not 0 <= index < count:
            raise ValidationError(f"Particion invalida: {partition}")
    for v2, u2 in _coprime_rows(bound, partition):
        yield from _ordered_family(v2, u2, bound)


def enumerate_norm_bounded(
    bound: int,
    partition: tuple[int, int] | None = None,
) -> Iterator[UnimodularMatrix]:
    """Todas las gamma en SL(2,Z) con |gamma| <= bound, cada una una sola vez."""
    for entries in iter_entries(bound, partition):
        yield UnimodularMatrix(*entries)


def count_norm_bounded(bound: int) -> int:
    total = 0
    for v2, u2 in _coprime_rows(bound, None):
        v1_base, u1_base = lift_row(v2, u2)
        low, high = family_range(v2, u2, v1_base, u1_base, bound)
        total += max(0, high - low + 1)
    return total


def merge_partitions(streams: Iterable[Iterable[UnimodularMatrix]]) -> list[UnimodularMatrix]:
    """Une flujos de particiones en el orden documentado."""
    return list(heapq.merge(*streams, key=emission_key))


def random_unimodular(rng: random.Random, bound: int) -> UnimodularMatrix:
    """Muestra gamma con |gamma| <= bound: segunda fila coprima al azar y traslacion al azar."""
    if bound < 1:
        raise ValidationError("La cota de norma T debe ser >= 1.")
    while True:
        v2, u2 = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(v2, u2) != 1:
            continue
        v1_base, u1_base = lift_row(v2, u2)
        low, high = family_range(v2, u2, v1_base, u1_base, bound)
        if low > high:
            continue
        t = rng.randint(low, high)
        return UnimodularMatrix(v1_base + t * v2, u1_base + t * u2, v2, u2)


def scan_naive(bound: int) -> list[UnimodularMatrix]:
    """Barrido directo de (2T+1)^4 matrices; solo para verificar a escala pequena."""
    values = range(-bound, bound + 1)
    found = [
        UnimodularMatrix(v1, u1, v2, u2)
        for v2 in values
        for u2 in values
        for v1 in values
        for u1 in values
        if v1 * u2 - u1 * v2 == 1
    ]
    return sorted(found, key=emission_key)


def _scaled_enclosure(value: RealValue, bits: int) -> ScaledInterval:
    lower, upper = value.enclosure(bits)
    return floor(lower * (1 << bits)), ceil(upper * (1 << bits))


def _scale_product(coefficient: int, interval: ScaledInterval) -> ScaledInterval:
    if coefficient >= 0:
        return coefficient * interval[0], coefficient * interval[1]
    return coefficient * interval[1], coefficient * interval[0]


def _abs_bounds(interval: ScaledInterval) -> ScaledInterval:
    lower, upper = interval
    if lower >= 0:
        return lower, upper
    if upper <= 0:
        return -upper, -lower
    return 0, max(-lower, upper)


class ResidualEvaluator:
    """Evalua |gamma x - y| con encierros enteros escalados y respaldo exacto."""

    def __init__(self, x: PlanePoint, y: PlanePoint, bits: int = DEFAULT_SCALE_BITS) -> None:
        self._x = x
        self._y = y
        self._bits = bits
        self._x1 = _scaled_enclosure(x.x1, bits)
        self._x2 = _scaled_enclosure(x.x2, bits)
        self._y1 = _scaled_enclosure(y.x1, bits)
        self._y2 = _scaled_enclosure(y.x2, bits)

    @property
    def bits(self) -> int:
        return self._bits

    def scaled_upper(self, value: RealValue | Fraction | int) -> int:
        real = as_real(value)
        return _scaled_enclosure(real, self._bits)[1]

    def scaled_lower(self, value: RealValue | Fraction | int) -> int:
        real = as_real(value)
        return _scaled_enclosure(real, self._bits)[0]

    def form(self, v: int, u: int) -> ScaledInterval:
        """Encierro escalado de v*x1 + u*x2."""
        first = _scale_product(v, self._x1)
        second = _scale_product(u, self._x2)
        return first[0] + second[0], first[1] + second[1]

    def component(self, v: int, u: int, row: int) -> ScaledInterval:
        """Encierro escalado de v*x1 + u*x2 - y_row."""
        target = self._y1 if row == 1 else self._y2
        lower, upper = self.form(v, u)
        return lower - target[1], upper - target[0]

    def distance_bounds(self, entries: Entries) -> ScaledInterval:
        v1, u1, v2, u2 = entries
        first = _abs_bounds(self.component(v1, u1, 1))
        second = _abs_bounds(self.component(v2, u2, 2))
        return max(first[0], second[0]), max(first[1], second[1])

    def residual(self, gamma: UnimodularMatrix) -> tuple[RealValue, RealValue]:
        x, y = self._x, self._y
        return (
            gamma.v1 * x.x1 + gamma.u1 * x.x2 - y.x1,
            gamma.v2 * x.x1 + gamma.u2 * x.x2 - y.x2,
        )

    def distance(self, gamma: UnimodularMatrix) -> RealValue:
        first, second = self.residual(gamma)
        first, second = abs(first), abs(second)
        return first if compare(first, second) >= 0 else second

    def u2_window(self, v2: int, radius_scaled: int, bound: int) -> range:
        """u2 con |v2*x1 + u2*x2 - y2| <= radio posible (superconjunto riguroso)."""
        v_part = _scale_product(v2, self._x1)
        numerator_low = self._y2[0] - v_part[1] - radius_scaled
        numerator_high = self._y2[1] - v_part[0] + radius_scaled
        x2_low, x2_high = self._x2
        if x2_low <= 0 <= x2_high:
            return range(-bound, bound + 1)
        quotients = [
            Fraction(numerator, denominator)
            for numerator in (numerator_low, numerator_high)
            for denominator in (x2_low, x2_high)
        ]
        low = max(-bound, floor(min(quotients)))
        high = min(bound, ceil(max(quotients)))
        return range(low, high + 1)


@dataclass(frozen=True)
class _Best:
    entries: Entries
    low: int
    high: int
    distance: RealValue


class _MinimumTracker:
    """Minimo exacto con comparacion rapida por encierros."""

    def __init__(self, evaluator: ResidualEvaluator) -> None:
        self._evaluator = evaluator
        self.best: _Best | None = None

    @property
    def upper(self) -> int | None:
        return None if self.best is None else self.best.high

    def offer(self, entries: Entries, bounds: ScaledInterval | None = None) -> bool:
        low, high = bounds or self._evaluator.distance_bounds(entries)
        best = self.best
        if best is not None and low > best.high:
            return False
        gamma = UnimodularMatrix(*entries)
        distance = self._evaluator.distance(gamma)
        if best is None or high < best.low or compare(distance, best.distance) < 0:
            self.best = _Best(entries, low, high, distance)
            return True
        return False

    def result(self) -> tuple[UnimodularMatrix | None, RealValue | None]:
        if self.best is None:
            return None, None
        return UnimodularMatrix(*self.best.entries), self.best.distance


@dataclass(frozen=True)
class BestApproximation:
    """Minimo exacto de |gamma x - y| sobre |gamma| <= bound."""

    bound: int
    gamma: UnimodularMatrix | None
    distance: RealValue | None
    rows_examined: int


def _translate_candidates(
    evaluator: ResidualEvaluator,
    v1_base: int,
    u1_base: int,
    v2: int,
    u2: int,
    t_low: int,
    t_high: int,
) -> list[int]:
    """Enteros t cercanos a -Lambda1(0)/w, con w = v2*x1 + u2*x2."""
    w_low, w_high = evaluator.form(v2, u2)
    if w_low <= 0 <= w_high:
        return list(range(t_low, t_high + 1))
    lam_low, lam_high = evaluator.component(v1_base, u1_base, 1)
    quotients = [
        Fraction(-numerator, denominator)
        for numerator in (lam_low, lam_high)
        for denominator in (w_low, w_high)
    ]
    star_low, star_high = floor(min(quotients)), ceil(max(quotients))
    # |Lambda1(t)| es convexa en t: fuera del rango gana el extremo mas cercano
    if star_low > t_high:
        return [t_high]
    if star_high < t_low:
        return [t_low]
    return list(range(max(t_low, star_low), min(t_high, star_high) + 1))


def best_approximation(
    x: PlanePoint,
    y: PlanePoint,
    bound: int,
    radius: RealValue | Fraction | None = None,
    evaluator: ResidualEvaluator | None = None,
) -> BestApproximation:
    """Busqueda podada del minimo exacto de |gamma x - y| con |gamma| <= bound.

    ``radius`` es una cota superior conocida del minimo (por ejemplo D(T)
    en el punto anterior de la grilla); solo se visitan segundas filas
    compatibles con ella.
    """
    if bound < 1:
        raise ValidationError("La cota de norma T debe ser >= 1.")
    evaluator = evaluator or ResidualEvaluator(x, y)
    tracker = _MinimumTracker(evaluator)
    radius_scaled = None if radius is None else evaluator.scaled_upper(radius)
    rows = 0
    for v2 in range(-bound, bound + 1):
        limit = radius_scaled if tracker.upper is None else tracker.upper
        if limit is None:
            candidates: Iterable[int] = range(-bound, bound + 1)
        else:
            candidates = evaluator.u2_window(v2, limit, bound)
        for u2 in candidates:
            if gcd(v2, u2) != 1:
                continue
            second_low = _abs_bounds(evaluator.component(v2, u2, 2))[0]
            limit = radius_scaled if tracker.upper is None else tracker.upper
            if limit is not None and second_low > limit:
                continue
            rows += 1
            v1_base, u1_base = lift_row(v2, u2)
            t_low, t_high = family_range(v2, u2, v1_base, u1_base, bound)
            if t_low > t_high:
                continue
            for t in _translate_candidates(evaluator, v1_base, u1_base, v2, u2, t_low, t_high):
                tracker.offer((v1_base + t * v2, u1_base + t * u2, v2, u2))
    gamma, distance = tracker.result()
    LOGGER.debug("Mejor aproximacion T=%s filas=%s", bound, rows)
    return BestApproximation(bound, gamma, distance, rows)


@dataclass(frozen=True)
class ExhaustiveScan:
    """Resumen de un recorrido exhaustivo de |gamma| <= bound."""

    bound: int
    examined: int
    minimizer: UnimodularMatrix | None
    min_distance: RealValue | None
    violations: tuple[UnimodularMatrix, ...]


def exhaustive_scan(
    x: PlanePoint,
    y: PlanePoint,
    bound: int,
    threshold: RealValue | Fraction | None = None,
    cap: int | None = None,
) -> ExhaustiveScan:
    """Recorre todas las gamma con |gamma| <= bound; minimo exacto y violaciones de umbral."""
    if cap is not None and bound > cap:
        raise CapExceededError(f"La cota T={bound} supera el limite del oraculo ({cap}).")
    evaluator = ResidualEvaluator(x, y)
    tracker = _MinimumTracker(evaluator)
    threshold_scaled = None if threshold is None else evaluator.scaled_upper(threshold)
    violations: list[UnimodularMatrix] = []
    examined = 0
    for entries in iter_entries(bound):
        examined += 1
        bounds = evaluator.distance_bounds(entries)
        if threshold is not None and bounds[0] < threshold_scaled:
            gamma = UnimodularMatrix(*entries)
            if compare(evaluator.distance(gamma), threshold) < 0:
                violations.append(gamma)
        tracker.offer(entries, bounds)
    minimizer, min_distance = tracker.result()
    LOGGER.info("Recorrido exhaustivo T=%s: %s matrices examinadas", bound, examined)
    return ExhaustiveScan(bound, examined, minimizer, min_distance, tuple(violations))
