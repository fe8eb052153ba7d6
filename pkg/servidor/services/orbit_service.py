"""Fachada de servicios sobre orbitas de SL(2,Z) usada por el gateway."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction

from parametros import ORACLE_CAP, PRECISION_CAP_BITS
from servidor.domain.contfrac import Convergent, ConvergentTable, Omega, certify_convergents
from servidor.domain.models import (
    ApproxOutcome,
    ApproxResult,
    Certificate,
    ExponentEstimate,
    Factorization,
    RecordSequence,
)
from servidor.domain.real_numbers import build_real, precision_cap
from servidor.domain.sl2 import PlanePoint, UnimodularMatrix
from servidor.services import analysis, constructions
from servidor.services.oracle import enumerate_norm_bounded, merge_partitions
from shared.errors import (
    BoundNotYetReachedError,
    CapExceededError,
    KTooSmallError,
    ValidationError,
)
from shared.real_input import parse_point, parse_real

LOGGER = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_K_TOO_SMALL = "k-too-small"
STATUS_NOT_YET_REACHED = "not-yet-reached"

DEFAULT_SIGNED_MU = Fraction(3, 10)


class OrbitService:
    """Orquesta construcciones, oraculo y analisis bajo los limites configurados."""

    def __init__(
        self,
        oracle_cap: int = ORACLE_CAP,
        precision_cap_bits: int = PRECISION_CAP_BITS,
    ) -> None:
        if oracle_cap < 1:
            raise ValidationError("El limite del oraculo debe ser >= 1.")
        self._oracle_cap = oracle_cap
        self._precision_cap_bits = precision_cap_bits

    @property
    def oracle_cap(self) -> int:
        return self._oracle_cap

    @staticmethod
    def build_point(first: str, second: str) -> PlanePoint:
        """Punto (x1, x2) desde dos textos de la gramatica de reales."""
        return PlanePoint.of(build_real(parse_real(first)), build_real(parse_real(second)))

    @staticmethod
    def build_target(text: str) -> PlanePoint:
        """Punto y desde el texto ``"y1,y2"``."""
        first, second = parse_point(text)
        return PlanePoint.of(build_real(first), build_real(second))

    def convergents(self, x: PlanePoint, count: int) -> tuple[ConvergentTable, list[Convergent]]:
        """Convergentes certificados de la pendiente x1/x2."""
        if count < 1:
            raise ValidationError("La cantidad de convergentes debe ser >= 1.")
        with precision_cap(self._precision_cap_bits):
            table = ConvergentTable(x.slope())
            rows = certify_convergents(table, count)
        LOGGER.debug("Convergentes certificados: %s", count)
        return table, rows

    def approximate(
        self,
        x: PlanePoint,
        y: PlanePoint,
        method: str,
        k_values: Sequence[int] = (),
        j0_values: Sequence[int] = (),
        omega: Omega | None = None,
        omega_y: Omega | None = None,
        mu: Fraction | None = None,
    ) -> list[ApproxOutcome]:
        """Un resultado por indice; los fallos asintoticos quedan como estado del indice."""
        if method not in constructions.METHODS:
            raise ValidationError(f"Metodo desconocido: {method!r}")
        with precision_cap(self._precision_cap_bits):
            if method == constructions.METHOD_LARGE_OMEGA:
                if omega is None:
                    raise ValidationError("El metodo irrational-large-omega requiere --omega.")
                results = constructions.approx_large_omega(x, y, omega, k_values)
                return [ApproxOutcome(result.trace.k, STATUS_OK, result) for result in results]
            if method == constructions.METHOD_SMALL_OMEGA:
                context = constructions.prepare(x, y)

                def producer(j0: int) -> ApproxResult:
                    return constructions.approx_small_omega(x, y, j0, context)

                return self._run(producer, j0_values)
            return self._run(self._producer(x, y, method, omega_y, mu), k_values)

    def _producer(
        self,
        x: PlanePoint,
        y: PlanePoint,
        method: str,
        omega_y: Omega | None,
        mu: Fraction | None,
    ) -> Callable[[int], ApproxResult]:
        if method == constructions.METHOD_ORIGIN:
            if not y.is_origin():
                raise ValidationError("El metodo origin requiere y = 0.")
            table = constructions.slope_table(x)
            return lambda k: constructions.approx_origin(x, k, table)
        if method == constructions.METHOD_SIGNED:
            table = constructions.slope_table(x)
            slope = constructions.target_slope(y)
            signed_mu = DEFAULT_SIGNED_MU if mu is None else mu
            return lambda k: constructions.approx_signed(x, y, k, signed_mu, table, slope)
        context = constructions.prepare(x, y)
        if method == constructions.METHOD_RATIONAL:
            return lambda k: constructions.approx_rational_slope(x, y, k, context)
        tau = constructions.tau_from_omega(float("inf") if omega_y is None else omega_y)
        return lambda k: constructions.approx_uniform(x, y, k, tau, context)

    @staticmethod
    def _run(producer: Callable[[int], ApproxResult], indices: Iterable[int]) -> list[ApproxOutcome]:
        outcomes: list[ApproxOutcome] = []
        for index in indices:
            try:
                result = producer(index)
            except KTooSmallError as exc:
                outcomes.append(ApproxOutcome(index, STATUS_K_TOO_SMALL, exc.attempt, str(exc)))
                continue
            except BoundNotYetReachedError as exc:
                outcomes.append(ApproxOutcome(index, STATUS_NOT_YET_REACHED, exc.attempt, str(exc)))
                continue
            outcomes.append(ApproxOutcome(index, STATUS_OK, result))
        return outcomes

    def verify_lemma1(self, x: PlanePoint, k: int) -> Certificate:
        with precision_cap(self._precision_cap_bits):
            return analysis.verify_lemma1(x, k, self._oracle_cap)

    def verify_theorem4(self, x: PlanePoint, y: PlanePoint, k: int) -> Certificate:
        with precision_cap(self._precision_cap_bits):
            return analysis.verify_theorem4(x, y, k, self._oracle_cap)

    def verify_lemma7(
        self,
        x: PlanePoint,
        y: PlanePoint,
        k: int,
        bound: int,
        mu: Fraction,
        j: int,
    ) -> Factorization:
        with precision_cap(self._precision_cap_bits):
            return analysis.verify_lemma7(x, y, k, bound, mu, j, self._oracle_cap)

    def exponents(
        self,
        x: PlanePoint,
        y: PlanePoint,
        t_max: int,
        ratio: Fraction | int = 2,
        source: str = analysis.SOURCE_ORACLE,
        omega_xi: Omega | None = None,
        omega_y: Omega | None = None,
        window_start: int | None = None,
    ) -> tuple[RecordSequence, ExponentEstimate]:
        """Escalera D(T) y estimacion de exponentes con la comparacion teorica disponible."""
        if source not in analysis.SOURCES:
            raise ValidationError(f"Fuente desconocida: {source!r}")
        if source == analysis.SOURCE_ORACLE and t_max > self._oracle_cap:
            raise CapExceededError(f"T={t_max} supera el limite del oraculo ({self._oracle_cap}).")
        with precision_cap(self._precision_cap_bits):
            kind = self._kind(x, y)
            grid = analysis.geometric_grid(t_max, ratio)
            candidates = None
            if source == analysis.SOURCE_CONSTRUCTIONS:
                candidates = self._construction_candidates(x, y, kind, t_max, omega_y)
            sequence = analysis.staircase(
                x, y, grid, source, candidates, self._oracle_cap, Fraction(ratio)
            )
            theory, caps = None, None
            if omega_xi is not None and (kind != analysis.KIND_IRRATIONAL or omega_y is not None):
                theory = analysis.theory_exponents(kind, omega_xi, omega_y)
            if omega_xi is not None and kind == analysis.KIND_RATIONAL:
                caps = analysis.upper_bound_exponents_rational(omega_xi)
            estimate = analysis.estimate_exponents(sequence, window_start, None, theory, caps)
        return sequence, estimate

    @staticmethod
    def _kind(x: PlanePoint, y: PlanePoint) -> str:
        if y.is_origin():
            return analysis.KIND_ORIGIN
        context = constructions.prepare(x, y)
        if isinstance(context.slope, constructions.RationalSlope):
            return analysis.KIND_RATIONAL
        return analysis.KIND_IRRATIONAL

    def _construction_candidates(
        self,
        x: PlanePoint,
        y: PlanePoint,
        kind: str,
        t_max: int,
        omega_y: Omega | None,
    ) -> list[ApproxResult]:
        method = {
            analysis.KIND_ORIGIN: constructions.METHOD_ORIGIN,
            analysis.KIND_RATIONAL: constructions.METHOD_RATIONAL,
            analysis.KIND_IRRATIONAL: constructions.METHOD_UNIFORM,
        }[kind]
        producer = self._producer(x, y, method, omega_y, None)
        table = constructions.slope_table(x)
        indices = []
        k = 1
        while table.q(k) <= t_max:
            indices.append(k)
            k += 1
        candidates = []
        for outcome in self._run(producer, indices):
            if outcome.result is not None:
                candidates.append(outcome.result)
        LOGGER.debug("Candidatos de construccion: %s", len(candidates))
        return candidates

    def enumerate(self, bound: int, partitions: int = 1) -> list[UnimodularMatrix]:
        """Enumeracion completa |gamma| <= T, opcionalmente unida desde particiones."""
        if bound > self._oracle_cap:
            raise CapExceededError(f"T={bound} supera el limite del oraculo ({self._oracle_cap}).")
        if partitions < 1:
            raise ValidationError("La cantidad de particiones debe ser >= 1.")
        if partitions == 1:
            return list(enumerate_norm_bounded(bound))
        streams = [enumerate_norm_bounded(bound, (index, partitions)) for index in range(partitions)]
        return merge_partitions(streams)
