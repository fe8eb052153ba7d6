"""Modelos de dominio de resultados: aproximaciones, certificados y exponentes."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

from .contfrac import ConvergentMatrix
from .real_numbers import RealValue, compare, real_max
from .sl2 import PlanePoint, UnimodularMatrix, apply


@dataclass(frozen=True, slots=True)
class BoundCheck:
    """Desigualdad verificada en aritmetica exacta.

    ``proven`` distingue cotas demostradas para todo k (su falla es un bug)
    de cotas que solo valen para k suficientemente grande.
    """

    name: str
    statement: str
    value: str
    holds: bool
    proven: bool = True


@dataclass(frozen=True, slots=True)
class ConstructionTrace:
    """Traza de la construccion N U^ell M_k."""

    k: int
    n_matrix: UnimodularMatrix | None = None
    ell: int | None = None
    j: int | None = None
    rho: RealValue | None = None


@dataclass(frozen=True)
class ApproxResult:
    """Matriz gamma con su residuo exacto Lambda = gamma x - y."""

    method: str
    gamma: UnimodularMatrix
    residual: tuple[RealValue, RealValue]
    trace: ConstructionTrace
    checks: tuple[BoundCheck, ...] = ()

    @property
    def norm(self) -> int:
        return self.gamma.norm()

    @property
    def distance(self) -> RealValue:
        return real_max(abs(self.residual[0]), abs(self.residual[1]))

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    def with_checks(self, *extra: BoundCheck) -> ApproxResult:
        return replace(self, checks=(*self.checks, *extra))

    def matches(self, x: PlanePoint, y: PlanePoint) -> bool:
        """Recalcula gamma x - y y lo compara exactamente con el residuo guardado."""
        image = apply(self.gamma, x) - y
        return compare(image.x1, self.residual[0]) == 0 and compare(image.x2, self.residual[1]) == 0


@dataclass(frozen=True)
class Certificate:
    """Resultado de una verificacion exhaustiva con el oraculo."""

    name: str
    inputs: dict[str, str]
    bound: int
    examined: int
    threshold: RealValue | Fraction
    passed: bool
    minimizer: UnimodularMatrix | None = None
    min_distance: RealValue | None = None


@dataclass(frozen=True, slots=True)
class StaircasePoint:
    """Valor D(T) = min_{|gamma| <= T} |gamma x - y| en un punto de la grilla."""

    bound: int
    distance: RealValue | None
    minimizer: UnimodularMatrix | None


@dataclass(frozen=True, slots=True)
class Record:
    gamma: UnimodularMatrix
    norm: int
    distance: RealValue


@dataclass(frozen=True)
class RecordSequence:
    """Registros que mejoran estrictamente y escalera D(T) sobre la grilla."""

    source: str
    records: tuple[Record, ...]
    staircase: tuple[StaircasePoint, ...]
    grid_ratio: Fraction = Fraction(2)


@dataclass(frozen=True, slots=True)
class TheoryExponents:
    """Valores teoricos exactos (o cotas inferiores) de mu y mu gorro."""

    kind: str
    mu: Fraction
    mu_hat: Fraction
    mu_is_lower_bound: bool = False
    mu_hat_is_lower_bound: bool = False


@dataclass(frozen=True)
class ExponentEstimate:
    """Estimaciones empiricas con su ventana y la comparacion teorica."""

    mu: mpmath.mpf
    mu_hat: mpmath.mpf
    window_start: int
    window_stop: int
    grid_points: int
    records: int
    theory: TheoryExponents | None = None
    upper_caps: tuple[Fraction, Fraction] | None = None


@dataclass(frozen=True)
class Factorization:
    """Descomposicion gamma = N G M con cotas por columna de G."""

    gamma: UnimodularMatrix
    n_matrix: UnimodularMatrix
    g_matrix: UnimodularMatrix
    m_matrix: ConvergentMatrix
    first_column_bound: mpmath.mpf | None = None
    second_column_bound: mpmath.mpf | None = None
    checks: tuple[BoundCheck, ...] = field(default=())

    @property
    def first_column_norm(self) -> int:
        return max(abs(self.g_matrix.v1), abs(self.g_matrix.v2))

    @property
    def second_column_norm(self) -> int:
        return max(abs(self.g_matrix.u1), abs(self.g_matrix.u2))

    @property
    def certified(self) -> bool:
        return bool(self.checks) and all(check.holds for check in self.checks)


@dataclass(frozen=True, slots=True)
class ApproxOutcome:
    """Resultado por indice de un recorrido de construcciones.

    ``status`` es ``ok``, ``k-too-small`` o ``not-yet-reached``; en los dos
    ultimos casos ``result`` es el intento calculado, si existe.
    """

    index: int
    status: str
    result: ApproxResult | None = None
    message: str = ""
