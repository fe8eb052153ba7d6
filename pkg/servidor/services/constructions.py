"""Construcciones explicitas gamma = N U^ell M_k y sus certificados.

Cada constructor devuelve un ``ApproxResult`` con el residuo exacto
gamma x - y y la lista de desigualdades verificadas. Las cotas marcadas
``proven`` valen para todo indice admisible: si una falla se lanza
``BoundViolatedError``. Las cotas asintoticas solo se reportan.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, replace
from fractions import Fraction

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from servidor.domain.contfrac import ConvergentTable, Omega
from servidor.domain.models import ApproxResult, BoundCheck, ConstructionTrace
from servidor.domain.real_numbers import (
    ExactReal,
    RealValue,
    compare,
    decide_sign,
    floor as real_floor,
    real_max,
)
from servidor.domain.sl2 import IDENTITY, J, PlanePoint, UnimodularMatrix, apply, unipotent
from servidor.domain.surds import SurdSum
from shared.errors import (
    BoundNotYetReachedError,
    BoundViolatedError,
    EvenKError,
    KTooSmallError,
    PreconditionFailedError,
    RationalInputError,
    SlopeRationalError,
    StreamEmptyError,
    ValidationError,
    WrongQuadrantError,
    ZeroRowError,
)

LOGGER = logging.getLogger(__name__)

METHOD_BUILD = "build"
METHOD_ORIGIN = "origin"
METHOD_RATIONAL = "rational"
METHOD_IRRATIONAL = "irrational"
METHOD_SMALL_OMEGA = "irrational-small-omega"
METHOD_LARGE_OMEGA = "irrational-large-omega"
METHOD_UNIFORM = "uniform"
METHOD_SIGNED = "signed"

METHODS = (
    METHOD_ORIGIN,
    METHOD_RATIONAL,
    METHOD_SMALL_OMEGA,
    METHOD_LARGE_OMEGA,
    METHOD_UNIFORM,
    METHOD_SIGNED,
)

Scalar = RealValue | int | Fraction


@dataclass(frozen=True)
class NormalizedPair:
    """Par (x', y') = (A x, B y) con |x'| = |x'_2| y |y'| = |y'_2|."""

    x: PlanePoint
    y: PlanePoint
    x_transform: UnimodularMatrix = IDENTITY
    y_transform: UnimodularMatrix = IDENTITY

    def map_back(self, gamma: UnimodularMatrix) -> UnimodularMatrix:
        """gamma' x' - y' = B (gamma x - y) con gamma = B^-1 gamma' A."""
        return self.y_transform.inverse() @ gamma @ self.x_transform

    def map_residual(self, residual: PlanePoint) -> PlanePoint:
        return apply(self.y_transform.inverse(), residual)


def normalize(x: PlanePoint, y: PlanePoint) -> NormalizedPair:
    """Aplica J a x y/o a y para que la segunda coordenada domine."""
    slope_table(x)
    x_transform = J if compare(abs(x.x1), abs(x.x2)) > 0 else IDENTITY
    y_transform = J if compare(abs(y.x1), abs(y.x2)) > 0 else IDENTITY
    x_prime = x if x_transform == IDENTITY else apply(x_transform, x)
    y_prime = y if y_transform == IDENTITY else apply(y_transform, y)
    return NormalizedPair(x_prime, y_prime, x_transform, y_transform)


def slope_table(x: PlanePoint) -> ConvergentTable:
    """Tabla de convergentes de xi = x1/x2; rechaza pendientes racionales."""
    if decide_sign(x.x2) == 0:
        raise SlopeRationalError(f"El punto {x.describe()} tiene x2 = 0 (pendiente racional).")
    try:
        return ConvergentTable(x.slope())
    except RationalInputError as exc:
        raise SlopeRationalError(f"La pendiente de x es racional: {exc}") from exc


def complete_primitive(a: int, b: int) -> UnimodularMatrix:
    """Completa la columna primitiva (a, b) a [[a, a'], [b, b']] en SL(2,Z).

    Entre todas las completaciones se elige la de menor max(|a'|, |b'|),
    luego menor |b'| y finalmente b' >= 0.
    """
    x_coef, y_coef, divisor = (int(item) for item in igcdex(a, b))
    if divisor != 1:
        raise ValidationError(f"La columna ({a}, {b}) no es primitiva.")
    base_a, base_b = -y_coef, x_coef
    centers: list[Fraction] = []
    for numerator, denominator in (
        (-base_b, b),
        (-base_a, a),
        (-(base_a - base_b), a - b),
        (-(base_a + base_b), a + b),
    ):
        if denominator:
            centers.append(Fraction(numerator, denominator))
    candidates = sorted(
        {step for center in centers for step in range(math.floor(center) - 1, math.floor(center) + 3)}
    ) or [0]

    def _key(step: int) -> tuple[int, int, bool]:
        a_prime, b_prime = base_a + step * a, base_b + step * b
        return max(abs(a_prime), abs(b_prime)), abs(b_prime), b_prime < 0

    best = min(candidates, key=_key)
    return UnimodularMatrix(a, base_a + best * a, b, base_b + best * b)


class TargetSlope(ABC):
    """Convergentes t_j/s_j de la pendiente y = y1/y2 del objetivo."""

    @abstractmethod
    def t(self, index: int) -> int: ...

    @abstractmethod
    def s(self, index: int) -> int: ...

    @abstractmethod
    def delta(self, index: int) -> RealValue:
        """s_j y - t_j."""

    def n_matrix(self, index: int) -> UnimodularMatrix:
        """N_j = [[t_j, t'_j], [s_j, s'_j]] con s'_j = (-1)^(j-1) s_(j-1)."""
        if index < 1:
            raise ValidationError("N_j requiere j >= 1.")
        sign = 1 if index % 2 == 1 else -1
        return UnimodularMatrix(
            self.t(index),
            sign * self.t(index - 1),
            self.s(index),
            sign * self.s(index - 1),
        )

    def signed_matrix(self, index: int) -> UnimodularMatrix:
        """Variante de entradas no negativas (pendiente positiva)."""
        if index < 1:
            raise ValidationError("La variante con signos requiere j >= 1.")
        if index % 2 == 0:
            return UnimodularMatrix(
                self.t(index - 1), self.t(index), self.s(index - 1), self.s(index)
            )
        return UnimodularMatrix(self.t(index), self.t(index - 1), self.s(index), self.s(index - 1))


class RationalSlope(TargetSlope):
    """Pendiente a/b reducida, con b >= 0, y su completacion fija N."""

    def __init__(self, a: int, b: int) -> None:
        if math.gcd(a, b) != 1:
            raise ValidationError(f"La pendiente {a}/{b} no esta reducida.")
        self.a = a
        self.b = b
        self.completion = complete_primitive(a, b)
        self._numerators: list[int] = []
        self._denominators: list[int] = []
        if b:
            self._expand(Fraction(a, b))

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)

    def _expand(self, value: Fraction) -> None:
        p_prev, p_prev2, q_prev, q_prev2 = 1, 0, 0, 1
        remainder = value
        while True:
            digit = math.floor(remainder)
            p_prev, p_prev2 = digit * p_prev + p_prev2, p_prev
            q_prev, q_prev2 = digit * q_prev + q_prev2, q_prev
            self._numerators.append(p_prev)
            self._denominators.append(q_prev)
            if remainder == digit:
                return
            remainder = 1 / (remainder - digit)

    def _checked(self, index: int) -> int:
        if not 0 <= index < len(self._denominators):
            raise ValidationError(
                f"La pendiente {self.a}/{self.b} solo tiene convergentes hasta "
                f"j={len(self._denominators) - 1}."
            )
        return index

    def t(self, index: int) -> int:
        return self._numerators[self._checked(index)]

    def s(self, index: int) -> int:
        return self._denominators[self._checked(index)]

    def delta(self, index: int) -> RealValue:
        return ExactReal.from_number(self.s(index) * self.value - self.t(index))

    def __repr__(self) -> str:
        return f"RationalSlope({self.a}/{self.b})"


class IrrationalSlope(TargetSlope):
    """Pendiente irracional con su propio motor de fracciones continuas."""

    def __init__(self, value: RealValue) -> None:
        self.value = value
        self.table = ConvergentTable(value)

    def t(self, index: int) -> int:
        return self.table.p(index)

    def s(self, index: int) -> int:
        return self.table.q(index)

    def delta(self, index: int) -> RealValue:
        return self.table.epsilon(index)

    def __repr__(self) -> str:
        return f"IrrationalSlope({self.value.describe()})"


def target_slope(y: PlanePoint) -> TargetSlope:
    """Clasifica la pendiente y1/y2; y2 = 0 se lee como a = 1, b = 0."""
    if decide_sign(y.x2) == 0:
        if decide_sign(y.x1) == 0:
            raise ValidationError("El objetivo y = 0 no tiene pendiente; usar el metodo origin.")
        return RationalSlope(1, 0)
    slope = y.x1 / y.x2
    exact = slope.exact
    if exact is not None and exact.is_rational:
        value = exact.as_fraction()
        return RationalSlope(value.numerator, value.denominator)
    try:
        return IrrationalSlope(slope)
    except RationalInputError as exc:
        raise ValidationError(f"Pendiente del objetivo no valida: {exc}") from exc


@dataclass(frozen=True)
class ConstructionContext:
    """Datos compartidos por todas las construcciones sobre un par (x, y)."""

    x: PlanePoint
    y: PlanePoint
    pair: NormalizedPair
    table: ConvergentTable
    slope: TargetSlope | None

    @property
    def ratio(self) -> RealValue:
        """|y'_2| / |x'_2|."""
        return abs(self.pair.y.x2) / abs(self.pair.x.x2)


def prepare(x: PlanePoint, y: PlanePoint) -> ConstructionContext:
    pair = normalize(x, y)
    table = slope_table(pair.x)
    slope = None if pair.y.is_origin() else target_slope(pair.y)
    return ConstructionContext(x, y, pair, table, slope)


def _abs_epsilon(table: ConvergentTable, index: int) -> RealValue:
    epsilon = table.epsilon(index)
    return epsilon if index % 2 == 0 else -epsilon


def _show(value: Scalar) -> str:
    if isinstance(value, RealValue):
        exact = value.exact
        if exact is not None and exact.is_rational:
            return str(exact.as_fraction())
        return value.nstr(15)
    return str(value)


def _check(
    name: str,
    statement: str,
    left: Scalar,
    right: Scalar,
    proven: bool = True,
    strict: bool = False,
) -> BoundCheck:
    ordering = compare(left, right)
    holds = ordering < 0 if strict else ordering <= 0
    relation = "<" if strict else "<="
    return BoundCheck(name, statement, f"{_show(left)} {relation} {_show(right)}", holds, proven)


def _identity_check(name: str, statement: str, left: RealValue, right: RealValue) -> BoundCheck | None:
    """Igualdad exacta; se omite para valores perezosos (no decidible)."""
    if left.exact is None or right.exact is None:
        return None
    return BoundCheck(name, statement, "igualdad exacta", left.exact == right.exact)


def _require(checks: Iterable[BoundCheck]) -> None:
    for check in checks:
        if check.proven and not check.holds:
            raise BoundViolatedError(
                f"Cota demostrada violada ({check.name}): {check.statement} [{check.value}]"
            )


def rho(
    n_matrix: UnimodularMatrix,
    k: int,
    x: PlanePoint,
    y: PlanePoint,
    table: ConvergentTable | None = None,
) -> RealValue:
    """rho = y2/(x2 s |eps_(k-1)|) - eps_k/|eps_(k-1)| - s'/s."""
    s, s_prime = n_matrix.v2, n_matrix.u2
    if s == 0:
        raise ZeroRowError(f"La segunda fila de {n_matrix} tiene s = 0.")
    if k < 1:
        raise ValidationError("rho requiere k >= 1.")
    table = table or slope_table(x)
    previous = _abs_epsilon(table, k - 1)
    return y.x2 / (x.x2 * s * previous) - table.epsilon(k) / previous - Fraction(s_prime, s)


def choose_ell_truncate(value: RealValue) -> int:
    """Entero con |ell - rho| < 1 y |ell| <= |rho| (truncamiento hacia cero)."""
    whole = real_floor(value)
    if whole < 0 and compare(value, whole) != 0:
        return whole + 1
    return whole


def choose_ell_ceiling(value: RealValue) -> int:
    """Menor entero mayor o igual a rho."""
    return -real_floor(-value)


def _norm_bracket_check(
    n_matrix: UnimodularMatrix,
    ell: int,
    k: int,
    gamma: UnimodularMatrix,
    table: ConvergentTable,
) -> BoundCheck:
    s, s_prime = n_matrix.v2, n_matrix.u2
    q_k, q_prev = table.q(k), table.q(k - 1)
    lower = abs(ell * q_prev + (-1) ** (k - 1) * q_k) * abs(s) - abs(s_prime) * q_prev
    # con |xi| < 1 los maximos se reducen a q_(k-1) y q_k
    upper = n_matrix.norm() * (
        abs(ell) * max(q_prev, abs(table.p(k - 1))) + 2 * max(q_k, abs(table.p(k)))
    )
    norm = gamma.norm()
    return BoundCheck(
        "norm_bracket",
        "|l q_(k-1) + (-1)^(k-1) q_k| |s| - |s'| q_(k-1) <= |gamma| <= |l| |N| q_(k-1) + 2 |N| q_k",
        f"{lower} <= {norm} <= {upper}",
        lower <= norm <= upper,
    )


def _combination_checks(
    n_matrix: UnimodularMatrix,
    ell: int,
    k: int,
    gamma: UnimodularMatrix,
    x: PlanePoint,
    y: PlanePoint,
    table: ConvergentTable,
) -> list[BoundCheck]:
    t, t_prime, s, s_prime = n_matrix.v1, n_matrix.u1, n_matrix.v2, n_matrix.u2
    xi = x.slope()
    slope = y.x1 / y.x2
    combination = slope * (gamma.v2 * xi + gamma.u2) - (gamma.v1 * xi + gamma.u1)
    delta = s * slope - t
    delta_prime = s_prime * slope - t_prime
    previous = _abs_epsilon(table, k - 1)
    q_k = table.q(k)
    bound = abs(delta) * Fraction(abs(ell), q_k) + abs(delta) / table.q(k + 1) + abs(delta_prime) / q_k
    checks = [
        _check(
            "combination_bound",
            "|v1 xi + u1 - y (v2 xi + u2)| <= delta |l| / q_k + delta / q_(k+1) + delta' / q_k",
            abs(combination),
            bound,
        )
    ]
    identity = _identity_check(
        "combination_identity",
        "y (v2 xi + u2) - v1 xi - u1 = (s y - t)(eps_k + l |eps_(k-1)|) + (s' y - t') |eps_(k-1)|",
        combination,
        delta * (table.epsilon(k) + ell * previous) + delta_prime * previous,
    )
    if identity is not None:
        checks.append(identity)
    return checks


def build_gamma(
    n_matrix: UnimodularMatrix,
    ell: int,
    k: int,
    x: PlanePoint,
    y: PlanePoint,
    table: ConvergentTable | None = None,
    rho_value: RealValue | None = None,
) -> ApproxResult:
    """gamma = N U^ell M_k con las cotas de norma y de combinacion lineal certificadas."""
    if k < 1:
        raise ValidationError("build_gamma requiere k >= 1.")
    table = table or slope_table(x)
    gamma = n_matrix @ unipotent(ell) @ table.matrix(k).matrix
    image = apply(gamma, x) - y
    checks = [_norm_bracket_check(n_matrix, ell, k, gamma, table)]
    if decide_sign(y.x2) != 0:
        checks.extend(_combination_checks(n_matrix, ell, k, gamma, x, y, table))
    if n_matrix.v2 != 0:
        if rho_value is None:
            rho_value = rho(n_matrix, k, x, y, table)
        identity = _identity_check(
            "lambda2_identity",
            "Lambda2 = x2 s |eps_(k-1)| (l - rho)",
            image.x2,
            x.x2 * n_matrix.v2 * _abs_epsilon(table, k - 1) * (ell - rho_value),
        )
        if identity is not None:
            checks.append(identity)
    _require(checks)
    trace = ConstructionTrace(k=k, n_matrix=n_matrix, ell=ell, rho=rho_value)
    return ApproxResult(METHOD_BUILD, gamma, (image.x1, image.x2), trace, tuple(checks))


def _finish(
    context: ConstructionContext,
    method: str,
    built: ApproxResult,
    checks: Iterable[BoundCheck],
    j: int | None = None,
) -> ApproxResult:
    """Lleva la solucion normalizada al par original."""
    gamma = context.pair.map_back(built.gamma)
    image = apply(gamma, context.x) - context.y
    return ApproxResult(
        method,
        gamma,
        (image.x1, image.x2),
        replace(built.trace, j=j),
        (*built.checks, *checks),
    )


def approx_origin(x: PlanePoint, k: int, table: ConvergentTable | None = None) -> ApproxResult:
    """gamma = M_k como aproximacion del origen: |M_k x| = |x2| |eps_(k-1)|."""
    if k < 1:
        raise ValidationError("M_k requiere k >= 1.")
    table = table or slope_table(x)
    gamma = table.matrix(k).matrix
    image = apply(gamma, x)
    result = ApproxResult(METHOD_ORIGIN, gamma, (image.x1, image.x2), ConstructionTrace(k=k))
    distance = result.distance
    norm = gamma.norm()

    checks: list[BoundCheck] = []
    identity = _identity_check(
        "origin_identity",
        "|M_k x| = |x2| |eps_(k-1)|",
        distance,
        abs(x.x2) * _abs_epsilon(table, k - 1),
    )
    if identity is not None:
        checks.append(identity)

    xi = table.value
    p_k, q_k = table.p(k), table.q(k)
    small_slope = compare(abs(xi), 1) < 0
    same_sign = decide_sign(table.epsilon(k)) == decide_sign(xi)
    admissible = small_slope or (same_sign and norm == max(abs(p_k), q_k))
    checks.append(
        _check("origin_product", "|gamma x| |gamma| <= |x|", distance * norm, x.sup_norm(), proven=admissible)
    )
    _require(checks)
    return result.with_checks(*checks)


def _require_rational(context: ConstructionContext) -> RationalSlope:
    slope = context.slope
    if slope is None:
        raise ValidationError("El objetivo y = 0 se aproxima con el metodo origin.")
    if not isinstance(slope, RationalSlope):
        raise ValidationError("La pendiente del objetivo no es racional.")
    return slope


def _require_irrational(context: ConstructionContext) -> IrrationalSlope:
    slope = context.slope
    if slope is None:
        raise ValidationError("El objetivo y = 0 se aproxima con el metodo origin.")
    if not isinstance(slope, IrrationalSlope):
        raise ValidationError("La pendiente del objetivo es racional; usar el metodo rational.")
    return slope


def approx_rational_slope(
    x: PlanePoint,
    y: PlanePoint,
    k: int,
    context: ConstructionContext | None = None,
) -> ApproxResult:
    """Construccion con N fija (completacion de (a, b)) para pendiente racional."""
    context = context or prepare(x, y)
    slope = _require_rational(context)
    pair, table = context.pair, context.table
    n_matrix = slope.completion
    rho_value = rho(n_matrix, k, pair.x, pair.y, table)
    ell = choose_ell_truncate(rho_value)
    built = build_gamma(n_matrix, ell, k, pair.x, pair.y, table, rho_value)

    ratio = context.ratio
    x2, y2 = abs(pair.x.x2), abs(pair.y.x2)
    q_k, q_prev = table.q(k), table.q(k - 1)
    norm, distance = built.norm, built.distance
    lower = _check(
        "norm_sandwich_lower",
        "|y2| q_(k-1) q_k / (2 |x2|) <= |gamma|",
        ratio * Fraction(q_prev * q_k, 2),
        norm,
        proven=False,
    )
    upper = _check(
        "norm_sandwich_upper",
        "|gamma| <= 3 |y2| q_(k-1) q_k / |x2|",
        norm,
        ratio * (3 * q_prev * q_k),
        proven=False,
    )
    slope_value = pair.y.x1 / pair.y.x2
    delta = abs(slope.b * slope_value - slope.a)
    c_squared = 12 * max(abs(slope.a), slope.b) ** 2 * x2 * y2
    checks = [
        lower,
        upper,
        BoundCheck("delta_zero", "|b y - a| = 0", _show(delta), decide_sign(delta) == 0),
        _check("residual_rational", "|gamma x - y| q_k <= 2 b |x2|", distance * q_k, 2 * slope.b * x2),
        _check(
            "residual_norm_rational",
            "|gamma x - y|^2 |gamma| <= 12 max(|a|,|b|)^2 |x| |y|",
            distance**2 * norm,
            c_squared,
            proven=upper.holds,
        ),
    ]
    _require(checks)
    result = _finish(context, METHOD_RATIONAL, built, checks)
    if not (lower.holds and upper.holds):
        raise KTooSmallError(
            f"k={k} demasiado pequeno: la norma {norm} no cumple el encaje de norma.",
            attempt=result,
        )
    LOGGER.debug("Construccion racional k=%s ell=%s norma=%s", k, ell, norm)
    return result


def approx_irrational_slope(
    x: PlanePoint,
    y: PlanePoint,
    j: int,
    k: int,
    context: ConstructionContext | None = None,
    method: str = METHOD_IRRATIONAL,
) -> ApproxResult:
    """gamma = N_j U^ell M_k con las conclusiones de norma y residuo certificadas."""
    if j < 1 or k < 1:
        raise ValidationError("Se requieren j >= 1 y k >= 1.")
    context = context or prepare(x, y)
    slope = _require_irrational(context)
    pair, table = context.pair, context.table
    n_matrix = slope.n_matrix(j)
    rho_value = rho(n_matrix, k, pair.x, pair.y, table)
    ell = choose_ell_truncate(rho_value)
    built = build_gamma(n_matrix, ell, k, pair.x, pair.y, table, rho_value)

    ratio = context.ratio
    x2, y2 = abs(pair.x.x2), abs(pair.y.x2)
    q_k, q_prev = table.q(k), table.q(k - 1)
    s_j, s_next = slope.s(j), slope.s(j + 1)
    norm, distance = built.norm, built.distance
    leading = ratio * (q_prev * q_k)
    checks = [
        _check(
            "norm_upper",
            "|gamma| <= 2 |y2| q_(k-1) q_k / |x2| + 4 s_j q_k",
            norm,
            2 * leading + 4 * s_j * q_k,
        ),
        _check(
            "norm_lower",
            "| |y2| q_(k-1) q_k / |x2| - s_j q_k | - 4 s_j q_(k-1) <= |gamma|",
            abs(leading - s_j * q_k) - 4 * s_j * q_prev,
            norm,
            proven=compare(ratio * q_prev, s_j) >= 0,
        ),
        _check(
            "residual_bound",
            "|gamma x - y| <= 2 |y2| / (s_j s_(j+1)) + 5 |x2| s_j / q_k",
            distance,
            y2 * Fraction(2, s_j * s_next) + x2 * Fraction(5 * s_j, q_k),
        ),
        _check("slope_delta", "|s_j y - t_j| <= 1 / s_(j+1)", abs(slope.delta(j)), Fraction(1, s_next)),
        _check(
            "slope_delta_prev",
            "|s_(j-1) y - t_(j-1)| <= 1 / s_j",
            abs(slope.delta(j - 1)),
            Fraction(1, s_j),
        ),
        _check(
            "ell_lower",
            "|y2| q_k / (|x2| s_j) - 3 <= |l|",
            ratio * Fraction(q_k, s_j) - 3,
            abs(ell),
        ),
        _check(
            "ell_upper",
            "|l| <= 2 |y2| q_k / (|x2| s_j) + 2",
            abs(ell),
            ratio * Fraction(2 * q_k, s_j) + 2,
        ),
    ]
    _require(checks)
    LOGGER.debug("Construccion irracional j=%s k=%s ell=%s norma=%s", j, k, ell, norm)
    return _finish(context, method, built, checks, j=j)


def _c_prime_cubed(context: ConstructionContext) -> RealValue:
    """(7 sqrt(5) |x|^(1/3) |y|^(2/3))^3."""
    pair = context.pair
    root_five = ExactReal(SurdSum.sqrt(5))
    return 1715 * root_five * abs(pair.x.x2) * abs(pair.y.x2) ** 2


def _residual_norm_irrational(context: ConstructionContext, result: ApproxResult) -> BoundCheck:
    return _check(
        "residual_norm_irrational",
        "|gamma x - y|^3 |gamma| <= (7 sqrt(5))^3 |x| |y|^2",
        result.distance**3 * result.norm,
        _c_prime_cubed(context),
        proven=False,
    )


def select_indices_small_omega(
    x: PlanePoint,
    y: PlanePoint,
    j0: int,
    context: ConstructionContext | None = None,
) -> tuple[int, int]:
    """(j, k) con r q_(k-1) < s_j^3 <= r q_k < s_(j+1)^3, r = |y2|/|x2|."""
    if j0 < 1:
        raise ValidationError("j0 debe ser >= 1.")
    context = context or prepare(x, y)
    slope = _require_irrational(context)
    table, ratio = context.table, context.ratio
    cube = slope.s(j0) ** 3
    k = 1
    while compare(ratio * table.q(k), cube) < 0:
        k += 1
    if compare(ratio * table.q(k - 1), cube) >= 0:
        raise PreconditionFailedError(
            f"j0={j0} demasiado pequeno: |y2| q_(k-1)/|x2| >= s_j0^3 ya para k={k}."
        )
    j = j0
    while compare(slope.s(j + 1) ** 3, ratio * table.q(k)) <= 0:
        j += 1
    sandwich = (
        compare(ratio * table.q(k - 1), slope.s(j) ** 3) < 0
        and compare(slope.s(j) ** 3, ratio * table.q(k)) <= 0
        and compare(ratio * table.q(k), slope.s(j + 1) ** 3) < 0
    )
    if not sandwich:
        raise BoundViolatedError(f"Seleccion de indices inconsistente: j={j}, k={k}.")
    return j, k


def approx_small_omega(
    x: PlanePoint,
    y: PlanePoint,
    j0: int,
    context: ConstructionContext | None = None,
) -> ApproxResult:
    """Pendiente irracional con indices elegidos segun el regimen omega(xi) < 3."""
    context = context or prepare(x, y)
    j, k = select_indices_small_omega(x, y, j0, context)
    result = approx_irrational_slope(x, y, j, k, context, METHOD_SMALL_OMEGA)
    pair = context.pair
    table = context.table
    checks = [
        _check(
            "small_omega_residual",
            "|gamma x - y|^3 q_(k-1) q_k <= 343 |y2| |x2|^2",
            result.distance**3 * (table.q(k - 1) * table.q(k)),
            343 * abs(pair.y.x2) * abs(pair.x.x2) ** 2,
        ),
        _residual_norm_irrational(context, result),
    ]
    _require(checks)
    return result.with_checks(*checks)


def _omega_parts(omega: Omega) -> tuple[int, int]:
    if isinstance(omega, float):
        raise ValidationError("omega debe ser un racional finito.")
    value = Fraction(omega)
    if value <= 2:
        raise ValidationError("El regimen de omega grande requiere omega > 2.")
    return value.numerator, value.denominator


def iter_large_omega_indices(
    x: PlanePoint,
    y: PlanePoint,
    omega: Omega,
    k_range: Iterable[int],
    context: ConstructionContext | None = None,
) -> Iterator[tuple[int, int]]:
    """(j, k) con q_(k-1)^omega <= q_k y s_j^2 <= r q_k < s_(j+1)^2."""
    numerator, denominator = _omega_parts(omega)
    context = context or prepare(x, y)
    slope = _require_irrational(context)
    table, ratio = context.table, context.ratio
    for k in k_range:
        if k < 1:
            continue
        q_prev, q_k = table.q(k - 1), table.q(k)
        # q_(k-1) = 1 cumple la condicion para todo omega
        if q_prev < 2 or q_prev**numerator > q_k**denominator:
            continue
        target = ratio * q_k
        j = 0
        while compare(slope.s(j + 1) ** 2, target) <= 0:
            j += 1
        if j < 1:
            LOGGER.debug("k=%s descartado: s_1^2 > |y2| q_k / |x2|", k)
            continue
        if not (compare(slope.s(j) ** 2, target) <= 0 < compare(slope.s(j + 1) ** 2, target)):
            raise BoundViolatedError(f"Seleccion de indices inconsistente: j={j}, k={k}.")
        yield j, k


def select_indices_large_omega(
    x: PlanePoint,
    y: PlanePoint,
    omega: Omega,
    k_range: Iterable[int],
    context: ConstructionContext | None = None,
) -> list[tuple[int, int]]:
    indices = list(iter_large_omega_indices(x, y, omega, k_range, context))
    if not indices:
        raise StreamEmptyError(
            f"Ningun k del rango cumple q_(k-1)^omega <= q_k con omega={omega}."
        )
    return indices


def approx_large_omega(
    x: PlanePoint,
    y: PlanePoint,
    omega: Omega,
    k_range: Iterable[int],
    context: ConstructionContext | None = None,
) -> list[ApproxResult]:
    """Construcciones sobre los k con q_k muy grande respecto de q_(k-1)."""
    context = context or prepare(x, y)
    pair, table = context.pair, context.table
    results: list[ApproxResult] = []
    for j, k in select_indices_large_omega(x, y, omega, k_range, context):
        result = approx_irrational_slope(x, y, j, k, context, METHOD_LARGE_OMEGA)
        checks = [
            _check(
                "large_omega_residual",
                "|gamma x - y|^2 q_k <= 49 |x2| |y2|",
                result.distance**2 * table.q(k),
                49 * abs(pair.x.x2) * abs(pair.y.x2),
            ),
            _residual_norm_irrational(context, result),
        ]
        _require(checks)
        results.append(result.with_checks(*checks))
    return results


def tau_from_omega(omega: Omega) -> Fraction:
    """tau = omega / (2 omega + 1); 1/2 para omega infinito."""
    if isinstance(omega, float):
        if math.isinf(omega):
            return Fraction(1, 2)
        raise ValidationError("omega debe ser racional o infinito.")
    value = Fraction(omega)
    if value < 1:
        raise ValidationError("La medida de irracionalidad es >= 1.")
    return value / (2 * value + 1)


def select_indices_uniform(
    x: PlanePoint,
    y: PlanePoint,
    k: int,
    tau: Fraction,
    context: ConstructionContext | None = None,
) -> int:
    """j con s_j <= q_k^tau < s_(j+1), comparado como s_j^r <= q_k^p."""
    tau = Fraction(tau)
    if not Fraction(1, 3) <= tau <= Fraction(1, 2):
        raise ValidationError("tau debe estar en [1/3, 1/2].")
    context = context or prepare(x, y)
    slope = _require_irrational(context)
    power, root = tau.numerator, tau.denominator
    target = context.table.q(k) ** power
    j = 0
    while slope.s(j + 1) ** root <= target:
        j += 1
    if j < 1:
        raise KTooSmallError(f"k={k} demasiado pequeno: s_1 > q_k^tau.")
    return j


def approx_uniform(
    x: PlanePoint,
    y: PlanePoint,
    k: int,
    tau: Fraction,
    context: ConstructionContext | None = None,
) -> ApproxResult:
    """Construccion para el exponente uniforme con j ligado a q_k^tau."""
    context = context or prepare(x, y)
    j = select_indices_uniform(x, y, k, tau, context)
    result = approx_irrational_slope(x, y, j, k, context, METHOD_UNIFORM)
    tau = Fraction(tau)
    slope = _require_irrational(context)
    power, root = tau.numerator, tau.denominator
    q_power = context.table.q(k) ** power
    check = BoundCheck(
        "uniform_index",
        "s_j <= q_k^tau < s_(j+1)",
        f"j={j}, tau={tau}",
        slope.s(j) ** root <= q_power < slope.s(j + 1) ** root,
    )
    _require([check])
    return result.with_checks(check)


def approx_signed(
    x: PlanePoint,
    y: PlanePoint,
    k: int,
    mu: Fraction,
    table: ConvergentTable | None = None,
    slope: TargetSlope | None = None,
) -> ApproxResult:
    """gamma con v1, v2 > 0 y 0 < Lambda_i <= |gamma|^-mu (objetivo en el cuadrante positivo)."""
    if decide_sign(y.x1) <= 0 or decide_sign(y.x2) <= 0:
        raise WrongQuadrantError(f"El objetivo {y.describe()} no esta en el cuadrante positivo abierto.")
    if k < 1 or k % 2 == 0:
        raise EvenKError(f"La construccion con signos requiere k impar (k={k}).")
    mu = Fraction(mu)
    if not 0 < mu < Fraction(1, 3):
        raise ValidationError("mu debe estar en (0, 1/3).")
    if decide_sign(x.x2) <= 0:
        raise ValidationError("La construccion con signos requiere x2 > 0.")
    table = table or slope_table(x)
    slope = slope or target_slope(y)
    if not isinstance(slope, IrrationalSlope):
        raise SlopeRationalError("La pendiente del objetivo debe ser irracional.")

    q_k = table.q(k)
    j = 1
    while slope.s(j) ** 3 < q_k:
        j += 1
    if slope.s(j - 1) ** 3 >= q_k:
        raise BoundNotYetReachedError(f"k={k} demasiado pequeno: no existe j con s_(j-1)^3 < q_k.")

    n_matrix = slope.signed_matrix(j)
    rho_value = rho(n_matrix, k, x, y, table)
    ell = choose_ell_ceiling(rho_value)
    built = build_gamma(n_matrix, ell, k, x, y, table, rho_value)
    gamma = built.gamma
    lambda1, lambda2 = built.residual
    positive = decide_sign(lambda1) > 0 and decide_sign(lambda2) > 0
    power, root = mu.numerator, mu.denominator
    size = BoundCheck("signed_size", "max(Lambda1, Lambda2) <= |gamma|^-mu", "n/a", False, proven=False)
    if positive:
        size = _check(
            "signed_size",
            "max(Lambda1, Lambda2)^r |gamma|^p <= 1 con mu = p/r",
            real_max(lambda1, lambda2) ** root * gamma.norm() ** power,
            1,
            proven=False,
        )
    checks = [
        BoundCheck("signed_v1", "v1 > 0", str(gamma.v1), gamma.v1 > 0, proven=False),
        BoundCheck("signed_v2", "v2 > 0", str(gamma.v2), gamma.v2 > 0, proven=False),
        BoundCheck("signed_lambda1", "Lambda1 > 0", _show(lambda1), decide_sign(lambda1) > 0, proven=False),
        BoundCheck("signed_lambda2", "Lambda2 > 0", _show(lambda2), decide_sign(lambda2) > 0, proven=False),
        size,
        _check(
            "signed_lambda2_window",
            "Lambda2 <= x2 s |eps_(k-1)| <= x2 s_j / q_k",
            lambda2,
            x.x2 * Fraction(slope.s(j), q_k),
        ),
    ]
    _require(checks)
    result = ApproxResult(
        METHOD_SIGNED,
        gamma,
        built.residual,
        replace(built.trace, j=j),
        (*built.checks, *checks),
    )
    failing = [check.name for check in checks if not check.holds]
    if failing:
        raise BoundNotYetReachedError(
            f"k={k}: condiciones no alcanzadas ({', '.join(failing)}).",
            attempt=result,
        )
    return result
