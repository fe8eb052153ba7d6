"""Motor de fracciones continuas: cocientes, convergentes y matrices M_k."""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from shared.errors import (
    BoundViolatedError,
    PrecisionExhaustedError,
    RationalInputError,
    ValidationError,
)

from .real_numbers import RealValue, compare, decide_sign, floor, reciprocal_shift
from .sl2 import UnimodularMatrix

LOGGER = logging.getLogger(__name__)

Omega = Fraction | float


@dataclass(frozen=True)
class Convergent:
    """Convergente p_k/q_k con epsilon_k = q_k*xi - p_k exacto."""

    k: int
    p: int
    q: int
    epsilon: RealValue

    @property
    def sign(self) -> int:
        """Signo de epsilon_k: positivo para k par, negativo para k impar."""
        return 1 if self.k % 2 == 0 else -1


@dataclass(frozen=True)
class ConvergentMatrix:
    """Matriz de convergentes M_k (k >= 1)."""

    k: int
    matrix: UnimodularMatrix

    def norm(self) -> int:
        return self.matrix.norm()


@dataclass(frozen=True)
class OmegaWindow:
    """Diagnostico finito de la medida de irracionalidad."""

    start: int
    stop: int
    ratios: tuple[tuple[int, mpmath.mpf], ...]
    asserted_omega: Omega | None = None

    @property
    def max_ratio(self) -> mpmath.mpf | None:
        return max((ratio for _, ratio in self.ratios), default=None)

    @property
    def min_ratio(self) -> mpmath.mpf | None:
        return min((ratio for _, ratio in self.ratios), default=None)


class ConvergentTable:
    """Tabla de prefijos inmutable; la extension se serializa con un lock."""

    def __init__(self, value: RealValue) -> None:
        exact_value = value.exact
        if exact_value is not None and exact_value.is_rational:
            raise RationalInputError(
                f"La fraccion continua de {value.describe()} termina (valor racional)."
            )
        self._value = value
        self._digits: list[int] = []
        self._numerators: list[int] = []
        self._denominators: list[int] = []
        self._epsilons: dict[int, RealValue] = {}
        self._remainder: RealValue = value
        self._lock = threading.Lock()

    @property
    def value(self) -> RealValue:
        return self._value

    def partial_quotient(self, index: int) -> int:
        if index < 0:
            raise ValidationError("El indice de un cociente parcial debe ser >= 0.")
        if index < len(self._digits):
            return self._digits[index]
        with self._lock:
            while len(self._digits) <= index:
                self._digits.append(self._next_digit(len(self._digits)))
            return self._digits[index]

    def _next_digit(self, index: int) -> int:
        stream = self._value.digits
        if stream is not None:
            try:
                return stream.digit(index)
            except IndexError as exc:
                raise RationalInputError(str(exc)) from exc
        try:
            digit = floor(self._remainder)
            self._remainder = reciprocal_shift(self._remainder, digit)
        except PrecisionExhaustedError as exc:
            raise PrecisionExhaustedError(
                f"Digito a_{index} ambiguo para {self._value.describe()}: {exc}"
            ) from exc
        return digit

    def partial_quotients(self, count: int) -> list[int]:
        """Digitos a_0..a_count."""
        return [self.partial_quotient(index) for index in range(count + 1)]

    def _extend(self, index: int) -> None:
        self.partial_quotient(index)
        with self._lock:
            numerators, denominators = self._numerators, self._denominators
            while len(denominators) <= index:
                position = len(denominators)
                digit = self._digits[position]
                # p_(-1) = 1, q_(-1) = 0, p_(-2) = 0, q_(-2) = 1
                p_prev = numerators[-1] if position >= 1 else 1
                q_prev = denominators[-1] if position >= 1 else 0
                if position >= 2:
                    p_prev2, q_prev2 = numerators[-2], denominators[-2]
                elif position == 1:
                    p_prev2, q_prev2 = 1, 0
                else:
                    p_prev2, q_prev2 = 0, 1
                numerators.append(digit * p_prev + p_prev2)
                denominators.append(digit * q_prev + q_prev2)

    def p(self, index: int) -> int:
        if index < 0:
            return 1 if index == -1 else 0
        self._extend(index)
        return self._numerators[index]

    def q(self, index: int) -> int:
        if index < 0:
            return 0 if index == -1 else 1
        self._extend(index)
        return self._denominators[index]

    def epsilon(self, index: int) -> RealValue:
        cached = self._epsilons.get(index)
        if cached is None:
            cached = self._value * self.q(index) - self.p(index)
            self._epsilons[index] = cached
        return cached

    def convergent(self, index: int) -> Convergent:
        return Convergent(index, self.p(index), self.q(index), self.epsilon(index))

    def convergents(self, count: int) -> list[Convergent]:
        """Convergentes 0..count."""
        return [self.convergent(index) for index in range(count + 1)]

    def matrix(self, index: int) -> ConvergentMatrix:
        if index < 1:
            raise ValidationError("M_k requiere k >= 1.")
        p_k, q_k = self.p(index), self.q(index)
        p_prev, q_prev = self.p(index - 1), self.q(index - 1)
        if index % 2 == 0:
            matrix = UnimodularMatrix(q_k, -p_k, -q_prev, p_prev)
        else:
            matrix = UnimodularMatrix(q_k, -p_k, q_prev, -p_prev)
        return ConvergentMatrix(index, matrix)

    def first_index_with_q_at_least(self, bound: int | RealValue, start: int = 0) -> int:
        """Menor k >= start con q_k >= bound."""
        index = start
        while compare(self.q(index), bound) < 0:
            index += 1
        return index


def partial_quotients(value: RealValue, count: int) -> list[int]:
    """Digitos a_0..a_count de la fraccion continua simple."""
    return ConvergentTable(value).partial_quotients(count)


def convergents(value: RealValue, count: int) -> list[Convergent]:
    return ConvergentTable(value).convergents(count)


def convergent_matrix(value: RealValue, index: int) -> ConvergentMatrix:
    return ConvergentTable(value).matrix(index)


def omega_window(
    table: ConvergentTable | RealValue,
    k_range: Iterable[int],
    asserted_omega: Omega | None = None,
) -> OmegaWindow:
    """Cocientes log q_(k+1) / log q_k sobre una ventana de indices."""
    if not isinstance(table, ConvergentTable):
        table = ConvergentTable(table)
    indices = list(k_range)
    if asserted_omega is not None and asserted_omega < 1:
        raise ValidationError("La medida de irracionalidad asertada debe ser >= 1.")
    ratios: list[tuple[int, mpmath.mpf]] = []
    with mpmath.workdps(30):
        for index in indices:
            q_now = table.q(index)
            if q_now < 2:
                continue
            q_next = table.q(index + 1)
            ratios.append((index, mpmath.log(mpmath.mpf(q_next)) / mpmath.log(mpmath.mpf(q_now))))
    start = indices[0] if indices else 0
    stop = indices[-1] if indices else 0
    return OmegaWindow(start, stop, tuple(ratios), asserted_omega)


def certify_convergents(table: ConvergentTable, count: int) -> list[Convergent]:
    """Certifica identidad de determinante, signos y 1/(2q_(k+1)) <= |eps_k| <= 1/q_(k+1)."""
    certified: list[Convergent] = []
    for index in range(count + 1):
        convergent = table.convergent(index)
        if index >= 1:
            determinant = convergent.p * table.q(index - 1) - table.p(index - 1) * convergent.q
            if determinant != (-1) ** (index - 1):
                raise BoundViolatedError(f"Identidad de determinante falla en k={index}.")
        if decide_sign(convergent.epsilon) != convergent.sign:
            raise BoundViolatedError(f"Signo de epsilon_{index} no alterna.")
        q_next = table.q(index + 1)
        magnitude = abs(convergent.epsilon)
        if compare(magnitude, Fraction(1, 2 * q_next)) < 0 or compare(magnitude, Fraction(1, q_next)) > 0:
            raise BoundViolatedError(f"Cota de |epsilon_{index}| violada.")
        certified.append(convergent)
    LOGGER.debug("Convergentes certificados hasta k=%s", count)
    return certified


def parse_omega(text: str) -> Omega:
    """Parsea ``1``, ``5/2`` o ``inf``."""
    raw = (text or "").strip().lower()
    if raw in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"Valor de omega invalido: {text!r}") from exc
