"""Numeros reales con comparacion decidible.

Los valores exactos (racionales y sumas de surds) se comparan simbolicamente.
Los valores perezosos (fracciones continuas por regla, intervalos decimales y
expresiones que los mezclan) se refinan duplicando la precision de trabajo
hasta el limite configurado; si la comparacion sigue ambigua se lanza
``PrecisionExhaustedError``.
"""

from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from enum import IntEnum
from fractions import Fraction
from math import floor as _floor

import mpmath

from parametros import INITIAL_PRECISION_BITS, PRECISION_CAP_BITS
from shared.errors import DivisionByZeroError, PrecisionExhaustedError
from shared.real_input import (
    CFDigits,
    DecimalInterval,
    QuadraticSurd,
    Rational,
    RealInput,
    format_real,
)

from .surds import SurdSum

LOGGER = logging.getLogger(__name__)

Enclosure = tuple[Fraction, Fraction]
Number = int | Fraction

_precision_cap: ContextVar[int] = ContextVar("precision_cap_bits", default=PRECISION_CAP_BITS)


@contextmanager
def precision_cap(bits: int) -> Iterator[None]:
    """Fija el limite de precision para las comparaciones del contexto actual."""
    token = _precision_cap.set(max(INITIAL_PRECISION_BITS, int(bits)))
    try:
        yield
    finally:
        _precision_cap.reset(token)


def current_precision_cap() -> int:
    return _precision_cap.get()


class Ordering(IntEnum):
    """Resultado de una comparacion exacta."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class _Undecided(Exception):
    """Un divisor de intervalo contiene 0 a la precision actual."""


class DigitStream:
    """Fuente de cocientes parciales de una entrada ``cf:`` con cache sincronizado."""

    def __init__(self, spec: CFDigits) -> None:
        self._spec = spec
        self._digits: list[int] = [spec.a0, *spec.prefix]
        self._numerators: list[int] = []
        self._denominators: list[int] = []
        self._lock = threading.Lock()

    @property
    def spec(self) -> CFDigits:
        return self._spec

    @property
    def is_finite(self) -> bool:
        return self._spec.is_finite

    def __len__(self) -> int:
        if not self.is_finite:
            raise TypeError("La fuente de digitos es infinita.")
        return 1 + len(self._spec.prefix)

    def digit(self, index: int) -> int:
        if index < len(self._digits):
            return self._digits[index]
        if self.is_finite:
            raise IndexError(f"La fraccion continua termina antes del indice {index}.")
        with self._lock:
            self._extend_digits(index)
            return self._digits[index]

    def _extend_digits(self, index: int) -> None:
        spec = self._spec
        while len(self._digits) <= index:
            position = len(self._digits)
            if spec.period:
                offset = position - 1 - len(spec.prefix)
                self._digits.append(spec.period[offset % len(spec.period)])
            else:
                assert spec.rule is not None
                self._digits.append(spec.rule.next_digit(position, self._digits[-1]))

    def convergent(self, index: int) -> tuple[int, int]:
        """(p_index, q_index) por la recurrencia estandar."""
        if index < len(self._denominators):
            return self._numerators[index], self._denominators[index]
        self.digit(index)
        with self._lock:
            numerators, denominators = self._numerators, self._denominators
            while len(denominators) <= index:
                position = len(denominators)
                digit = self._digits[position]
                # p_(-1) = 1, q_(-1) = 0, p_(-2) = 0, q_(-2) = 1
                if position >= 2:
                    p_prev, q_prev = numerators[-1], denominators[-1]
                    p_prev2, q_prev2 = numerators[-2], denominators[-2]
                elif position == 1:
                    p_prev, q_prev = numerators[-1], denominators[-1]
                    p_prev2, q_prev2 = 1, 0
                else:
                    p_prev, q_prev, p_prev2, q_prev2 = 1, 0, 0, 1
                numerators.append(digit * p_prev + p_prev2)
                denominators.append(digit * q_prev + q_prev2)
            return numerators[index], denominators[index]

    def enclosure(self, bits: int) -> Enclosure:
        """Encierro entre dos convergentes consecutivos con q_n q_(n+1) >= 2**bits."""
        target = 1 << bits
        index = 0
        while True:
            p_now, q_now = self.convergent(index)
            p_next, q_next = self.convergent(index + 1)
            if q_now * q_next >= target:
                first, second = Fraction(p_now, q_now), Fraction(p_next, q_next)
                return (first, second) if first <= second else (second, first)
            index += 1


class RealValue(ABC):
    """Numero real con encierros racionales y comparacion decidible."""

    @abstractmethod
    def enclosure(self, bits: int) -> Enclosure:
        """Intervalo racional cerrado que contiene el valor."""

    @property
    def exact(self) -> SurdSum | None:
        return None

    @property
    def digits(self) -> DigitStream | None:
        return None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def refinable(self) -> bool:
        """Falso si mas bits no angostan el encierro."""
        return True

    @abstractmethod
    def describe(self) -> str:
        """Texto legible del valor."""

    def sign(self) -> int:
        return decide_sign(self)

    def compare(self, other: RealValue | Number) -> Ordering:
        return compare(self, other)

    def floor(self) -> int:
        return floor(self)

    def __lt__(self, other: RealValue | Number) -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: RealValue | Number) -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: RealValue | Number) -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: RealValue | Number) -> bool:
        return compare(self, other) is not Ordering.LESS

    def __add__(self, other: object) -> RealValue:
        return _binary(self, other, "+")

    def __radd__(self, other: object) -> RealValue:
        return _binary(other, self, "+")

    def __sub__(self, other: object) -> RealValue:
        return _binary(self, other, "-")

    def __rsub__(self, other: object) -> RealValue:
        return _binary(other, self, "-")

    def __mul__(self, other: object) -> RealValue:
        return _binary(self, other, "*")

    def __rmul__(self, other: object) -> RealValue:
        return _binary(other, self, "*")

    def __truediv__(self, other: object) -> RealValue:
        return _binary(self, other, "/")

    def __rtruediv__(self, other: object) -> RealValue:
        return _binary(other, self, "/")

    @abstractmethod
    def __neg__(self) -> RealValue: ...

    @abstractmethod
    def __abs__(self) -> RealValue: ...

    def __pow__(self, exponent: int) -> RealValue:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result: RealValue = ExactReal.from_number(1)
        base: RealValue = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def to_mpf(self, dps: int = 30) -> mpmath.mpf:
        """Valor decimal aproximado (punto medio de un encierro)."""
        bits = int(dps * 3.33) + 16
        lower, upper = self.enclosure(bits)
        middle = (lower + upper) / 2
        with mpmath.workdps(dps + 10):
            return mpmath.mpf(middle.numerator) / middle.denominator

    def nstr(self, digits: int = 20) -> str:
        with mpmath.workdps(digits + 10):
            return mpmath.nstr(self.to_mpf(digits + 10), digits)


class ExactReal(RealValue):
    """Valor exacto en un cuerpo multicuadratico."""

    __slots__ = ("_value", "_digits")

    def __init__(self, value: SurdSum, digits: DigitStream | None = None) -> None:
        self._value = value
        self._digits = digits

    @classmethod
    def from_number(cls, value: Number) -> ExactReal:
        return cls(SurdSum.rational(value))

    @property
    def exact(self) -> SurdSum:
        return self._value

    @property
    def digits(self) -> DigitStream | None:
        return self._digits

    @property
    def is_rational(self) -> bool:
        return self._value.is_rational

    @property
    def refinable(self) -> bool:
        return not self._value.is_rational

    def enclosure(self, bits: int) -> Enclosure:
        if self._value.is_rational:
            value = self._value.rational_part
            return value, value
        return self._value.enclosure(bits)

    def describe(self) -> str:
        return str(self._value)

    def __neg__(self) -> ExactReal:
        return ExactReal(-self._value)

    def __abs__(self) -> ExactReal:
        return ExactReal(abs(self._value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactReal):
            return self._value == other._value
        if isinstance(other, (int, Fraction, SurdSum)):
            return self._value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._value)

    def __repr__(self) -> str:
        return f"ExactReal({self._value})"


class LazyReal(RealValue):
    """Valor definido por una funcion de encierros racionales.

    Con ``refinable=False`` el encierro no depende de los bits (intervalos
    decimales): una decision que falla al primer intento lanza
    ``PrecisionExhaustedError`` sin duplicar la precision.
    """

    __slots__ = ("_enclose", "_label", "_digits", "_refinable", "_cache", "_lock")

    def __init__(
        self,
        enclose: Callable[[int], Enclosure],
        label: str,
        digits: DigitStream | None = None,
        refinable: bool = True,
    ) -> None:
        self._enclose = enclose
        self._label = label
        self._digits = digits
        self._refinable = refinable
        self._cache: dict[int, Enclosure] = {}
        self._lock = threading.Lock()

    @property
    def digits(self) -> DigitStream | None:
        return self._digits

    @property
    def refinable(self) -> bool:
        return self._refinable

    def _evaluate(self, bits: int) -> Enclosure:
        cached = self._cache.get(bits)
        if cached is not None:
            return cached
        result = self._enclose(bits)
        with self._lock:
            self._cache[bits] = result
        return result

    def enclosure(self, bits: int) -> Enclosure:
        cap = current_precision_cap()
        working = bits
        while True:
            try:
                return self._evaluate(working)
            except _Undecided:
                if working >= cap or not self._refinable:
                    raise PrecisionExhaustedError(
                        f"Divisor ambiguo en {self._label} con {working} bits."
                    ) from None
                working = min(2 * working, cap)

    def describe(self) -> str:
        return self._label

    def __neg__(self) -> LazyReal:
        source = self
        return LazyReal(
            lambda bits: _negate(source._evaluate(bits)), f"-({self._label})", refinable=self._refinable
        )

    def __abs__(self) -> LazyReal:
        source = self
        return LazyReal(
            lambda bits: _absolute(source._evaluate(bits)), f"|{self._label}|", refinable=self._refinable
        )

    def __repr__(self) -> str:
        return f"LazyReal({self._label})"


def _negate(interval: Enclosure) -> Enclosure:
    return -interval[1], -interval[0]


def _absolute(interval: Enclosure) -> Enclosure:
    lower, upper = interval
    if lower >= 0:
        return lower, upper
    if upper <= 0:
        return -upper, -lower
    return Fraction(0), max(-lower, upper)


def _interval_product(left: Enclosure, right: Enclosure) -> Enclosure:
    products = (left[0] * right[0], left[0] * right[1], left[1] * right[0], left[1] * right[1])
    return min(products), max(products)


def _inner_enclosure(value: RealValue, bits: int) -> Enclosure:
    if isinstance(value, LazyReal):
        return value._evaluate(bits)  # noqa: SLF001
    return value.enclosure(bits)


def as_real(value: object) -> RealValue | None:
    """Convierte int, Fraction o SurdSum a RealValue; None si no aplica."""
    if isinstance(value, RealValue):
        return value
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, Fraction)):
        return ExactReal.from_number(value)
    if isinstance(value, SurdSum):
        return ExactReal(value)
    return None


def _binary(left_raw: object, right_raw: object, operator: str) -> RealValue:
    left = as_real(left_raw)
    right = as_real(right_raw)
    if left is None or right is None:
        return NotImplemented
    if left.exact is not None and right.exact is not None:
        a, b = left.exact, right.exact
        if operator == "+":
            return ExactReal(a + b)
        if operator == "-":
            return ExactReal(a - b)
        if operator == "*":
            return ExactReal(a * b)
        return ExactReal(a / b)

    label = f"({left.describe()} {operator} {right.describe()})"
    if operator == "/":
        if decide_sign(right) == 0:
            raise DivisionByZeroError(f"Division por cero en {label}.")

    def enclose(bits: int) -> Enclosure:
        first = _inner_enclosure(left, bits)
        second = _inner_enclosure(right, bits)
        if operator == "+":
            return first[0] + second[0], first[1] + second[1]
        if operator == "-":
            return first[0] - second[1], first[1] - second[0]
        if operator == "*":
            return _interval_product(first, second)
        if second[0] <= 0 <= second[1]:
            raise _Undecided
        return _interval_product(first, (1 / second[1], 1 / second[0]))

    return LazyReal(enclose, label, refinable=left.refinable or right.refinable)


def decide_sign(value: RealValue) -> int:
    """Signo exacto o por refinamiento acotado de encierros."""
    exact_value = value.exact
    if exact_value is not None:
        return exact_value.sign()
    cap = current_precision_cap()
    bits = INITIAL_PRECISION_BITS
    while True:
        try:
            lower, upper = _inner_enclosure(value, bits)
        except _Undecided:
            lower = upper = None
        if lower is not None and upper is not None:
            if lower > 0:
                return 1
            if upper < 0:
                return -1
            if lower == upper == 0:
                return 0
        if bits >= cap or not value.refinable:
            raise PrecisionExhaustedError(
                f"No fue posible decidir el signo de {value.describe()} con {bits} bits."
            )
        bits = min(2 * bits, cap)
        LOGGER.debug("Refinando precision a %s bits para %s", bits, value.describe())


def compare(value: RealValue | Number, other: RealValue | Number) -> Ordering:
    """Orden exacto entre dos reales (o un real y un racional)."""
    left = as_real(value)
    right = as_real(other)
    if left is None or right is None:
        raise TypeError("compare requiere valores reales.")
    return Ordering(decide_sign(left - right))


def floor(value: RealValue) -> int:
    """Mayor entero menor o igual al valor."""
    exact_value = value.exact
    if exact_value is not None:
        return exact_value.floor()
    cap = current_precision_cap()
    bits = INITIAL_PRECISION_BITS
    while True:
        try:
            lower, upper = _inner_enclosure(value, bits)
        except _Undecided:
            lower = upper = None
        if lower is not None and upper is not None and _floor(lower) == _floor(upper):
            return _floor(lower)
        if bits >= cap or not value.refinable:
            raise PrecisionExhaustedError(
                f"Parte entera ambigua para {value.describe()} con {bits} bits; "
                "se requiere un intervalo mas angosto."
            )
        bits = min(2 * bits, cap)


def reciprocal_shift(value: RealValue, shift: int) -> RealValue:
    """Paso de Gauss 1/(value - shift)."""
    shifted = value - shift
    exact_value = shifted.exact
    if exact_value is not None:
        if not exact_value:
            raise DivisionByZeroError(f"reciprocal_shift: el valor es exactamente {shift}.")
        return ExactReal(exact_value.inverse())
    return ExactReal.from_number(1) / shifted


def real_max(*values: RealValue | Number) -> RealValue:
    """Maximo exacto de varios reales."""
    reals = [as_real(value) for value in values]
    best = reals[0]
    for candidate in reals[1:]:
        if compare(candidate, best) is Ordering.GREATER:
            best = candidate
    return best


def build_real(spec: RealInput) -> RealValue:
    """Construye el RealValue canonico de una entrada.

    Los intervalos decimales no se refinan: comparar contra un punto interior
    lanza ``PrecisionExhaustedError`` en el primer intento.
    """
    if isinstance(spec, Rational):
        return ExactReal.from_number(spec.value)
    if isinstance(spec, QuadraticSurd):
        surd = (SurdSum.rational(spec.a) + SurdSum.sqrt(spec.d) * spec.b) / spec.c
        return ExactReal(surd)
    if isinstance(spec, CFDigits):
        stream = DigitStream(spec)
        if spec.is_finite:
            p_value, q_value = stream.convergent(len(spec.prefix))
            return ExactReal(SurdSum.rational(Fraction(p_value, q_value)), digits=stream)
        if spec.period:
            return ExactReal(periodic_to_surd(spec.a0, spec.prefix, spec.period), digits=stream)
        return LazyReal(stream.enclosure, format_real(spec), digits=stream)
    if isinstance(spec, DecimalInterval):
        middle = spec.midpoint_value
        fixed = (middle - spec.radius, middle + spec.radius)
        return LazyReal(lambda _bits: fixed, format_real(spec), refinable=False)
    raise TypeError(f"Entrada real no soportada: {spec!r}")


def periodic_to_surd(a0: int, prefix: tuple[int, ...], period: tuple[int, ...]) -> SurdSum:
    """Valor exacto de [a0; prefix, period, period, ...]."""
    # cola t = [r0; r1, ..., t]  =>  q' t^2 + (q'' - p') t - p'' = 0
    p_prev, p_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    for digit in period:
        p_prev, p_prev2 = digit * p_prev + p_prev2, p_prev
        q_prev, q_prev2 = digit * q_prev + q_prev2, q_prev
    discriminant = (q_prev2 - p_prev) ** 2 + 4 * q_prev * p_prev2
    tail = (SurdSum.rational(p_prev - q_prev2) + SurdSum.sqrt(discriminant)) / (2 * q_prev)

    head_p, head_p_prev = a0, 1
    head_q, head_q_prev = 1, 0
    for digit in prefix:
        head_p, head_p_prev = digit * head_p + head_p_prev, head_p
        head_q, head_q_prev = digit * head_q + head_q_prev, head_q
    return (tail * head_p + head_p_prev) / (tail * head_q + head_q_prev)
