"""Aritmetica exacta en cuerpos multicuadraticos Q(sqrt(d1), sqrt(d2), ...).

Un ``SurdSum`` representa sum(c_m * sqrt(m)) con m libre de cuadrados y
coeficientes racionales. Las raices de radicandos libres de cuadrados
distintos son linealmente independientes sobre Q, por lo que la forma
canonica decide la igualdad y el signo se obtiene de forma exacta.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import floor, gcd, isqrt

from sympy import factorint

from shared.errors import DivisionByZeroError

Scalar = int | Fraction

_FAST_SIGN_BITS = 64


@lru_cache(maxsize=4096)
def squarefree_decomposition(value: int) -> tuple[int, int]:
    """Escribe value > 0 como square**2 * core con core libre de cuadrados."""
    if value <= 0:
        raise ValueError(f"Se esperaba un entero positivo: {value}")
    square, core = 1, 1
    for prime, exponent in factorint(value).items():
        square *= prime ** (exponent // 2)
        if exponent % 2:
            core *= prime
    return square, core


@lru_cache(maxsize=4096)
def _smallest_prime(value: int) -> int:
    return min(factorint(value))


@total_ordering
class SurdSum:
    """Elemento exacto de un cuerpo multicuadratico."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None) -> None:
        canonical: dict[int, Fraction] = {}
        for radicand, coefficient in (terms or {}).items():
            _accumulate(canonical, radicand, Fraction(coefficient))
        self._terms: tuple[tuple[int, Fraction], ...] = tuple(
            sorted((radicand, coef) for radicand, coef in canonical.items() if coef)
        )
        self._hash: int | None = None

    @classmethod
    def rational(cls, value: Scalar) -> SurdSum:
        return cls({1: value})

    @classmethod
    def sqrt(cls, value: Scalar) -> SurdSum:
        """Raiz cuadrada exacta de un racional no negativo."""
        value = Fraction(value)
        if value < 0:
            raise ValueError("No existe raiz real de un numero negativo.")
        if value == 0:
            return cls()
        # sqrt(p/q) = sqrt(p*q)/q
        return cls({value.numerator * value.denominator: Fraction(1, value.denominator)})

    @classmethod
    def _from_terms(cls, terms: Iterable[tuple[int, Fraction]]) -> SurdSum:
        result = cls.__new__(cls)
        result._terms = tuple(sorted((m, c) for m, c in terms if c))
        result._hash = None
        return result

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(radicand for radicand, _ in self._terms if radicand != 1)

    @property
    def is_rational(self) -> bool:
        return all(radicand == 1 for radicand, _ in self._terms)

    @property
    def rational_part(self) -> Fraction:
        return self.coefficient(1)

    def coefficient(self, radicand: int) -> Fraction:
        for key, value in self._terms:
            if key == radicand:
                return value
        return Fraction(0)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("El valor no es racional.")
        return self.rational_part

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational:
                self._hash = hash(self.rational_part)
            else:
                self._hash = hash(self._terms)
        return self._hash

    def __lt__(self, other: object) -> bool:
        other_sum = _coerce(other)
        if other_sum is None:
            return NotImplemented
        return (self - other_sum).sign() < 0

    def __neg__(self) -> SurdSum:
        return SurdSum._from_terms((m, -c) for m, c in self._terms)

    def __pos__(self) -> SurdSum:
        return self

    def __abs__(self) -> SurdSum:
        return -self if self.sign() < 0 else self

    def __add__(self, other: object) -> SurdSum:
        other_sum = _coerce(other)
        if other_sum is None:
            return NotImplemented
        merged = dict(self._terms)
        for radicand, coefficient in other_sum._terms:
            merged[radicand] = merged.get(radicand, Fraction(0)) + coefficient
        return SurdSum._from_terms(merged.items())

    __radd__ = __add__

    def __sub__(self, other: object) -> SurdSum:
        other_sum = _coerce(other)
        if other_sum is None:
            return NotImplemented
        return self + (-other_sum)

    def __rsub__(self, other: object) -> SurdSum:
        other_sum = _coerce(other)
        if other_sum is None:
            return NotImplemented
        return other_sum - self

    def __mul__(self, other: object) -> SurdSum:
        if isinstance(other, (int, Fraction)):
            factor = Fraction(other)
            return SurdSum._from_terms((m, c * factor) for m, c in self._terms)
        if not isinstance(other, SurdSum):
            return NotImplemented
        product: dict[int, Fraction] = {}
        for left_radicand, left_coef in self._terms:
            for right_radicand, right_coef in other._terms:
                common = gcd(left_radicand, right_radicand)
                radicand = (left_radicand // common) * (right_radicand // common)
                product[radicand] = product.get(radicand, Fraction(0)) + left_coef * right_coef * common
        return SurdSum._from_terms(product.items())

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> SurdSum:
        other_sum = _coerce(other)
        if other_sum is None:
            return NotImplemented
        return self * other_sum.inverse()

    def __rtruediv__(self, other: object) -> SurdSum:
        other_sum = _coerce(other)
        if other_sum is None:
            return NotImplemented
        return other_sum * self.inverse()

    def __pow__(self, exponent: int) -> SurdSum:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = SurdSum.rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def split(self, prime: int) -> tuple[SurdSum, SurdSum]:
        """Retorna (A, B) con self = A + B*sqrt(prime); A y B no usan prime."""
        without: list[tuple[int, Fraction]] = []
        with_prime: list[tuple[int, Fraction]] = []
        for radicand, coefficient in self._terms:
            if radicand % prime == 0:
                with_prime.append((radicand // prime, coefficient))
            else:
                without.append((radicand, coefficient))
        return SurdSum._from_terms(without), SurdSum._from_terms(with_prime)

    def _pivot_prime(self) -> int:
        return _smallest_prime(max(self.radicands))

    def inverse(self) -> SurdSum:
        """Inverso exacto por racionalizacion sucesiva de conjugados."""
        if not self._terms:
            raise DivisionByZeroError("Division exacta por cero.")
        if self.is_rational:
            return SurdSum.rational(1 / self.rational_part)
        prime = self._pivot_prime()
        left, right = self.split(prime)
        norm = left * left - right * right * prime
        conjugate = left - right * SurdSum.sqrt(prime)
        return conjugate * norm.inverse()

    def sign(self) -> int:
        """Signo exacto (-1, 0, 1)."""
        if not self._terms:
            return 0
        if self.is_rational:
            return 1 if self.rational_part > 0 else -1
        lower, upper = self.enclosure(_FAST_SIGN_BITS)
        if lower > 0:
            return 1
        if upper < 0:
            return -1
        prime = self._pivot_prime()
        left, right = self.split(prime)
        left_sign, right_sign = left.sign(), right.sign()
        if right_sign == 0:
            return left_sign
        if left_sign == 0 or left_sign == right_sign:
            return right_sign if left_sign == 0 else left_sign
        # signos opuestos: decide el signo de A^2 - p*B^2
        return left_sign * (left * left - right * right * prime).sign()

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Intervalo racional [lo, hi] de ancho <= 2**-bits que contiene el valor."""
        weight = sum((abs(coefficient) for radicand, coefficient in self._terms if radicand != 1), Fraction(0))
        guard = max(1, floor(weight).bit_length()) + 1
        scale_bits = bits + guard
        scale = 1 << scale_bits
        lower = upper = Fraction(0)
        for radicand, coefficient in self._terms:
            if radicand == 1:
                lower += coefficient
                upper += coefficient
                continue
            root = isqrt(radicand << (2 * scale_bits))
            low_root = Fraction(root, scale)
            high_root = Fraction(root + 1, scale)
            if coefficient > 0:
                lower += coefficient * low_root
                upper += coefficient * high_root
            else:
                lower += coefficient * high_root
                upper += coefficient * low_root
        return lower, upper

    def floor(self) -> int:
        """Parte entera exacta; termina porque un valor irracional no es entero."""
        if self.is_rational:
            return floor(self.rational_part)
        bits = _FAST_SIGN_BITS
        while True:
            lower, upper = self.enclosure(bits)
            if floor(lower) == floor(upper):
                return floor(lower)
            bits *= 2

    def __float__(self) -> float:
        lower, upper = self.enclosure(64)
        return float((lower + upper) / 2)

    def __repr__(self) -> str:
        return f"SurdSum({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for radicand, coefficient in self._terms:
            magnitude = abs(coefficient)
            if radicand == 1:
                body = str(magnitude)
            elif magnitude == 1:
                body = f"sqrt({radicand})"
            else:
                body = f"{magnitude}*sqrt({radicand})"
            if not pieces:
                pieces.append(f"-{body}" if coefficient < 0 else body)
            else:
                pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
        return " ".join(pieces)


def _accumulate(target: dict[int, Fraction], radicand: int, coefficient: Fraction) -> None:
    if radicand <= 0:
        raise ValueError(f"Radicando invalido: {radicand}")
    square, core = squarefree_decomposition(radicand)
    target[core] = target.get(core, Fraction(0)) + coefficient * square


def _coerce(value: object) -> SurdSum | None:
    if isinstance(value, SurdSum):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return SurdSum.rational(value)
    return None
