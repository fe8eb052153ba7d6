"""Algebra exacta de SL(2,Z) y su accion sobre puntos del plano."""

from __future__ import annotations

import re
from dataclasses import dataclass

from shared.errors import GrammarError, NotUnimodularError

from .real_numbers import Number, RealValue, as_real, decide_sign, real_max

_MATRIX_PATTERN = re.compile(
    r"^\[\s*\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]\s*,\s*\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]\s*\]$"
)


@dataclass(frozen=True, slots=True)
class UnimodularMatrix:
    """Matriz [[v1, u1], [v2, u2]] con determinante 1."""

    v1: int
    u1: int
    v2: int
    u2: int

    def __post_init__(self) -> None:
        determinant = self.v1 * self.u2 - self.u1 * self.v2
        if determinant != 1:
            raise NotUnimodularError(
                f"Determinante {determinant} != 1 para {self.to_text()}"
            )

    @classmethod
    def from_rows(cls, rows: tuple[tuple[int, int], tuple[int, int]]) -> UnimodularMatrix:
        (v1, u1), (v2, u2) = rows
        return cls(v1, u1, v2, u2)

    @classmethod
    def parse(cls, text: str) -> UnimodularMatrix:
        match = _MATRIX_PATTERN.fullmatch((text or "").strip())
        if not match:
            raise GrammarError(f"Matriz invalida: {text!r}")
        return cls(*(int(item) for item in match.groups()))

    @property
    def determinant(self) -> int:
        return self.v1 * self.u2 - self.u1 * self.v2

    def norm(self) -> int:
        return max(abs(self.v1), abs(self.u1), abs(self.v2), abs(self.u2))

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.v1, self.u1), (self.v2, self.u2)

    def inverse(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.u2, -self.u1, -self.v2, self.v1)

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        if not isinstance(other, UnimodularMatrix):
            return NotImplemented
        return multiply(self, other)

    def __neg__(self) -> UnimodularMatrix:
        return UnimodularMatrix(-self.v1, -self.u1, -self.v2, -self.u2)

    def __pow__(self, exponent: int) -> UnimodularMatrix:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        remaining = abs(exponent)
        result = IDENTITY
        while remaining:
            if remaining & 1:
                result = multiply(result, base)
            base = multiply(base, base)
            remaining >>= 1
        return result

    def to_text(self) -> str:
        return f"[[{self.v1},{self.u1}],[{self.v2},{self.u2}]]"

    def __str__(self) -> str:
        return self.to_text()


def multiply(left: UnimodularMatrix, right: UnimodularMatrix) -> UnimodularMatrix:
    """Producto entero exacto; el constructor reafirma det = 1."""
    return UnimodularMatrix(
        left.v1 * right.v1 + left.u1 * right.v2,
        left.v1 * right.u1 + left.u1 * right.u2,
        left.v2 * right.v1 + left.u2 * right.v2,
        left.v2 * right.u1 + left.u2 * right.u2,
    )


def unipotent(ell: int) -> UnimodularMatrix:
    """U**ell = [[1, ell], [0, 1]]."""
    return UnimodularMatrix(1, ell, 0, 1)


IDENTITY = UnimodularMatrix(1, 0, 0, 1)
J = UnimodularMatrix(0, -1, 1, 0)
U = unipotent(1)


@dataclass(frozen=True)
class PlanePoint:
    """Punto (x1, x2) del plano con coordenadas reales exactas o perezosas."""

    x1: RealValue
    x2: RealValue

    @classmethod
    def of(cls, x1: RealValue | Number, x2: RealValue | Number) -> PlanePoint:
        return cls(as_real(x1), as_real(x2))

    def sup_norm(self) -> RealValue:
        return real_max(abs(self.x1), abs(self.x2))

    def slope(self) -> RealValue:
        # conserva los digitos de x1 cuando x2 = 1
        if self.x2.exact is not None and self.x2.exact == 1:
            return self.x1
        return self.x1 / self.x2

    def is_origin(self) -> bool:
        return decide_sign(self.x1) == 0 and decide_sign(self.x2) == 0

    def __sub__(self, other: PlanePoint) -> PlanePoint:
        return PlanePoint(self.x1 - other.x1, self.x2 - other.x2)

    def describe(self) -> str:
        return f"({self.x1.describe()}, {self.x2.describe()})"


def apply(gamma: UnimodularMatrix, point: PlanePoint) -> PlanePoint:
    """Accion lineal gamma * point."""
    return PlanePoint(
        gamma.v1 * point.x1 + gamma.u1 * point.x2,
        gamma.v2 * point.x1 + gamma.u2 * point.x2,
    )
