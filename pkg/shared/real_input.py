"""Variantes de entrada para numeros reales y su formato de texto.

Gramatica aceptada::

    rat:<p>/<q>
    surd:(<a>+<b>*sqrt(<d>))/<c>
    cf:[a0;a1,a2,...]                      (finito)
    cf:[a0;a1,...]repeat:[r1,r2,...]       (cola periodica)
    cf:[a0;a1,...]rule:mul(m)|pow(e)|euler (digitos definidos por regla)
    dec:<digitos>~<radio>

Dentro de un punto del plano tambien se aceptan enteros y racionales
simples (``1``, ``-3``, ``1/2``, ``0.25``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint

from shared.errors import GrammarError, ValidationError

_RAT_PATTERN = re.compile(r"^rat:\s*([+-]?\d+)\s*(?:/\s*(\d+))?$")
_SURD_PATTERN = re.compile(
    r"^surd:\(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)"
    r"\s*/\s*([+-]?\d+)$"
)
_CF_PATTERN = re.compile(
    r"^cf:\[\s*([+-]?\d+)\s*(?:;\s*([\d\s,]*))?\]"
    r"(?:repeat:\[\s*([\d\s,]+)\]|rule:(mul|pow)\(\s*(\d+)\s*\)|rule:(euler))?$"
)
_DEC_PATTERN = re.compile(r"^dec:\s*([+-]?\d+(?:\.\d+)?)\s*~\s*(\S+)$")
_SHORTHAND_PATTERN = re.compile(r"^[+-]?\d+(?:\.\d+)?(?:\s*/\s*\d+)?$")

RULE_MUL = "mul"
RULE_POW = "pow"
RULE_EULER = "euler"


@dataclass(frozen=True)
class Rational:
    """Numero racional p/q con q > 0, reducido."""

    numerator: int
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.denominator == 0:
            raise ValidationError("El denominador racional no puede ser 0.")
        value = Fraction(self.numerator, self.denominator)
        object.__setattr__(self, "numerator", value.numerator)
        object.__setattr__(self, "denominator", value.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class QuadraticSurd:
    """Surd cuadratico (a + b*sqrt(d))/c en forma canonica."""

    a: int
    b: int
    d: int
    c: int = 1

    def __post_init__(self) -> None:
        if self.c == 0:
            raise ValidationError("El denominador c del surd no puede ser 0.")
        if self.d < 2 or not is_squarefree(self.d):
            raise ValidationError(f"El radicando debe ser libre de cuadrados y >= 2: {self.d}")
        a, b, c = self.a, self.b, self.c
        if c < 0:
            a, b, c = -a, -b, -c
        divisor = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // divisor)
        object.__setattr__(self, "b", b // divisor)
        object.__setattr__(self, "c", c // divisor)


@dataclass(frozen=True)
class DigitRule:
    """Regla que genera digitos de fraccion continua mas alla del prefijo."""

    kind: str
    parameter: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (RULE_MUL, RULE_POW, RULE_EULER):
            raise ValidationError(f"Regla de digitos desconocida: {self.kind}")
        if self.kind != RULE_EULER and self.parameter < 1:
            raise ValidationError("El parametro de la regla debe ser >= 1.")

    def next_digit(self, index: int, previous: int) -> int:
        """Digito a_index dado a_(index-1)."""
        if self.kind == RULE_MUL:
            return previous * self.parameter
        if self.kind == RULE_POW:
            return previous**self.parameter
        return 2 * (index + 1) // 3 if index % 3 == 2 else 1

    def to_text(self) -> str:
        if self.kind == RULE_EULER:
            return "rule:euler"
        return f"rule:{self.kind}({self.parameter})"


@dataclass(frozen=True)
class CFDigits:
    """Fraccion continua [a0; a1, ...] finita, periodica o definida por regla."""

    a0: int
    prefix: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    rule: DigitRule | None = None

    def __post_init__(self) -> None:
        if any(digit < 1 for digit in (*self.prefix, *self.period)):
            raise ValidationError("Los cocientes parciales a_k (k >= 1) deben ser >= 1.")
        if self.period and self.rule is not None:
            raise ValidationError("Una fraccion continua no puede tener periodo y regla.")
        if self.rule is not None and not self.prefix and self.rule.kind != RULE_EULER:
            raise ValidationError("Una regla multiplicativa requiere al menos un digito a1.")

    @property
    def is_finite(self) -> bool:
        return not self.period and self.rule is None


@dataclass(frozen=True)
class DecimalInterval:
    """Intervalo [m - r, m + r] con punto medio decimal exacto."""

    midpoint: str
    radius: Fraction = field(default_factory=lambda: Fraction(1, 10**6))

    def __post_init__(self) -> None:
        try:
            Fraction(self.midpoint)
        except ValueError as exc:
            raise ValidationError(f"Punto medio decimal invalido: {self.midpoint}") from exc
        if self.radius <= 0:
            raise ValidationError("El radio del intervalo decimal debe ser > 0.")

    @property
    def midpoint_value(self) -> Fraction:
        return Fraction(self.midpoint)


RealInput = Rational | QuadraticSurd | CFDigits | DecimalInterval


def is_squarefree(value: int) -> bool:
    """Indica si value > 0 no tiene factores primos repetidos."""
    return value > 0 and all(exponent == 1 for exponent in factorint(value).values())


def parse_real(text: str) -> RealInput:
    """Parsea un numero real segun la gramatica del proyecto."""
    raw = (text or "").strip()
    if not raw:
        raise GrammarError("El numero real no puede estar vacio.")

    if raw.startswith("rat:"):
        match = _RAT_PATTERN.fullmatch(raw)
        if not match:
            raise GrammarError(f"Racional invalido: {raw}")
        return Rational(int(match.group(1)), int(match.group(2) or 1))

    if raw.startswith("surd:"):
        match = _SURD_PATTERN.fullmatch(raw)
        if not match:
            raise GrammarError(f"Surd invalido: {raw}")
        a_text, sign, b_text, d_text, c_text = match.groups()
        b_value = int(b_text) if sign == "+" else -int(b_text)
        return QuadraticSurd(int(a_text), b_value, int(d_text), int(c_text))

    if raw.startswith("cf:"):
        return _parse_cf(raw)

    if raw.startswith("dec:"):
        match = _DEC_PATTERN.fullmatch(raw)
        if not match:
            raise GrammarError(f"Intervalo decimal invalido: {raw}")
        try:
            radius = Fraction(match.group(2))
        except (ValueError, ZeroDivisionError) as exc:
            raise GrammarError(f"Radio invalido: {match.group(2)}") from exc
        return DecimalInterval(match.group(1), radius)

    if _SHORTHAND_PATTERN.fullmatch(raw):
        try:
            value = Fraction(raw.replace(" ", ""))
        except ZeroDivisionError as exc:
            raise GrammarError(f"Racional invalido: {raw}") from exc
        return Rational(value.numerator, value.denominator)

    raise GrammarError(f"Formato de numero real no reconocido: {raw}")


def _parse_cf(raw: str) -> CFDigits:
    match = _CF_PATTERN.fullmatch(raw.replace(" ", ""))
    if not match:
        raise GrammarError(f"Fraccion continua invalida: {raw}")
    a0_text, prefix_text, period_text, rule_kind, rule_param, euler = match.groups()
    prefix = _parse_digit_list(prefix_text)
    period = _parse_digit_list(period_text)
    rule = None
    if rule_kind:
        rule = DigitRule(rule_kind, int(rule_param))
    elif euler:
        rule = DigitRule(RULE_EULER)
    return CFDigits(int(a0_text), prefix, period, rule)


def _parse_digit_list(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    items = [item for item in text.split(",") if item]
    try:
        return tuple(int(item) for item in items)
    except ValueError as exc:
        raise GrammarError(f"Lista de digitos invalida: {text}") from exc


def parse_point(text: str) -> tuple[RealInput, RealInput]:
    """Parsea ``"x1,x2"``; la coma separadora es la de nivel superior."""
    parts = split_top_level(text or "")
    if len(parts) != 2:
        raise GrammarError(f"Un punto del plano requiere dos coordenadas: {text!r}")
    return parse_real(parts[0]), parse_real(parts[1])


def split_top_level(text: str) -> list[str]:
    """Divide por comas que no estan dentro de corchetes o parentesis."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for char in text:
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
            continue
        current.append(char)
    parts.append("".join(current).strip())
    return parts


def format_real(value: RealInput) -> str:
    """Texto canonico de una entrada real."""
    if isinstance(value, Rational):
        return f"rat:{value.numerator}/{value.denominator}"
    if isinstance(value, QuadraticSurd):
        sign = "-" if value.b < 0 else "+"
        return f"surd:({value.a}{sign}{abs(value.b)}*sqrt({value.d}))/{value.c}"
    if isinstance(value, CFDigits):
        body = str(value.a0)
        if value.prefix:
            body += ";" + ",".join(str(digit) for digit in value.prefix)
        text = f"cf:[{body}]"
        if value.period:
            text += "repeat:[" + ",".join(str(digit) for digit in value.period) + "]"
        if value.rule is not None:
            text += value.rule.to_text()
        return text
    radius = value.radius
    radius_text = str(radius.numerator) if radius.denominator == 1 else f"{radius.numerator}/{radius.denominator}"
    return f"dec:{value.midpoint}~{radius_text}"
