"""Validaciones para entradas del cliente."""

from __future__ import annotations

import re
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from servidor.domain.contfrac import parse_omega
from shared.errors import ValidationError
from shared.real_input import parse_point, parse_real

_RANGE_PATTERN = re.compile(r"^(?:(odd|even)\s+)?([+-]?\d+)(?:\s*\.\.\s*([+-]?\d+))?$")


def parse_index_range(tokens: Sequence[str] | str) -> list[int]:
    """Interpreta ``a..b``, ``n``, ``odd a..b`` o ``even a..b`` (extremos incluidos)."""
    text = tokens if isinstance(tokens, str) else " ".join(tokens)
    match = _RANGE_PATTERN.fullmatch(text.strip())
    if not match:
        raise ValidationError(f"Rango de indices invalido: {text!r}")
    parity, start_text, stop_text = match.groups()
    start = int(start_text)
    stop = int(stop_text) if stop_text is not None else start
    if stop < start:
        raise ValidationError(f"Rango vacio: {text!r}")
    values = list(range(start, stop + 1))
    if parity == "odd":
        values = [value for value in values if value % 2 == 1]
    elif parity == "even":
        values = [value for value in values if value % 2 == 0]
    if not values:
        raise ValidationError(f"El rango {text!r} no contiene indices.")
    return values


def validate_real_spec(text: str) -> str:
    """Valida la gramatica de un real sin construirlo."""
    parse_real(text)
    return text.strip()


def validate_point_spec(text: str) -> str:
    parse_point(text)
    return text.strip()


def validate_fraction(
    text: str | None,
    name: str,
    lower: Fraction | None = None,
    upper: Fraction | None = None,
) -> str | None:
    """Valida un racional ``p/q`` opcional dentro de [lower, upper]."""
    if text is None:
        return None
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{name} debe ser un racional p/q: {text!r}") from exc
    if lower is not None and value < lower:
        raise ValidationError(f"{name} debe ser >= {lower}.")
    if upper is not None and value > upper:
        raise ValidationError(f"{name} debe ser <= {upper}.")
    return text.strip()


def validate_omega(text: str | None, name: str) -> str | None:
    if text is None:
        return None
    value = parse_omega(text)
    if value < 1:
        raise ValidationError(f"{name} debe ser >= 1.")
    return text.strip()


def validate_positive(value: int | None, name: str) -> int | None:
    if value is not None and value < 1:
        raise ValidationError(f"{name} debe ser >= 1.")
    return value


def validate_output_path(path: Path) -> None:
    """Valida que la ruta de salida sea utilizable para un archivo."""
    if path.exists() and path.is_dir():
        raise ValidationError(f"La ruta de salida es un directorio: {path}")

    parent = path.parent
    if parent.exists() and not parent.is_dir():
        raise ValidationError(f"La carpeta de salida no es un directorio: {parent}")
    try:
        parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ValidationError(f"No se pudo crear/acceder al directorio: {parent}") from exc
