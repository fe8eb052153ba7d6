"""DTOs del protocolo cliente-servidor."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(slots=True)
class ConvergentsRequest:
    """Solicitud de convergentes certificados de x1/x2."""

    xi: str
    x2: str
    count: int


@dataclass(slots=True)
class ApproxRequest:
    """Solicitud de construcciones explicitas por indice."""

    xi: str
    x2: str
    y: str
    method: str
    k_values: list[int] = field(default_factory=list)
    j0_values: list[int] = field(default_factory=list)
    omega: str | None = None
    omega_y: str | None = None
    mu: str | None = None


@dataclass(slots=True)
class VerifyRequest:
    """Solicitud de verificacion exhaustiva con el oraculo."""

    xi: str
    x2: str
    y: str
    check: str
    k: int
    bound: int | None = None
    mu: str | None = None
    j: int | None = None


@dataclass(slots=True)
class ExponentsRequest:
    """Solicitud de escalera D(T) y estimacion de exponentes."""

    xi: str
    x2: str
    y: str
    t_max: int
    ratio: str = "2"
    source: str = "oracle"
    omega_xi: str | None = None
    omega_y: str | None = None
    window_start: int | None = None


@dataclass(slots=True)
class EnumerateRequest:
    """Solicitud de enumeracion |gamma| <= T."""

    bound: int
    partitions: int = 1


@dataclass(slots=True)
class Report:
    """Respuesta tabular comun: filas de texto y un resumen clave-valor.

    ``passed`` es falso cuando un certificado exhaustivo encontro una violacion.
    """

    kind: str
    headers: tuple[str, ...]
    rows: list[dict[str, str]] = field(default_factory=list)
    summary: dict[str, str] = field(default_factory=dict)
    passed: bool = True


@dataclass(slots=True)
class WriteOutputRequest:
    """Solicitud para escribir una salida renderizada en disco."""

    file_path: str
    content: str


@dataclass(slots=True)
class WriteOutputResponse:
    """Respuesta con la ruta escrita."""

    file_path: str
