"""Parametros globales del proyecto."""

from __future__ import annotations

import logging
import os

ORACLE_CAP_ENV = "ORBITAS_ORACLE_CAP"
PRECISION_CAP_ENV = "ORBITAS_PRECISION_CAP_BITS"
DEFAULT_ORACLE_CAP = 10_000
DEFAULT_PRECISION_CAP_BITS = 4096
INITIAL_PRECISION_BITS = 64
DEFAULT_GRID_RATIO = 2
DEFAULT_CONVERGENT_COUNT = 10
DEFAULT_SEED = 20240101

DEFAULT_XI = "surd:(-1+1*sqrt(5))/2"
DEFAULT_X2 = "1"
DEFAULT_Y = "0,0"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_BOUND_VIOLATED = 4
EXIT_INSUFFICIENT_DATA = 5

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
)

LOGGER = logging.getLogger(__name__)


def _positive_int_from_env(name: str, default: int) -> int:
    """Lee un entero positivo desde el entorno; ignora valores invalidos."""
    raw_value = os.environ.get(name, "").strip()
    if not raw_value:
        return default
    try:
        value = int(raw_value)
    except ValueError:
        LOGGER.warning("Valor invalido en %s=%r; se usa %s.", name, raw_value, default)
        return default
    if value < 1:
        LOGGER.warning("Valor no positivo en %s=%r; se usa %s.", name, raw_value, default)
        return default
    return value


ORACLE_CAP = _positive_int_from_env(ORACLE_CAP_ENV, DEFAULT_ORACLE_CAP)
PRECISION_CAP_BITS = max(
    INITIAL_PRECISION_BITS,
    _positive_int_from_env(PRECISION_CAP_ENV, DEFAULT_PRECISION_CAP_BITS),
)
