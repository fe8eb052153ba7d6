"""Inicializacion de la aplicacion de cliente."""

from __future__ import annotations

import logging
import sys
from collections.abc import Sequence

from cliente.backend.controller import AppController, exit_code_for
from cliente.backend.gateway import LocalServerGateway
from cliente.frontend.cli import apply_runtime_flags, config_from_args, parse_args
from servidor.services.orbit_service import OrbitService
from shared.errors import ValidationError, error_label

LOGGER = logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Ejecuta la CLI y retorna el codigo de salida."""
    args = parse_args(argv)
    try:
        apply_runtime_flags(args)
        config = config_from_args(args)
        service = OrbitService(oracle_cap=args.oracle_cap, precision_cap_bits=args.precision_cap)
    except ValidationError as exc:
        LOGGER.debug("Argumentos invalidos: %s", exc)
        print(f"{error_label(exc)}: {exc}", file=sys.stderr)
        return exit_code_for(exc)

    controller = AppController(gateway=LocalServerGateway(orbit_service=service))
    LOGGER.debug("Aplicacion iniciada: %s", config.subcommand)
    return controller.run(config)
