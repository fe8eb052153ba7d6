"""Superficie de linea de comandos (argparse) sobre el controlador."""

from __future__ import annotations

import argparse
import logging
from collections.abc import Sequence

from cliente.backend.controller import RunConfig
from cliente.backend.formatters import FORMAT_TABLE, FORMATS
from cliente.backend.gateway import CHECKS
from cliente.backend.validators import parse_index_range
from parametros import (
    DEFAULT_CONVERGENT_COUNT,
    DEFAULT_GRID_RATIO,
    DEFAULT_X2,
    DEFAULT_XI,
    DEFAULT_Y,
    ORACLE_CAP,
    PRECISION_CAP_BITS,
)
from servidor.services.analysis import SOURCE_ORACLE, SOURCES
from servidor.services.constructions import METHODS
from shared.errors import ValidationError

LOGGER = logging.getLogger(__name__)

DEFAULT_K_RANGE = "1..10"
DEFAULT_J0_RANGE = "3..8"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitas",
        description=(
            "Aproximacion diofantica en orbitas de SL(2,Z): construcciones certificadas, "
            "oraculo exhaustivo y estimacion de exponentes."
        ),
    )
    parser.add_argument("--xi", default=DEFAULT_XI, help="Primera coordenada de x (gramatica de reales).")
    parser.add_argument("--x2", default=DEFAULT_X2, help="Segunda coordenada de x.")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default=FORMAT_TABLE)
    parser.add_argument("--output", default=None, help="Ruta del archivo de salida (por defecto stdout).")
    parser.add_argument("--oracle-cap", type=int, default=ORACLE_CAP, help="Cota maxima de T para el oraculo.")
    parser.add_argument(
        "--precision-cap",
        type=int,
        default=PRECISION_CAP_BITS,
        help="Bits maximos para decidir comparaciones perezosas.",
    )
    parser.add_argument("--seed", type=int, default=None, help="Semilla para verificaciones aleatorias.")
    parser.add_argument("--verbose", action="store_true", help="Activa logs DEBUG.")

    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    convergents = subparsers.add_parser("convergents", help="Convergentes certificados de x1/x2.")
    convergents.add_argument("--n", dest="count", type=int, default=DEFAULT_CONVERGENT_COUNT)

    approx = subparsers.add_parser("approx", help="Construcciones explicitas por indice.")
    approx.add_argument("--method", choices=METHODS, required=True)
    approx.add_argument("--y", default=DEFAULT_Y)
    approx.add_argument("--k", dest="k_range", nargs="+", default=[DEFAULT_K_RANGE])
    approx.add_argument("--j0", dest="j0_range", nargs="+", default=[DEFAULT_J0_RANGE])
    approx.add_argument("--omega", default=None)
    approx.add_argument("--omega-y", dest="omega_y", default=None)
    approx.add_argument("--mu", default=None)

    verify = subparsers.add_parser("verify", help="Verificaciones exhaustivas con el oraculo.")
    verify.add_argument("check", choices=CHECKS)
    verify.add_argument("--y", default=DEFAULT_Y)
    verify.add_argument("--k", type=int, required=True)
    verify.add_argument("--T", dest="bound", type=int, default=None)
    verify.add_argument("--mu", default=None)
    verify.add_argument("--j", type=int, default=None)

    exponents = subparsers.add_parser("exponents", help="Escalera D(T) y exponentes empiricos.")
    exponents.add_argument("--y", default=DEFAULT_Y)
    exponents.add_argument("--T", dest="t_max", type=int, default=ORACLE_CAP)
    exponents.add_argument("--ratio", default=str(DEFAULT_GRID_RATIO))
    exponents.add_argument("--source", choices=SOURCES, default=SOURCE_ORACLE)
    exponents.add_argument("--omega-xi", dest="omega_xi", default=None)
    exponents.add_argument("--omega-y", dest="omega_y", default=None)
    exponents.add_argument("--window-start", dest="window_start", type=int, default=None)

    enumerate_parser = subparsers.add_parser("enumerate", help="Enumeracion de |gamma| <= T.")
    enumerate_parser.add_argument("--T", dest="t_max", type=int, required=True)
    enumerate_parser.add_argument("--partitions", type=int, default=1)
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Traduce el namespace de argparse a una RunConfig."""
    config = RunConfig(
        subcommand=args.subcommand,
        xi=args.xi,
        x2=args.x2,
        output_format=args.output_format,
        output=args.output,
        seed=args.seed,
    )
    if args.subcommand == "convergents":
        config.count = args.count
    elif args.subcommand == "approx":
        config.y = args.y
        config.method = args.method
        config.k_values = parse_index_range(args.k_range)
        config.j0_values = parse_index_range(args.j0_range)
        config.omega = args.omega
        config.omega_y = args.omega_y
        config.mu = args.mu
    elif args.subcommand == "verify":
        config.y = args.y
        config.check = args.check
        config.k = args.k
        config.bound = args.bound
        config.mu = args.mu
        config.j = args.j
    elif args.subcommand == "exponents":
        config.y = args.y
        config.t_max = args.t_max
        config.ratio = args.ratio
        config.source = args.source
        config.omega_xi = args.omega_xi
        config.omega_y = args.omega_y
        config.window_start = args.window_start
    else:
        config.t_max = args.t_max
        config.partitions = args.partitions
    return config


def apply_runtime_flags(args: argparse.Namespace) -> None:
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if args.oracle_cap < 1:
        raise ValidationError("--oracle-cap debe ser >= 1.")
    if args.precision_cap < 1:
        raise ValidationError("--precision-cap debe ser >= 1.")
