"""Controlador principal del cliente."""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from parametros import (
    DEFAULT_CONVERGENT_COUNT,
    DEFAULT_GRID_RATIO,
    DEFAULT_X2,
    DEFAULT_XI,
    DEFAULT_Y,
    EXIT_BOUND_VIOLATED,
    EXIT_FAILURE,
    EXIT_INPUT,
    EXIT_INSUFFICIENT_DATA,
    EXIT_OK,
    EXIT_PRECISION,
)
from shared.errors import (
    BoundViolatedError,
    InsufficientDataError,
    PrecisionExhaustedError,
    ServiceError,
    ValidationError,
    error_label,
)
from shared.protocol import (
    ApproxRequest,
    ConvergentsRequest,
    EnumerateRequest,
    ExponentsRequest,
    Report,
    VerifyRequest,
    WriteOutputRequest,
)

from .formatters import FORMAT_TABLE, FORMATS, render
from .gateway import CHECKS, ServerGateway
from .validators import (
    validate_fraction,
    validate_omega,
    validate_output_path,
    validate_point_spec,
    validate_positive,
    validate_real_spec,
)

LOGGER = logging.getLogger(__name__)

SUBCOMMAND_CONVERGENTS = "convergents"
SUBCOMMAND_APPROX = "approx"
SUBCOMMAND_VERIFY = "verify"
SUBCOMMAND_EXPONENTS = "exponents"
SUBCOMMAND_ENUMERATE = "enumerate"
SUBCOMMANDS = (
    SUBCOMMAND_CONVERGENTS,
    SUBCOMMAND_APPROX,
    SUBCOMMAND_VERIFY,
    SUBCOMMAND_EXPONENTS,
    SUBCOMMAND_ENUMERATE,
)


@dataclass(slots=True)
class RunConfig:
    """Configuracion completa de una ejecucion, validada antes de calcular."""

    subcommand: str
    xi: str = DEFAULT_XI
    x2: str = DEFAULT_X2
    y: str = DEFAULT_Y
    output_format: str = FORMAT_TABLE
    output: str | None = None
    seed: int | None = None
    count: int = DEFAULT_CONVERGENT_COUNT
    method: str | None = None
    k_values: list[int] = field(default_factory=list)
    j0_values: list[int] = field(default_factory=list)
    omega: str | None = None
    omega_y: str | None = None
    omega_xi: str | None = None
    mu: str | None = None
    check: str | None = None
    k: int | None = None
    bound: int | None = None
    j: int | None = None
    t_max: int | None = None
    ratio: str = str(DEFAULT_GRID_RATIO)
    source: str = "oracle"
    window_start: int | None = None
    partitions: int = 1


def exit_code_for(exc: BaseException) -> int:
    """Taxonomia de codigos de salida por clase de error."""
    if isinstance(exc, ValidationError):
        return EXIT_INPUT
    if isinstance(exc, PrecisionExhaustedError):
        return EXIT_PRECISION
    if isinstance(exc, BoundViolatedError):
        return EXIT_BOUND_VIOLATED
    if isinstance(exc, InsufficientDataError):
        return EXIT_INSUFFICIENT_DATA
    return EXIT_FAILURE


class AppController:
    """Coordina la configuracion de la CLI y los servicios de negocio."""

    def __init__(
        self,
        gateway: ServerGateway,
        stdout: TextIO | None = None,
        stderr: TextIO | None = None,
    ) -> None:
        self._gateway = gateway
        self._stdout = stdout or sys.stdout
        self._stderr = stderr or sys.stderr

    def validate(self, config: RunConfig) -> None:
        """Valida todos los parametros numericos y de texto de la configuracion."""
        if config.subcommand not in SUBCOMMANDS:
            raise ValidationError(f"Subcomando desconocido: {config.subcommand!r}")
        if config.output_format not in FORMATS:
            raise ValidationError(f"Formato de salida desconocido: {config.output_format!r}")
        validate_real_spec(config.xi)
        validate_real_spec(config.x2)
        validate_point_spec(config.y)
        validate_positive(config.count, "--n")
        validate_positive(config.t_max, "--T")
        validate_positive(config.bound, "--T")
        validate_positive(config.partitions, "--partitions")
        validate_positive(config.window_start, "--window-start")
        validate_fraction(config.mu, "--mu", Fraction(0), Fraction(1))
        validate_fraction(config.ratio, "--ratio", Fraction(1))
        validate_omega(config.omega, "--omega")
        validate_omega(config.omega_y, "--omega-y")
        validate_omega(config.omega_xi, "--omega-xi")
        if config.output is not None:
            validate_output_path(Path(config.output))
        if config.subcommand == SUBCOMMAND_APPROX and config.method is None:
            raise ValidationError("approx requiere --method.")
        if config.subcommand == SUBCOMMAND_VERIFY:
            if config.check not in CHECKS:
                raise ValidationError(f"Verificacion desconocida: {config.check!r}")
            if config.k is None:
                raise ValidationError("verify requiere --k.")
        if config.subcommand in (SUBCOMMAND_EXPONENTS, SUBCOMMAND_ENUMERATE) and config.t_max is None:
            raise ValidationError(f"{config.subcommand} requiere --T.")

    def execute(self, config: RunConfig) -> Report:
        """Valida y despacha la configuracion al gateway."""
        self.validate(config)
        if config.seed is not None:
            LOGGER.debug("Semilla configurada: %s", config.seed)
        if config.subcommand == SUBCOMMAND_CONVERGENTS:
            report = self._gateway.convergents(ConvergentsRequest(config.xi, config.x2, config.count))
        elif config.subcommand == SUBCOMMAND_APPROX:
            report = self._gateway.approximate(
                ApproxRequest(
                    xi=config.xi,
                    x2=config.x2,
                    y=config.y,
                    method=config.method,
                    k_values=config.k_values,
                    j0_values=config.j0_values,
                    omega=config.omega,
                    omega_y=config.omega_y,
                    mu=config.mu,
                )
            )
        elif config.subcommand == SUBCOMMAND_VERIFY:
            report = self._gateway.verify(
                VerifyRequest(
                    xi=config.xi,
                    x2=config.x2,
                    y=config.y,
                    check=config.check,
                    k=config.k,
                    bound=config.bound,
                    mu=config.mu,
                    j=config.j,
                )
            )
        elif config.subcommand == SUBCOMMAND_EXPONENTS:
            report = self._gateway.exponents(
                ExponentsRequest(
                    xi=config.xi,
                    x2=config.x2,
                    y=config.y,
                    t_max=config.t_max,
                    ratio=config.ratio,
                    source=config.source,
                    omega_xi=config.omega_xi,
                    omega_y=config.omega_y,
                    window_start=config.window_start,
                )
            )
        else:
            report = self._gateway.enumerate(EnumerateRequest(config.t_max, config.partitions))
        LOGGER.info("Accion ejecutada: %s (%s filas)", config.subcommand, len(report.rows))
        return report

    def run(self, config: RunConfig) -> int:
        """Ejecuta, emite la salida y retorna el codigo de salida."""
        try:
            report = self.execute(config)
            content = render(report, config.output_format)
            if config.output is None:
                self._stdout.write(content)
            else:
                response = self._gateway.write_output(WriteOutputRequest(config.output, content))
                LOGGER.info("Salida escrita en %s", response.file_path)
        except (ValidationError, ServiceError) as exc:
            self._stderr.write(f"{error_label(exc)}: {exc}\n")
            return exit_code_for(exc)

        if not report.passed:
            self._stderr.write(f"BoundViolated: la verificacion {report.kind} encontro violaciones.\n")
            return EXIT_BOUND_VIOLATED
        return EXIT_OK
