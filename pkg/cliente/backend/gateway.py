"""Gateway de comunicacion cliente-servidor."""

from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Protocol

from servidor.domain.contfrac import Omega, parse_omega
from servidor.services import reports
from servidor.services.exporters import OutputWriter
from servidor.services.orbit_service import OrbitService
from shared.errors import ServiceError, ValidationError
from shared.protocol import (
    ApproxRequest,
    ConvergentsRequest,
    EnumerateRequest,
    ExponentsRequest,
    Report,
    VerifyRequest,
    WriteOutputRequest,
    WriteOutputResponse,
)

LOGGER = logging.getLogger(__name__)

CHECK_LEMMA1 = "lemma1"
CHECK_THM4 = "thm4"
CHECK_LEMMA7 = "lemma7"
CHECKS = (CHECK_LEMMA1, CHECK_THM4, CHECK_LEMMA7)


class ServerGateway(Protocol):
    """Interfaz de acceso del cliente a servicios del servidor."""

    def convergents(self, request: ConvergentsRequest) -> Report:
        """Solicita convergentes certificados."""

    def approximate(self, request: ApproxRequest) -> Report:
        """Solicita construcciones por indice."""

    def verify(self, request: VerifyRequest) -> Report:
        """Solicita una verificacion exhaustiva."""

    def exponents(self, request: ExponentsRequest) -> Report:
        """Solicita escalera y estimacion de exponentes."""

    def enumerate(self, request: EnumerateRequest) -> Report:
        """Solicita la enumeracion acotada por norma."""

    def write_output(self, request: WriteOutputRequest) -> WriteOutputResponse:
        """Solicita escritura de una salida renderizada."""


def _fraction(text: str | None, name: str) -> Fraction | None:
    if text is None:
        return None
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"Valor racional invalido para {name}: {text!r}") from exc


def _omega(text: str | None) -> Omega | None:
    return None if text is None else parse_omega(text)


class LocalServerGateway:
    """Implementacion local del gateway usando servicios en memoria."""

    def __init__(
        self,
        orbit_service: OrbitService | None = None,
        output_writer: OutputWriter | None = None,
    ) -> None:
        self._orbit_service = orbit_service or OrbitService()
        self._output_writer = output_writer or OutputWriter()

    def convergents(self, request: ConvergentsRequest) -> Report:
        """Calcula y certifica convergentes delegando en el servicio."""
        try:
            x = self._orbit_service.build_point(request.xi, request.x2)
            table, rows = self._orbit_service.convergents(x, request.count)
            report = reports.convergents_report(table, rows)
        except (ServiceError, ValidationError):
            raise
        except Exception as exc:
            LOGGER.exception("Fallo inesperado al calcular convergentes.")
            raise ServiceError("No fue posible calcular los convergentes.") from exc

        return report

    def approximate(self, request: ApproxRequest) -> Report:
        """Ejecuta el metodo de construccion pedido sobre cada indice."""
        try:
            x = self._orbit_service.build_point(request.xi, request.x2)
            y = self._orbit_service.build_target(request.y)
            outcomes = self._orbit_service.approximate(
                x,
                y,
                request.method,
                k_values=request.k_values,
                j0_values=request.j0_values,
                omega=_omega(request.omega),
                omega_y=_omega(request.omega_y),
                mu=_fraction(request.mu, "mu"),
            )
            report = reports.approx_report(request.method, outcomes)
        except (ServiceError, ValidationError):
            raise
        except Exception as exc:
            LOGGER.exception("Fallo inesperado al construir aproximaciones.")
            raise ServiceError("No fue posible construir las aproximaciones.") from exc

        return report

    def verify(self, request: VerifyRequest) -> Report:
        """Ejecuta una verificacion exhaustiva y la devuelve como reporte."""
        if request.check not in CHECKS:
            raise ValidationError(f"Verificacion desconocida: {request.check!r}")
        try:
            x = self._orbit_service.build_point(request.xi, request.x2)
            if request.check == CHECK_LEMMA1:
                report = reports.certificate_report(self._orbit_service.verify_lemma1(x, request.k))
            elif request.check == CHECK_THM4:
                y = self._orbit_service.build_target(request.y)
                report = reports.certificate_report(
                    self._orbit_service.verify_theorem4(x, y, request.k)
                )
            else:
                if request.bound is None or request.mu is None or request.j is None:
                    raise ValidationError("La verificacion lemma7 requiere --T, --mu y --j.")
                y = self._orbit_service.build_target(request.y)
                factorization = self._orbit_service.verify_lemma7(
                    x, y, request.k, request.bound, _fraction(request.mu, "mu"), request.j
                )
                report = reports.factorization_report(factorization)
        except (ServiceError, ValidationError):
            raise
        except Exception as exc:
            LOGGER.exception("Fallo inesperado al verificar %s.", request.check)
            raise ServiceError(f"No fue posible completar la verificacion {request.check}.") from exc

        return report

    def exponents(self, request: ExponentsRequest) -> Report:
        """Calcula la escalera D(T) y los exponentes empiricos."""
        try:
            x = self._orbit_service.build_point(request.xi, request.x2)
            y = self._orbit_service.build_target(request.y)
            sequence, estimate = self._orbit_service.exponents(
                x,
                y,
                request.t_max,
                ratio=_fraction(request.ratio, "ratio"),
                source=request.source,
                omega_xi=_omega(request.omega_xi),
                omega_y=_omega(request.omega_y),
                window_start=request.window_start,
            )
            report = reports.exponents_report(sequence, estimate)
        except (ServiceError, ValidationError):
            raise
        except Exception as exc:
            LOGGER.exception("Fallo inesperado al estimar exponentes.")
            raise ServiceError("No fue posible estimar los exponentes.") from exc

        return report

    def enumerate(self, request: EnumerateRequest) -> Report:
        """Enumera SL(2,Z) acotado por norma."""
        try:
            matrices = self._orbit_service.enumerate(request.bound, request.partitions)
            report = reports.enumeration_report(matrices, request.bound, request.partitions)
        except (ServiceError, ValidationError):
            raise
        except Exception as exc:
            LOGGER.exception("Fallo inesperado al enumerar matrices.")
            raise ServiceError("No fue posible enumerar las matrices.") from exc

        return report

    def write_output(self, request: WriteOutputRequest) -> WriteOutputResponse:
        """Escribe la salida renderizada en disco."""
        try:
            written = self._output_writer.write(Path(request.file_path), request.content)
        except ServiceError:
            raise
        except Exception as exc:
            LOGGER.exception("Fallo inesperado al escribir la salida.")
            raise ServiceError("No fue posible escribir la salida.") from exc

        return WriteOutputResponse(file_path=str(written))
