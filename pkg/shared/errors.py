"""Excepciones compartidas del proyecto."""

from __future__ import annotations

from typing import Any


class ValidationError(Exception):
    """Error de validacion de datos de entrada."""


class ServiceError(Exception):
    """Error en la ejecucion de servicios."""


class GrammarError(ValidationError):
    """Texto de entrada que no respeta la gramatica de numeros reales."""


class RationalInputError(ValidationError):
    """Se entrego un racional donde se requiere un irracional."""


class SlopeRationalError(ValidationError):
    """La pendiente del punto x es racional."""


class ZeroRowError(ValidationError):
    """La segunda fila de N tiene s = 0."""


class DivisionByZeroError(ValidationError, ZeroDivisionError):
    """Division exacta por cero."""


class WrongQuadrantError(ValidationError):
    """El objetivo no esta en el cuadrante abierto positivo."""


class EvenKError(ValidationError):
    """La construccion con signos requiere k impar."""


class PreconditionFailedError(ValidationError):
    """No se cumplen las hipotesis de un resultado certificado."""


class NotUnimodularError(ValidationError):
    """Matriz entera con determinante distinto de 1."""


class CapExceededError(ValidationError):
    """La cota de norma solicitada supera el limite del oraculo."""


class StreamEmptyError(ValidationError):
    """Ningun indice del rango cumple la condicion solicitada."""


class PrecisionExhaustedError(ServiceError):
    """No fue posible decidir una comparacion dentro del limite de precision."""


class BoundViolatedError(ServiceError):
    """Una desigualdad demostrada fallo en aritmetica exacta."""


class InsufficientDataError(ServiceError):
    """No hay suficientes registros para estimar exponentes."""


class _AttemptError(ServiceError):
    """Resultado por indice que no alcanza la cota; conserva el intento."""

    def __init__(self, message: str, attempt: Any = None) -> None:
        super().__init__(message)
        self.attempt = attempt


class KTooSmallError(_AttemptError):
    """El indice k todavia no satisface la hipotesis de norma."""


class BoundNotYetReachedError(_AttemptError):
    """Las condiciones de signo o tamano aun no se cumplen para este k."""


def error_label(exc: BaseException) -> str:
    """Nombre corto del error para mensajes de CLI."""
    name = type(exc).__name__
    return name[: -len("Error")] if name.endswith("Error") else name
