"""Escritura atomica de salidas renderizadas."""

from __future__ import annotations

import logging
from pathlib import Path

from shared.errors import ServiceError

LOGGER = logging.getLogger(__name__)


class OutputWriter:
    """Escribe archivos de salida completos via archivo temporal y reemplazo."""

    def write(self, path: Path, content: str) -> Path:
        if path.exists() and path.is_dir():
            raise ServiceError(f"La ruta de salida es un directorio: {path}")
        temp_path = path.with_name(f"{path.name}.tmp")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with temp_path.open("w", newline="", encoding="utf-8") as output_file:
                output_file.write(content)
            temp_path.replace(path)
        except OSError as exc:
            raise ServiceError(f"No fue posible escribir archivo de salida: {path}") from exc
        finally:
            if temp_path.exists():
                temp_path.unlink(missing_ok=True)

        LOGGER.info("Archivo de salida escrito: %s", path)
        return path
