"""Tests para OutputWriter."""

from __future__ import annotations

import tempfile
import unittest
from pathlib import Path
from unittest import mock

from servidor.services.exporters import OutputWriter
from shared.errors import ServiceError


class OutputWriterTests(unittest.TestCase):
    """Valida escritura atomica y manejo de errores."""

    def setUp(self) -> None:
        self.writer = OutputWriter()

    def test_write_creates_directory_and_file(self) -> None:
        """Debe crear directorios intermedios y escribir el contenido completo."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "salidas" / "reporte.csv"

            written = self.writer.write(path, "key,value\nT,4\n")

            self.assertEqual(written, path)
            self.assertEqual(path.read_text(encoding="utf-8"), "key,value\nT,4\n")
            self.assertFalse(path.with_name("reporte.csv.tmp").exists())

    def test_write_replaces_existing_file(self) -> None:
        """Debe reemplazar el archivo previo."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "reporte.json"
            path.write_text("viejo", encoding="utf-8")

            self.writer.write(path, "nuevo")

            self.assertEqual(path.read_text(encoding="utf-8"), "nuevo")

    def test_directory_path_is_rejected(self) -> None:
        """Debe rechazar rutas que son directorios."""
        with tempfile.TemporaryDirectory() as temp_dir:
            with self.assertRaises(ServiceError):
                self.writer.write(Path(temp_dir), "contenido")

    def test_os_error_becomes_service_error(self) -> None:
        """Debe envolver OSError en ServiceError y limpiar el temporal."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "reporte.csv"
            with mock.patch.object(Path, "replace", side_effect=OSError("disco lleno")):
                with self.assertRaises(ServiceError):
                    self.writer.write(path, "contenido")

            self.assertFalse(path.exists())
            self.assertFalse(path.with_name("reporte.csv.tmp").exists())


if __name__ == "__main__":
    unittest.main()
