"""Tests para AppController y la taxonomia de codigos de salida."""

from __future__ import annotations

import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from cliente.backend.controller import AppController, RunConfig, exit_code_for
from cliente.backend.gateway import LocalServerGateway
from parametros import (
    EXIT_BOUND_VIOLATED,
    EXIT_FAILURE,
    EXIT_INPUT,
    EXIT_INSUFFICIENT_DATA,
    EXIT_OK,
    EXIT_PRECISION,
)
from shared.errors import (
    BoundViolatedError,
    GrammarError,
    InsufficientDataError,
    PrecisionExhaustedError,
    ServiceError,
    StreamEmptyError,
    ValidationError,
)
from shared.protocol import Report, WriteOutputResponse


def certificate(passed: bool) -> Report:
    return Report(
        kind="certificate",
        headers=("key", "value"),
        summary={"statement": "lemma1", "status": "PASS" if passed else "FAIL"},
        passed=passed,
    )


class ExitCodeTests(unittest.TestCase):
    """Valida el mapeo de errores a codigos de salida."""

    def test_exit_codes(self) -> None:
        """Debe distinguir entrada, precision, cota, datos y otros fallos."""
        self.assertEqual(exit_code_for(GrammarError("x")), EXIT_INPUT)
        self.assertEqual(exit_code_for(StreamEmptyError("x")), EXIT_INPUT)
        self.assertEqual(exit_code_for(PrecisionExhaustedError("x")), EXIT_PRECISION)
        self.assertEqual(exit_code_for(BoundViolatedError("x")), EXIT_BOUND_VIOLATED)
        self.assertEqual(exit_code_for(InsufficientDataError("x")), EXIT_INSUFFICIENT_DATA)
        self.assertEqual(exit_code_for(ServiceError("x")), EXIT_FAILURE)


class AppControllerTests(unittest.TestCase):
    """Valida validacion, despacho y salida del controlador."""

    def _build(self, gateway: mock.Mock) -> tuple[AppController, io.StringIO, io.StringIO]:
        stdout = io.StringIO()
        stderr = io.StringIO()
        return AppController(gateway, stdout=stdout, stderr=stderr), stdout, stderr

    def test_validation_errors_return_input_code(self) -> None:
        """Debe rechazar configuraciones invalidas sin llamar al gateway."""
        configs = [
            RunConfig(subcommand="desconocido"),
            RunConfig(subcommand="convergents", xi="pi"),
            RunConfig(subcommand="convergents", output_format="xml"),
            RunConfig(subcommand="approx"),
            RunConfig(subcommand="verify", check="lemma99", k=3),
            RunConfig(subcommand="verify", check="lemma1"),
            RunConfig(subcommand="enumerate"),
            RunConfig(subcommand="approx", method="uniform", mu="2"),
            RunConfig(subcommand="approx", method="rational", omega="1/2"),
        ]
        for config in configs:
            with self.subTest(config=config):
                gateway = mock.Mock()
                controller, stdout, stderr = self._build(gateway)

                code = controller.run(config)

                self.assertEqual(code, EXIT_INPUT)
                self.assertEqual(stdout.getvalue(), "")
                self.assertTrue(stderr.getvalue().endswith("\n"))
                self.assertEqual(gateway.method_calls, [])

    def test_run_writes_rendered_report_to_stdout(self) -> None:
        """Debe renderizar en el formato pedido y salir con 0."""
        gateway = mock.Mock()
        gateway.enumerate.return_value = Report(
            kind="enumerate",
            headers=("v1", "u1", "v2", "u2", "norm"),
            rows=[{"v1": "1", "u1": "0", "v2": "0", "u2": "1", "norm": "1"}],
            summary={"T": "1", "count": "1"},
        )
        controller, stdout, _ = self._build(gateway)

        code = controller.run(RunConfig(subcommand="enumerate", t_max=1, output_format="json"))

        self.assertEqual(code, EXIT_OK)
        request = gateway.enumerate.call_args.args[0]
        self.assertEqual((request.bound, request.partitions), (1, 1))
        self.assertEqual(json.loads(stdout.getvalue())["summary"]["count"], "1")

    def test_run_delegates_file_output(self) -> None:
        """Debe delegar la escritura en el gateway cuando hay --output."""
        gateway = mock.Mock()
        gateway.verify.return_value = certificate(True)
        with tempfile.TemporaryDirectory() as temp_dir:
            target = Path(temp_dir) / "cert.csv"
            gateway.write_output.return_value = WriteOutputResponse(str(target))
            controller, stdout, _ = self._build(gateway)

            code = controller.run(
                RunConfig(subcommand="verify", check="lemma1", k=4, output=str(target), output_format="csv")
            )

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout.getvalue(), "")
        written = gateway.write_output.call_args.args[0]
        self.assertEqual(written.file_path, str(target))
        self.assertTrue(written.content.startswith("key,value\n"))

    def test_failed_certificate_returns_bound_violated(self) -> None:
        """Debe imprimir el reporte y salir con 4 si el certificado falla."""
        gateway = mock.Mock()
        gateway.verify.return_value = certificate(False)
        controller, stdout, stderr = self._build(gateway)

        code = controller.run(RunConfig(subcommand="verify", check="lemma1", k=4))

        self.assertEqual(code, EXIT_BOUND_VIOLATED)
        self.assertIn("status: FAIL", stdout.getvalue())
        self.assertTrue(stderr.getvalue().startswith("BoundViolated:"))

    def test_service_errors_map_to_codes(self) -> None:
        """Debe escribir la etiqueta del error y devolver su codigo."""
        cases = [
            (PrecisionExhaustedError("sin precision"), EXIT_PRECISION, "PrecisionExhausted: sin precision"),
            (InsufficientDataError("pocos datos"), EXIT_INSUFFICIENT_DATA, "InsufficientData: pocos datos"),
            (ServiceError("fallo"), EXIT_FAILURE, "Service: fallo"),
        ]
        for error, expected_code, expected_message in cases:
            with self.subTest(error=error):
                gateway = mock.Mock()
                gateway.exponents.side_effect = error
                controller, _, stderr = self._build(gateway)

                code = controller.run(RunConfig(subcommand="exponents", t_max=10))

                self.assertEqual(code, expected_code)
                self.assertEqual(stderr.getvalue(), expected_message + "\n")

    def test_approx_request_carries_indices(self) -> None:
        """Debe trasladar metodo, indices y parametros al request."""
        gateway = mock.Mock()
        gateway.approximate.return_value = Report(kind="approx", headers=("index", "status"))
        controller, _, _ = self._build(gateway)

        controller.execute(
            RunConfig(subcommand="approx", method="uniform", y="1,2", k_values=[10, 11], mu="1/2")
        )

        request = gateway.approximate.call_args.args[0]
        self.assertEqual(request.method, "uniform")
        self.assertEqual(request.k_values, [10, 11])
        self.assertEqual((request.y, request.mu), ("1,2", "1/2"))

    def test_execute_with_local_gateway(self) -> None:
        """Debe producir la tabla de convergentes de extremo a extremo."""
        controller, stdout, _ = self._build(LocalServerGateway())

        code = controller.run(RunConfig(subcommand="convergents", count=3, output_format="csv"))

        self.assertEqual(code, EXIT_OK)
        lines = stdout.getvalue().splitlines()
        self.assertEqual(lines[0], "k,a_k,p,q,sign_eps,eps_lower,eps_upper,eps")
        self.assertEqual([line.split(",")[3] for line in lines[1:]], ["1", "1", "2", "3"])

    def test_validation_error_message_label(self) -> None:
        """Debe usar el nombre corto del error como etiqueta."""
        gateway = mock.Mock()
        gateway.convergents.side_effect = ValidationError("dato malo")
        controller, _, stderr = self._build(gateway)

        code = controller.run(RunConfig(subcommand="convergents"))

        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(stderr.getvalue(), "Validation: dato malo\n")


if __name__ == "__main__":
    unittest.main()
