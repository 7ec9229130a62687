import json
import os
import tempfile
import unittest
from unittest.mock import MagicMock, patch
import yaml
from ddt import ddt, data, unpack
from cli import main
from src.engine.engine import Engine
from src.engine.renderer import JsonRenderer, RendererFactory, TextRenderer, YamlRenderer
from src.models.models import RunConfig

CORPUS = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", "corpus"))
FILTRATION = os.path.join(CORPUS, "filtrations", "d-radical.json")


def _algebra(name: str) -> str:
    return os.path.join(CORPUS, "algebras", name)


@ddt
class TestMain(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, "report")
        self.env = patch.dict(os.environ, {"QHE_CORPUS": CORPUS, "QHE_LOG": "ERROR", "QHE_SAMPLES": "2000"})
        self.env.start()

    def tearDown(self):
        self.env.stop()
        self.tmp.cleanup()

    def _report(self) -> dict:
        with open(self.out, "r", encoding="utf-8") as f:
            return json.load(f)

    def test_basis(self):
        # Act
        code = main(["basis", _algebra("a2.json"), "--out", self.out])

        # Assert
        report = self._report()
        output = report["stdout"][0]["output"]
        self.assertEqual(code, 0)
        self.assertEqual(report["exit_code"], 0)
        self.assertEqual(output["dim"], 3)
        self.assertEqual(output["N"], 2)
        self.assertEqual(output["dims"]["1->2"], 1)
        self.assertEqual(len(report["header"]["input_digest"]), 64)

    def test_basis_of_tilde_extension(self):
        # Act
        code = main(["basis", _algebra("k.json"), "--target", "D", "--out", self.out])

        # Assert
        output = self._report()["stdout"][0]["output"]
        self.assertEqual(code, 0)
        self.assertEqual(output["dim"], 3)
        self.assertEqual(output["vertices"], ["1", "1~"])

    @data(
        (["basis", "infinite.json"], 2, "DimensionNotStabilized"),
        (["certify", "a2.json", "--target", "A"], 3, "PreconditionError"),
        (["basis", "missing.json"], 2, "InputError"),
        (["filtration", "a2.json", "--filtration", "missing-filtration.json"], 2, "FiltrationError"),
        (["basis", "d.json", "--target", "D", "--filtration", FILTRATION], 3, "PreconditionError"),
    )
    @unpack
    def test_errors(self, argv, expected_code, error):
        # Arrange
        argv = [argv[0], _algebra(argv[1])] + argv[2:]

        # Act
        code = main(argv + ["--out", self.out])

        # Assert
        report = self._report()
        self.assertEqual(code, expected_code)
        self.assertEqual(report["exit_code"], expected_code)
        self.assertEqual(report["stderr"][0]["status"], "ERROR")
        self.assertEqual(report["stderr"][0]["output"]["error"], error)

    def test_filtration_from_file(self):
        # Act
        code = main(["filtration", _algebra("d.json"), "--filtration", FILTRATION, "--out", self.out])

        # Assert
        output = self._report()["stdout"][0]["output"]
        self.assertEqual(code, 0)
        self.assertEqual(output["kind"], "file")
        self.assertEqual(output["layer_dims"], [2, 1, 0])

    def test_corrupted_envelope_fails(self):
        # Act
        code = main(["certify", _algebra("a2-corrupt.json"), "--out", self.out])

        # Assert
        report = self._report()
        self.assertEqual(code, 1)
        self.assertEqual(report["exit_code"], 1)
        self.assertTrue(
            any(s["status"] != "PASS" for s in report["stdout"]) or report["stderr"]
        )

    def test_example_a2(self):
        # Act
        code = main(["example", "a2", "--out", self.out])

        # Assert
        report = self._report()
        self.assertEqual(code, 0)
        self.assertEqual(report["stdout"][0]["claim"], "golden_presentation")
        self.assertEqual(report["stdout"][0]["status"], "PASS")

    def test_unknown_example(self):
        # Act
        code = main(["example", "nowhere", "--out", self.out])

        # Assert
        self.assertEqual(code, 2)
        self.assertIn("nowhere", self._report()["stderr"][0]["output"]["message"])

    def test_digest_is_stable(self):
        # Act
        main(["basis", _algebra("d.json"), "--out", self.out])
        first = self._report()["header"]["input_digest"]
        main(["basis", _algebra("d.json"), "--format", "json", "--out", self.out])
        second = self._report()["header"]["input_digest"]

        # Assert
        self.assertEqual(first, second)

    def test_yaml_report(self):
        # Act
        code = main(["filtration", _algebra("n3.json"), "--format", "yaml", "--out", self.out])

        # Assert
        with open(self.out, "r", encoding="utf-8") as f:
            report = yaml.safe_load(f)
        self.assertEqual(code, 0)
        self.assertEqual(report["stdout"][0]["output"]["layer_dims"], [3, 2, 1, 0])

    def test_text_report_draws_layout(self):
        # Act
        code = main(["envelope", _algebra("k.json"), "--format", "text", "--out", self.out])

        # Assert
        with open(self.out, "r", encoding="utf-8") as f:
            text = f.read()
        self.assertEqual(code, 0)
        self.assertIn("== rhombal_layout [C]: PASS", text)
        self.assertTrue(text.endswith("exit code: 0\n"))

    @patch("cli.write_atomic")
    def test_out_is_written_atomically(self, mock_write):
        # Act
        main(["basis", _algebra("k.json"), "--out", self.out])

        # Assert
        mock_write.assert_called_once()
        self.assertEqual(mock_write.call_args[0][0], self.out)
        self.assertEqual(json.loads(mock_write.call_args[0][1])["stdout"][0]["output"]["dim"], 1)

    def test_bad_workers_is_a_usage_error(self):
        # Arrange
        with patch.dict(os.environ, {"QHE_WORKERS": "0"}):
            # Act / Assert
            with self.assertRaises(SystemExit):
                main(["basis", _algebra("k.json"), "--out", self.out])


@ddt
class TestEngine(unittest.TestCase):
    def test_unknown_command(self):
        # Act / Assert
        with self.assertRaises(ValueError):
            Engine().create(RunConfig(command="draw"), MagicMock(), JsonRenderer())

    def test_example_needs_golden(self):
        # Act / Assert
        with self.assertRaises(ValueError):
            Engine().create(RunConfig(command="example"), MagicMock(), JsonRenderer())

    @data(("json", JsonRenderer), ("yaml", YamlRenderer), ("text", TextRenderer), ("xml", JsonRenderer))
    @unpack
    def test_renderer_factory(self, output_format, expected):
        # Act / Assert
        self.assertIsInstance(RendererFactory.get_renderer(output_format), expected)

    def test_text_renderer_blocks(self):
        # Arrange
        output = {
            "command": "basis",
            "input": "k.json",
            "header": {"N": 1},
            "stdout": [{"claim": "basis", "output": {"dim": 1}, "status": "PASS", "target": "C"}],
            "stderr": [],
            "exit_code": 0,
        }

        # Act
        text = TextRenderer().format(output)

        # Assert
        self.assertIn("== basis [C]: PASS", text)
        self.assertIn("  dim: 1", text)
        self.assertIn('N: 1', text)
