"""Runs the hob binary on the sample contracts and checks every report
against docs/report.schema.json.

usage: test_cli.py <hob binary> <docs dir>
"""

import json
import math
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

HOB = None
DOCS = None


def load(name):
    return json.loads((DOCS / name).read_text())


def run(*args, env=None):
    return subprocess.run([str(HOB), "price", *map(str, args)], capture_output=True, text=True, env=env)


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        contract = load("contract.schema.json")
        report = load("report.schema.json")
        registry = Registry().with_resources(
            [(s["$id"], Resource.from_contents(s)) for s in (contract, report)]
        )
        cls.contract_validator = jsonschema.Draft202012Validator(contract, registry=registry)
        cls.report_validator = jsonschema.Draft202012Validator(report, registry=registry)
        cls.examples = sorted((DOCS / "examples").glob("*.json"))
        assert cls.examples, "no sample contracts"

    def report(self, *args):
        done = run(*args)
        self.assertEqual(done.returncode, 0, done.stderr)
        report = json.loads(done.stdout)
        self.report_validator.validate(report)
        return report

    def test_samples_match_contract_schema(self):
        for path in self.examples:
            with self.subTest(path=path.name):
                self.contract_validator.validate(json.loads(path.read_text()))

    def test_reports_match_report_schema(self):
        for path in self.examples:
            with self.subTest(path=path.name):
                self.report(path)
                self.report(path, "--delta", "--emit-portfolio", "--timing")
                self.report(path, "--oracle", "mc:20000:7")

    def test_grid_oracle_reports(self):
        for name, n in (("bermudan_put.json", 400), ("extendable_call.json", 200)):
            with self.subTest(name=name):
                oracle = self.report(DOCS / "examples" / name, "--oracle", f"grid:{n}")["oracle"]
                self.assertLessEqual(abs(oracle["difference"]), oracle["tolerance"])

    def test_emitted_portfolio_is_a_valid_contract(self):
        for path in self.examples:
            with self.subTest(path=path.name):
                report = self.report(path, "--emit-portfolio")
                contract = json.loads(path.read_text())
                contract["contract"] = report["portfolio"]
                self.contract_validator.validate(contract)
                with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
                    json.dump(contract, f)
                try:
                    again = self.report(f.name)
                finally:
                    os.unlink(f.name)
                self.assertEqual(again["contract_type"], "portfolio")
                price = report["closed_form_price"]
                self.assertLessEqual(abs(again["closed_form_price"] - price), 1e-12 * max(1.0, abs(price)))

    def test_reports_are_byte_identical(self):
        path = DOCS / "examples" / "twice_shout_call.json"
        first = run(path, "--oracle", "mc:50000:42", "--delta")
        second = run(path, "--oracle", "mc:50000:42", "--delta")
        self.assertEqual(first.returncode, 0)
        self.assertEqual(first.stdout, second.stdout)

    def test_numbers_round_trip(self):
        report = self.report(DOCS / "examples" / "raw_binary.json")
        text = run(DOCS / "examples" / "raw_binary.json").stdout
        value = report["closed_form_price"]
        self.assertTrue(math.isfinite(value))
        self.assertIn(repr(value), text)

    def test_errors(self):
        base = load("examples/bermudan_put.json")
        cases = [
            (["market", "sigma"], 0, 2, "market.sigma"),
            (["contract", "exercise_dates"], [1.0, 0.5], 2, "contract.exercise_dates"),
        ]
        for keys, value, code, field in cases:
            doc = json.loads(json.dumps(base))
            doc[keys[0]][keys[1]] = value
            with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
                json.dump(doc, f)
            try:
                done = run(f.name)
            finally:
                os.unlink(f.name)
            with self.subTest(field=field):
                self.assertEqual(done.returncode, code)
                self.assertEqual(done.stdout, "")
                self.assertEqual(json.loads(done.stderr)["error"]["field"], field)

        doc = json.loads(json.dumps(base))
        doc["market"]["r"] = 0.0
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            json.dump(doc, f)
        try:
            done = run(f.name)
        finally:
            os.unlink(f.name)
        self.assertEqual(done.returncode, 3)
        self.assertEqual(json.loads(done.stderr)["error"]["type"], "RootNotBracketed")

    def test_environment_tolerance(self):
        env = dict(os.environ, HOB_MVN_TOL="1e-9")
        done = run(DOCS / "examples" / "raw_binary.json", env=env)
        self.assertEqual(json.loads(done.stdout)["mvn_tolerance"], 1e-9)
        done = run(DOCS / "examples" / "raw_binary.json", "--tol", "1e-6", env=env)
        self.assertEqual(json.loads(done.stdout)["mvn_tolerance"], 1e-6)


if __name__ == "__main__":
    HOB = Path(sys.argv.pop(1))
    DOCS = Path(sys.argv.pop(1))
    unittest.main()
