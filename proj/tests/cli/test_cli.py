"""End-to-end checks of the wittenlab tool: exit codes, artifact contents,
schema validity and determinism."""

import argparse
import csv
import json
import math
import shutil
import subprocess
import sys
import unittest
from pathlib import Path

import jsonschema

ARGS = None


def run(subcommand, config, out, *extra):
    cmd = [ARGS.binary, subcommand, "--config", str(config), "--out", str(out), *extra]
    return subprocess.run(cmd, capture_output=True, text=True)


def read_rows(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    return rows[0], [[float(x) for x in r] for r in rows[1:]]


def validate_dir(test, directory):
    for doc in sorted(Path(directory).glob("*.json")):
        schema = json.loads((ARGS.schemas / f"{doc.stem}.schema.json").read_text())
        jsonschema.validate(json.loads(doc.read_text()), schema)


def without_timings(manifest_text):
    m = json.loads(manifest_text)
    m.pop("timings_seconds", None)
    return m


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.work = ARGS.work
        shutil.rmtree(cls.work, ignore_errors=True)
        cls.work.mkdir(parents=True)
        cls.transforms = ARGS.configs / "transforms.yaml"

    def out(self, name):
        return self.work / name

    def write_config(self, name, text):
        p = self.work / name
        p.write_text(text)
        return p

    def test_witten_tanh(self):
        r = run("witten", ARGS.configs / "tanh.yaml", self.out("tanh"))
        self.assertEqual(r.returncode, 0, r.stderr)
        report = json.loads((self.out("tanh") / "report.json").read_text())
        self.assertEqual(report["W_xi"]["text"], "1")
        self.assertTrue(report["fredholm"]["fredholm"])
        self.assertLessEqual(abs(report["W_r"]["estimate"] - 1.0), 0.05)
        self.assertLessEqual(abs(report["W_s"]["estimate"] - 1.0), 0.05)
        for name in ("delta_r.csv", "delta_s.csv", "xi_A.csv", "xi_H.csv"):
            self.assertTrue((self.out("tanh") / name).exists(), name)
        header, rows = read_rows(self.out("tanh") / "delta_r.csv")
        self.assertEqual(header, ["L", "N", "lambda", "delta_r"])
        self.assertEqual(len(rows), 26)
        header, _ = read_rows(self.out("tanh") / "delta_s.csv")
        self.assertEqual(header, ["L", "N", "t", "delta_s"])
        validate_dir(self, self.out("tanh"))

    def test_witten_half_integer(self):
        r = run("witten", ARGS.configs / "half_integer.yaml", self.out("half"))
        self.assertEqual(r.returncode, 0, r.stderr)
        report = json.loads((self.out("half") / "report.json").read_text())
        self.assertEqual(report["W_xi"]["value"], 0.5)
        self.assertFalse(report["fredholm"]["fredholm"])
        validate_dir(self, self.out("half"))

    def test_nonconvergent_witten_exits_2_and_keeps_tables(self):
        cfg = self.write_config(
            "strict.yaml",
            "path:\n  A_minus: [[-1.0]]\n  B_plus: [[2.0]]\n"
            "grid:\n  resolutions: [[10, 201], [20, 401]]\n  plateau_tol: 1.0e-12\n",
        )
        r = run("witten", cfg, self.out("strict"))
        self.assertEqual(r.returncode, 2, r.stderr)
        self.assertTrue((self.out("strict") / "delta_r.csv").exists())
        manifest = json.loads((self.out("strict") / "manifest.json").read_text())
        self.assertEqual(manifest["command"], "witten")
        validate_dir(self, self.out("strict"))

    def test_malformed_matrix_exits_1_naming_the_field(self):
        r = run("witten", ARGS.configs / "malformed.yaml", self.out("malformed"))
        self.assertEqual(r.returncode, 1)
        self.assertIn("path.A_minus[1]", r.stderr)
        self.assertIn("square", r.stderr)

    def test_usage_errors_exit_1(self):
        self.assertEqual(run("nonsense", self.transforms, self.out("x")).returncode, 1)
        r = subprocess.run([ARGS.binary, "witten"], capture_output=True, text=True)
        self.assertEqual(r.returncode, 1)
        r = subprocess.run([ARGS.binary, "--help"], capture_output=True, text=True)
        self.assertEqual(r.returncode, 0)
        self.assertIn("trace-check", r.stdout)

    def test_missing_path_section_exits_1(self):
        cfg = self.write_config("nopath.yaml", "seed: 3\n")
        r = run("fredholm", cfg, self.out("nopath"))
        self.assertEqual(r.returncode, 1)
        self.assertIn("path", r.stderr)

    def test_fredholm_half_integer(self):
        r = run("fredholm", ARGS.configs / "half_integer.yaml", self.out("fredholm"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads((self.out("fredholm") / "fredholm.json").read_text())
        self.assertFalse(doc["fredholm"])
        self.assertEqual(doc["message"], "not Fredholm, gap_minus=0")
        validate_dir(self, self.out("fredholm"))

    def test_abel_resolvent_matches_closed_form(self):
        r = run("abel", self.transforms, self.out("abel"))
        self.assertEqual(r.returncode, 0, r.stderr)
        header, rows = read_rows(self.out("abel") / "abel.csv")
        self.assertEqual(header, ["nu", "F", "F_prime", "F_closed", "F_prime_closed"])
        for nu, F, _, _, _ in rows:
            self.assertLessEqual(abs(F - nu / (2.0 * -1.0 * math.sqrt(nu * nu + 1.0))), 1e-8)
        validate_dir(self, self.out("abel"))

    def test_pushnitski_indicator_is_the_arcsine_curve(self):
        r = run("pushnitski", self.transforms, self.out("push"))
        self.assertEqual(r.returncode, 0, r.stderr)
        _, rows = read_rows(self.out("push") / "pushnitski.csv")
        self.assertEqual(len(rows), 200)
        for lam, value, _ in rows:
            exact = (2.0 / math.pi) * math.asin(min(1.0, 1.0 / math.sqrt(lam)))
            self.assertLessEqual(abs(value - exact), 1e-10)
        validate_dir(self, self.out("push"))

    def test_ssf_rankone_trace_check(self):
        for cmd, files in (
            ("ssf", ["xi_A.csv", "ssf_logdet.csv", "ssf_random.csv", "ssf.json"]),
            ("rankone", ["rankone.json", "rankone_xi.csv"]),
            ("trace-check", ["trace_check.csv", "trace_check.json", "eigenvalues.csv"]),
        ):
            out = self.out(cmd)
            r = run(cmd, self.transforms, out)
            self.assertEqual(r.returncode, 0, r.stderr)
            for f in files:
                self.assertTrue((out / f).exists(), f"{cmd}: {f}")
            validate_dir(self, out)
        ssf = json.loads((self.out("ssf") / "ssf.json").read_text())
        self.assertEqual(ssf["random_suite"]["mismatches"], 0)
        _, rows = read_rows(self.out("trace-check") / "trace_check.csv")
        for _, _, _, rel in rows:
            self.assertLessEqual(rel, 1e-2)

    def test_determinism(self):
        for cmd, config in (
            ("witten", ARGS.configs / "tanh.yaml"),
            ("ssf", self.transforms),
            ("rankone", self.transforms),
            ("abel", self.transforms),
        ):
            a, b = self.out(f"det_{cmd}_a"), self.out(f"det_{cmd}_b")
            self.assertEqual(run(cmd, config, a, "--seed", "11").returncode, 0)
            self.assertEqual(run(cmd, config, b, "--seed", "11").returncode, 0)
            names = sorted(p.name for p in a.iterdir())
            self.assertEqual(names, sorted(p.name for p in b.iterdir()))
            for name in names:
                ta, tb = (a / name).read_bytes(), (b / name).read_bytes()
                if name == "manifest.json":
                    self.assertEqual(without_timings(ta), without_timings(tb))
                else:
                    self.assertEqual(ta, tb, f"{cmd}: {name} differs between runs")

    def test_seed_changes_the_random_suite(self):
        a, b = self.out("seed_a"), self.out("seed_b")
        run("ssf", self.transforms, a, "--seed", "1")
        run("ssf", self.transforms, b, "--seed", "2")
        self.assertNotEqual((a / "ssf_random.csv").read_bytes(), (b / "ssf_random.csv").read_bytes())
        self.assertEqual(json.loads((a / "manifest.json").read_text())["seed"], 1)


def main():
    global ARGS
    p = argparse.ArgumentParser()
    p.add_argument("--binary", required=True)
    p.add_argument("--configs", type=Path, required=True)
    p.add_argument("--schemas", type=Path, required=True)
    p.add_argument("--work", type=Path, required=True)
    ARGS, rest = p.parse_known_args()
    unittest.main(argv=[sys.argv[0], *rest], verbosity=2)


if __name__ == "__main__":
    main()
