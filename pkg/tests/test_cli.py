"""CLI contract: outputs, engine agreement, exit codes, report files."""

import json
import subprocess
import sys

from compdet.poly import parse_canonical, parse_factored


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "compdet.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


class TestCompositions:
    def test_weak_5_3(self):
        r = run_cli("compositions", "5", "3")
        assert r.returncode == 0
        lines = r.stdout.splitlines()
        assert len(lines) == 21
        assert lines[0] == "5 0 0"
        assert lines[-1] == "0 0 5"

    def test_proper(self):
        r = run_cli("compositions", "3", "2", "--proper")
        assert r.returncode == 0
        assert r.stdout.splitlines() == ["2 1", "1 2"]

    def test_trivial(self):
        r = run_cli("compositions", "0", "2")
        assert r.stdout.splitlines() == ["0 0"]

    def test_json(self):
        r = run_cli("compositions", "2", "2", "--format", "json")
        assert json.loads(r.stdout) == [[2, 0], [1, 1], [0, 2]]

    def test_invalid_args_exit_2(self):
        assert run_cli("compositions", "x", "2").returncode == 2
        assert run_cli("compositions", "2", "0").returncode == 2


class TestDet:
    def test_integer_bareiss(self):
        r = run_cli("det", "2", "2", "--engine", "bareiss", "--vars", "zero")
        assert r.returncode == 0
        assert r.stdout.strip() == "16"

    def test_formula_factored_text(self):
        r = run_cli("det", "2", "2", "--engine", "formula")
        assert r.returncode == 0
        assert r.stdout.strip() == "2*(x1+x2+2)^3"

    def test_proper_formula(self):
        r = run_cli("det", "3", "2", "--proper", "--engine", "formula")
        assert r.stdout.strip() == "(x1+x2+3)*(x1+1)*(x1+2)*(x2+1)*(x2+2)"

    def test_engines_agree_symbolic(self):
        results = {}
        for engine in ("cofactor", "bareiss", "blocktri", "formula"):
            r = run_cli("det", "2", "2", "--engine", engine)
            assert r.returncode == 0, (engine, r.stderr)
            results[engine] = r.stdout.strip()
        poly_vals = {
            e: parse_canonical(results[e], nvars=2) for e in ("cofactor", "bareiss")
        }
        factored_vals = {
            e: parse_factored(results[e], nvars=2).expand()
            for e in ("blocktri", "formula")
        }
        vals = list(poly_vals.values()) + list(factored_vals.values())
        assert all(v == vals[0] for v in vals)

    def test_engines_agree_at_point(self):
        outs = set()
        for engine in ("cofactor", "bareiss", "blocktri", "formula"):
            r = run_cli("det", "2", "2", "--engine", engine, "--at", "3,4")
            assert r.returncode == 0
            outs.add(r.stdout.strip())
        assert len(outs) == 1

    def test_univariate_output_uses_bare_x(self):
        r = run_cli("det", "1", "2", "--engine", "formula", "--vars", "univariate")
        assert r.stdout.strip() == "(2*x+1)"

    def test_default_engines(self):
        assert run_cli("det", "2", "2", "--vars", "zero").stdout.strip() == "16"
        assert run_cli("det", "2", "2").stdout.strip() == "2*(x1+x2+2)^3"

    def test_json_output(self):
        r = run_cli("det", "2", "2", "--engine", "bareiss", "--format", "json")
        data = json.loads(r.stdout)
        assert data["kind"] == "poly"
        assert data["value"]["nvars"] == 2

    def test_guard_violation_exit_3(self):
        r = run_cli("det", "11", "2", "--engine", "cofactor", "--vars", "zero")
        assert r.returncode == 3

    def test_invalid_combinations_exit_2(self):
        assert run_cli("det", "2", "2", "--engine", "warp").returncode == 2
        assert run_cli("det", "2", "2", "--proper", "--engine", "blocktri").returncode == 2
        assert run_cli("det", "2", "2", "--at", "1").returncode == 2
        assert run_cli("det", "2", "2", "--at", "1,2", "--vars", "zero").returncode == 2


class TestMatrix:
    def test_general_dump(self):
        r = run_cli("matrix", "1", "2")
        assert r.returncode == 0
        data = json.loads(r.stdout)
        assert data["labels"] == [[1, 0], [0, 1]]
        assert data["entries"] == [["x1 + 1", "x2"], ["x1", "x2 + 1"]]

    def test_integer_dump(self):
        r = run_cli("matrix", "2", "2", "--vars", "zero")
        data = json.loads(r.stdout)
        assert data["entries"] == [["4", "0", "0"], ["1", "1", "1"], ["0", "0", "4"]]


class TestVerify:
    def test_small_grid(self, tmp_path):
        out = tmp_path / "report.json"
        r = run_cli("verify", "--nmax", "2", "--pmax", "2", "--out", str(out))
        assert r.returncode == 0
        assert r.stdout.strip().startswith("pass ")
        data = json.loads(out.read_text())
        assert data["fail"] == 0
        assert data["pass"] == len(data["cells"])

    def test_trivial_grid(self):
        r = run_cli("verify", "--nmax", "0", "--pmax", "1")
        assert r.returncode == 0

    def test_with_points(self, tmp_path):
        out = tmp_path / "report.json"
        r = run_cli(
            "verify", "--nmax", "2", "--pmax", "2", "--points", "2",
            "--seed", "42", "--out", str(out),
        )
        assert r.returncode == 0
        data = json.loads(out.read_text())
        checks = {c["check"] for c in data["cells"]}
        assert any(c.startswith("point_value") for c in checks)

    def test_byte_identical_reports(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ("verify", "--nmax", "2", "--pmax", "2", "--points", "2", "--seed", "7")
        assert run_cli(*args, "--out", str(a)).returncode == 0
        assert run_cli(*args, "--out", str(b)).returncode == 0
        assert a.read_bytes() == b.read_bytes()

    def test_io_error_exit_5(self, tmp_path):
        r = run_cli(
            "verify", "--nmax", "1", "--pmax", "1",
            "--out", str(tmp_path / "nope" / "deep" / "x.json"),
        )
        assert r.returncode == 5


class TestIdentities:
    def test_ci_suite(self):
        r = run_cli("identities", "--suite", "ci")
        assert r.returncode == 0
        assert r.stdout.strip() == "pass 3/3"

    def test_unknown_suite_exit_2(self):
        assert run_cli("identities", "--suite", "bogus").returncode == 2


class TestBench:
    def test_csv_shape(self, tmp_path):
        out = tmp_path / "bench.csv"
        r = run_cli(
            "bench", "--nmax", "2", "--pmax", "2",
            "--engines", "bareiss,formula", "--out", str(out),
        )
        assert r.returncode == 0, r.stderr
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,p,dim,engine,milliseconds,peak-term-count"
        assert len(lines) == 1 + 2 * 2 * 2  # header + cells x engines

    def test_single_cell_single_engine(self):
        r = run_cli("bench", "--nmax", "1", "--pmax", "1", "--engines", "cofactor")
        assert r.returncode == 0
        assert len(r.stdout.strip().splitlines()) == 2

    def test_empty_engine_list_exit_2(self):
        assert run_cli("bench", "--engines", "").returncode == 2
