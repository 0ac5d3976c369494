import io
import json
import subprocess
import sys

import pytest

from wittlab.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def structured(*argv):
    code, text = run("--format", "structured", "--seed", "1", *argv)
    return code, json.loads(text)


class TestExamples:
    def test_invariants_text(self):
        code, text = run("--p", "5", "--n", "1", "invariants", "d1")
        assert code == 0
        assert "psi = [0]" in text and "delta = 4" in text
        assert "delta0 = 1" in text and "nilpotent = true" in text

    def test_regular_text(self):
        code, text = run("--p", "5", "--n", "1", "regular", "x1^2*d1")
        assert code == 0
        assert "consensus = false" in text and "kernel_dim = 2" in text
        assert "jordan_profile = [4, 1]" in text

    def test_verify(self):
        code, text = run("--p", "5", "--n", "1", "verify", "--seed", "42", "--trials", "5")
        assert code == 0 and text.strip().endswith("all suites passed")
        assert text.count("PASS ") == 13

    def test_single_suite(self):
        code, text = run("verify", "--suite", "dickson", "--suite", "psi_invariance", "--trials", "3")
        assert code == 0 and text.count("PASS ") == 2


class TestStructured:
    def test_record(self):
        code, rec = structured("--p", "3", "--n", "2", "invariants", "d1 + x2*d2")
        assert code == 0 and rec["schema_version"] == 1 and rec["command"] == "invariants"
        assert rec["config"] == {"p": 3, "n": 2, "m": 1, "seed": 1, "trials": None}
        assert rec["result"]["psi"] == ["gf(3^1):0", "gf(3^1):2"]

    def test_canonical(self):
        code, rec = structured("--p", "3", "--n", "2", "canonical", "d1 + x2*d2")
        assert code == 0 and rec["result"]["r"] == 1 and rec["result"]["verified"]

    def test_weights(self):
        code, rec = structured("--p", "3", "--n", "2", "weights", "--torus", "t0")
        tables = rec["result"]["tables"]
        assert [t["module"] for t in tables] == ["O", "L"]
        assert len(tables[0]["weights"]) == 9

    def test_weights_of_derivation(self):
        code, rec = structured("weights", "--torus", "2*x1*d1", "--module", "O")
        assert code == 0 and rec["result"]["toral_basis"] == ["x1*d1"]

    def test_fibre(self):
        code, rec = structured("fibre", "--eta", "4")
        assert code == 0 and rec["result"]["consistent"]
        assert rec["result"]["fibres"][0]["count"] == rec["result"]["fibres"][0]["regular"]

    def test_byte_identical(self):
        argv = ["--format", "structured", "--seed", "9", "--trials", "4", "--p", "3", "--n", "2", "verify"]
        a, b = io.StringIO(), io.StringIO()
        main(argv + ["--suite", "canonical_form"], out=a)
        main(argv + ["--suite", "canonical_form"], out=b)
        assert a.getvalue() == b.getvalue()

    def test_flags_after_subcommand(self):
        code, rec = structured("invariants", "d1", "--p", "7")
        assert rec["config"]["p"] == 7 and rec["result"]["delta"] == "gf(7^1):6"


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["--p", "3", "--n", "1", "invariants", "d1"],
            ["--p", "4", "invariants", "d1"],
            ["invariants", "d1 +"],
            ["canonical", "x1^2*d1"],
            ["weights", "--torus", "t5"],
            ["fibre", "--eta", "1,2"],
            ["--p", "3", "--n", "2", "fibre"],
            ["--trials", "0", "verify"],
            ["--format", "structured", "invariants", "d1"],
            ["frobnicate"],
            [],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        code, _ = run(*argv)
        assert code == 2

    def test_extension_hint(self, capsys):
        code, _ = run("canonical", "(3 + 4*x1 + 2*x1^2 + 3*x1^3 + 4*x1^4)*d1")
        assert code == 2 and "--ext 4" in capsys.readouterr().err

    def test_verification_failure_exits_one(self, monkeypatch):
        from wittlab import verify

        def broken(ctx, seed, trials, res):
            res.checked += 1
            res.fail("forced failure")

        monkeypatch.setitem(verify.SUITES, "dickson", (broken, 1))
        code, text = run("verify", "--suite", "dickson")
        assert code == 1 and "FAIL dickson" in text

    def test_internal_assertion_exits_three(self, monkeypatch):
        import wittlab.cli as cli
        from wittlab.invar import ShapeViolation

        def boom(D):
            raise ShapeViolation("forced")

        monkeypatch.setattr(cli, "delta_minors", boom)
        code, _ = run("invariants", "d1")
        assert code == 3


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "wittlab", "--p", "5", "invariants", "x1*d1"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "psi = [4]" in res.stdout
