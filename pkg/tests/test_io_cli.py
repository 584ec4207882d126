import json
import math

import numpy as np
import pytest

from booleanity import DenseFunction, ParseError, ResourceLimitError, SparseFunction, to_dense
from booleanity.cli import analyze, main
from booleanity.io import format_dense, format_sparse, load_function, parse_config, parse_function
from booleanity.reports import to_json, to_keyvalue, to_table

INTRO = """# x1 - 2 x2 x3 + 3.5 x1 x2
n=3
100 1
011 -2
110 3.5
"""

X1_PLUS_X2 = "n=2\n10 1\n01 1\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestFormats:
    def test_sparse_parse(self, intro_poly):
        assert parse_function(INTRO) == intro_poly

    def test_sparse_roundtrip(self, intro_poly):
        assert parse_function(format_sparse(intro_poly)) == intro_poly

    def test_dense_roundtrip(self, rng):
        f = DenseFunction(rng.standard_normal(16))
        assert parse_function(format_dense(f)) == f

    def test_header_only_is_zero_spectrum(self):
        assert parse_function("n=4\n") == SparseFunction(4)

    @pytest.mark.parametrize("text, line", [
        ("", 1),
        ("m=3\n", 1),
        ("n=x\n", 1),
        ("n=2\n10 1\n1 2\n", 3),
        ("n=2\n10 abc\n", 2),
        ("n=2\n1.0\n2.0\n3.0\n", 5),
        ("n=1\n1.0\n2.0\n3.0\n", 4),
        ("n=1\n# c\n1.0\nnan\n", 4),
    ])
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_function(text)
        assert exc.value.lineno == line

    def test_dense_cap(self):
        with pytest.raises(ResourceLimitError):
            parse_function("n=30\n1.0\n")

    def test_config(self):
        assert parse_config("# grid\nk=4,16\n trials = 10\n") == {"k": "4,16", "trials": "10"}
        with pytest.raises(ParseError):
            parse_config("k4\n")


class TestReports:
    def test_json_roundtrips_floats(self):
        payload = {"a": 0.1 + 0.2, "b": [1 / 3, None], "c": {"d": True}}
        assert json.loads(to_json(payload)) == payload

    def test_keyvalue_and_table(self):
        payload = {"a": 1.5, "b": {"c": False, "d": None}}
        assert to_keyvalue(payload) == "a=1.5\nb.c=false\nb.d=none\n"
        assert to_table(payload).splitlines()[1] == "b.c  false"


class TestTransformCommand:
    def test_constant_forward_is_delta(self, tmp_path):
        src = write(tmp_path, "one.txt", format_dense(DenseFunction.constant(3)))
        out = tmp_path / "out.txt"
        assert main(["transform", "--input", src, "--output", str(out)]) == 0
        assert load_function(out) == DenseFunction.delta(3)

    def test_roundtrip(self, tmp_path, rng):
        f = DenseFunction(rng.standard_normal(32))
        src = write(tmp_path, "f.txt", format_dense(f))
        mid, back = tmp_path / "mid.txt", tmp_path / "back.txt"
        assert main(["transform", "--input", src, "--output", str(mid)]) == 0
        assert main(["transform", "--input", str(mid), "--direction", "inverse", "--output", str(back)]) == 0
        assert load_function(back).allclose(f, atol=1e-12)

    def test_sparse_intro_poly_spectrum(self, tmp_path, intro_poly):
        src = write(tmp_path, "intro.txt", INTRO)
        dense_in = write(tmp_path, "intro_dense.txt", format_dense(to_dense(intro_poly)))
        out = tmp_path / "spec.txt"
        assert main(["transform", "--input", dense_in, "--output-format", "sparse", "--output", str(out)]) == 0
        spectrum = load_function(out)
        assert len(spectrum) == 3
        assert spectrum.terms == pytest.approx(intro_poly.terms)
        # a sparse file is densified before transforming, so forward recovers its terms
        assert main(["transform", "--input", src, "--output", str(out)]) == 0
        recovered = load_function(out)
        assert len(recovered) == 3 and recovered.terms == pytest.approx(intro_poly.terms)

    def test_parse_failure_exit_code(self, tmp_path, capsys):
        src = write(tmp_path, "bad.txt", "n=2\n10 1\nzz 3\n")
        assert main(["transform", "--input", src]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_cap_exit_code(self, tmp_path):
        src = write(tmp_path, "big.txt", "n=12\n" + "1\n" * 4096)
        assert main(["transform", "--input", src, "--n-cap", "10"]) == 3
        sparse = write(tmp_path, "bigsparse.txt", "n=40\n" + "1" + "0" * 39 + " 1\n")
        assert main(["transform", "--input", sparse]) == 3


class TestAnalyze:
    def test_boolean_file(self, tmp_path, capsys):
        src = write(tmp_path, "maj.txt", "n=3\n100 0.5\n010 0.5\n001 0.5\n111 -0.5\n")
        assert main(["analyze", "--input", src, "--format", "kv"]) == 0
        out = capsys.readouterr().out
        assert "boolean=true" in out and "boolean_distance=0.0" in out

    def test_x1_plus_x2(self):
        f = to_dense(parse_function(X1_PLUS_X2))
        rep = analyze(f)
        # values 2, 0, 0, -2: (f^2 - 1)^2 = 9, 1, 1, 9
        assert rep["boolean_distance"] == pytest.approx(math.sqrt(5))
        assert rep["non_boolean_fraction"] == 1.0
        assert rep["sparsity"] == 2 and rep["far_bound"] == 0.125
        assert "closeness" not in rep

    def test_normalized_gets_closeness(self):
        f = to_dense(parse_function(X1_PLUS_X2)) / math.sqrt(2)
        rep = analyze(f, eps=1.0)
        assert rep["boolean_distance"] == pytest.approx(1.0)
        assert rep["closeness"]["holds"] and rep["closeness"]["bound"] == pytest.approx(0.25)

    def test_random_json(self, tmp_path, capsys, rng):
        src = write(tmp_path, "r.txt", format_dense(DenseFunction(rng.standard_normal(64))))
        assert main(["analyze", "--input", src, "--format", "json"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["entropy_uncertainty"]["slack"] >= 0
        assert rep["support_uncertainty"]["support_product"]["slack"] >= 0


class TestTestCommand:
    def test_parity_file_accepts(self, tmp_path, capsys):
        src = write(tmp_path, "parity.txt", "n=4\n1111 1\n")
        assert main(["test", "--input", src, "--k", "1", "--eps", "0.01", "--seed", "1"]) == 0

    def test_x1_plus_x2_rejects(self, tmp_path, capsys):
        src = write(tmp_path, "x.txt", X1_PLUS_X2)
        assert main(["test", "--input", src, "--k", "2", "--eps", "0.01", "--seed", "1", "--format", "json"]) == 1
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["accepted"] is False and verdict["queries_used"] == 1
        assert verdict["witness"]["value"] in (2.0, 0.0, -2.0)

    def test_set_flag(self, tmp_path):
        src = write(tmp_path, "x.txt", X1_PLUS_X2)
        assert main(["test", "--input", src, "--k", "2", "--eps", "0.01", "--seed", "1", "--set=-2,0,2"]) == 0

    @pytest.mark.parametrize("name, code", [("parity", 0), ("majority3", 0), ("intro-poly", 1),
                                            ("bk:16", 0), ("ck:1", 1)])
    def test_builtins(self, name, code):
        assert main(["test", "--oracle", name, "--k", "16", "--eps", "0.05", "--seed", "4"]) == code

    def test_deterministic_output(self, capsys):
        args = ["test", "--oracle", "ck:64", "--k", "64", "--eps", "0.01", "--seed", "77"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first

    def test_env_seed(self, monkeypatch, capsys):
        monkeypatch.setenv("BOOLEANITY_SEED", "123")
        main(["test", "--oracle", "ck:16", "--k", "16", "--eps", "0.1", "--format", "kv"])
        assert "seed=123" in capsys.readouterr().out
        main(["test", "--oracle", "ck:16", "--k", "16", "--eps", "0.1", "--format", "kv", "--seed", "5"])
        assert "seed=5" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["test", "--oracle", "parity", "--k", "1", "--eps", "1.5"],
        ["test", "--oracle", "nope", "--k", "1", "--eps", "0.5"],
        ["test", "--k", "1", "--eps", "0.5"],
        ["test", "--oracle", "bk:12", "--k", "1", "--eps", "0.5"],
    ])
    def test_bad_flags(self, argv):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 2


class TestExperimentCommand:
    def test_audit(self, tmp_path, capsys):
        out = tmp_path / "audit.json"
        assert main(["experiment", "audit", "--n", "2", "--seed", "0", "--output", str(out)]) == 0
        report = json.loads(out.read_text())["reports"][0]
        assert report["metrics"]["functions"] == 16 and report["metrics"]["tester_accept"] == 16

    def test_minfraction(self, capsys):
        assert main(["experiment", "minfraction", "--n", "10", "--k", "4", "--samples", "500", "--seed", "1"]) == 0

    def test_distinguish_with_config(self, tmp_path, capsys):
        cfg = write(tmp_path, "grid.cfg", "k=16\nqueries=4,16\ntrials=2000\nseed=3\n")
        assert main(["experiment", "distinguish", "--config", cfg, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert [r["parameters"]["q"] for r in payload["reports"]] == [4, 16]
        assert payload["seed"] == 3

    def test_invalid_grid(self, tmp_path):
        assert main(["experiment", "distinguish", "--k", "12", "--trials", "10", "--seed", "0"]) == 2
        cfg = write(tmp_path, "bad.cfg", "colour=red\n")
        assert main(["experiment", "audit", "--config", cfg]) == 2
        assert main(["experiment", "audit", "--n", "6"]) == 3
