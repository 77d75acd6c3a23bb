import io
import json
import time

import pytest

from superber.cli import main
from superber.formats import load_tensor
from superber.berezin import build_btilde, build_btilde_star


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def matrix_file(tmp_path, entries, m=1, n=1):
    p = tmp_path / "a.json"
    p.write_text(json.dumps({"m": m, "n": n, "entries": entries}))
    return str(p)


class TestBer:
    def test_diag(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[2, 0], [0, 3]])
        assert run(capsys, "ber", "--in", path)[:2] == (0, "2/3\n")

    def test_odd_entries(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[1, "g1"], ["g2", 1]])
        assert run(capsys, "ber", "--in", path)[:2] == (0, "1 - 1*g1g2\n")

    def test_stdin_and_structured(self, capsys, monkeypatch):
        text = json.dumps({"m": 1, "n": 1, "entries": [[2, 0], [0, 3]]})
        code, out, _ = run(capsys, "ber", "--format", "structured", stdin=text, monkeypatch=monkeypatch)
        assert code == 0
        assert json.loads(out) == {"m": 1, "n": 1, "berezinian": {"terms": [{"gens": [], "coef": "2/3"}]}}

    def test_singular(self, capsys, tmp_path):
        path = matrix_file(tmp_path, [[1, 0], [0, "g1g2"]])
        code, _, err = run(capsys, "ber", "--in", path)
        assert code == 2 and "NonInvertible" in err

    def test_parse_errors(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert run(capsys, "ber", "--in", str(bad))[0] == 1
        assert run(capsys, "ber", "--in", matrix_file(tmp_path, [[1, 1], [0, 1]]))[0] == 1
        assert run(capsys, "ber", "--in", str(tmp_path / "missing.json"))[0] == 1


class TestCanon:
    def test_one_one(self, capsys):
        code, out, _ = run(capsys, "canon", "--m", "1", "--n", "1")
        lines = out.splitlines()
        assert code == 0 and lines[0].split("\t") == ["index", "choice", "kappa_h", "kappa_g", "rho",
                                                      "alpha", "zeta", "zeta_prime"]
        rows = [line.split("\t") for line in lines[1:]]
        assert [r[5] for r in rows] == ["1", "-1/2"]
        assert [r[6] for r in rows] == ["2", "-4"]
        assert [r[7] for r in rows] == ["4", "2"]

    def test_two_two(self, capsys):
        code, out, _ = run(capsys, "canon", "--m", "2", "--n", "2", "--format", "structured")
        assert code == 0 and len(json.loads(out)["pairs"]) == 16

    def test_tensors(self, capsys):
        code, out, _ = run(capsys, "canon", "--tensors")
        assert code == 0 and "  h' = 2 e e" in out
        code, out, _ = run(capsys, "canon", "--tensors", "--format", "structured")
        assert "g_star_prime" in json.loads(out)["pairs"][0]


class TestBtilde:
    def test_one_one(self, capsys):
        code, out, _ = run(capsys, "btilde")
        assert code == 0 and load_tensor(out) == build_btilde(1, 1).body
        code, out, _ = run(capsys, "btilde", "--format", "text")
        assert out == "1 e e e* eps* + (-1) e e eps* e* + 1 e eps eps* eps* + 1 eps e eps* eps*\n"

    def test_star(self, capsys, tmp_path):
        path = tmp_path / "bs.json"
        assert run(capsys, "btilde", "--star", "--out", str(path))[:2] == (0, "")
        assert load_tensor(path.read_text()) == build_btilde_star(1, 1).body

    def test_classical(self, capsys):
        code, out, _ = run(capsys, "btilde", "--m", "2", "--n", "0", "--format", "text")
        assert code == 0
        terms = out.strip().split(" + ")
        assert len(terms) == 2 and any("(-" in t for t in terms)

    def test_deterministic(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"b{k}.json"
            run(capsys, "btilde", "--m", "2", "--n", "1", "--out", str(path))
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]


class TestVerify:
    def test_berezinian_two_two(self, capsys):
        code, out, _ = run(capsys, "verify", "berezinian", "--m", "2", "--n", "2", "--trials", "100")
        assert code == 0 and out.splitlines()[-1].startswith("PASS berezinian (2|2)")

    def test_theorem21_breakdown(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem21", "--m", "1", "--n", "1")
        assert code == 0
        for kind in ("odd_lower", "odd_upper", "diag"):
            assert any(line.startswith("PASS") and kind in line for line in out.splitlines())

    def test_all_fast(self, capsys, tmp_path):
        report = tmp_path / "r.json"
        start = time.perf_counter()
        code, out, _ = run(capsys, "verify", "all", "--m", "1", "--n", "1", "--out", str(report))
        assert time.perf_counter() - start < 10
        assert code == 0 and "FAIL" not in out
        data = json.loads(report.read_text())
        assert data["pass"] and {r["check"].split(".")[0] for r in data["records"]} >= {"theorem21", "theorem31"}

    def test_report_deterministic(self, capsys, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            run(capsys, "verify", "grassmann", "--seed", "3", "--out", str(p))
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_skips_without_extended(self, capsys):
        code, out, _ = run(capsys, "verify", "theorem31", "--m", "2", "--n", "2")
        assert code == 0 and out.startswith("SKIP")

    def test_failure_exit(self, capsys, monkeypatch):
        import superber.verify as v

        monkeypatch.setattr(v, "berezinian", lambda a, formula="first": v.Grassmann.scalar(7, 4))
        code, out, _ = run(capsys, "verify", "berezinian", "--trials", "2")
        assert code == 3 and "FAIL" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["verify"],
    ["verify", "nonsense"],
    ["canon", "--m", "-1"],
    ["verify", "grassmann", "--trials", "0"],
    ["canon", "--m", "x"],
    ["btilde", "--format", "yaml"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1
