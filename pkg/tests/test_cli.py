import csv
import io
import json
import subprocess
import sys

import pytest

from qtl.bases import basis
from qtl.cli import main, parse_basis_table, parse_shape, ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBasis:
    def test_canonical_two_points(self, capsys):
        code, out, _ = run(capsys, "basis", "--d", "1,1", "--which", "c", "--format", "json")
        table = json.loads(out)
        assert code == 0
        assert len(table["elements"]) == 4
        assert all(e["certified"] for e in table["elements"])

    def test_single_factor(self, capsys):
        code, out, _ = run(capsys, "basis", "--d", "2", "--which", "e")
        assert code == 0 and len(json.loads(out)["elements"]) == 3

    def test_decomposition_three_points(self, capsys):
        code, out, _ = run(capsys, "basis", "--d", "1,1,1", "--which", "s")
        table = json.loads(out)
        assert code == 0 and len(table["elements"]) == 8

    @pytest.mark.parametrize("which", ["e", "c", "s"])
    @pytest.mark.parametrize("shape", ["1,1", "2,1", "1,2,1"])
    def test_roundtrip(self, capsys, which, shape):
        _, out, _ = run(capsys, "basis", "--d", shape, "--which", which)
        parsed = parse_basis_table(json.loads(out))
        assert parsed == basis(parse_shape(shape), which)

    def test_deterministic(self, capsys):
        outs = [run(capsys, "basis", "--d", "2,1", "--which", "c")[1] for _ in range(2)]
        assert outs[0] == outs[1]

    def test_csv_and_text(self, capsys):
        _, out, _ = run(capsys, "basis", "--d", "1,1", "--which", "c", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["index", "label", "value", "k", "certified"]
        assert ["[1, 0]", "[[1, 0], [0, 0], [1, 1]]", "q", "q", "True"] in rows
        _, text, _ = run(capsys, "basis", "--d", "1,1", "--format", "text")
        assert text.startswith("basis c of d = (1, 1): 4 elements")

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "t.json"
        code, out, _ = run(capsys, "basis", "--d", "1,1", "--output", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["shape"] == [1, 1]

    def test_bad_shape(self, capsys):
        assert run(capsys, "basis", "--d", "1,-1")[0] == 2
        assert run(capsys, "basis", "--d", "x")[0] == 2
        with pytest.raises(ConfigError):
            parse_shape("")


class TestVerify:
    def test_symbolic(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "symbolic", "--max-total", "5")
        report = json.loads(out)
        assert code == 0 and report["pass"] and report["failures"] == 0
        rec = report["records"][0]
        assert set(rec) >= {"suite", "shape", "field", "expected", "actual", "pass"}

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "oracle", "--field", "4", "--max-total", "4")
        report = json.loads(out)
        assert code == 0 and report["count"] > 0
        assert {r["field"] for r in report["records"]} == {4}

    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "c_b", "--max-total", "3")
        assert code == 0
        assert {r["suite"] for r in json.loads(out)["records"]} == {"c_b"}

    def test_configuration_errors(self, capsys):
        assert run(capsys, "verify", "--suite", "oracle", "--max-total", "99")[0] == 2
        assert run(capsys, "verify", "--suite", "symbolic", "--max-total", "99")[0] == 2
        assert run(capsys, "verify", "--suite", "nonsense")[0] == 2
        assert run(capsys, "verify", "--suite", "oracle", "--field", "7", "--max-total", "2")[0] == 2

    def test_cap_env(self, capsys, monkeypatch):
        monkeypatch.setenv("QTL_CAP", "2")
        assert run(capsys, "verify", "--suite", "oracle", "--max-total", "3")[0] == 2

    def test_failure_exit(self, capsys, monkeypatch):
        from qtl import verify
        def broken(shapes, max_irrep=8):
            yield {"suite": "relations", "shape": [1], "field": None,
                   "expected": "1", "actual": "2", "pass": False}
        monkeypatch.setitem(verify.SUITES, "relations", broken)
        monkeypatch.setattr(verify, "suite_relations", broken)
        code, out, _ = run(capsys, "verify", "--suite", "relations", "--max-total", "2")
        assert code == 1 and json.loads(out)["failures"] == 1


class TestRender:
    def test_figure(self, capsys):
        code, out, _ = run(capsys, "render", "--d", "4,3,3,4", "--a", "3,1,1,2")
        assert code == 0
        assert out.splitlines()[0] == "[^vvv][^^v][^^v][^^vv]"
        assert out.splitlines()[2] == "arcs: 2-9, 3-6, 4-5, 7-8, 10-11"

    def test_single_arc(self, capsys):
        _, out, _ = run(capsys, "render", "--d", "1,1", "--a", "1,0")
        assert out.splitlines() == ["[v][^]", "[(][)]", "arcs: 1-2"]

    def test_all(self, capsys):
        _, out, _ = run(capsys, "render", "--d", "1,1,1", "--all")
        assert out.count("arcs:") == 3
        _, out, _ = run(capsys, "render", "--d", "1,1,1", "--all", "--oriented")
        assert out.count("arcs:") == 8

    def test_invalid(self, capsys):
        assert run(capsys, "render", "--d", "1,1", "--a", "2,0")[0] == 2
        assert run(capsys, "render", "--d", "1,1", "--a", "1")[0] == 2
        assert run(capsys, "render", "--d", "1,1")[0] == 2


class TestTables:
    def test_intertwiners(self, capsys):
        code, out, _ = run(capsys, "intertwiners", "--d", "1,1")
        rows = json.loads(out)["rows"]
        assert code == 0
        assert [r["c_b"] for r in rows] == ["1 + q^2", "1"]
        _, alias, _ = run(capsys, "intertwiner-table", "--d", "1,1")
        assert alias == out

    def test_intertwiners_csv(self, capsys):
        _, out, _ = run(capsys, "intertwiners", "--d", "1,1", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["arcs", "mu", "l", "m", "c_b", "w", "omega"]
        assert len(rows) == 1 + 4 + 4

    def test_strata(self, capsys):
        _, out, _ = run(capsys, "strata", "--d", "1,1")
        table = json.loads(out)
        assert len(table["strata"]) == 5
        assert all(s["realizable"] for s in table["strata"])

    def test_kappa(self, capsys):
        _, out, _ = run(capsys, "kappa", "--d", "1,1")
        table = json.loads(out)
        col = next(c for c in table["kappa"] if c["w"] == [0, 1])
        assert [[1, 0], "q^-1"] in col["terms"]

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "qtl", "render", "--d", "1,1", "--a", "0,1"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "[^][v]"

    def test_usage_error(self, capsys):
        assert run(capsys)[0] == 2
        assert run(capsys, "frobnicate")[0] == 2
