import io
import json

import pytest
from hypothesis import given, strategies as st

from gedwalk.cli import main
from gedwalk.oracle import exact_ged_truncated
from gedwalk.graph import Graph
from gedwalk.records import RunRecord, read_records, write_records


@pytest.fixture
def p3_file(tmp_path):
    p = tmp_path / "p3.txt"
    p.write_text("0 1\n1 2\n")
    return str(p)


@pytest.fixture
def k3_file(tmp_path):
    p = tmp_path / "k3.txt"
    p.write_text("0 1\n1 2\n0 2\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timing(line):
    rec = json.loads(line)
    rec.pop("wall_ms")
    rec["params"].pop("threads")
    return json.dumps(rec, sort_keys=True)


class TestRecords:
    json_values = st.recursive(
        st.none() | st.booleans() | st.integers() | st.floats(allow_nan=False, allow_infinity=False)
        | st.text(max_size=5),
        lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.text(max_size=4), inner, max_size=3),
        max_leaves=8,
    )

    # keys become CSV column names, so they are identifiers; values may be anything JSON
    keys = st.from_regex(r"[a-z_][a-z0-9_]{0,7}", fullmatch=True)

    @given(st.dictionaries(keys, json_values, max_size=4),
           st.dictionaries(keys, json_values, max_size=4),
           st.floats(0, 1e6))
    def test_round_trip(self, params, outputs, ms):
        rec = RunRecord("maximize", "er,10,0.5,1", params, outputs, ms)
        for fmt in ("json-lines", "csv"):
            buf = io.StringIO()
            write_records([rec, rec], buf, fmt)
            assert read_records(buf.getvalue(), fmt) == [rec, rec]

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            write_records([], io.StringIO(), "xml")


class TestCli:
    def test_maximize_generated(self, capsys):
        code, out, _ = run(capsys, "maximize", "--generate", "er,1000,0.02,1", "--k", "10")
        assert code == 0
        (line,) = out.splitlines()
        rec = json.loads(line)
        assert rec["command"] == "maximize" and len(rec["outputs"]["group"]) == 10
        assert rec["params"]["bound"] == "combinatorial" and rec["params"]["epsilon"] == 0.5

    def test_score_p3(self, capsys, p3_file):
        code, out, _ = run(capsys, "score", "--input", p3_file, "--group", "1",
                           "--alpha", "0.1", "--epsilon", "0.001")
        assert code == 0
        score = json.loads(out)["outputs"]["score"]
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert abs(score - exact_ged_truncated(p3, [1], 0.1, 12)) <= 0.001
        assert score == pytest.approx(0.46939, abs=0.001)

    def test_alpha_too_large(self, capsys, k3_file):
        code, _, err = run(capsys, "maximize", "--input", k3_file, "--alpha", "0.9")
        assert code == 4 and "numeric" in err

    def test_usage_errors(self, capsys, p3_file):
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "score", "--input", p3_file)[0] == 2
        assert run(capsys, "score", "--input", p3_file, "--group", "9")[0] == 2
        assert run(capsys, "maximize", "--input", p3_file, "--k", "7")[0] == 2
        assert run(capsys, "maximize", "--generate", "rmat,10,1,1")[0] == 2
        assert run(capsys, "maximize", "--input", p3_file, "--delta", "1.5")[0] == 2

    def test_data_errors(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("0 one\n")
        assert run(capsys, "score", "--input", str(bad), "--group", "0")[0] == 3
        assert run(capsys, "score", "--input", str(tmp_path / "missing"), "--group", "0")[0] == 3

    def test_one_indexed_labels(self, capsys, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("# star\n10 20\n10 30\n10 40\n")
        code, out, _ = run(capsys, "maximize", "--input", str(p), "--k", "1", "--one-indexed")
        assert code == 0 and json.loads(out)["outputs"]["group"] == [10]

    def test_csv_and_out_file(self, capsys, tmp_path, p3_file):
        dest = tmp_path / "r.csv"
        code, out, _ = run(capsys, "bench", "--input", p3_file, "--k-values", "1,2",
                           "--strategies", "lazy,stochastic", "--format", "csv", "--out", str(dest))
        assert code == 0 and out == ""
        recs = read_records(dest.read_text(), "csv")
        assert len(recs) == 4
        assert {(r.params["k"], r.params["strategy"]) for r in recs} == {
            (1, "lazy"), (2, "lazy"), (1, "stochastic"), (2, "stochastic")}

    def test_features_and_spectral(self, capsys):
        code, out, _ = run(capsys, "features", "--generate", "ba,200,3,5", "--k", "5", "--bins", "4",
                           "--bound", "spec")
        rec = json.loads(out)
        assert code == 0 and len(rec["outputs"]["values"]) == 5
        assert sum(rec["outputs"]["values"][1:]) == 195
        assert rec["params"]["sigma_hat"] > 0

    def test_generate_writes_edges(self, capsys, tmp_path):
        dest = tmp_path / "e.txt"
        code, out, _ = run(capsys, "generate", "--generate", "ba,50,2,1", "--write-edges", str(dest))
        assert code == 0 and json.loads(out)["outputs"]["n"] == 50
        code, out, _ = run(capsys, "generate", "--input", str(dest))
        assert json.loads(out)["outputs"]["m"] == 1 + 2 * 48

    def test_delta_matches_alpha(self, capsys, k3_file):
        a = json.loads(run(capsys, "score", "--input", k3_file, "--group", "0", "--bound", "spec",
                           "--delta", "0.5", "--epsilon", "0.01")[1])
        b = json.loads(run(capsys, "score", "--input", k3_file, "--group", "0", "--bound", "spec",
                           "--alpha", "0.25", "--epsilon", "0.01")[1])
        assert a["params"]["alpha"] == pytest.approx(0.25, rel=1e-5)
        assert a["outputs"]["score"] == pytest.approx(b["outputs"]["score"], rel=1e-4)

    @pytest.mark.parametrize("command", [
        ["maximize", "--k", "5"],
        ["maximize", "--k", "5", "--strategy", "stochastic", "--seed", "3"],
        ["score", "--group", "0,1,2"],
        ["features", "--k", "3", "--bins", "4"],
    ])
    def test_records_independent_of_threads(self, capsys, monkeypatch, command):
        # split work across threads even on a small graph
        monkeypatch.setattr("gedwalk._kernels._PARALLEL_MIN", 64)
        base = [command[0], "--generate", "er,3000,0.003,9", *command[1:]]
        lines = {strip_timing(run(capsys, *base, "--threads", t)[1]) for t in ("1", "2", "8")}
        assert len(lines) == 1
