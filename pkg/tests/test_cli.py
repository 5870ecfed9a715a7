import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from modpart.bijection import BijectionTrace
from modpart.cli import main, parse_range, render_modular_diagram
from modpart.verification import VerificationReport

FIXTURES = Path(__file__).parent / "fixtures"
EXAMPLE = "9 9 8 8 8 7 6 6 6 6 5 5 5 4 4 2 2 2 2 1 1 1".split()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_map_worked_example(capsys):
    code, out, _ = run(capsys, "map", "-m", "5", "--direction", "p-to-q", *EXAMPLE)
    assert code == 0
    assert out == "32 24 23 16 12  type=(1,2,1,1)\n"


def test_map_reverse(capsys):
    code, out, _ = run(capsys, "map", "-m", "3", "--direction", "q-to-p", "7", "2", "2")
    assert (code, out) == (0, "4 4 2 1  type=(1,2)\n")


def test_map_not_in_p(capsys):
    code, _, err = run(capsys, "map", "-m", "3", "--direction", "p-to-q", "2", "2", "2")
    assert code == 2
    assert "not in P: part 2 repeated 3 times" in err


def test_map_not_regular(capsys):
    code, _, err = run(capsys, "map", "-m", "5", "--direction", "q-to-p", "15", "2")
    assert code == 2 and "not 5-regular" in err


@pytest.mark.parametrize("argv", [["map", "-m", "3", "x"], ["map", "-m", "1", "2"], ["bogus"]])
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_map_trace_golden(capsys):
    code, out, _ = run(capsys, "map", "-m", "5", "--direction", "p-to-q", "--trace", "--diagram", *EXAMPLE)
    assert code == 0
    assert out == (FIXTURES / "map_example_m5.txt").read_text()


def test_map_json_round_trip(capsys):
    code, out, _ = run(capsys, "map", "-m", "5", "--trace", "--format", "json", *EXAMPLE)
    doc = json.loads(out)
    assert doc["output"] == [32, 24, 23, 16, 12]
    assert doc["type"] == [1, 2, 1, 1]
    trace = BijectionTrace.from_dict(doc["trace"])
    assert trace.to_dict() == doc["trace"]
    assert [r.sigma_part for r in trace.step2_removals] == [5, 5]


def test_enumerate_rr1(capsys):
    code, out, _ = run(capsys, "enumerate", "-n", "11", "--family", "rr1")
    assert code == 0 and len(out.splitlines()) == 7


def test_enumerate_with_types(capsys):
    _, out, _ = run(capsys, "enumerate", "-n", "11", "--family", "P", "-m", "3", "--with-types")
    assert sum(line.endswith("  (1,2)") for line in out.splitlines()) == 4


def test_enumerate_empty(capsys):
    _, out, _ = run(capsys, "enumerate", "-n", "0", "--family", "Q", "-m", "2")
    assert out == "(empty)\n"


def test_enumerate_json_and_csv(capsys):
    _, out, _ = run(capsys, "enumerate", "-n", "6", "--family", "Q", "-m", "3", "--with-types", "--format", "json")
    doc = json.loads(out)
    assert doc[0] == {"partition": [5, 1], "type": [1, 1]}
    _, out, _ = run(capsys, "enumerate", "-n", "6", "--family", "Q", "-m", "3", "--with-types", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["partition", "type"] and rows[1] == ["5 1", "1 1"]
    assert len(rows) - 1 == len(doc)


def test_enumerate_bad_params(capsys):
    assert run(capsys, "enumerate", "-n", "5", "--family", "ag", "--d", "2", "--i", "9")[0] == 1
    assert run(capsys, "enumerate", "-n", "5", "--family", "rr1", "--with-types")[0] == 1


def test_verify_rr1(capsys):
    code, out, _ = run(capsys, "verify", "rr1", "--n", "11")
    assert code == 0
    assert out.startswith("PASS RR1 n=11") and "gap_side=7 type_side=7" in out


def test_verify_json_stream(capsys):
    code, out, _ = run(capsys, "verify", "main", "--n", "1..4", "--m", "2..3", "--format", "json")
    reports = [VerificationReport.from_dict(json.loads(line)) for line in out.splitlines()]
    assert code == 0 and len(reports) == 8
    assert [(r.params["n"], r.params["m"]) for r in reports] == [(n, m) for n in range(1, 5) for m in (2, 3)]
    assert all(r.passed for r in reports)


def test_verify_ag_flagged(capsys):
    code, out, _ = run(capsys, "verify", "ag", "--n", "1..12", "--d", "2", "--i", "2")
    assert code == 0
    assert all(line.endswith("[CONJECTURAL]") for line in out.splitlines())


def test_verify_exit_code_on_failure(capsys):
    code, out, _ = run(capsys, "verify", "ag", "--n", "1", "--d", "2", "--i", "4")
    assert code == 3 and out.startswith("FAIL AG")


def test_verify_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "verify", "glaisher", "--n", "1..8", "--m", "2..4")
    _, parallel, _ = run(capsys, "verify", "glaisher", "--n", "1..8", "--m", "2..4", "--jobs", "2")
    assert serial == parallel


def test_verify_bad_range(capsys):
    assert run(capsys, "verify", "main", "--n", "a..b")[0] == 1


@pytest.mark.parametrize("n, m", [(10, 3), (11, 3), (10, 4)])
def test_table_golden(capsys, n, m):
    _, out, _ = run(capsys, "table", "-n", str(n), "-m", str(m))
    assert out == (FIXTURES / f"table_n{n}_m{m}.txt").read_text()


def test_table_row_at_eleven(capsys):
    _, out, _ = run(capsys, "table", "-n", "11", "-m", "3")
    assert out.splitlines()[0] == (
        "(1,2): P={5+4+2, 4+4+2+1, 4+3+2+1+1, 3+3+2+2+1} Q={8+2+1, 7+2+2, 5+5+1, 5+4+2} ♯=4"
    )


def test_table_m4_contains_triple_row(capsys):
    _, out, _ = run(capsys, "table", "-n", "10", "-m", "4")
    assert out.splitlines()[0].startswith("(1,1,1): ") and out.splitlines()[0].endswith("♯=3")


def test_table_m2(capsys):
    _, out, _ = run(capsys, "table", "-n", "1", "-m", "2")
    assert out == "(1): P={1} Q={1} ♯=1\n"


def test_table_all_and_json(capsys):
    _, mixed, _ = run(capsys, "table", "-n", "8", "-m", "3")
    _, full, _ = run(capsys, "table", "-n", "8", "-m", "3", "--all")
    assert full.startswith(mixed) and len(full) > len(mixed)
    _, out, _ = run(capsys, "table", "-n", "8", "-m", "3", "--all", "--format", "json")
    doc = json.loads(out)
    assert sum(r["count"] for r in doc["rows"]) == len(
        [1 for r in doc["rows"] for _ in r["Q"]]
    )


def test_table_guard(capsys, monkeypatch):
    assert run(capsys, "table", "-n", "61", "-m", "3")[0] == 1
    monkeypatch.setenv("PARTITION_MAX_N", "5")
    assert run(capsys, "table", "-n", "6", "-m", "3")[0] == 1


@pytest.mark.parametrize(
    "lam, m, text",
    [
        ((22, 19, 15, 15, 13, 10, 6, 5, 2), 5, "2 5 5 5 5"),
        ((12, 9, 8, 6, 2), 5, "2 5 5\n4 5\n3 5\n1 5\n2"),
        ((5,), 5, "5"),
    ],
)
def test_render_modular_diagram(lam, m, text):
    rendered = render_modular_diagram(lam, m).text
    if len(lam) == 9:
        rendered = rendered.splitlines()[0]
    assert rendered == text


def test_diagram_rows_rebuild_parts():
    lam = (32, 24, 23, 16, 12)
    d = render_modular_diagram(lam, 5)
    assert tuple(r + 5 * c for r, c in d.rows) == lam


def test_parse_range():
    assert parse_range("1..3,7") == [1, 2, 3, 7]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "modpart", "map", "-m", "3", "6", "5"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "2 2 2 2 2 1  type=(1,5)\n"
