import csv
import io
import json

import pytest

from fairdiv.cli import SWEEP_HEADER, main
from fairdiv.generators import gen_example4
from fairdiv.io import RunResult, parse_instance, serialize_instance


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example4(tmp_path):
    path = tmp_path / "example4.json"
    path.write_text(serialize_instance(gen_example4()))
    return str(path)


def write(tmp_path, text, name="inst.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_run_example4(capsys, example4):
    code, out, _ = run_cli(capsys, "run", "--mechanism", "round_robin", "--instance", example4, "--ordering", "1,2,3,4")
    assert code == 0
    doc = json.loads(out)
    assert doc["bundles"] == [[1, 5], [2], [3], [4]]
    assert doc["ordering"] == [1, 2, 3, 4]
    assert doc["utilities"] == ["5", "3", "2", "2"]
    code, out, _ = run_cli(capsys, "run", "--mechanism", "round_robin", "--instance", example4, "--ordering", "4,3,2,1")
    assert json.loads(out)["bundles"][0] == [4]


def test_run_is_byte_deterministic(capsys, example4):
    args = ("run", "--mechanism", "matching_pef1", "--instance", example4, "--ordering", "2,4,1,3")
    first = run_cli(capsys, *args)[1]
    assert all(run_cli(capsys, *args)[1] == first for _ in range(3))
    result = RunResult.loads(first)
    assert RunResult.loads(result.dumps()) == result


def test_run_empty_instance(capsys, tmp_path):
    path = write(tmp_path, '{"m": 0, "utilities": [[], []]}')
    code, out, _ = run_cli(capsys, "run", "--mechanism", "envy_cycle", "--instance", path)
    assert code == 0
    assert json.loads(out)["bundles"] == [[], []]


def test_run_decimal_utilities_are_exact(capsys, tmp_path):
    path = write(tmp_path, '{"m": 2, "utilities": [["0.1", "0.2"], ["1/3", "0"]]}')
    code, out, _ = run_cli(capsys, "run", "--mechanism", "round_robin", "--instance", path)
    assert json.loads(out)["utilities"] == ["1/5", "1/3"]


@pytest.mark.parametrize("ordering", ["1,2,3", "1,1,2,3", "0,1,2,3", "a,b,c,d"])
def test_run_bad_ordering(capsys, example4, ordering):
    code, out, err = run_cli(capsys, "run", "--mechanism", "round_robin", "--instance", example4, "--ordering", ordering)
    assert code == 2 and out == "" and "ordering" in err


@pytest.mark.parametrize("text", [
    "not json",
    '{"m": 2}',
    '{"m": 2, "utilities": [["1", "2", "3"]]}',
    '{"m": 1, "utilities": [["-1"]]}',
    '{"m": 1, "utilities": [["x"]]}',
    '{"m": 1, "utilities": [[0.5]]}',
])
def test_run_bad_instance(capsys, tmp_path, text):
    code, _, err = run_cli(capsys, "run", "--mechanism", "round_robin", "--instance", write(tmp_path, text))
    assert code == 2 and err.startswith("fairdiv: error:")


def test_run_mechanism_precondition(capsys, example4):
    code, _, err = run_cli(capsys, "run", "--mechanism", "adjusted_winner_modified", "--instance", example4)
    assert code == 2 and err


def test_missing_instance_file(capsys, tmp_path):
    assert run_cli(capsys, "run", "--mechanism", "round_robin", "--instance", str(tmp_path / "nope.json"))[0] == 2


def test_audit_pef_degree_and_require_pef1(capsys, example4):
    code, out, _ = run_cli(capsys, "audit", "--mechanism", "round_robin", "--instance", example4, "--checks", "pef_degree")
    assert code == 0
    assert json.loads(out)["degree"]["value"] == 2
    code, out, _ = run_cli(capsys, "audit", "--mechanism", "round_robin", "--instance", example4,
                           "--checks", "pef_degree", "--require-pef1")
    assert code == 1
    assert json.loads(out)["require_pef1"] == {"passed": False}


def test_audit_all_checks_pass(capsys, example4):
    code, out, _ = run_cli(capsys, "audit", "--mechanism", "matching_pef1", "--instance", example4, "--require-pef1")
    assert code == 0
    doc = json.loads(out)
    assert all(c["passed"] for c in doc["checks"].values())
    assert doc["degree"]["value"] <= 1
    assert "timing_ms" not in doc


def test_audit_failing_check_exit_1(capsys, tmp_path):
    path = write(tmp_path, '{"m": 1, "utilities": [["5"], ["5"]]}')
    code, out, _ = run_cli(capsys, "audit", "--mechanism", "round_robin", "--instance", path, "--checks", "ef")
    assert code == 1
    assert "witness" in json.loads(out)["checks"]["ef"]


def test_audit_scale_with_unit_scalars(capsys, example4):
    code, out, _ = run_cli(capsys, "audit", "--mechanism", "envy_cycle", "--instance", example4,
                           "--checks", "scale", "--scalars", "1,1,1,1")
    assert code == 0 and json.loads(out)["checks"]["scale"]["passed"]


def test_audit_resource_error(capsys, example4, monkeypatch):
    monkeypatch.setenv("FAIRDIV_ENUM_CAP", "10")
    code, out, err = run_cli(capsys, "audit", "--mechanism", "round_robin", "--instance", example4, "--checks", "po")
    assert code == 2 and out == "" and "resource" in err


def test_audit_unknown_check(capsys, example4):
    assert run_cli(capsys, "audit", "--mechanism", "round_robin", "--instance", example4, "--checks", "efx")[0] == 2


def test_audit_timing_flag(capsys, example4):
    _, out, _ = run_cli(capsys, "audit", "--mechanism", "round_robin", "--instance", example4,
                        "--checks", "ef1", "--timing")
    assert "ef1" in json.loads(out)["timing_ms"]


def test_gen_round_trip(capsys, tmp_path):
    for argv in (["--family", "example4"], ["--family", "aw_counterexample", "--m", "5"],
                 ["--family", "rr_log_lower_bound", "--n", "4", "--rounds", "2"]):
        code, out, _ = run_cli(capsys, "gen", *argv)
        assert code == 0
        assert serialize_instance(parse_instance(out)) == out


def test_gen_example4_and_ec_worst(capsys):
    out = run_cli(capsys, "gen", "--family", "example4")[1]
    assert parse_instance(out) == gen_example4()
    out = run_cli(capsys, "gen", "--family", "ec_worst", "--n", "2", "--m", "4")[1]
    assert json.loads(out)["utilities"][1] == ["0", "0", "0", "0"]


def test_gen_random_deterministic(capsys, tmp_path):
    args = ("gen", "--family", "random", "--n", "3", "--m", "5", "--seed", "7")
    assert run_cli(capsys, *args)[1] == run_cli(capsys, *args)[1]
    target = tmp_path / "r.json"
    assert run_cli(capsys, *args, "--out", str(target)) == (0, "", "")
    assert target.read_text() == run_cli(capsys, *args)[1]


def test_gen_invalid_parameters(capsys):
    assert run_cli(capsys, "gen", "--family", "ec_worst", "--n", "3", "--m", "2")[0] == 2
    assert run_cli(capsys, "gen", "--family", "random", "--n", "2")[0] == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--mechanism", "nope", "--instance", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def sweep(capsys, *argv):
    code, out, _ = run_cli(capsys, "sweep", *argv)
    assert code == 0
    return list(csv.DictReader(io.StringIO(out)))


def test_sweep_count_zero_is_header_only(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--mechanism", "round_robin", "--count", "0", "--n", "3", "--m", "4")
    assert out == ",".join(SWEEP_HEADER) + "\n"


def test_sweep_round_robin_three_agents(capsys):
    rows = sweep(capsys, "--mechanism", "round_robin", "--count", "40", "--n", "3", "--m", "6", "--seed", "100")
    assert len(rows) == 40
    assert [int(r["seed"]) for r in rows] == list(range(100, 140))
    assert all(int(r["degree"]) <= 1 and r["ef1"] == "1" and r["error"] == "" for r in rows)
    assert all(r["po"] == "" for r in rows)


def test_sweep_families_expose_degree_two(capsys):
    rows = sweep(capsys, "--mechanism", "round_robin", "--count", "5", "--n", "4", "--m", "8", "--include-families")
    assert {r["seed"] for r in rows[5:]} == {"rr_log_lower_bound", "ec_worst"}
    assert max(int(r["degree"]) for r in rows) >= 2


def test_sweep_records_errors_and_continues(capsys, monkeypatch):
    monkeypatch.setenv("FAIRDIV_ENUM_CAP", "1")
    rows = sweep(capsys, "--mechanism", "round_robin", "--count", "2", "--n", "2", "--m", "3")
    assert len(rows) == 2
    assert all(r["error"].startswith("resource:") and r["degree"] == "" for r in rows)


def test_sweep_po_column(capsys, tmp_path):
    target = tmp_path / "s.csv"
    code, _, _ = run_cli(capsys, "sweep", "--mechanism", "adjusted_winner_modified", "--count", "3",
                         "--n", "2", "--m", "4", "--po", "--out", str(target))
    rows = list(csv.DictReader(target.open()))
    assert code == 0 and [r["po"] for r in rows] == ["1", "1", "1"]
