import csv
import io
import json

import pytest

from rankspectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lrk_text_and_json(capsys):
    code, out, _ = run(capsys, "lrk", "--n", "9", "--m", "6", "--k", "3")
    assert code == 0
    assert out.splitlines()[0] == "lrk 5"
    code, out, _ = run(capsys, "lrk", "--n", "9", "--m", "6", "--k", "3", "--format", "json")
    data = json.loads(out)
    assert data["lrk"] == 5 and data["expected_spectrum"] == [2, 3, 4, 5, 6]


def test_lrk_domain_errors(capsys):
    assert run(capsys, "lrk", "--n", "22", "--m", "7", "--k", "3")[0] == 2
    assert run(capsys, "lrk", "--n", "5", "--m", "3", "--k", "2", "--q", "6")[0] == 2


def test_table_endpoints(capsys):
    code, out, _ = run(capsys, "table", "--m", "7", "--k", "3", "--n-max", "21")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "m", "k", "q", "lrk", "regime", "s_or_h", "fws"]
    assert rows[-1]["n"] == "21" and rows[-1]["lrk"] == "1"
    assert rows[0]["n"] == "4"
    code, out, _ = run(capsys, "table", "--m", "4", "--k", "2", "--n-max", "8", "--format", "json")
    assert json.loads(out)[-1]["lrk"] == 1
    assert run(capsys, "table", "--m", "4", "--k", "2", "--n-max", "9")[0] == 2


def test_construct_spectrum_round_trip(tmp_path, capsys):
    path = tmp_path / "code.json"
    code, _, _ = run(capsys, "construct", "--n", "7", "--m", "7", "--k", "2", "--out", str(path), "--witnesses")
    assert code == 0
    data = json.loads(path.read_text())
    assert data["profile"] == [4, 3]
    code, out, _ = run(capsys, "spectrum", "--input", str(path), "--method", "both")
    assert code == 0
    rep = json.loads(out)
    assert rep["exhaustive"]["weights"] == [3, 4, 5, 6, 7]
    assert rep["witness"]["weights"] == [3, 4, 5, 6, 7]
    code, out, _ = run(capsys, "spectrum", "--input", str(path), "--method", "sampled", "--samples", "50")
    assert code == 0 and set(json.loads(out)["weights"]) <= {3, 4, 5, 6, 7}


def test_construct_profile_only_and_q(capsys):
    code, out, _ = run(capsys, "construct", "--n", "12", "--m", "3", "--k", "10", "--profile-only")
    assert json.loads(out) == [3] + [1] * 9
    code, out, _ = run(capsys, "construct", "--n", "5", "--m", "3", "--k", "2", "--q", "4")
    assert code == 0 and json.loads(out)["descriptor"]["e"] == 2


def test_spectrum_guard_exit_code(tmp_path, capsys):
    path = tmp_path / "big.json"
    run(capsys, "construct", "--n", "40", "--m", "10", "--k", "4", "--out", str(path), "--witnesses")
    code, _, err = run(capsys, "spectrum", "--input", str(path))
    assert code == 3
    assert json.loads(err.strip().splitlines()[-1])["required_points"] == (2**40 - 1) // (2**10 - 1)
    code, out, _ = run(capsys, "spectrum", "--input", str(path), "--method", "witness")
    assert code == 0 and json.loads(out)["weights"] == [10]


def test_witness_method_needs_witnesses(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "construct", "--n", "4", "--m", "3", "--k", "2", "--out", str(path))
    assert run(capsys, "spectrum", "--input", str(path), "--method", "witness")[0] == 2
    assert run(capsys, "spectrum", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_dual_and_geometry(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "construct", "--n", "6", "--m", "6", "--k", "2", "--out", str(path))
    code, out, _ = run(capsys, "dual", "--input", str(path))
    data = json.loads(out)
    assert code == 0 and data["nondegenerate"] in (True, False)
    assert data["dual"]["k"] == 4
    code, out, _ = run(capsys, "geometry", "--input", str(path), "--samples", "20")
    assert code == 0 and json.loads(out)["mismatches"] == []


@pytest.mark.parametrize("suite,status", [("psi", 0), ("classification", 0), ("lemmas", 0)])
def test_verify_suites(capsys, suite, status):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == status
    assert "[FAIL]" not in out


def test_bad_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
