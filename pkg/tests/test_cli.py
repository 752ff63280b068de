import csv
import io
import json
import subprocess
import sys

import pytest

from opengw.cli import SIGN_COLUMNS, main
from opengw.trees import LabeledTree, enumerate_trees
from opengw.spec_core import basic_spec
from opengw.verify import Bounds, run_suite


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


ONE_EDGE_JSON = json.dumps(enumerate_trees(basic_spec(2, 0, 1), [1])[0].to_json())
RICHER_JSON = json.dumps(enumerate_trees(basic_spec(3, 1, 2), [1])[0].to_json())


def test_trees_example(capsys):
    code, out, _ = run(capsys, "trees", "--k", "2", "--l", "0", "--beta", "1", "--r", "1")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 1
    assert [LabeledTree.from_json(t).to_json() for t in data] == data


def test_trees_k_labels_and_rho(capsys):
    code, out, _ = run(capsys, "trees", "--k-labels", '[{"plain": 1}, {"node_in": 9}]', "--beta", "1", "--rho", "2")
    assert code == 0
    assert len(json.loads(out)) >= 1
    code, _, err = run(capsys, "trees", "--k-labels", '[{"node_in": 2}, 1]', "--beta", "1", "--rho", "2")
    assert code == 1 and "collide" in err


def test_degree_example(capsys):
    code, out, _ = run(capsys, "degree", "--m", "1", "--k", "2", "--beta", "1")
    data = json.loads(out)
    assert code == 0
    assert data["deg_direct"] == 0 and data["deg_closed"] == 0
    assert data["zero"] == {"flag": False, "reason": None}


def test_degree_vanishing_reason(capsys):
    code, out, _ = run(capsys, "degree", "--m", "1", "--k", "0", "--l-vec", "0,1,0", "--beta", "1")
    assert code == 0 and json.loads(out)["zero"]["reason"] == "NegativeDegree"


def test_ledger(capsys):
    code, out, _ = run(capsys, "ledger", "--m", "1", "--k", "2", "--beta", "1")
    data = json.loads(out)
    assert code == 0
    assert [lv["r"] for lv in data["ledger"]] == [0, 1]
    assert data["ledger"][1]["trees"][0]["theta"] == 1
    for key in ("k", "l_vec", "beta", "m", "deg_direct", "deg_closed", "zero", "ledger"):
        assert key in data


def test_boundary_default_r(capsys):
    code, out, _ = run(capsys, "boundary", "--tree", RICHER_JSON)
    data = json.loads(out)
    assert code == 0
    assert {c["edge_index"] for c in data} == {2}
    assert all({"parent", "vertex", "left", "right", "tag"} <= set(c) for c in data)
    # the one-edge tree has no boundary pairs at node 2
    code, out, _ = run(capsys, "boundary", "--tree", ONE_EDGE_JSON)
    assert code == 0 and json.loads(out) == []


def test_boundary_from_file(tmp_path, capsys):
    path = tmp_path / "tree.json"
    path.write_text(RICHER_JSON)
    code, out, _ = run(capsys, "boundary", "--tree", f"@{path}", "--r", "5")
    assert code == 0 and json.loads(out)


def test_signs_csv(capsys):
    code, out, _ = run(capsys, "signs", "--k", "3", "--beta", "2", "--max-r", "2", "--m", "1,2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == SIGN_COLUMNS
    assert len(rows) > 2
    for row in rows[1:]:
        rec = dict(zip(SIGN_COLUMNS, row))
        assert rec["theta"] in ("1", "-1") and rec["m"] in ("1", "2")
        if rec["is_sorted_odd_even"] == "true":
            agree = (rec["theta"], rec["zeta"]) == (rec["closed_form_theta"], rec["closed_form_zeta"])
            assert rec["agree"] == ("true" if agree else "false")
        else:
            assert rec["agree"] == ""


def test_signs_json_and_table(capsys):
    code, out, _ = run(capsys, "signs", "--tree", ONE_EDGE_JSON, "--m", "1,2,3")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 3 and all(r["agree"] for r in rows)
    code, out, _ = run(capsys, "signs", "--tree", ONE_EDGE_JSON, "--format", "table")
    assert code == 0 and out.splitlines()[0].split() == list(SIGN_COLUMNS)


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "H^3", "--m", "1", "--normal-form", "--restrict")
    assert code == 0
    assert json.loads(out) == {"m": 1, "poly": "H*l1^2", "degree": 6}


def test_verify_passing_suite(capsys):
    code, out, _ = run(capsys, "verify", "degree", "--max-k", "6", "--max-beta", "4")
    assert code == 0 and out.startswith("degree: all 105 cases agree")


def test_verify_reports_library_result(capsys):
    # Exit status and counts follow the library check exactly.
    expected = run_suite("sorted-odd-even", Bounds(max_r=4, ms=(1, 2)))
    code, out, err = run(capsys, "verify", "sorted-odd-even", "--max-r", "4", "--m", "1,2")
    assert out.splitlines()[0] == expected.summary()
    assert code == (0 if expected.ok else 2)
    if not expected.ok:
        assert "invariant violated" in err


@pytest.mark.parametrize(
    "args,needle",
    [
        (["trees", "--k", "2", "--beta", "2"], "not basic"),
        (["boundary", "--tree", "{not json"], "--tree"),
        (["boundary", "--tree", '{"edges": [], "vertices": [{"k": [], "beta": 1, "bogus": 1}]}'], "bogus"),
        (["degree", "--m", "1", "--l-vec", "0,0,0,1"], "--l-vec"),
        (["degree", "--m", "0"], "--m"),
        (["trees", "--bogus"], "bogus"),
        (["signs", "--k", "2", "--beta", "1"], "--max-r"),
        (["poly", "H*x", "--m", "1"], "x"),
        (["degree", "--m", "1", "--format", "csv"], "format"),
    ],
)
def test_validation_errors_exit_1(capsys, args, needle):
    code, out, err = run(capsys, *args)
    assert code == 1
    assert needle in err


def test_deterministic(capsys):
    args = ["signs", "--k", "2", "--l", "1", "--beta", "1", "--max-r", "2", "--m", "1,2", "--format", "csv"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "verify" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "opengw", "degree", "--m", "1", "--k", "2", "--beta", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["deg_direct"] == 0
