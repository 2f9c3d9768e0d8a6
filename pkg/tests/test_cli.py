import json
import subprocess
import sys

import pytest

from helpers import FIXTURES, GOLDEN
from modalcube.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_frame_reports_each_condition(capsys):
    code, out, _ = run(capsys, "check-frame", "--frame", str(FIXTURES / "c17.frame"),
                       "--conditions", "ser,trans,eucl")
    assert out == "ser: true\ntrans: true\neucl: false\n"
    assert code == 1


def test_check_frame_all_true(tmp_path, capsys):
    path = tmp_path / "loop.frame"
    path.write_text("worlds: 1\nrel 0: (1,1)\n")
    code, out, _ = run(capsys, "check-frame", "--frame", str(path), "--conditions",
                       "refl,sym,ser,trans,eucl", "--json")
    assert code == 0
    assert json.loads(out) == {"refl": True, "sym": True, "ser": True, "trans": True, "eucl": True}


def test_check_frame_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.frame"
    path.write_text("worlds: 2\nrel 0: (1,3)\n")
    code, _, err = run(capsys, "check-frame", "--frame", str(path), "--conditions", "refl")
    assert code == 2
    assert "2:8" in err


def test_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "check-frame", "--frame", str(tmp_path / "nope"), "--conditions", "refl")
    assert code == 2 and err.startswith("error:")


def test_valid_reports_least_failure(capsys):
    code, out, _ = run(capsys, "valid", "--frame", str(FIXTURES / "c1.frame"), "--formula", "[]p -> [][]p")
    assert out == "INVALID: p = {i1}, world i2\n"
    assert code == 1


def test_valid_k_schema(capsys):
    code, out, _ = run(capsys, "valid", "--frame", str(FIXTURES / "c1.frame"),
                       "--formula", "[](p -> q) -> ([]p -> []q)")
    assert (code, out) == (0, "VALID\n")


def test_valid_json(capsys):
    code, out, _ = run(capsys, "valid", "--frame", str(FIXTURES / "c8.frame"), "--formula", "[]p -> <>p", "--json")
    data = json.loads(out)
    assert code == 1
    assert data["failure"] == {"valuation": {"p": []}, "world": "i1"}


@pytest.mark.parametrize("formula", ["[3]p", "p &", "[]P"])
def test_valid_bad_formula_exits_2(formula, capsys):
    code, _, err = run(capsys, "valid", "--frame", str(FIXTURES / "c1.frame"), "--formula", formula)
    assert code == 2 and "error" in err


def test_frame_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("worlds: 1\nrel 0:\n"))
    code, out, _ = run(capsys, "check-frame", "--frame", "-", "--conditions", "ser")
    assert (code, out) == (1, "ser: false\n")


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--holds", "ser,eucl", "--fails", "trans")
    assert code == 0
    assert out.startswith("3-world witness\nworlds: 3\n")
    assert "axiom 4 fails" in out


def test_witness_none_within_bound(capsys):
    code, out, _ = run(capsys, "witness", "--holds", "ser,eucl", "--fails", "trans", "--max-worlds", "2")
    assert code == 1
    assert out == "none within bound (2 worlds)\n"


def test_witness_json(capsys):
    code, out, _ = run(capsys, "witness", "--holds", "refl", "--fails", "sym", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["witness"]["n_worlds"] == 2
    assert data["witness"]["failed_condition"] == "sym"


def test_unknown_condition_exits_2(capsys):
    code, _, err = run(capsys, "witness", "--fails", "bogus")
    assert code == 2 and "bogus" in err


def test_budget_error_exits_2(capsys):
    code, _, err = run(capsys, "witness", "--fails", "trans", "--max-worlds", "9")
    assert code == 2 and "max_worlds" in err


def test_correspond(capsys):
    code, out, _ = run(capsys, "correspond", "--axiom", "5", "--max-worlds", "2")
    assert code == 0
    assert out.startswith("eucl <=> axiom 5: HOLDS (up to 2 worlds, 18 frames checked)")


def test_correspond_override_refuted(capsys):
    code, out, _ = run(capsys, "correspond", "--axiom", "M", "--condition", "ser", "--max-worlds", "2", "--json")
    data = json.loads(out)
    assert code == 1
    assert data["result"] == "refuted"
    assert data["witness"]["failing_instance"]["axiom"] == "M"


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", "--left", "refl,eucl", "--right", "ser,sym,trans", "--max-worlds", "3")
    assert code == 0 and "HOLDS" in out
    code, out, _ = run(capsys, "equiv", "--left", "refl", "--right", "ser", "--max-worlds", "2")
    assert code == 1
    assert "right holds, left fails" in out


def test_catalog_matches_golden(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out == (GOLDEN / "catalog.json").read_text()
    target = tmp_path / "cat.json"
    assert main(["catalog", "--out", str(target)]) == 0
    assert target.read_text() == out


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["valid", "--frame", "x"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modalcube", "witness", "--fails", "ser"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("1-world witness")


# -- the cube command ------------------------------------------------------------

def _payload(path):
    data = json.loads(path.read_text())
    data.pop("elapsed_ms")
    return data


@pytest.fixture(scope="module")
def cube_runs(tmp_path_factory):
    base = tmp_path_factory.mktemp("cube")
    codes = [
        main(["cube", "--out", str(base / "a.json"), "--dot", str(base / "a.dot")]),
        main(["cube", "--jobs", "2", "--out", str(base / "b.json")]),
        main(["cube", "--prune-iso", "--out", str(base / "c.json")]),
    ]
    return base, codes


def test_cube_is_green(cube_runs):
    base, codes = cube_runs
    assert codes == [0, 0, 0]
    data = json.loads((base / "a.json").read_text())
    assert data["summary"]["green"]
    assert data["summary"]["edges_matched"] == 25
    assert set(data["elapsed_ms"]) == {"correspondences", "equivalences", "edges", "total"}


def test_cube_dot_golden(cube_runs):
    base, _ = cube_runs
    assert (base / "a.dot").read_text() == (GOLDEN / "cube.dot").read_text()


def test_cube_payload_is_reproducible(cube_runs):
    base, _ = cube_runs
    a, b = _payload(base / "a.json"), _payload(base / "b.json")
    assert json.dumps(a, sort_keys=True, indent=2) == json.dumps(b, sort_keys=True, indent=2)


def test_pruned_cube_finds_the_same_witnesses(cube_runs):
    base, _ = cube_runs
    a, c = _payload(base / "a.json"), _payload(base / "c.json")
    assert c["canonical_pruning"] is True
    assert [e["witness"] for e in a["edges"]] == [e["witness"] for e in c["edges"]]
    assert a["summary"] == c["summary"]


def test_cube_red_below_bound(capsys):
    code, out, err = run(capsys, "cube", "--max-worlds", "2")
    assert code == 1
    assert [line.split()[1] for line in err.splitlines()] == ["C18", "C25"]
    assert "edges: 23/25" in out
