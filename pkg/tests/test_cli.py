import json

import jsonschema
import pytest

from conftest import WORKED_Z
from thetacodes import cli, report
from thetacodes.errors import ConstructionError
from thetacodes.problem import format_problem, parse_problem


def write_problem(tmp_path, words, alphabet="ab", kind="morphism", perm=None, witness=None,
                  name="p.txt"):
    perm = perm or ",".join(f"{c}:{c}" for c in alphabet)
    lines = [f"alphabet={alphabet}", f"kind={kind}", f"perm={perm}"]
    if witness:
        lines.append(f"witness={witness}")
    lines += ["words:", *words]
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return path


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, report.schema())
    return doc


SWAP_ANTI = {"alphabet": "ab", "kind": "antimorphism", "perm": "a:b,b:a"}
SWAP_MORPH = {"alphabet": "ab", "kind": "morphism", "perm": "a:b,b:a"}


# -- check ------------------------------------------------------------------------

def test_check_worked_example(capsys, data_dir):
    doc = run_json(capsys, "check", data_dir / "worked.txt")
    res = doc["result"]
    assert res["is_code"]["holds"] and res["is_invariant"]
    assert res["is_complete"] == {"holds": False, "witness": "aaa"}
    assert res["is_maximal"]["verdict"] == "no"
    assert doc["input_digest"].startswith("sha256:")


def test_check_non_code(capsys, tmp_path):
    doc = run_json(capsys, "check", write_problem(tmp_path, ["a", "ab", "ba"]))
    assert doc["result"]["is_code"]["holds"] is False
    assert doc["result"]["is_code"]["witness"]["word"] == "aba"


def test_check_text_round_trip(capsys, data_dir):
    as_json = run_json(capsys, "check", data_dir / "worked.txt")
    code, text, _ = run(capsys, "check", data_dir / "worked.txt")
    assert code == 0
    assert report.parse_text(text) == as_json


def test_output_is_deterministic(capsys, data_dir, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    for out in (out1, out2):
        code, stdout, _ = run(capsys, "check", data_dir / "worked.txt", "--format", "json",
                              "--output", out)
        assert code == 0 and stdout == ""
    assert out1.read_bytes() == out2.read_bytes()
    assert not list(tmp_path.glob("*.tmp"))


# -- input errors -----------------------------------------------------------------

@pytest.mark.parametrize("body, fragment", [
    ("alphabet=ab\nkind=morphism\nperm=a:a,b:b\nwords:\n", "line"),
    ("alphabet=ab\nkind=morphism\nperm=a:a,b:a\nwords:\nab\n", "line 3"),
    ("alphabet=ab\nkind=morphism\nperm=a:a,b:b\nwords:\nabc\n", "line 5"),
    ("alphabet=ab\nkind=sideways\nperm=a:a,b:b\nwords:\nab\n", "line 2"),
    ("alphabet=ab\nperm=a:a,b:b\nwords:\nab\n", "kind"),
    ("alphabet=ab\nkind=morphism\nperm=a:a,b:b\nbogus=1\nwords:\nab\n", "line 4"),
])
def test_parse_errors_exit_2(capsys, tmp_path, body, fragment):
    path = tmp_path / "bad.txt"
    path.write_text(body)
    code, out, err = run(capsys, "check", path)
    assert code == 2 and out == ""
    assert fragment in err


def test_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "nope.txt")[0] == 2


def test_problem_format_round_trip(data_dir):
    problem = parse_problem((data_dir / "worked.txt").read_text())
    again = parse_problem(format_problem(problem))
    assert again.word_set == problem.word_set
    assert again.theta == problem.theta and again.witness == "aaab"


# -- hull -----------------------------------------------------------------------------

def test_hull_examples(capsys, tmp_path):
    path = write_problem(tmp_path, ["ab", "aba", "ba", "bab"], **SWAP_MORPH)
    res = run_json(capsys, "hull", path)["result"]
    assert res["generators"] == ["a", "b"] and res["defect_holds"] is True
    res = run_json(capsys, "hull", write_problem(tmp_path, ["ab", "abb", "bb"]))["result"]
    assert res["generators"] == ["ab", "bb", "abb"] and res["defect_holds"] is None
    res = run_json(capsys, "hull", write_problem(tmp_path, ["aa", "aaa"]))["result"]
    assert res["generators"] == ["a"]


def test_hull_budget_exit_4(capsys, tmp_path):
    code, _, err = run(capsys, "hull", write_problem(tmp_path, ["a", "ab", "ba"]), "--budget", "0")
    assert code == 4 and "budget" in err


# -- augment -----------------------------------------------------------------------------

def test_augment_worked_example(capsys, data_dir):
    res = run_json(capsys, "augment", data_dir / "worked.txt")["result"]
    assert res["block"]["z"] == "bbbbaaabaaaa"
    assert set(res["block"]["Z"]) == WORKED_Z
    assert set(res["added"]) == WORKED_Z and len(res["words"]) == 12


def test_augment_witness_flag_wins(capsys, data_dir):
    res = run_json(capsys, "augment", data_dir / "worked.txt", "--witness", "aaaab")["result"]
    assert res["block"]["y"] == "aaaab"


def test_augment_complete_input_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "augment", write_problem(tmp_path, ["a", "b"], **SWAP_ANTI))
    assert code == 3 and "complete" in err


def test_augment_circular_family(capsys, tmp_path):
    code, _, err = run(capsys, "augment", write_problem(tmp_path, ["ab", "ba"]),
                       "--family", "circular")
    assert code == 3
    assert "circular" in err and "'u': 'a'" in err
    res = run_json(capsys, "augment", write_problem(tmp_path, ["ab"], alphabet="abc"),
                   "--family", "circular")["result"]
    assert res["added"]


def test_augment_prefix_and_sync_families(capsys, data_dir, tmp_path):
    res = run_json(capsys, "augment", data_dir / "worked.txt", "--family", "prefix")["result"]
    assert len(res["words"]) > 6
    path = write_problem(tmp_path, ["ab"], **SWAP_ANTI)
    res = run_json(capsys, "augment", path, "--family", "sync", "--sync-k", "1")["result"]
    assert all(c["holds"] for c in res["certificates"].values())
    assert "ab" in res["members"]
    code, _, err = run(capsys, "augment", write_problem(tmp_path, ["ab", "ba"], **SWAP_ANTI),
                       "--family", "sync")
    assert code == 3 and "uniformly_synchronized" in err


# -- complete ---------------------------------------------------------------------------

def test_complete_example(capsys, tmp_path):
    res = run_json(capsys, "complete", write_problem(tmp_path, ["ab"], **SWAP_ANTI))["result"]
    assert res["t_length"] == 18 and res["t"] == "aaaababbbaaababbbb"
    assert all(c["holds"] for c in res["certificates"].values())


@pytest.mark.parametrize("kind, perm, fragment", [
    ("antimorphism", "a:a,b:b", "open problem"),
    ("morphism", "a:b,b:a", "unsupported map kind"),
])
def test_complete_unsupported_maps_exit_3(capsys, tmp_path, kind, perm, fragment):
    path = write_problem(tmp_path, ["ab"], kind=kind, perm=perm)
    code, _, err = run(capsys, "complete", path)
    assert code == 3 and fragment in err


def test_internal_error_exit_1(capsys, data_dir, monkeypatch):
    def broken(*args, **kwargs):
        raise ConstructionError("certificate failed")

    monkeypatch.setattr(cli, "build_report", broken)
    code, _, err = run(capsys, "check", data_dir / "worked.txt")
    assert code == 1 and "internal error" in err


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "thetacodes", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "thetacodes" in proc.stdout
