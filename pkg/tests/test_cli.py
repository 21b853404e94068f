"""Command-line interface: formats, golden text output, exit codes."""
import json
import os
from pathlib import Path

import pytest

from citaylor import Report
from citaylor.cli import main, resolution_from_json
from citaylor.instances import seeded_rng

GOLDEN = Path(__file__).parent / "golden"

THREE_SQUARES_ARGS = [
    "--vars", "x,y,z",
    "--ideal", "x^2,y^2,z^2",
    "--ci", "x^2*z+x*y^2",
    "--lift", "first",
]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---- golden text ------------------------------------------------------------


def test_taylor_text_golden(capsys):
    code, out, _ = run(capsys, "taylor", "--vars", "x,y,z", "--ideal", "x*y,x*z,y*z")
    assert code == 0
    assert out == (GOLDEN / "taylor_squarefree.txt").read_text()


def test_resolve_text_golden(capsys):
    code, out, _ = run(capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "6")
    assert code == 0
    assert out == (GOLDEN / "resolve_three_squares.txt").read_text()


def test_resolve_max_step_zero(capsys):
    code, out, _ = run(capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "0")
    assert code == 0
    assert "F_0 = R" in out
    assert "phi_1" not in out


# ---- json -------------------------------------------------------------------


def test_resolve_json_schema(capsys):
    code, out, _ = run(capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "6", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"ring", "ideal", "ci", "lift", "modules", "differentials", "reports"}
    assert doc["ring"] == {"vars": ["x", "y", "z"], "char": 0}
    assert doc["ideal"] == ["x^2", "y^2", "z^2"]
    assert doc["ci"] == ["x^2*z + x*y^2"]  # grlex is the default print order
    assert doc["lift"] == [["z", "x", "0"]]
    assert doc["modules"][2][0] == {"u": [1], "S": [], "twist": 3}
    first = doc["differentials"][0]
    assert first["from"] == 1 and first["to"] == 0
    assert first["entries"][0] == {"row": 0, "col": 0, "poly": "x^2"}
    assert doc["reports"]["periodicity"] == {"status": "periodic", "start": 3}
    assert doc["reports"]["minimality"]["minimal"] is True


def test_resolve_json_round_trip(capsys):
    code, out, _ = run(capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    res = resolution_from_json(doc)
    from citaylor.cli import resolution_json

    assert resolution_json(res) == doc


def test_round_trip_rejects_tampered_data(capsys):
    code, out, _ = run(capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "3", "--format", "json")
    doc = json.loads(out)
    doc["differentials"][1]["entries"][0]["poly"] = "y^2"
    with pytest.raises(ValueError, match="does not match"):
        resolution_from_json(doc)
    doc2 = json.loads(out)
    doc2["modules"][2][0]["twist"] = 5
    with pytest.raises(ValueError, match="does not match"):
        resolution_from_json(doc2)


def test_taylor_json(capsys):
    code, out, _ = run(
        capsys, "taylor", "--vars", "x,y,z", "--ideal", "x*y,x*z,y*z", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ci"] == []
    assert [len(m) for m in doc["modules"]] == [1, 3, 3, 1]
    assert doc["modules"][1][0] == {"u": [], "S": [1], "twist": 2}


# ---- tex and dot ---------------------------------------------------------------


def test_resolve_tex_smoke(capsys):
    code, out, _ = run(capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "3", "--format", "tex")
    assert code == 0
    assert "\\varphi_{1}" in out
    assert "\\begin{array}" in out
    assert "\\emptyset & x^{2} & y^{2} & z^{2}" in out
    assert "x^{2}" in out


def test_taylor_tex_smoke(capsys):
    code, out, _ = run(
        capsys, "taylor", "--vars", "x,y,z", "--ideal", "x*y,x*z,y*z", "--format", "tex"
    )
    assert code == 0
    assert "\\tau_{2}" in out


def test_dot_counts_three_squares(capsys):
    code, out, _ = run(capsys, "export-dot", *THREE_SQUARES_ARGS)
    assert code == 0
    assert out.count("color=blue") == 12  # tau entries: 3 + 6 + 3
    assert out.count("color=red") == 8  # sigma entries for the (z, x, 0) lift
    assert out.count("rank=same") == 2


def test_dot_single_generator(capsys):
    code, out, _ = run(
        capsys, "export-dot", "--vars", "x", "--ideal", "x^2", "--ci", "x^3", "--lift", "first"
    )
    assert code == 0
    assert out.count("->") == 2  # one tau edge, one homotopy edge
    assert out.count("color=blue") == 1
    assert out.count("color=red") == 1


def test_dot_without_sequence(capsys):
    code, out, _ = run(capsys, "export-dot", "--vars", "x,y,z", "--ideal", "x*y,x*z,y*z")
    assert code == 0
    assert out.count("color=blue") == 12
    assert "color=red" not in out


def test_dot_distinguishes_sequence_elements(capsys):
    code, out, _ = run(
        capsys,
        "export-dot",
        "--vars", "x,y,z,w",
        "--ideal", "x^2,y^2,z^2,w^2",
        "--ci", "x^3+y^3,z^3+w^3",
        "--lift", "first",
    )
    assert code == 0
    assert "color=red" in out and "color=orange" in out


# ---- verify and check-exactness ---------------------------------------------------


def test_verify_passes_three_squares(capsys):
    code, out, _ = run(capsys, "verify", *THREE_SQUARES_ARGS, "--max-step", "4", "--max-degree", "6")
    assert code == 0
    assert "overall: PASS" in out
    assert "[PASS] taylor complex" in out
    assert "[PASS] homotopy system" in out
    assert "[PASS] exactness at step 3 over GF(32003)" in out


def test_verify_without_exactness(capsys):
    code, out, _ = run(capsys, "verify", *THREE_SQUARES_ARGS, "--max-step", "3")
    assert code == 0
    assert "exactness" not in out


def test_verify_exit_code_on_failure(capsys, monkeypatch):
    bad = Report("homotopy system")
    bad.fail("(b) forced failure for the exit-code path")
    import citaylor.cli as cli_mod

    monkeypatch.setattr(cli_mod, "verify_homotopy_system", lambda system: bad)
    code, out, _ = run(capsys, "verify", *THREE_SQUARES_ARGS, "--max-step", "3")
    assert code == 1
    assert "overall: FAIL" in out


def test_check_exactness_command(capsys):
    code, out, _ = run(
        capsys, "check-exactness", *THREE_SQUARES_ARGS, "--max-step", "3", "--max-degree", "6"
    )
    assert code == 0
    assert "overall: PASS" in out


def test_check_exactness_cap_exit(capsys):
    code, _, err = run(
        capsys,
        "check-exactness",
        "--vars", "x,y",
        "--ideal", "x,y",
        "--ci", "x^21*y,x*y^21",
        "--lift", "first",
        "--max-step", "2",
        "--max-degree", "3",
    )
    assert code == 3
    assert "max_degree" in err


# ---- lift files ----------------------------------------------------------------


def lift_doc():
    return {"assignments": [{"term": "x*y*z", "gen": 2}]}


def test_lift_from_file(capsys, tmp_path):
    path = tmp_path / "lift.json"
    path.write_text(json.dumps(lift_doc()))
    code, out, _ = run(
        capsys,
        "resolve",
        "--vars", "x,y,z",
        "--ideal", "x*y,x*z,y*z",
        "--ci", "x*y*z",
        "--lift", f"file:{path}",
        "--max-step", "2",
    )
    assert code == 0
    assert "f[1] = [0, y, 0]" in out


def test_lift_file_list_form(capsys, tmp_path):
    docs = [
        {"assignments": [{"term": "x^3", "gen": 1}, {"term": "y^3", "gen": 2}]},
        {"assignments": [{"term": "z^3", "gen": 3}, {"term": "w^3", "gen": 4}]},
    ]
    path = tmp_path / "lift2.json"
    path.write_text(json.dumps(docs))
    code, out, _ = run(
        capsys,
        "resolve",
        "--vars", "x,y,z,w",
        "--ideal", "x^2,y^2,z^2,w^2",
        "--ci", "x^3+y^3,z^3+w^3",
        "--lift", f"file:{path}",
        "--max-step", "2",
    )
    assert code == 0
    assert "f[1] = [x, y, 0, 0]" in out
    assert "f[2] = [0, 0, z, w]" in out


def test_lift_file_row_count_mismatch(capsys, tmp_path):
    path = tmp_path / "lift3.json"
    path.write_text(json.dumps([lift_doc(), lift_doc()]))
    code, _, err = run(
        capsys,
        "resolve",
        "--vars", "x,y,z",
        "--ideal", "x*y,x*z,y*z",
        "--ci", "x*y*z",
        "--lift", f"file:{path}",
        "--max-step", "2",
    )
    assert code == 2
    assert "assignment rows" in err


def test_lift_file_missing(capsys, tmp_path):
    code, _, err = run(
        capsys,
        "resolve",
        "--vars", "x,y,z",
        "--ideal", "x*y,x*z,y*z",
        "--ci", "x*y*z",
        "--lift", f"file:{tmp_path}/nope.json",
        "--max-step", "2",
    )
    assert code == 2


# ---- input errors ----------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["resolve", "--vars", "x,y", "--ideal", "x+y", "--ci", "x^2", "--lift", "first", "--max-step", "2"],
        ["resolve", "--vars", "x,y", "--ideal", "x^2", "--ci", "x^2+y", "--lift", "first", "--max-step", "2"],
        ["resolve", "--vars", "x,y", "--ideal", "x^2", "--ci", "y^2", "--lift", "first", "--max-step", "2"],
        ["resolve", "--vars", "x,y", "--ideal", "x^2", "--ci", "x^2", "--lift", "slowest", "--max-step", "2"],
        ["resolve", "--vars", "x,y", "--ideal", "w^2", "--ci", "x^2", "--lift", "first", "--max-step", "2"],
        ["taylor", "--vars", "x,y", "--ideal", ""],
        ["resolve", "--vars", "x,y", "--char", "6", "--ideal", "x^2", "--ci", "x^3", "--lift", "first", "--max-step", "2"],
    ],
)
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_average_lift_in_bad_characteristic_exits_two(capsys):
    code, _, err = run(
        capsys,
        "resolve",
        "--vars", "x,y,z",
        "--char", "3",
        "--ideal", "x*y,x*z,y*z",
        "--ci", "x*y*z",
        "--lift", "average",
        "--max-step", "2",
    )
    assert code == 2
    assert "characteristic 3" in err


def test_unknown_subcommand_exits_two(capsys):
    assert run(capsys, "frobnicate")[0] == 2


# ---- betti ------------------------------------------------------------------------


def test_betti_table(capsys):
    code, out, _ = run(capsys, "betti", "--gens", "4", "--codim", "2", "--max-step", "5")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [(int(n), int(b)) for n, b in rows] == [
        (0, 1), (1, 4), (2, 8), (3, 12), (4, 16), (5, 20)
    ]


def test_betti_json(capsys):
    code, out, _ = run(
        capsys, "betti", "--gens", "3", "--codim", "1", "--max-step", "4", "--format", "json"
    )
    assert code == 0
    assert json.loads(out) == {"r": 3, "c": 1, "bounds": [1, 3, 4, 4, 4]}


# ---- misc plumbing ------------------------------------------------------------------


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "resolve", *THREE_SQUARES_ARGS, "--max-step", "2", "--format", "json", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["lift"] == [["z", "x", "0"]]


def test_seed_env_controls_rng(monkeypatch):
    monkeypatch.setenv("CITAYLOR_SEED", "12345")
    first = seeded_rng().random()
    monkeypatch.setenv("CITAYLOR_SEED", "12345")
    assert seeded_rng().random() == first
    monkeypatch.setenv("CITAYLOR_SEED", "54321")
    assert seeded_rng().random() != first
