"""Command line entry points."""

import json

import pytest

from rslogic.cli import main


def test_seq_csv(capsys):
    assert main(["seq", "--to", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "n,a,s,t,ap,sp,tp"
    assert out[1] == "0,1,1,1,1,1,1"
    assert out[2] == "1,1,2,0,1,2,0"
    assert len(out) == 5


def test_eval_sentence(capsys):
    assert main(["eval", "?msd_2 Ax,y x+y=y+x"]) == 0
    assert capsys.readouterr().out.strip() == "TRUE"
    assert main(["eval", "?msd_2 Ax x>0"]) == 0
    assert capsys.readouterr().out.strip() == "FALSE"


def test_eval_uses_bootstrapped_machines(capsys):
    assert main(["eval", "?msd_4 An Ex $rss(n,x)"]) == 0
    assert capsys.readouterr().out.strip() == "TRUE"


def test_eval_unknown_name_errors(capsys):
    assert main(["eval", "An $nope(n)"]) == 2
    assert "error:" in capsys.readouterr().err


def test_def_persists_to_env_dir(tmp_path, capsys):
    env_dir = str(tmp_path / "env")
    assert main(["def", "triple", "?msd_2 y=3*x", "--env-dir", env_dir]) == 0
    assert (tmp_path / "env" / "triple.rel.txt").exists()
    assert (tmp_path / "env" / "rss.rel.txt").exists()
    capsys.readouterr()
    assert main(["eval", "Ax Ey $triple(x,y)", "--env-dir", env_dir]) == 0
    assert capsys.readouterr().out.strip() == "TRUE"


def test_run_script(tmp_path, capsys):
    script = tmp_path / "script.txt"
    script.write_text(
        'def half "Ek (n=2*k & m=k)":\n'
        'eval halves_below "Am,n $half(m,n) => 2*m<=n":\n'
    )
    assert main(["run", str(script)]) == 0
    out = capsys.readouterr().out
    assert "half: automaton" in out
    assert "halves_below: TRUE" in out


def test_run_script_error_paths(tmp_path, capsys):
    script = tmp_path / "script.txt"
    script.write_text('eval broken "An $missing(n)":\neval fine "An n<=n":\n')
    assert main(["run", str(script)]) == 2
    capsys.readouterr()
    assert main(["run", str(script), "--continue-on-error"]) == 1
    out = capsys.readouterr().out
    assert "broken: error:" in out
    assert "fine: TRUE" in out


def test_suite_filter(capsys):
    assert main(["suite", "--filter", "eq24*"]) == 0
    out = capsys.readouterr().out
    assert "7/7 checks passed" in out


def test_suite_json(capsys):
    assert main(["suite", "--report", "json", "--filter", "curvecheck*"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    rows = {row["id"]: row for row in payload["rows"]}
    assert rows["curvecheck"]["expected"] == "TRUE"
    assert rows["curvecheck3"]["expected"] == "FALSE"


def test_suite_unknown_filter(capsys):
    assert main(["suite", "--filter", "zz*"]) == 2


def test_bounds(capsys):
    assert main(["bounds", "--to", "2048"]) == 0
    assert "alternating_zeros" in capsys.readouterr().out


def test_curve_emits_files(tmp_path, capsys):
    svg = tmp_path / "curve.svg"
    csv = tmp_path / "curve.csv"
    code = main(
        ["curve", "--points", "256", "--svg", str(svg), "--csv", str(csv)]
    )
    assert code == 0
    assert svg.read_text().startswith("<svg ")
    assert csv.read_text().splitlines()[0] == "n,x,y"


def test_guess_verified(tmp_path, capsys):
    out_file = tmp_path / "machine.txt"
    assert main(["guess", "s", "--out", str(out_file)]) == 0
    printed = capsys.readouterr().out
    assert "total: proved" in printed and "step_down: proved" in printed
    assert out_file.read_text().startswith("msd_4 msd_2")


def test_guess_underfit_sample_fails_verification(capsys):
    assert main(["guess", "nt", "--sample-bound", "1024"]) == 1
    assert "FAILS" in capsys.readouterr().out
