import csv
import json
import subprocess
import sys

import pytest

from resgirth.cli import run_cli


def run(argv, capsys):
    code = run_cli(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_irr_list(capsys):
    code, out, _ = run(["irr", "--q", "2", "--deg", "3", "--list"], capsys)
    assert code == 0
    assert out.splitlines() == ["t^3+t+1", "t^3+t^2+1"]


def test_irr_count(capsys):
    code, out, _ = run(["irr", "--q", "3", "--deg", "2", "--count"], capsys)
    assert (code, out) == (0, "3\n")


def test_probe_heisenberg_csv(tmp_path, capsys):
    out = tmp_path / "probe.csv"
    code, _, _ = run(["probe", "--spec", "heisenberg.json", "--max-n", "12", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 12
    assert list(rows[0]) == ["n", "ball_size", "probe_param", "probe_image_order",
                             "cert_field_order", "cert_paper_bound", "cert_gl_order"]
    assert [int(r["probe_param"]) for r in rows[:4]] == [3, 5, 7, 11]
    assert all(int(r["probe_image_order"]) == int(r["probe_param"]) ** 3 for r in rows)


def test_certify_lamplighter_json(capsys):
    code, out, _ = run(["certify", "--spec", "lamplighter_f2.json", "--n", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["injective"] is True
    assert data["paper_bound"] == 32772
    assert data["field_order"] <= data["paper_bound"]


def test_certify_char_zero_json(capsys):
    code, out, _ = run(["certify", "--spec", "unipotent_z", "--n", "1", "--format", "plain"], capsys)
    assert code == 0
    assert "prime: 5" in out and "injective: True" in out


def test_growth_with_fit(capsys):
    code, out, err = run(["growth", "--spec", "unipotent_z", "--max-n", "5", "--fit", "1..5"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "n,ball_size"
    assert out.splitlines()[-1] == "5,11"
    assert "slope ball_size over 1..5" in err


def test_survive(capsys):
    code, out, _ = run(["survive", "--poly", "t1*t2+1", "--k", "2", "--q", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["field_order"] == 2 and data["image"] == "1"


def test_probe_no_cert_json(capsys):
    code, out, _ = run(["probe", "--spec", "unipotent_z", "--max-n", "3", "--no-cert", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out)
    assert [r["probe_param"] for r in rows] == [3, 5, 7]
    assert rows[0]["cert_field_order"] is None


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["growth", "--max-n", "3"],
    ["growth", "--spec", "heisenberg", "--max-n", "0"],
    ["probe", "--spec", "heisenberg", "--max-n", "3", "--fit", "3-5"],
    ["irr", "--q", "6", "--deg", "2"],
    ["survive", "--poly", "t1", "--q", "2", "--k", "0"],
])
def test_usage_errors_exit_64(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 64


def test_missing_file_exit_66(capsys):
    code, _, err = run(["growth", "--spec", "/nonexistent/spec.json", "--max-n", "2"], capsys)
    assert code == 66 and err


def test_domain_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 2, "characteristic": 0, "generators": [[["1", "1"], ["1", "1"]]]}')
    assert run(["growth", "--spec", str(bad), "--max-n", "2"], capsys)[0] == 2
    assert run(["growth", "--spec", "heisenberg", "--max-n", "4", "--ball-budget", "10"], capsys)[0] == 2
    assert run(["survive", "--poly", "t1+", "--q", "2"], capsys)[0] == 2
    assert run(["probe", "--spec", "unipotent_z", "--max-n", "1", "--search-budget", "1"], capsys)[0] == 2


def test_ball_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("GIRTH_BALL_BUDGET", "10")
    assert run(["growth", "--spec", "heisenberg", "--max-n", "4"], capsys)[0] == 2


def test_byte_identical_outputs(tmp_path, capsys):
    paths = []
    for i, threads in enumerate(["1", "1", "3"]):
        out = tmp_path / f"p{i}.csv"
        run(["probe", "--spec", "z_wr_z", "--max-n", "3", "--threads", threads, "--out", str(out)], capsys)
        paths.append(out.read_bytes())
    assert paths[0] == paths[1] == paths[2]


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "resgirth", "irr", "--q", "2", "--deg", "2", "--list"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "t^2+t+1\n"
