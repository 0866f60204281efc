import json

import pytest

from chromprob.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_graph_figure1(capsys):
    code, rep = run_json(capsys, "graph", "named:figure1")
    assert code == 0
    r = rep["results"]
    assert (r["n"], r["m"], r["claw_free"]) == (19, 78, True)
    assert rep["command"] == "graph" and "timing_ms" in rep


def test_graph_claw(capsys):
    assert run_json(capsys, "graph", "named:star:3")[1]["results"]["claw_free"] is False


def test_bad_inputs(capsys, tmp_path):
    assert run(capsys, "graph", "badfile")[0] == 2
    bad = tmp_path / "g.txt"
    bad.write_text("3 2\n0 1\n")
    code, _, err = run(capsys, "graph", str(bad))
    assert code == 2 and "header" in err
    assert run(capsys, "graph", "named:unknown")[0] == 2
    assert run(capsys, "prob", "named:star:4", "1/2,1/3")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_edge_list_file(capsys, tmp_path):
    f = tmp_path / "c4.txt"
    f.write_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
    code, rep = run_json(capsys, "chromatic", str(f))
    assert rep["results"]["coefficients"] == [0, -3, 6, -4, 1]


def test_prob_and_kprob(capsys):
    _, rep = run_json(capsys, "prob", "named:star:4", "1/5,4/5")
    assert rep["results"]["probability"] == "52/625"  # = 260/3125
    _, rep = run_json(capsys, "kprob", "named:figure1", "1/2,1/2", "30")
    assert rep["results"]["probability"] == "1/262144"


def test_chromatic_cycle(capsys):
    _, rep = run_json(capsys, "chromatic", "named:cycle:4", "3")
    assert rep["results"]["coefficients"] == [0, -3, 6, -4, 1]
    assert rep["results"]["value"] == 18


def test_distribution(capsys):
    _, rep = run_json(capsys, "distribution", "named:complete:2", "1/2,1/2")
    assert rep["results"]["pmf"] == ["1/2", "1/2"]


def test_csf_epos(capsys):
    _, rep = run_json(capsys, "csf", "named:complete:2", "3")
    assert rep["results"] == {"q": 3, "terms": [{"partition": [1, 1], "coeff": "2"}]}
    code, _, err = run(capsys, "epos", "named:star:3", "3")
    assert code == 2 and "q=4" in err
    _, rep = run_json(capsys, "epos", "named:star:3", "4")
    assert rep["results"]["e_positive"] is False


def test_bounds(capsys):
    _, rep = run_json(capsys, "bounds", "named:complete:3", "--max-weight", "4")
    r = rep["results"]
    assert r["penrose"]["signed_sum"] == 2
    assert all(row["within"] for row in r["coefficients"])
    assert r["thresholds"]["nonvanishing"] == 2030


def test_optimize_scan_schur(capsys):
    _, rep = run_json(capsys, "optimize", "named:star:4", "2")
    assert rep["results"]["uniform_is_max"] is False
    _, rep = run_json(capsys, "scan", "named:complete:3", "3", "all")
    assert rep["results"]["uniform_max_all"] is True
    _, rep = run_json(capsys, "schur-scan", "named:star:4", "2", "--samples", "50")
    assert rep["results"]["holds_on_samples"] is False


@pytest.mark.parametrize("example", ["star", "tree", "figure1", "birthday", "shameful", "schur51", "epositive"])
def test_reproduce(capsys, example):
    code, rep = run_json(capsys, "reproduce", example)
    assert code == 0 and rep["results"]["all_ok"]


def test_deterministic_json(capsys):
    a = run_json(capsys, "schur-scan", "named:cycle:5", "3", "--samples", "20", "--seed", "4")[1]
    b = run_json(capsys, "schur-scan", "named:cycle:5", "3", "--samples", "20", "--seed", "4")[1]
    a.pop("timing_ms"), b.pop("timing_ms")
    assert json.dumps(a) == json.dumps(b)


def test_sweep_star_curve(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    code, rep = run_json(capsys, "sweep", "star_curve", "--resolution", "101", "--out", str(out))
    assert code == 0
    lines = out.read_bytes().decode().split("\n")
    assert lines[0] == "p1,P" and lines[-1] == "" and len(lines) == 103
    rows = [tuple(map(float, l.split(","))) for l in lines[1:-1]]
    best = max(rows, key=lambda r: r[1])
    assert best[0] in (0.21, 0.79)
    assert b"\r" not in out.read_bytes()


def test_sweep_resolution_two(capsys):
    code, out, _ = run(capsys, "sweep", "star_curve", "--resolution", "2")
    assert code == 0 and out == "p1,P\n0,0\n1,0\n"
    assert run(capsys, "sweep", "star_curve", "--resolution", "1")[0] == 2


def test_sweep_contour(capsys, tmp_path):
    out = tmp_path / "c.csv"
    run_json(capsys, "sweep", "contour4star", "--resolution", "11", "--out", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "p1,p2,P" and len(lines) == 1 + 66


def test_sweep_unwritable(capsys, tmp_path):
    assert run(capsys, "sweep", "star_curve", "--out", str(tmp_path / "missing" / "x.csv"))[0] == 2


@pytest.mark.xfail(strict=True, reason="on the 101-point grid the star(4) curve peaks at 0.21 / 0.79")
def test_sweep_star_curve_caption_argmax(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    run_json(capsys, "sweep", "star_curve", "--resolution", "101", "--out", str(out))
    rows = [tuple(map(float, l.split(","))) for l in out.read_text().splitlines()[1:]]
    assert max(rows, key=lambda r: r[1])[0] in (0.2, 0.8)
