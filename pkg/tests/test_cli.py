import json
import os
import subprocess
import sys

import numpy as np
import pytest

from fbga import sample_file
from fbga.cli import main
from fbga.io import read_result_csv

STRAIGHT = sample_file("straight_500m.csv")
TWO = sample_file("two_corner_300m.csv")
BOX = sample_file("box.json")
MOTO = sample_file("moto.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_straight_prints_time(capsys, tmp_path):
    out_csv = tmp_path / "r.csv"
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "plan", "--path", STRAIGHT, "--env", BOX, "--v-ini", "0",
                       "--out", str(out_csv), "--json", str(rep))
    assert code == 0
    assert "T=14.142s" in out
    d = json.loads(rep.read_text())
    assert d["T"] == pytest.approx(14.142135623730951, abs=1e-9)
    assert d["N"] == 501 and d["warnings"] == [] and d["cpu_ms"] > 0
    assert set(d["inputs"]) == {STRAIGHT, BOX}
    assert d["command"].startswith("fbga plan")
    res = read_result_csv(out_csv)
    assert res["s"].size == 501 and res["a_x"].size == 500
    assert out_csv.read_text().splitlines()[-1].split(",")[2] == ""


def test_plan_bad_csv_names_row(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("s,kappa\n0,0\n10,0\n5,0\n")
    code, _, err = run(capsys, "plan", "--path", str(bad), "--env", BOX)
    assert code == 1
    assert "s not strictly increasing at row 3" in err


def test_plan_missing_env_names_flag(capsys, tmp_path):
    code, _, err = run(capsys, "plan", "--path", STRAIGHT, "--env", str(tmp_path / "nope.json"))
    assert code == 1 and "--env" in err


def test_plan_bad_env_field(capsys, tmp_path):
    f = tmp_path / "e.json"
    f.write_text(json.dumps({"type": "box", "v_max": 10, "ax_min": 1, "ax_max": -1, "ay_min": -1, "ay_max": 1}))
    code, _, err = run(capsys, "plan", "--path", STRAIGHT, "--env", str(f))
    assert code == 1 and "ax_min" in err


def test_plan_v_ini_above_saturation(capsys, tmp_path):
    corner = tmp_path / "c.csv"
    corner.write_text("".join(f"{s},0.05\n" for s in range(0, 60, 2)))
    rep = tmp_path / "r.json"
    code, _, err = run(capsys, "plan", "--path", str(corner), "--env", BOX, "--v-ini", "40",
                       "--json", str(rep))
    assert code == 2
    d = json.loads(rep.read_text())
    assert d["infeasible"] and "exceeds saturated speed" in d["warnings"][0]


def test_plan_time_samples(capsys, tmp_path):
    out_csv = tmp_path / "r.csv"
    code, _, _ = run(capsys, "plan", "--path", TWO, "--env", MOTO, "--v-ini", "40", "--out",
                     str(out_csv), "--dt", "0.1")
    assert code == 0
    rows = (tmp_path / "r_t.csv").read_text().splitlines()
    assert rows[0] == "t,s,v_x,a_x,a_y"
    assert len(rows) > 100


def test_plan_synthetic_track_from_seed(capsys):
    a = run(capsys, "plan", "--env", MOTO, "--seed", "4", "--length", "800", "--corners", "3")
    b = run(capsys, "plan", "--env", MOTO, "--seed", "4", "--length", "800", "--corners", "3")
    c = run(capsys, "plan", "--env", MOTO, "--seed", "5", "--length", "800", "--corners", "3")
    assert a[0] == 0
    assert a[1].splitlines()[0] == b[1].splitlines()[0] != c[1].splitlines()[0]


def test_result_csv_byte_identical(capsys, tmp_path):
    files = []
    for k in range(2):
        f = tmp_path / f"r{k}.csv"
        run(capsys, "plan", "--path", TWO, "--env", MOTO, "--v-ini", "40", "--out", str(f))
        files.append(f.read_bytes())
    assert files[0] == files[1]


def test_compare_two_corner(capsys, tmp_path):
    o = tmp_path / "o.csv"
    code, out, _ = run(capsys, "compare", "--path", TWO, "--env", MOTO, "--v-ini", "40",
                       "--oracle-out", str(o))
    assert code == 0
    assert "T_fbga=" in out and "T_oracle=" in out and "cpu_ms_oracle=" in out
    assert read_result_csv(o)["v_x"].size == 300


def test_compare_straight_tight_threshold(capsys):
    code, out, _ = run(capsys, "compare", "--path", STRAIGHT, "--env", BOX, "--threshold", "0.001")
    assert code == 0


def test_compare_zero_threshold_fails_on_any_gap(capsys):
    code, _, err = run(capsys, "compare", "--path", TWO, "--env", MOTO, "--v-ini", "40",
                       "--threshold", "0")
    assert code != 0 and "above threshold" in err


def test_compare_oracle_infeasible(capsys, tmp_path):
    env = tmp_path / "e.json"
    env.write_text(json.dumps({"type": "box", "v_max": 100, "ax_min": 2, "ax_max": 5,
                               "ay_min": -10, "ay_max": 10}))
    track = tmp_path / "t.csv"
    track.write_text("".join(f"{s},{0.0 if s < 20 else 0.1}\n" for s in range(51)))
    code, _, err = run(capsys, "compare", "--path", str(track), "--env", str(env))
    assert code == 3 and "oracle" in err


def test_sweep_single_mesh(capsys):
    code, out, _ = run(capsys, "sweep", "--path", TWO, "--env", MOTO, "--v-ini", "40",
                       "--meshes", "150")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n_segments,T,cpu_ms" and len(lines) == 2
    assert lines[1].startswith("150,")


@pytest.mark.parametrize("env", ["moto.json", "car_grid.json"])
def test_sweep_time_non_increasing(capsys, env):
    meshes = ",".join(str(m) for m in range(100, 1001, 100))
    code, out, _ = run(capsys, "sweep", "--path", TWO, "--env", sample_file(env), "--v-ini", "40",
                       "--meshes", meshes, "--shuffle", "--seed", "3")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [int(r[0]) for r in rows] == list(range(100, 1001, 100))
    T = np.array([float(r[1]) for r in rows])
    assert np.all(np.diff(T) <= 1e-8)


def test_sweep_parallel_matches_sequential(tmp_path):
    cmd = [sys.executable, "-m", "fbga.cli", "sweep", "--path", TWO, "--env", MOTO, "--v-ini", "40",
           "--meshes", "300,100,200"]
    seq = subprocess.run(cmd, capture_output=True, text=True, env={**os.environ, "FBGA_THREADS": "1"}, check=True)
    par = subprocess.run(cmd, capture_output=True, text=True, env={**os.environ, "FBGA_THREADS": "3"}, check=True)
    col = lambda out: [line.split(",")[:2] for line in out.strip().splitlines()]
    assert col(seq.stdout) == col(par.stdout)
    assert [r[0] for r in col(par.stdout)[1:]] == ["100", "200", "300"]


def test_sweep_bad_meshes(capsys):
    code, _, err = run(capsys, "sweep", "--path", TWO, "--env", MOTO, "--meshes", "10,x")
    assert code == 1 and "--meshes" in err
