import json
import math

import pytest

from qcap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_capacity_ad(capsys):
    code, out, _ = run(capsys, "capacity", "--channel", "ad", "--gamma", "0.2")
    assert code == 0
    rec = json.loads(out)
    assert rec["capacity_bits"] == pytest.approx(0.731645, abs=1e-5)
    assert rec["a_star"] == pytest.approx(0.567214, abs=1e-5)
    assert rec["method"] == "derivative-bisection"


def test_capacity_dep_lambda_one(capsys):
    code, out, _ = run(capsys, "capacity", "--channel", "dep", "--lambda", "1")
    assert code == 0
    assert json.loads(out)["capacity_bits"] == pytest.approx(0.0, abs=1e-12)


def test_capacity_periodic_branches(capsys):
    code, out, _ = run(capsys, "capacity", "--periodic", "ad:0.2", "ad:0.6")
    assert code == 0
    rec = json.loads(out)
    # max_a of the averaged chi curves
    assert rec["capacity_bits"] == pytest.approx(0.56134309974807, abs=1e-8)


def test_capacity_gad(capsys):
    code, out, _ = run(capsys, "capacity", "--channel", "gad", "--gamma", "0.5", "--p", "0.3")
    assert code == 0
    assert 0.0 < json.loads(out)["capacity_bits"] < 1.0


def test_bad_flags_exit_2(capsys):
    code, _, err = run(capsys, "capacity", "--channel", "ad")
    assert code == 2
    assert err
    code, _, _ = run(capsys, "capacity", "--channel", "nope", "--gamma", "0.2")
    assert code == 2
    code, _, _ = run(capsys, "capacity", "--channel", "ad", "--gamma", "1.5")
    assert code == 2
    code, _, _ = run(capsys, "capacity", "--periodic", "ad:oops")
    assert code == 2


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(
        capsys, "sweep", "--channel", "ad", "--var", "gamma",
        "--from", "0", "--to", "1", "--steps", "101", "--out", str(out),
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "param,a_star,capacity_bits,chi_at_half"
    rows = [dict(zip(lines[0].split(","), map(float, ln.split(",")))) for ln in lines[1:]]
    assert len(rows) == 101
    assert rows[0]["capacity_bits"] == pytest.approx(1.0, abs=1e-9)
    assert rows[-1]["capacity_bits"] == pytest.approx(0.0, abs=1e-9)
    params = [r["param"] for r in rows]
    assert params == sorted(params)
    # capacity dominates chi(1/2), equality only at the endpoints
    for r in rows:
        assert r["capacity_bits"] >= r["chi_at_half"] - 1e-12
    for r in rows[1:-1]:
        assert r["capacity_bits"] > r["chi_at_half"]
    # monotone nonincreasing capacity vs gamma
    caps = [r["capacity_bits"] for r in rows]
    for lo, hi in zip(caps, caps[1:]):
        assert hi <= lo + 1e-9


def test_sweep_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--channel", "dep", "--var", "lambda",
            "--from", "0.1", "--to", "0.9", "--steps", "17"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_round_trips_at_12_digits(tmp_path, capsys):
    out = tmp_path / "s.csv"
    run(capsys, "sweep", "--channel", "ad", "--var", "gamma",
        "--from", "0.1", "--to", "0.9", "--steps", "9", "--out", str(out))
    for line in out.read_text().splitlines()[1:]:
        for field in line.split(","):
            v = float(field)
            assert f"{v:.12g}" == field
            assert 0.0 <= v <= 1.0


def test_sweep_json_format(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "sweep", "--channel", "dep", "--var", "lambda",
                     "--from", "0", "--to", "1", "--steps", "5",
                     "--out", str(out), "--format", "json")
    assert code == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 5
    assert rows[0]["capacity_bits"] == pytest.approx(1.0)


def test_sweep_var_a(tmp_path, capsys):
    out = tmp_path / "a.csv"
    code, _, _ = run(capsys, "sweep", "--channel", "ad", "--gamma", "0.2",
                     "--var", "a", "--from", "0", "--to", "1", "--steps", "11",
                     "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 12


def test_sweep_bad_request(tmp_path, capsys):
    code, _, _ = run(capsys, "sweep", "--channel", "ad", "--var", "gamma",
                     "--from", "1", "--to", "0", "--steps", "5",
                     "--out", str(tmp_path / "x.csv"))
    assert code == 2
    code, _, _ = run(capsys, "sweep", "--channel", "ad", "--var", "gamma",
                     "--from", "0", "--to", "1", "--steps", "1",
                     "--out", str(tmp_path / "x.csv"))
    assert code == 2


def test_sweep_unwritable_path_exit_4(capsys):
    code, _, err = run(capsys, "sweep", "--channel", "ad", "--var", "gamma",
                       "--from", "0", "--to", "1", "--steps", "3",
                       "--out", "/nonexistent-dir/x.csv")
    assert code == 4
    assert err


def test_sweep_plot(tmp_path, capsys):
    out, fig = tmp_path / "s.csv", tmp_path / "s.png"
    code, _, _ = run(capsys, "sweep", "--channel", "ad", "--var", "gamma",
                     "--from", "0", "--to", "1", "--steps", "11",
                     "--out", str(out), "--plot", str(fig))
    assert code == 0
    assert fig.stat().st_size > 0


def test_ellipsoid_identity(tmp_path, capsys):
    out = tmp_path / "e.csv"
    code, _, _ = run(capsys, "ellipsoid", "--gamma", "0", "--n", "50", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,z,x_out,y_out,z_out,is_optimal"
    for ln in lines[1:]:
        x, y, z, xo, yo, zo, _ = map(float, ln.split(","))
        assert (xo, yo, zo) == pytest.approx((x, y, z), abs=1e-12)


def test_ellipsoid_geometry_and_optimal_rows(tmp_path, capsys):
    out = tmp_path / "e.csv"
    code, _, _ = run(capsys, "ellipsoid", "--gamma", "0.2", "--n", "100", "--out", str(out))
    assert code == 0
    g = 0.2
    lines = out.read_text().splitlines()[1:]
    opt = []
    for ln in lines:
        x, y, z, xo, yo, zo, is_opt = map(float, ln.split(","))
        lhs = (xo * xo + yo * yo) / (1 - g) + (zo - g) ** 2 / (1 - g) ** 2
        assert lhs == pytest.approx(1.0, abs=1e-9)
        if is_opt:
            opt.append((x, y, z))
    assert len(opt) == 2
    for _, _, z in opt:
        assert (z + 1) / 2 == pytest.approx(0.567214, abs=1e-5)  # z = 2a - 1


def test_ellipsoid_plot(tmp_path, capsys):
    out, fig = tmp_path / "e.csv", tmp_path / "e.png"
    code, _, _ = run(capsys, "ellipsoid", "--gamma", "0.5", "--n", "40",
                     "--out", str(out), "--plot", str(fig))
    assert code == 0
    assert fig.stat().st_size > 0


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--channel", "dep", "--lambda", "0.3",
                       "--states", "3", "--restarts", "6", "--seed", "1")
    assert code == 0
    rec = json.loads(out)
    h = lambda p: -p * math.log2(p) - (1 - p) * math.log2(1 - p)
    assert rec["chi_hat"] == pytest.approx(1 - h(0.15), abs=1e-4)
    assert rec["gap"] <= 1e-4
    assert rec["ensemble"]


def test_oracle_deterministic_output(capsys):
    args = ["oracle", "--channel", "ad", "--gamma", "0.4",
            "--states", "2", "--restarts", "4", "--seed", "9"]
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_periodic_command(capsys):
    code, out, _ = run(capsys, "periodic", "dep:0.2", "dep:0.4")
    assert code == 0
    rec = json.loads(out)
    h = lambda p: -p * math.log2(p) - (1 - p) * math.log2(1 - p)
    assert rec["capacity_bits"] == pytest.approx(1 - (h(0.1) + h(0.2)) / 2, abs=1e-9)
    assert rec["upper_bound_bits"] >= rec["capacity_bits"] - 1e-12


def test_convex_command(capsys):
    code, out, _ = run(capsys, "convex", "ad:0.6", "dep:0.3")
    assert code == 0
    rec = json.loads(out)
    assert rec["sup_min"] < rec["min_sup"]
    assert rec["crossing_a"] is not None


def test_interchange_command(capsys):
    code, out, _ = run(capsys, "interchange", "ad:0.2", "ad:0.6")
    assert code == 0
    rec = json.loads(out)
    assert rec["gap"] > 0
    lo, hi = sorted(rec["a_star_per_branch"])
    assert lo < rec["a_star_joint"] < hi


def test_qcap_tol_env(capsys, monkeypatch):
    monkeypatch.setenv("QCAP_TOL", "1e-6")
    code, out, _ = run(capsys, "capacity", "--channel", "ad", "--gamma", "0.2")
    assert code == 0
    assert json.loads(out)["capacity_bits"] == pytest.approx(0.731645, abs=1e-5)
    monkeypatch.setenv("QCAP_TOL", "bogus")
    code, _, _ = run(capsys, "capacity", "--channel", "ad", "--gamma", "0.2")
    assert code == 2
