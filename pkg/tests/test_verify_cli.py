from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gzchow.cli import main
from gzchow.mw import mw_basis
from gzchow.fan import Fan
from gzchow.verify import verify_main_theorem


def test_verify_n2():
    rep = verify_main_theorem(2)
    assert rep.passed
    assert rep.lefschetz_dims == rep.gorenstein_dims == rep.flag_dims == [1, 1]
    assert rep.lefschetz_has_duality


def test_verify_n3():
    rep = verify_main_theorem(3)
    assert rep.passed, rep.checks
    assert rep.mw_ranks == [1, 2, 3, 1]
    assert rep.lefschetz_dims == [1, 2, 3, 1]
    assert rep.gorenstein_dims == rep.flag_dims == [1, 2, 2, 1]
    assert rep.scalar == 1
    assert rep.lefschetz_has_duality is False


def test_verify_negative_control():
    rep = verify_main_theorem(3, skip_gorenstein=True)
    assert not rep.passed
    assert rep.failed_stage == "lefschetz_has_poincare_duality"
    assert rep.checks["dims_match"] is False


def test_report_deterministic_and_seed_robust():
    a = json.dumps(verify_main_theorem(3, seed=4).to_dict())
    b = json.dumps(verify_main_theorem(3, seed=4).to_dict())
    assert a == b
    for seed in range(3):
        rep = verify_main_theorem(3, seed=seed)
        assert rep.passed
        assert rep.checks == verify_main_theorem(3, seed=0).checks


def test_verify_rejects_large_n():
    with pytest.raises(ValueError):
        verify_main_theorem(5)


# -- command line -------------------------------------------------------------


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_gz_fan_and_mw(tmp_path, capsys):
    fan_path = tmp_path / "fan.json"
    code, _, _ = run(["gz-fan", "--n", "3", "--out", str(fan_path)], capsys)
    assert code == 0
    fan = Fan.from_dict(json.loads(fan_path.read_text()))
    code, out, _ = run(["mw-rank", "--fan", str(fan_path)], capsys)
    assert code == 0 and out.strip() == "1, 2, 3, 1"
    code, out, _ = run(["mw", "--fan", str(fan_path), "--codim", "2"], capsys)
    assert code == 0
    basis = json.loads(out)
    assert [list(w["values"].values()) for w in basis] == [list(w.values) for w in mw_basis(fan, 2)]


def test_cli_cup(tmp_path, capsys):
    fan_path = tmp_path / "fan.json"
    run(["gz-fan", "--n", "3", "--out", str(fan_path)], capsys)
    run(["mw", "--fan", str(fan_path), "--codim", "1", "--out", str(tmp_path / "b.json")], capsys)
    b = json.loads((tmp_path / "b.json").read_text())
    (tmp_path / "c.json").write_text(json.dumps(b[0]))
    (tmp_path / "d.json").write_text(json.dumps(b[1]))
    outs = set()
    for seed in (0, 1):
        code, out, _ = run(["cup", "--fan", str(fan_path), "--c", str(tmp_path / "c.json"),
                            "--d", str(tmp_path / "d.json"), "--seed", str(seed)], capsys)
        assert code == 0
        outs.add(json.dumps(json.loads(out)["values"]))
        assert json.loads(out)["codim"] == 2
    assert len(outs) == 1


def test_cli_hypersimplex(capsys):
    code, out, _ = run(["hypersimplex"], capsys)
    assert code == 0 and out.strip() == "1, 1, 5, 1"


def test_cli_gz_polytope(capsys, tmp_path):
    code, out, _ = run(["gz-polytope", "--lambda", "0,0,1", "--volume"], capsys)
    assert code == 0
    assert "lower-dimensional" in out and "volume: 0" in out
    code, out, _ = run(["gz-polytope", "--lambda", "-1,0,1", "--volume", "--lattice-points"], capsys)
    assert "volume: 1" in out and "lattice points: 8" in out
    code, out, _ = run(["gz-polytope", "--lambda", "0,1,2"], capsys)
    assert json.loads(out)["full_dimensional"] is True


def test_cli_volume_poly(capsys):
    code, out, _ = run(["volume-poly", "--n", "3"], capsys)
    data = json.loads(out)
    assert code == 0 and data["degree"] == 3 and data["vars"] == ["l1", "l2", "l3"]


def test_cli_verify_and_determinism(tmp_path, capsys):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(["verify", "--n", "3", "--report", str(r1)], capsys)[0] == 0
    assert run(["verify", "--n", "3", "--report", str(r2)], capsys)[0] == 0
    assert r1.read_bytes() == r2.read_bytes()
    data = json.loads(r1.read_text())
    assert data["status"] == "PASS" and data["gorenstein_dims"] == [1, 2, 2, 1]
    assert "timings" not in data
    r3 = tmp_path / "r3.json"
    run(["verify", "--n", "2", "--report", str(r3), "--timings"], capsys)
    assert "timings" in json.loads(r3.read_text())


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "9"],
    ["gz-polytope", "--lambda", "2,1"],
    ["gz-polytope", "--lambda", "a,b"],
    ["mw-rank", "--fan", "/nonexistent/fan.json"],
    ["frobnicate"],
])
def test_cli_input_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.strip()


def test_cli_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["mw-rank", "--fan", str(bad)], capsys)
    assert code == 2 and "not valid JSON" in err
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"dim": 2}))
    code, _, err = run(["mw-rank", "--fan", str(wrong)], capsys)
    assert code == 2 and len(err.strip().splitlines()) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gzchow", "hypersimplex"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1, 1, 5, 1"
