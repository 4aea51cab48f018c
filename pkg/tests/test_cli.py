import json
import math

import pytest

from fracradon.cli import main


def run(tmp_path, argv, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out


def test_radon_worked_example(tmp_path):
    code, out = run(tmp_path, ["compute", "radon", "--body", "ball:r=1", "--n", "3", "--t", "0.5"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["rows"][0]["value"] == pytest.approx(3.0 * math.pi / 4.0, rel=1e-14)
    assert payload["config"]["seed"] == 20240


def test_frac_deriv_routes(tmp_path):
    # the = form keeps argparse from reading the leading negative as a flag
    code, out = run(
        tmp_path,
        ["compute", "frac-deriv", "--fn", "exp-neg", "--q=-0.5,1.2,2.4", "--T", "40"],
    )
    assert code == 0
    rows = json.loads(out.read_text())["rows"]
    assert [r["q"] for r in rows] == [-0.5, 1.2, 2.4]
    for r in rows:
        assert r["value"] == pytest.approx(1.0, abs=1e-8)
    assert rows[0]["route"] == "negative"
    assert rows[1]["route"] == "general"


def test_usage_errors_exit_2(tmp_path, capsys):
    assert main(["compute", "radon", "--body", "torus:r=1", "--n", "3", "--t", "0"]) == 2
    assert main(["verify", "nonsense"]) == 2  # unknown check name
    assert main(["verify", "thm2", "--config", str(tmp_path / "missing.cfg")]) == 2
    assert main(["compute", "radon", "--body", "ball:r=-1", "--n", "3", "--t", "0"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_verify_failure_exits_1(tmp_path, capsys):
    code, out = run(tmp_path, ["verify", "thm1", "--q", "0.5", "--c", "50", "--format", "csv"],
                    "fail.csv")
    assert code == 1
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "check,n,q,body,density,lhs,rhs,margin,pass,dovr_source,seed"
    assert ",false," in lines[1]
    err = capsys.readouterr().err
    assert "1 fail" in err


def test_verify_pass_and_summary(tmp_path, capsys):
    code, out = run(tmp_path, ["verify", "corollary1", "--n", "3", "--q", "0.5"])
    assert code == 0
    rep = json.loads(out.read_text())["reports"][0]
    assert rep["check"] == "corollary1"
    assert rep["pass"] is True
    assert "1 pass" in capsys.readouterr().err


def test_inapplicable_does_not_fail(tmp_path, capsys):
    # odd order lands in the guard band: report it, don't fail the run
    code, out = run(tmp_path, ["verify", "corollary1", "--n", "3", "--q", "1"])
    assert code == 0
    rep = json.loads(out.read_text())["reports"][0]
    assert rep["pass"] is None
    assert "inapplicable" in capsys.readouterr().err
    capsys.readouterr()


def test_byte_determinism(tmp_path):
    argv = ["verify", "thm2", "--body", "ellipsoid:a=2,1,1", "--n", "3", "--q", "0.5"]
    _, a = run(tmp_path, argv, "a.json")
    _, b = run(tmp_path, argv, "b.json")
    assert a.read_bytes() == b.read_bytes()
    argv_csv = argv + ["--format", "csv"]
    _, c = run(tmp_path, argv_csv, "c.csv")
    _, d = run(tmp_path, argv_csv, "d.csv")
    assert c.read_bytes() == d.read_bytes()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# quadrature knobs\nseed = 9\nsphere_nodes=64\n")
    argv = ["compute", "max", "--body", "ellipsoid:a=2,1,1", "--n", "3", "--q", "0",
            "--config", str(cfg)]
    code, out = run(tmp_path, argv, "cfg.json")
    assert code == 0
    conf = json.loads(out.read_text())["config"]
    assert conf["seed"] == 9
    assert conf["sphere_nodes"] == 64
    code, out2 = run(tmp_path, argv + ["--seed", "11"], "cfg2.json")
    assert json.loads(out2.read_text())["config"]["seed"] == 11


def test_max_finds_long_axis_plane(tmp_path):
    code, out = run(
        tmp_path,
        ["compute", "max", "--body", "ellipsoid:a=2,1,1", "--n", "3", "--q", "0"],
    )
    assert code == 0
    row = json.loads(out.read_text())["rows"][0]
    assert row["value"] == pytest.approx(2.0 * math.pi, rel=1e-3)


def test_sweep_filter_is_route_aware(tmp_path, capsys):
    code, out = run(
        tmp_path,
        ["sweep", "--check", "thm2", "--body", "ball|cube", "--n", "3", "--q", "0.5,1",
         "--density", "uniform", "--format", "csv"],
        "sweep.csv",
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    cells = [ln.split(",")[:4] for ln in lines[1:]]
    # closed route keeps the odd order on the ball; the cube drops it
    assert ["thm2", "3", "1", "ball:r=0.62035"] in cells
    assert all(not (c[3].startswith("cube") and c[2] == "1") for c in cells)
    assert len(lines) == 4  # header + ball q=0.5,1 + cube q=0.5
    assert "filtered q=1" in capsys.readouterr().err


def test_sweep_empty_grid_exits_2(tmp_path, capsys):
    code = main(["sweep", "--check", "thm2", "--body", "cube", "--n", "3", "--q", "1",
                 "--density", "uniform", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    capsys.readouterr()


def test_figures_flag_writes_png(tmp_path):
    code, out = run(tmp_path, ["verify", "corollary1", "--n", "3", "--q", "0.5", "--figures"],
                    "fig.json")
    assert code == 0
    png = tmp_path / "fig.png"
    assert png.exists()
    assert png.read_bytes()[:4] == b"\x89PNG"
