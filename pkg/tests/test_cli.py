import pytest

from cpbskew.cli import main


def test_trace_with_plots(tmp_path, capsys):
    out = tmp_path / "t"
    code = main(["trace", "--delta", "0,0.3", "--gamma", "1/4", "--n", "1",
                 "--tmax", "5", "--steps", "21", "--out", str(out), "--plots"])
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == [
        "trace_d0.3_g0.25_n1.csv", "trace_d0_g0.25_n1.csv", "traces.gp"]


def test_config_overrides_flags(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(f"n = 2\nsteps = 5\nout = {tmp_path / 'c'}\n")
    code = main(["trace", "--delta", "0", "--gamma", "0.25", "--n", "1", "--config", str(cfg)])
    assert code == 0
    files = list((tmp_path / "c").iterdir())
    assert [f.name for f in files] == ["trace_d0_g0.25_n2.csv"]
    assert len(files[0].read_text().splitlines()) == 6


def test_missing_settings(capsys):
    assert main(["trace", "--delta", "0"]) == 2
    assert "missing" in capsys.readouterr().err


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("speed = 3\n")
    assert main(["trace", "--config", str(cfg)]) == 2


def test_missing_config_file(tmp_path):
    assert main(["figures", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_bad_flag_value():
    with pytest.raises(SystemExit) as exc:
        main(["trace", "--delta", "zero", "--gamma", "1", "--n", "1"])
    assert exc.value.code == 2


def test_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = main(["trace", "--delta", "0", "--gamma", "1", "--n", "0", "--steps", "3",
                 "--out", str(blocker / "sub")])
    assert code == 3


def test_figures(tmp_path, capsys):
    assert main(["figures", "--out", str(tmp_path)]) == 0
    assert "Qualitative trends" in capsys.readouterr().out
    assert (tmp_path / "report.txt").exists()


def test_validate(capsys):
    assert main(["validate", "--draws", "50"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") == 8
