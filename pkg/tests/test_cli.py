"""End-to-end tests of the command-line interface."""

import csv
import json
import subprocess
import sys

import pytest

from triplewalk.cli import main


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_evolve_writes_csv(tmp_path):
    out = tmp_path / "trace.csv"
    code = main(
        ["evolve", "--n", "11", "--l", "5", "--s", "1", "--j", "10",
         "--start", "3", "--horizon", "100", "--out", str(out)]
    )
    assert code == 0
    with open(out, encoding="utf-8") as fh:
        assert fh.readline().rstrip("\n") == "t,p_left,p_conn,p_right,p_side"
    rows = read_csv(out)
    assert len(rows) == 2001
    assert rows[0]["t"] == "0.0"
    assert float(rows[0]["p_left"]) == pytest.approx(1.0, abs=1e-12)
    assert max(float(r["p_right"]) for r in rows) < 0.05


def test_evolve_default_horizon_shows_slow_crossing(tmp_path):
    out = tmp_path / "trace.csv"
    code = main(
        ["evolve", "--n", "11", "--l", "6", "--s", "1", "--j", "10",
         "--start", "3", "--out", str(out)]
    )
    assert code == 0
    rows = read_csv(out)
    assert max(float(r["p_right"]) for r in rows) > 0.3


def test_evolve_stdout(capsys):
    code = main(
        ["evolve", "--n", "5", "--l", "3", "--s", "0", "--j", "1",
         "--start", "1", "--horizon", "1", "--dt", "0.5", "--out", "-"]
    )
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "t,p_left,p_conn,p_right,p_side"
    assert len(lines) == 4  # header plus t = 0, 0.5, 1.0


def test_evolve_output_is_bit_stable(tmp_path):
    args = ["evolve", "--n", "7", "--l", "3", "--s", "1", "--j", "5",
            "--start", "2", "--horizon", "10"]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "flags,needle",
    [
        (["--horizon", "0.0"], "--horizon"),
        (["--horizon", "-3"], "--horizon"),
        (["--dt", "0"], "--dt"),
        (["--l", "12"], "--l"),
        (["--n", "0"], "--n"),
        (["--s", "-1"], "--s"),
        (["--j", "0"], "--j"),
        (["--start", "99"], "--start"),
    ],
)
def test_evolve_invalid_parameters_exit_2(tmp_path, capsys, flags, needle):
    out = tmp_path / "x.csv"
    code = main(["evolve", "--out", str(out)] + flags)
    assert code == 2
    assert needle in capsys.readouterr().err
    assert not out.exists()


def test_evolve_unparsable_flag_exits_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["evolve", "--n", "eleven", "--out", str(tmp_path / "x.csv")])
    assert info.value.code == 2


def test_evolve_io_failure_exit_1(tmp_path, capsys):
    out = tmp_path / "missing" / "trace.csv"
    code = main(["evolve", "--horizon", "1", "--out", str(out)])
    assert code == 1
    assert "cannot write" in capsys.readouterr().err


def test_evolve_plot_file(tmp_path):
    out = tmp_path / "trace.csv"
    fig = tmp_path / "trace.svg"
    code = main(
        ["evolve", "--n", "7", "--l", "3", "--s", "1", "--j", "5",
         "--horizon", "5", "--out", str(out), "--plot", str(fig)]
    )
    assert code == 0
    head = fig.read_bytes()[:200]
    assert b"<?xml" in head or b"<svg" in head


def test_outdir_environment_variable(tmp_path, monkeypatch):
    outdir = tmp_path / "results"
    outdir.mkdir()
    monkeypatch.setenv("TRIPLEWALK_OUTDIR", str(outdir))
    code = main(["evolve", "--horizon", "1", "--out", "run.csv"])
    assert code == 0
    assert (outdir / "run.csv").exists()


def test_spectrum_report_fields(tmp_path):
    out = tmp_path / "spec.json"
    code = main(
        ["spectrum", "--n", "11", "--l", "5", "--s", "1", "--j", "10",
         "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["spec"] == {"n": 11, "l": 5, "s": 1, "j": 10.0}
    assert len(report["spectrum"]) == 12
    assert report["remaining"] == []
    assert report["large_j"]["detached"] == [-10.0, 10.0]
    assert len(report["large_j"]["shifted"]) == 10
    assert report["roots"]["mode"] == "exact"
    assert len(report["roots"]["roots"]) == 12
    assert max(report["roots"]["residuals"]) <= 1e-10
    assert len(report["matching"]) == 12
    distances = sorted(m["distance"] for m in report["matching"])
    assert max(distances) < 0.11  # the detached pair sits near +-J
    assert max(distances[:-2]) < 0.05  # every hybridized level is closer


def test_spectrum_large_j_mode(tmp_path):
    out = tmp_path / "spec.json"
    code = main(
        ["spectrum", "--n", "11", "--l", "5", "--s", "1", "--j", "10",
         "--mode", "large_j", "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["roots"]["mode"] == "large_j"
    assert len(report["roots"]["roots"]) == 10


def test_spectrum_null_sections(tmp_path):
    end = tmp_path / "end.json"
    assert main(["spectrum", "--n", "11", "--l", "1", "--s", "1", "--j", "10",
                 "--out", str(end)]) == 0
    report = json.loads(end.read_text(encoding="utf-8"))
    assert report["large_j"] is None
    assert report["matching"] is None
    assert report["roots"] is not None
    bare = tmp_path / "bare.json"
    assert main(["spectrum", "--n", "11", "--l", "5", "--s", "0", "--j", "10",
                 "--out", str(bare)]) == 0
    report = json.loads(bare.read_text(encoding="utf-8"))
    assert report["roots"] is None
    assert len(report["spectrum"]) == 11


def test_spectrum_two_site_chain(tmp_path):
    out = tmp_path / "tiny.json"
    code = main(["spectrum", "--n", "2", "--l", "1", "--s", "0", "--j", "1",
                 "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["spectrum"] == pytest.approx([-1.0, 1.0], abs=1e-12)


def test_spectrum_invalid_mode_exit_2(tmp_path, capsys):
    code = main(["spectrum", "--mode", "bogus", "--out", str(tmp_path / "x.json")])
    assert code == 2
    assert "--mode" in capsys.readouterr().err


def test_sweep_csv_and_summary(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep", "--n", "11", "--l", "5,6", "--s", "1,2", "--j", "10",
         "--horizon", "200", "--out", str(out)]
    )
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 4
    assert rows[0]["switching"] == "true"
    assert rows[0]["gcd"] == "1"
    assert [r["agreement"] for r in rows] == ["true"] * 4
    summary = json.loads(
        (tmp_path / "sweep.summary.json").read_text(encoding="utf-8")
    )
    assert summary["parity_table"]["total"] == 4
    assert summary["parity_table"]["agreement_rate"] == 1.0
    assert summary["grid"]["l"] == [5, 6]


def test_sweep_range_syntax(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep", "--n", "11", "--l", "4:6", "--s", "1", "--j", "10",
         "--horizon", "10", "--out", str(out)]
    )
    assert code == 0
    assert [r["l"] for r in read_csv(out)] == ["4", "5", "6"]


def test_sweep_empty_range_exit_2(tmp_path, capsys):
    code = main(
        ["sweep", "--l", "6:5", "--out", str(tmp_path / "x.csv")]
    )
    assert code == 2
    assert "--l" in capsys.readouterr().err


def test_sweep_errored_point_has_empty_fields(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep", "--n", "11", "--l", "1,5", "--s", "1", "--j", "10",
         "--horizon", "10", "--out", str(out)]
    )
    assert code == 0
    rows = read_csv(out)
    assert rows[0]["l"] == "1"
    assert rows[0]["max_opposite"] == ""
    assert rows[0]["switching"] == ""
    assert rows[0]["agreement"] == ""
    assert rows[1]["switching"] != ""


def test_sweep_stdout_skips_summary(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(
        ["sweep", "--n", "5", "--l", "2", "--s", "1", "--j", "10",
         "--horizon", "5", "--out", "-"]
    )
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,l,s,j,gcd")
    assert len(lines) == 2
    assert not list(tmp_path.iterdir())  # no summary file appears


def test_verify_single_check(capsys):
    code = main(["verify", "--only", "lambda_coefficients"])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS  lambda_coefficients" in out
    assert "1/1 checks passed" in out


def test_verify_unknown_check_exit_2(capsys):
    code = main(["verify", "--only", "bogus_check"])
    assert code == 2
    err = capsys.readouterr().err
    assert "bogus_check" in err
    assert "lambda_coefficients" in err  # lists the available names


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n=7\nl=3\ns=1\nj=5.0\nhorizon=10\n", encoding="utf-8")
    out = tmp_path / "trace.csv"
    code = main(["evolve", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    assert len(read_csv(out)) == 201  # horizon 10 at the default dt 0.05


def test_explicit_flags_override_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n=7\nl=3\ns=1\nj=5.0\nhorizon=10\n", encoding="utf-8")
    out = tmp_path / "trace.csv"
    code = main(
        ["evolve", "--config", str(cfg), "--horizon", "5", "--out", str(out)]
    )
    assert code == 0
    assert len(read_csv(out)) == 101


def test_config_unknown_option_exit_2(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus=1\n", encoding="utf-8")
    code = main(["evolve", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "bogus" in capsys.readouterr().err


def test_config_bad_value_exit_2(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("horizon=fast\n", encoding="utf-8")
    code = main(["evolve", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "horizon" in capsys.readouterr().err


def test_config_missing_file_exit_1(tmp_path, capsys):
    code = main(
        ["evolve", "--config", str(tmp_path / "nope.cfg"),
         "--out", str(tmp_path / "x.csv")]
    )
    assert code == 1
    assert "--config" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "triplewalk.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "evolve" in proc.stdout
