import numpy as np
import pytest

from phaseclone import cli, harness

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_parse_angle():
    assert cli.parse_angle("1.25") == 1.25
    assert cli.parse_angle("pi") == pytest.approx(np.pi)
    assert cli.parse_angle("-pi") == pytest.approx(-np.pi)
    assert cli.parse_angle("pi/2") == pytest.approx(np.pi / 2.0)
    assert cli.parse_angle("3pi/2") == pytest.approx(3.0 * np.pi / 2.0)
    assert cli.parse_angle("0.5pi") == pytest.approx(np.pi / 2.0)
    assert cli.parse_angle("2*pi") == pytest.approx(2.0 * np.pi)
    for bad in ("", "pie", "pi2", "one"):
        with pytest.raises(ValueError):
            cli.parse_angle(bad)


def test_ideal_sweep_to_stdout(capsys):
    assert cli.main(["ideal-sweep", "--alphas", "pi/2", "--phis", "0"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == harness.CSV_HEADER
    assert len(out) == 2
    assert "0.853553390593" in out[1]


def test_ideal_sweep_to_file(tmp_path):
    path = tmp_path / "ideal.csv"
    assert cli.main(["ideal-sweep", "--alphas", "5", "--phis", "0,pi/2", "--out", str(path)]) == 0
    records = harness.read_csv(path)
    assert len(records) == 10
    assert {r.source for r in records} == {"ideal"}
    assert sorted({r.alpha for r in records}) == pytest.approx(list(np.linspace(0.0, np.pi, 5)))


def test_pulse_sweep_to_file(tmp_path):
    path = tmp_path / "pulse.csv"
    code = cli.main(
        ["pulse-sweep", "--alphas", "0,pi/2", "--phis", "pi", "--epsilon", "0.05", "--out", str(path)]
    )
    assert code == 0
    records = harness.read_csv(path)
    assert len(records) == 2
    assert {r.source for r in records} == {"pulse"}
    assert {r.epsilon for r in records} == {0.05}


def test_invalid_arguments_exit_1(tmp_path):
    assert cli.main([]) == 1
    assert cli.main(["no-such-command"]) == 1
    assert cli.main(["ideal-sweep", "--alphas", "banana"]) == 1
    assert cli.main(["ideal-sweep", "--alphas", "0"]) == 1
    assert cli.main(["pulse-sweep", "--alphas", "pi/2", "--phis", "0", "--epsilon", "1.0"]) == 1
    assert cli.main(["tradeoff"]) == 1  # --in is required


def test_missing_input_exits_3(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    assert cli.main(["tradeoff", "--in", str(missing), "--no-figures"]) == 3
    assert "i/o error" in capsys.readouterr().err


def test_tradeoff_renders_figures(tmp_path, capsys):
    sweep = tmp_path / "sweep.csv"
    assert cli.main(["ideal-sweep", "--alphas", "9", "--phis", "0,pi/2", "--out", str(sweep)]) == 0
    annotated = tmp_path / "annotated.csv"
    assert cli.main(["tradeoff", "--in", str(sweep), "--out", str(annotated)]) == 0
    err = capsys.readouterr().err
    assert "max |circle residual|" in err

    lines = annotated.read_text().splitlines()
    assert lines[0] == harness.CSV_HEADER + ",residual,outside_universal,frontier_touching"
    assert len(lines) == 19

    for suffix in ("_fidelity.png", "_tradeoff.png"):
        figure = tmp_path / f"annotated{suffix}"
        assert figure.exists(), figure
        assert figure.read_bytes()[:8] == PNG_MAGIC


def test_tradeoff_no_figures(tmp_path):
    sweep = tmp_path / "sweep.csv"
    assert cli.main(["ideal-sweep", "--alphas", "3", "--phis", "0", "--out", str(sweep)]) == 0
    assert cli.main(["tradeoff", "--in", str(sweep), "--out", str(tmp_path / "ann.csv"), "--no-figures"]) == 0
    assert not list(tmp_path.glob("*.png"))


def test_tradeoff_stdout_puts_figures_next_to_input(tmp_path, capsys):
    sweep = tmp_path / "sweep.csv"
    assert cli.main(["ideal-sweep", "--alphas", "3", "--phis", "0", "--out", str(sweep)]) == 0
    assert cli.main(["tradeoff", "--in", str(sweep)]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith(harness.CSV_HEADER + ",residual")
    assert (tmp_path / "sweep_fidelity.png").exists()
    assert (tmp_path / "sweep_tradeoff.png").exists()


def test_verify_command(capsys):
    assert cli.main(["verify"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 6
    assert all(line.startswith("PASS  ") for line in out)


def test_verify_failure_exits_2(monkeypatch, capsys):
    monkeypatch.setattr(harness, "run_verification", lambda stream=None: False)
    assert cli.main(["verify"]) == 2
