import io

import numpy as np
import pytest

from phaseclone import cloner, harness, pulsesim
from phaseclone import qlinalg as ql


def small_config(**kwargs):
    defaults = dict(
        alpha_grid=(0.0, np.pi / 3.0, np.pi / 2.0, np.pi),
        phi_set=(0.0, np.pi / 2.0),
    )
    defaults.update(kwargs)
    return harness.SweepConfig(**defaults)


def test_default_alpha_grid():
    grid = harness.default_alpha_grid()
    assert len(grid) == 17
    assert grid[0] == 0.0
    assert grid[-1] == pytest.approx(np.pi, abs=0.0)
    assert harness.default_alpha_grid(1) == (0.0,)
    with pytest.raises(ValueError):
        harness.default_alpha_grid(0)


def test_fidelity_from_bloch_reference_points():
    # transverse amplitudes seen in a carbon/proton run map onto these fidelities
    assert harness.fidelity_from_bloch(0.0, 0.667, 0.0) == pytest.approx(0.8335, abs=1e-12)
    assert harness.fidelity_from_bloch(0.0, 0.682, 0.0) == pytest.approx(0.841, abs=1e-12)
    # phase pi/2 reads the y component instead
    assert harness.fidelity_from_bloch(np.pi / 2.0, 0.9, 0.667) == pytest.approx(0.8335, abs=1e-12)


def test_fidelity_from_bloch_validation():
    with pytest.raises(ValueError):
        harness.fidelity_from_bloch(0.0, 1.2, 0.0)
    with pytest.raises(ValueError):
        harness.fidelity_from_bloch(np.nan, 0.0, 0.0)


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        harness.SweepConfig(alpha_grid=())
    with pytest.raises(ValueError):
        harness.SweepConfig(alpha_grid=(4.0,))
    with pytest.raises(ValueError):
        harness.SweepConfig(epsilon=1.0)
    with pytest.raises(ValueError):
        harness.SweepConfig(j_coupling=-5.0)


def test_sweep_record_validation():
    with pytest.raises(ValueError):
        harness.SweepRecord(1.0, 0.0, "other", 0.0, 0.5, 0.0, 0.5, 0.0, 0.75, 0.75)
    with pytest.raises(ValueError):
        # f_a inconsistent with (phi, x_a, y_a)
        harness.SweepRecord(1.0, 0.0, "ideal", 0.0, 0.5, 0.0, 0.5, 0.0, 0.80, 0.75)


def test_sweep_ideal_matches_closed_form():
    records = harness.sweep_ideal(small_config())
    assert len(records) == 8
    for rec in records:
        c, s = np.cos(rec.alpha / 2.0), np.sin(rec.alpha / 2.0)
        assert rec.source == "ideal"
        assert rec.epsilon == 0.0
        assert rec.x_a == pytest.approx(c * np.cos(rec.phi), abs=1e-12)
        assert rec.y_a == pytest.approx(c * np.sin(rec.phi), abs=1e-12)
        assert rec.x_b == pytest.approx(s * np.cos(rec.phi), abs=1e-12)
        assert rec.y_b == pytest.approx(s * np.sin(rec.phi), abs=1e-12)
        ideal = cloner.theoretical_fidelities(rec.alpha)
        assert rec.f_a == pytest.approx(ideal.f_a, abs=1e-12)
        assert rec.f_b == pytest.approx(ideal.f_b, abs=1e-12)


def test_sweep_ideal_symmetric_point():
    records = harness.sweep_ideal(harness.SweepConfig(alpha_grid=(np.pi / 2.0,), phi_set=(0.3,)))
    (rec,) = records
    best = 0.5 + np.sqrt(2.0) / 4.0
    assert rec.f_a == pytest.approx(best, abs=1e-12)
    assert rec.f_b == pytest.approx(best, abs=1e-12)


def test_state_prep_sequence_lands_on_equator():
    system = pulsesim.SpinSystem()
    for phi in (0.0, 1.0, np.pi, 5.5):
        u = pulsesim.sequence_propagator(system, harness.state_prep_sequence(phi))
        psi = u @ ql.basis_ket(4, 0)
        expected = ql.tensor(cloner.equatorial_state(phi), ql.basis_ket(2, 0))
        np.testing.assert_allclose(psi, expected, atol=1e-12)


def test_sweep_pulse_matches_ideal_at_zero_error():
    config = small_config()
    ideal = harness.sweep_ideal(config)
    pulse = harness.sweep_pulse(config)
    assert len(pulse) == len(ideal)
    for ri, rp in zip(ideal, pulse):
        assert rp.source == "pulse"
        assert rp.alpha == ri.alpha and rp.phi == ri.phi
        for field in ("x_a", "y_a", "x_b", "y_b", "f_a", "f_b"):
            assert getattr(rp, field) == pytest.approx(getattr(ri, field), abs=1e-9)


def test_sweep_pulse_error_degrades_continuously():
    config = small_config(alpha_grid=(np.pi / 2.0,), phi_set=(0.0,))
    ideal = harness.sweep_ideal(config)[0]

    def gap(eps):
        rec = harness.sweep_pulse(small_config(alpha_grid=(np.pi / 2.0,), phi_set=(0.0,), epsilon=eps))[0]
        return max(abs(rec.f_a - ideal.f_a), abs(rec.f_b - ideal.f_b))

    g3, g2, g1 = gap(1e-3), gap(1e-2), gap(1e-1)
    assert 0.0 < g3 < g2 < g1 < 0.5
    assert g3 < 1e-2


def test_tradeoff_report_ideal_records():
    records = harness.sweep_ideal(harness.SweepConfig(phi_set=(0.0,)))
    report = harness.tradeoff_report(records)
    assert report.max_abs_residual <= 1e-12
    # interior asymmetry angles beat the universal frontier; endpoints touch it
    assert report.n_touching == 2
    assert report.n_outside == len(records) - 2
    for row in report.rows:
        interior = 1e-6 < row.record.alpha < np.pi - 1e-6
        assert row.outside_universal == interior
        assert row.frontier_touching == (not interior)
    with pytest.raises(ValueError):
        harness.tradeoff_report([])


def test_csv_formatting_and_header():
    records = harness.sweep_ideal(harness.SweepConfig(alpha_grid=(np.pi / 2.0,), phi_set=(0.0,)))
    buf = io.StringIO()
    harness.emit_csv(records, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "alpha,phi,source,epsilon,x_a,y_a,x_b,y_b,f_a,f_b"
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[2] == "ideal"
    assert fields[8] == "0.853553390593"
    assert fields[9] == "0.853553390593"
    assert fields[0] == format(np.pi / 2.0, ".12g")


def test_csv_round_trip():
    records = harness.sweep_pulse(small_config(epsilon=0.02))
    buf = io.StringIO()
    harness.emit_csv(records, buf)
    buf.seek(0)
    back = harness.read_csv(buf)
    assert len(back) == len(records)
    for orig, rec in zip(records, back):
        assert rec.source == orig.source
        for field in ("alpha", "phi", "epsilon", "x_a", "y_a", "x_b", "y_b", "f_a", "f_b"):
            assert getattr(rec, field) == pytest.approx(getattr(orig, field), rel=1e-11, abs=1e-11)


def test_csv_file_destination(tmp_path):
    path = tmp_path / "sweep.csv"
    records = harness.sweep_ideal(small_config())
    harness.emit_csv(records, path)
    back = harness.read_csv(path)
    assert len(back) == len(records)


def test_read_csv_rejects_malformed_input():
    with pytest.raises(ValueError):
        harness.read_csv(io.StringIO(""))
    with pytest.raises(ValueError):
        harness.read_csv(io.StringIO("not,the,header\n"))
    with pytest.raises(ValueError, match="line 2"):
        harness.read_csv(io.StringIO(harness.CSV_HEADER + "\n1.0,2.0,ideal\n"))
    bad_row = "0,0,ideal,0,oops,0,0,0,0.5,0.5"
    with pytest.raises(ValueError, match="line 2"):
        harness.read_csv(io.StringIO(harness.CSV_HEADER + "\n" + bad_row + "\n"))


def test_emit_tradeoff_csv():
    records = harness.sweep_ideal(harness.SweepConfig(alpha_grid=(0.0, np.pi / 2.0), phi_set=(0.0,)))
    report = harness.tradeoff_report(records)
    buf = io.StringIO()
    harness.emit_tradeoff_csv(report, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == harness.CSV_HEADER + ",residual,outside_universal,frontier_touching"
    first = lines[1].split(",")
    assert first[-2:] == ["false", "true"]  # alpha = 0 touches the frontier
    second = lines[2].split(",")
    assert second[-2:] == ["true", "false"]  # symmetric point beats it


def test_run_verification_passes():
    buf = io.StringIO()
    assert harness.run_verification(buf) is True
    lines = buf.getvalue().splitlines()
    assert len(lines) == 6
    assert all(line.startswith("PASS  ") for line in lines)
