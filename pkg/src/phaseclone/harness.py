"""Experiment orchestration: fidelity sweeps, trade-off reports, CSV I/O.

A sweep runs the cloner over a grid of asymmetry angles alpha and input
phases phi, either at the ideal gate level (sweep_ideal) or through the
full pulse pipeline (sweep_pulse: thermal state, pseudopure preparation,
state preparation on qubit a, the two pulse trains, exact readout).
Each run yields one SweepRecord holding the transverse Bloch components
of both reduced states and the fidelities reconstructed from them; the
records serialize to a fixed-header CSV with 12 significant digits.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

from . import cloner, geomgate, pulsesim
from .qlinalg import bloch_vector, partial_trace, unitary_distance

CSV_FIELDS = ("alpha", "phi", "source", "epsilon", "x_a", "y_a", "x_b", "y_b", "f_a", "f_b")
CSV_HEADER = ",".join(CSV_FIELDS)
TRADEOFF_EXTRA_FIELDS = ("residual", "outside_universal", "frontier_touching")

DEFAULT_ALPHA_COUNT = 17
DEFAULT_PHI_SET = (0.0, np.pi / 2.0, np.pi, 3.0 * np.pi / 2.0)

# The frontier has a vertical tangent at f_a = 1, so one ulp of rounding
# in f_a moves the partner fidelity by ~sqrt(eps) ~ 1.5e-8; the flag
# tolerance must sit above that but far below the smallest interior
# separation (~2e-3 on the default grid).
_FRONTIER_TOL = 1e-7


def default_alpha_grid(count: int = DEFAULT_ALPHA_COUNT) -> tuple[float, ...]:
    """count uniform points on [0, pi], endpoints included."""
    count = int(count)
    if count < 1:
        raise ValueError("alpha grid needs at least one point")
    return tuple(float(a) for a in np.linspace(0.0, np.pi, count))


def _transverse_fidelity(phi: float, x: float, y: float) -> float:
    return 0.5 * (1.0 + np.cos(phi) * x + np.sin(phi) * y)


def fidelity_from_bloch(phi: float, x: float, y: float) -> float:
    """Overlap with the equatorial input at phase phi, from transverse components:

        F = (1 + cos(phi) x + sin(phi) y) / 2.

    The z component never enters because the input has none.
    """
    phi, x, y = float(phi), float(x), float(y)
    if not (np.isfinite(phi) and np.isfinite(x) and np.isfinite(y)):
        raise ValueError("phi, x, y must be finite")
    if abs(x) > 1.0 + 1e-10 or abs(y) > 1.0 + 1e-10:
        raise ValueError(f"transverse components must lie in [-1, 1], got ({x!r}, {y!r})")
    return float(_transverse_fidelity(phi, x, y))


@dataclass(frozen=True)
class SweepConfig:
    """Grid and pulse-model settings shared by both sweep flavors."""

    alpha_grid: tuple[float, ...] = default_alpha_grid()
    phi_set: tuple[float, ...] = DEFAULT_PHI_SET
    epsilon: float = 0.0
    j_coupling: float = pulsesim.DEFAULT_J_COUPLING
    thermal_ratio: float = pulsesim.CALIBRATED_THERMAL_RATIO

    def __post_init__(self) -> None:
        if len(self.alpha_grid) == 0 or len(self.phi_set) == 0:
            raise ValueError("alpha_grid and phi_set must be nonempty")
        for alpha in self.alpha_grid:
            if not np.isfinite(alpha) or alpha < -1e-12 or alpha > np.pi + 1e-12:
                raise ValueError(f"alpha values must lie in [0, pi], got {alpha!r}")
        for phi in self.phi_set:
            if not np.isfinite(phi):
                raise ValueError("phi values must be finite")
        if not np.isfinite(self.epsilon) or not -1.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (-1, 1), got {self.epsilon!r}")
        # SpinSystem revalidates, but fail early with the config's own message.
        if not np.isfinite(self.j_coupling) or self.j_coupling <= 0.0:
            raise ValueError(f"j_coupling must be positive, got {self.j_coupling!r}")
        if not np.isfinite(self.thermal_ratio) or self.thermal_ratio <= 0.0:
            raise ValueError(f"thermal_ratio must be positive, got {self.thermal_ratio!r}")


@dataclass(frozen=True)
class SweepRecord:
    """One sweep point: settings, transverse Bloch components, fidelities.

    Pulse-level values at epsilon != 0 are stored unclamped, so f_a and
    f_b may leave [1/2, 1]; they always satisfy the reconstruction
    identity F = (1 + cos(phi) x + sin(phi) y) / 2.
    """

    alpha: float
    phi: float
    source: str
    epsilon: float
    x_a: float
    y_a: float
    x_b: float
    y_b: float
    f_a: float
    f_b: float

    def __post_init__(self) -> None:
        if self.source not in ("ideal", "pulse"):
            raise ValueError(f'source must be "ideal" or "pulse", got {self.source!r}')
        numeric = (
            self.alpha, self.phi, self.epsilon,
            self.x_a, self.y_a, self.x_b, self.y_b, self.f_a, self.f_b,
        )
        if not all(np.isfinite(v) for v in numeric):
            raise ValueError("record fields must be finite")
        for label, f, x, y in (
            ("f_a", self.f_a, self.x_a, self.y_a),
            ("f_b", self.f_b, self.x_b, self.y_b),
        ):
            expect = _transverse_fidelity(self.phi, x, y)
            if abs(f - expect) > 1e-9:
                raise ValueError(
                    f"{label} = {f!r} is inconsistent with its Bloch components (expected {expect!r})"
                )


def sweep_ideal(config: SweepConfig) -> list[SweepRecord]:
    """Gate-level sweep: exact cloner output, exact partial-trace readout."""
    records = []
    for alpha in config.alpha_grid:
        for phi in config.phi_set:
            _, rho_a, rho_b = cloner.clone_state(cloner.CloneParams(alpha, phi))
            ba, bb = bloch_vector(rho_a), bloch_vector(rho_b)
            records.append(
                SweepRecord(
                    alpha=float(alpha),
                    phi=float(phi),
                    source="ideal",
                    epsilon=0.0,
                    x_a=ba.x, y_a=ba.y, x_b=bb.x, y_b=bb.y,
                    f_a=fidelity_from_bloch(phi, ba.x, ba.y),
                    f_b=fidelity_from_bloch(phi, bb.x, bb.y),
                )
            )
    return records


def state_prep_sequence(phi: float) -> pulsesim.PulseSequence:
    """One pi/2 pulse on qubit a about the axis at azimuth phi + pi/2.

    Takes |0> to the equatorial state at phase phi.
    """
    phi = float(phi)
    if not np.isfinite(phi):
        raise ValueError("phi must be finite")
    event = pulsesim.Pulse("a", (phi + np.pi / 2.0) % (2.0 * np.pi), np.pi / 2.0)
    return pulsesim.PulseSequence((event,), pulsesim.RotatingFrame(0.0, 0.0))


def sweep_pulse(config: SweepConfig) -> list[SweepRecord]:
    """Full pulse pipeline sweep.

    thermal state -> pseudopure preparation -> state preparation on a ->
    controlled loop train -> phase-swap train -> exact partial traces.
    Transverse readings are normalized by the deviation amplitude of the
    prepared pseudopure state (the population contrast), mirroring how
    spectra are referenced against the initial-state signal; at
    epsilon = 0 the records then match sweep_ideal to rounding.
    Every pulse angle in the pipeline, preparation included, is scaled
    by (1 + epsilon).
    """
    system = pulsesim.SpinSystem(config.j_coupling, config.thermal_ratio)
    prep = pulsesim.pseudopure_prep(system)
    swap_train = pulsesim.sequence_u2(system)
    thermal = pulsesim.thermal_state(system)
    eps = config.epsilon
    records = []
    for alpha in config.alpha_grid:
        loop_train = pulsesim.sequence_u1(system, alpha)
        for phi in config.phi_set:
            rho = pulsesim.run_sequence(system, prep, thermal, eps)
            contrast = pulsesim.pseudopure_contrast(rho)
            if abs(contrast) < 1e-12:
                raise ValueError("pseudopure contrast vanished; cannot normalize readout")
            for seq in (state_prep_sequence(phi), loop_train, swap_train):
                rho = pulsesim.run_sequence(system, seq, rho, eps)
            ba = bloch_vector(partial_trace(rho, "a"))
            bb = bloch_vector(partial_trace(rho, "b"))
            x_a, y_a = ba.x / contrast, ba.y / contrast
            x_b, y_b = bb.x / contrast, bb.y / contrast
            records.append(
                SweepRecord(
                    alpha=float(alpha),
                    phi=float(phi),
                    source="pulse",
                    epsilon=float(eps),
                    x_a=x_a, y_a=y_a, x_b=x_b, y_b=y_b,
                    f_a=float(_transverse_fidelity(phi, x_a, y_a)),
                    f_b=float(_transverse_fidelity(phi, x_b, y_b)),
                )
            )
    return records


@dataclass(frozen=True)
class TradeoffRow:
    record: SweepRecord
    residual: float
    outside_universal: bool
    frontier_touching: bool


@dataclass(frozen=True)
class TradeoffReport:
    rows: tuple[TradeoffRow, ...]
    max_abs_residual: float
    n_outside: int
    n_touching: int


def tradeoff_report(records: list[SweepRecord]) -> TradeoffReport:
    """Per-record circle residual plus flags against the universal frontier."""
    if not records:
        raise ValueError("tradeoff_report needs at least one record")
    rows = []
    for rec in records:
        residual = cloner.circle_residual(rec.f_a, rec.f_b)
        clamped = min(max(rec.f_a, 0.5), 1.0)
        partner = cloner.universal_partner_fidelity(clamped)
        outside = rec.f_b > partner + _FRONTIER_TOL
        touching = abs(rec.f_b - partner) <= _FRONTIER_TOL
        rows.append(TradeoffRow(rec, residual, outside, touching))
    return TradeoffReport(
        rows=tuple(rows),
        max_abs_residual=max(abs(r.residual) for r in rows),
        n_outside=sum(r.outside_universal for r in rows),
        n_touching=sum(r.frontier_touching for r in rows),
    )


def _format_value(value: float) -> str:
    return format(float(value), ".12g")


def _record_fields(rec: SweepRecord) -> list[str]:
    return [
        _format_value(rec.alpha),
        _format_value(rec.phi),
        rec.source,
        _format_value(rec.epsilon),
        _format_value(rec.x_a),
        _format_value(rec.y_a),
        _format_value(rec.x_b),
        _format_value(rec.y_b),
        _format_value(rec.f_a),
        _format_value(rec.f_b),
    ]


def _open_for(destination, mode: str):
    if hasattr(destination, "write") or hasattr(destination, "read"):
        return destination, False
    return open(os.fspath(destination), mode, encoding="utf-8", newline=""), True


def emit_csv(records: list[SweepRecord], destination) -> None:
    """Write records as CSV (12 significant digits) to a path or file object."""
    stream, should_close = _open_for(destination, "w")
    try:
        stream.write(CSV_HEADER + "\n")
        for rec in records:
            stream.write(",".join(_record_fields(rec)) + "\n")
    finally:
        if should_close:
            stream.close()


def read_csv(source) -> list[SweepRecord]:
    """Parse a sweep CSV back into records; the header must match exactly."""
    stream, should_close = _open_for(source, "r")
    try:
        lines = stream.read().splitlines()
    finally:
        if should_close:
            stream.close()
    if not lines:
        raise ValueError("empty CSV input")
    header = lines[0].strip()
    if header.split(",")[: len(CSV_FIELDS)] != list(CSV_FIELDS):
        raise ValueError(f"unexpected CSV header {header!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) < len(CSV_FIELDS):
            raise ValueError(f"line {lineno}: expected {len(CSV_FIELDS)} fields, got {len(parts)}")
        try:
            records.append(
                SweepRecord(
                    alpha=float(parts[0]),
                    phi=float(parts[1]),
                    source=parts[2],
                    epsilon=float(parts[3]),
                    x_a=float(parts[4]),
                    y_a=float(parts[5]),
                    x_b=float(parts[6]),
                    y_b=float(parts[7]),
                    f_a=float(parts[8]),
                    f_b=float(parts[9]),
                )
            )
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return records


def emit_tradeoff_csv(report: TradeoffReport, destination) -> None:
    """Write the input records with residual and frontier-flag columns appended."""
    stream, should_close = _open_for(destination, "w")
    try:
        stream.write(",".join(CSV_FIELDS + TRADEOFF_EXTRA_FIELDS) + "\n")
        for row in report.rows:
            fields = _record_fields(row.record) + [
                _format_value(row.residual),
                str(row.outside_universal).lower(),
                str(row.frontier_touching).lower(),
            ]
            stream.write(",".join(fields) + "\n")
    finally:
        if should_close:
            stream.close()


def _check_circuit_identity() -> tuple[bool, str]:
    rng = np.random.default_rng(20260822)
    alphas = np.concatenate([np.linspace(0.0, np.pi, 20), rng.uniform(0.0, np.pi, 100)])
    worst = max(
        float(np.max(np.abs(cloner.circuit_unitary(a) - cloner.cloning_unitary(a))))
        for a in alphas
    )
    return worst <= 1e-12, f"max entrywise gap {worst:.2e}"


def _check_loop_gate() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    worst = 0.0
    for alpha in np.linspace(0.0, np.pi, 20):
        params = geomgate.GeomGateParams(geomgate.loop_phase(alpha), np.pi / 2.0, np.pi / 2.0)
        gap = np.max(np.abs(geomgate.geometric_unitary(params) - geomgate.loop_rotation(alpha)))
        worst = max(worst, float(gap))
    for _ in range(50):
        params = geomgate.GeomGateParams(
            rng.uniform(-np.pi, np.pi), rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi)
        )
        u = geomgate.geometric_unitary(params)
        plus, minus = geomgate.cyclic_states(params.chi, params.azimuth)
        worst = max(worst, float(np.max(np.abs(u @ plus - np.exp(1j * params.gamma) * plus))))
        worst = max(worst, float(np.max(np.abs(u @ minus - np.exp(-1j * params.gamma) * minus))))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def _check_pulse_gate_equivalence() -> tuple[bool, str]:
    system = pulsesim.SpinSystem()
    worst = 0.0
    for alpha in np.linspace(0.0, np.pi, 20):
        u = pulsesim.sequence_propagator(system, pulsesim.sequence_u1(system, alpha))
        worst = max(worst, pulsesim.controlled_gate_distance(u, pulsesim.u1_target(alpha), "a"))
    u = pulsesim.sequence_propagator(system, pulsesim.sequence_u2(system))
    worst = max(worst, pulsesim.controlled_gate_distance(u, pulsesim.u2_target(), "b"))
    worst = max(worst, unitary_distance(u, pulsesim.u2_target()))
    return worst <= 1e-10, f"max blockwise distance {worst:.2e}"


def _check_pseudopure() -> tuple[bool, str]:
    system = pulsesim.SpinSystem()
    rho = pulsesim.run_sequence(system, pulsesim.pseudopure_prep(system), pulsesim.thermal_state(system))
    off_diag = float(np.max(np.abs(rho - np.diag(np.diag(rho)))))
    pops = np.real(np.diag(rho))
    spread = float(pops[1:].max() - pops[1:].min())
    ordered = bool(pops[0] > pops[1:].max() + 1e-6)
    ok = off_diag <= 1e-12 and spread <= 1e-9 and ordered
    return ok, f"off-diag {off_diag:.2e}, spread {spread:.2e}, |00> excess {pops[0] - pops[1]:.4f}"


def _check_pulse_pipeline() -> tuple[bool, str]:
    records = sweep_pulse(SweepConfig())
    worst = 0.0
    for rec in records:
        ideal = cloner.theoretical_fidelities(rec.alpha)
        worst = max(worst, abs(rec.f_a - ideal.f_a), abs(rec.f_b - ideal.f_b))
    return worst <= 1e-9, f"max fidelity gap {worst:.2e}"


def _check_tradeoff_and_covariance() -> tuple[bool, str]:
    records = sweep_ideal(SweepConfig())
    worst_residual = max(abs(cloner.circle_residual(r.f_a, r.f_b)) for r in records)
    phis = tuple(np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False))
    worst_spread = 0.0
    for alpha in (np.pi / 5.0, np.pi / 2.0, 2.5):
        recs = sweep_ideal(SweepConfig(alpha_grid=(alpha,), phi_set=phis))
        for pick in (lambda r: r.f_a, lambda r: r.f_b):
            vals = [pick(r) for r in recs]
            worst_spread = max(worst_spread, max(vals) - min(vals))
    ok = worst_residual <= 1e-12 and worst_spread <= 1e-12
    return ok, f"max residual {worst_residual:.2e}, max phase spread {worst_spread:.2e}"


def run_verification(stream=None) -> bool:
    """Run the invariant suite, print one line per check, return overall success."""
    stream = stream if stream is not None else io.StringIO()
    checks = (
        ("circuit-vs-matrix equivalence", _check_circuit_identity),
        ("geometric loop gate", _check_loop_gate),
        ("pulse-vs-gate equivalence", _check_pulse_gate_equivalence),
        ("pseudopure preparation", _check_pseudopure),
        ("pulse pipeline fidelities", _check_pulse_pipeline),
        ("trade-off circle and phase covariance", _check_tradeoff_and_covariance),
    )
    all_ok = True
    for name, check in checks:
        ok, detail = check()
        all_ok = all_ok and ok
        stream.write(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}\n")
    return all_ok
