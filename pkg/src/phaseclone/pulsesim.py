"""Two-spin NMR pulse-level simulator.

The spin pair interacts through a scalar coupling 2 pi J Iz_a Iz_b.
Everything is simulated in per-qubit rotating frames, so the Larmor
frequencies never enter: free evolution is a diagonal propagator fixed
by the frame offsets (Hz above each qubit's resonance) and J.  Pulses
are ideal instantaneous rotations about axes in the transverse plane,
perfectly selective on one qubit.  A pulsed-field-gradient "crush" is
modeled as erasure of every off-diagonal density-matrix element.  The
single error knob epsilon scales every nominal pulse angle by
(1 + epsilon), a systematically miscalibrated transmitter.

Offsetting the frame of the pulsed qubit by J/2 makes free evolution the
identity when the partner spin is |0> and a pure z-rotation when it is
|1>.  Sandwiching such conditional z-rotations between hard pulses turns
them into conditional rotations about any axis; the named sequences
below use this to realize the two controlled gates of the cloning
circuit, plus a spatial-averaging preparation that turns the thermal
deviation into a |00> population excess (a pseudopure state).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloner import controlled, ry
from .qlinalg import density, spin_rotation, unitary

DEFAULT_J_COUPLING = 214.5  # Hz, a typical one-bond CH coupling

# Equilibrium polarization of qubit b relative to qubit a for which
# pseudopure_prep leaves the three non-|00> deviation populations exactly
# equal (see calibrate_thermal_ratio).  Matches a carbon-observe /
# proton-partner pair: gamma_H / gamma_C ~ 3.98.
CALIBRATED_THERMAL_RATIO = 4.0

# Iz eigenvalues per basis state |ab>: bit 0 -> +1/2, bit 1 -> -1/2.
_M_A = np.array([0.5, 0.5, -0.5, -0.5])
_M_B = np.array([0.5, -0.5, 0.5, -0.5])

_AXIS_AZIMUTH = {"x": 0.0, "y": np.pi / 2.0, "-x": np.pi, "-y": 3.0 * np.pi / 2.0}


@dataclass(frozen=True)
class SpinSystem:
    """Coupling constant (Hz) and relative thermal polarization of qubit b."""

    j_coupling: float = DEFAULT_J_COUPLING
    thermal_ratio: float = CALIBRATED_THERMAL_RATIO

    def __post_init__(self) -> None:
        if not np.isfinite(self.j_coupling) or self.j_coupling <= 0.0:
            raise ValueError(f"j_coupling must be positive, got {self.j_coupling!r}")
        if not np.isfinite(self.thermal_ratio) or self.thermal_ratio <= 0.0:
            raise ValueError(f"thermal_ratio must be positive, got {self.thermal_ratio!r}")


@dataclass(frozen=True)
class RotatingFrame:
    """Frame frequencies minus the qubit resonances, in Hz."""

    offset_a: float
    offset_b: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.offset_a) and np.isfinite(self.offset_b)):
            raise ValueError("frame offsets must be finite")


@dataclass(frozen=True)
class Pulse:
    """Instantaneous rotation of one qubit about a transverse axis.

    axis is one of "x", "y", "-x", "-y" or a numeric azimuth in radians.
    """

    qubit: str
    axis: str | float
    angle: float

    def __post_init__(self) -> None:
        if self.qubit not in ("a", "b"):
            raise ValueError('pulse qubit must be "a" or "b"')
        _axis_azimuth(self.axis)  # raises on a bad axis
        if not np.isfinite(self.angle):
            raise ValueError("pulse angle must be finite")


@dataclass(frozen=True)
class Delay:
    """Free evolution for a duration in seconds."""

    duration: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.duration) or self.duration < 0.0:
            raise ValueError(f"delay duration must be >= 0, got {self.duration!r}")


@dataclass(frozen=True)
class Gradient:
    """Pulsed-field-gradient crush: wipes all coherences."""


Event = Pulse | Delay | Gradient


@dataclass(frozen=True)
class PulseSequence:
    events: tuple[Event, ...]
    frame: RotatingFrame

    def __post_init__(self) -> None:
        if not all(isinstance(e, (Pulse, Delay, Gradient)) for e in self.events):
            raise ValueError("events must be Pulse, Delay, or Gradient instances")


def _axis_azimuth(axis: str | float) -> float:
    if isinstance(axis, str):
        try:
            return _AXIS_AZIMUTH[axis]
        except KeyError:
            raise ValueError(f'axis must be one of {sorted(_AXIS_AZIMUTH)} or a number, got {axis!r}') from None
    az = float(axis)
    if not np.isfinite(az):
        raise ValueError("axis azimuth must be finite")
    return az % (2.0 * np.pi)


def pulse_propagator(qubit: str, axis: str | float, angle: float) -> np.ndarray:
    """4x4 propagator of a hard pulse on one qubit."""
    if qubit not in ("a", "b"):
        raise ValueError('pulse qubit must be "a" or "b"')
    az = _axis_azimuth(axis)
    gate = spin_rotation(angle, (np.cos(az), np.sin(az), 0.0))
    eye = np.eye(2, dtype=complex)
    full = np.kron(gate, eye) if qubit == "a" else np.kron(eye, gate)
    return unitary(full)


def free_propagator(system: SpinSystem, frame: RotatingFrame, duration: float) -> np.ndarray:
    """Diagonal propagator for free evolution of the coupled pair.

    The frame Hamiltonian is
        -2 pi offset_a Iz_a - 2 pi offset_b Iz_b + 2 pi J Iz_a Iz_b,
    so the propagator is a closed-form phase per basis state.  With frame
    offsets (0, J/2) the |0?> block is the identity for every duration
    and the |1?> block is a z-rotation of qubit b by -2 pi J t.
    """
    duration = float(duration)
    if not np.isfinite(duration) or duration < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration!r}")
    energies = (
        -2.0 * np.pi * frame.offset_a * _M_A
        - 2.0 * np.pi * frame.offset_b * _M_B
        + 2.0 * np.pi * system.j_coupling * _M_A * _M_B
    )
    return unitary(np.diag(np.exp(-1j * energies * duration)))


def gradient_crush(rho: np.ndarray) -> np.ndarray:
    """Project onto populations: zero every off-diagonal element.  Idempotent."""
    rho = density(rho)
    return density(np.diag(np.real(np.diag(rho))).astype(complex))


def run_sequence(
    system: SpinSystem,
    sequence: PulseSequence,
    rho0: np.ndarray,
    error: float = 0.0,
) -> np.ndarray:
    """Apply a sequence to a density matrix, scaling pulse angles by (1 + error)."""
    error = float(error)
    if not np.isfinite(error) or not -1.0 < error < 1.0:
        raise ValueError(f"error must lie in (-1, 1), got {error!r}")
    rho = np.array(density(rho0))
    for event in sequence.events:
        if isinstance(event, Pulse):
            u = pulse_propagator(event.qubit, event.axis, event.angle * (1.0 + error))
            rho = u @ rho @ u.conj().T
        elif isinstance(event, Delay):
            u = free_propagator(system, sequence.frame, event.duration)
            rho = u @ rho @ u.conj().T
        else:
            rho = np.array(gradient_crush(rho))
    return density(0.5 * (rho + rho.conj().T))


def sequence_propagator(system: SpinSystem, sequence: PulseSequence, error: float = 0.0) -> np.ndarray:
    """Total unitary of a gradient-free sequence (pulse angles scaled by 1 + error)."""
    error = float(error)
    if not np.isfinite(error) or not -1.0 < error < 1.0:
        raise ValueError(f"error must lie in (-1, 1), got {error!r}")
    total = np.eye(4, dtype=complex)
    for event in sequence.events:
        if isinstance(event, Pulse):
            u = pulse_propagator(event.qubit, event.axis, event.angle * (1.0 + error))
        elif isinstance(event, Delay):
            u = free_propagator(system, sequence.frame, event.duration)
        else:
            raise ValueError("a gradient crush has no propagator")
        total = u @ total
    return unitary(total)


def sequence_u1(system: SpinSystem, alpha: float) -> PulseSequence:
    """Pulse train for the controlled loop gate at asymmetry angle alpha.

    Nine events on qubit b (six pulses, three delays) in the frame with
    qubit b offset by J/2.  The first pulse/delay/pulse block converts
    the conditional z-rotation into a conditional pi/2 x-rotation; the
    x-sandwiched alpha delay produces the conditional y-rotation; the
    final block closes the loop.  Total propagator at error = 0: exactly
    the identity on the |0?> block and a y-rotation by alpha on the
    |1?> block, i.e. controlled(ry(alpha), "a") with no stray phase.
    That conditional rotation is the equatorial loop of geomgate
    traversed in the orientation giving cyclic phase -alpha/2.
    """
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < -1e-12 or alpha > np.pi + 1e-12:
        raise ValueError(f"alpha must lie in [0, pi], got {alpha!r}")
    alpha = min(max(alpha, 0.0), np.pi)
    j = system.j_coupling
    events = (
        Pulse("b", "y", np.pi / 2.0),
        Delay(1.0 / (4.0 * j)),
        Pulse("b", "y", -np.pi / 2.0),
        Pulse("b", "x", -np.pi / 2.0),
        Delay(alpha / (2.0 * np.pi * j)),
        Pulse("b", "x", np.pi / 2.0),
        Pulse("b", "y", -alpha - np.pi / 2.0),
        Delay(1.0 / (4.0 * j)),
        Pulse("b", "y", alpha + np.pi / 2.0),
    )
    return PulseSequence(events, RotatingFrame(0.0, j / 2.0))


def sequence_u2(system: SpinSystem) -> PulseSequence:
    """Pulse train for the phase-swap gate: ry(-pi) on qubit a controlled by b.

    Nine events on qubit a (six pulses, three delays) in the frame with
    qubit a offset by J/2.  Total propagator at error = 0: identity on
    the |?0> block, [[0, 1], [-1, 0]] on the |?1> block, i.e. exactly
    controlled(ry(-pi), "b"): it sends |01> to -|11> and |11> to |01>.
    """
    j = system.j_coupling
    events = (
        Pulse("a", "y", np.pi / 2.0),
        Delay(1.0 / (4.0 * j)),
        Pulse("a", "y", -np.pi / 2.0),
        Pulse("a", "x", np.pi / 2.0),
        Delay(1.0 / (2.0 * j)),
        Pulse("a", "x", -np.pi / 2.0),
        Pulse("a", "y", np.pi / 2.0),
        Delay(1.0 / (4.0 * j)),
        Pulse("a", "y", -np.pi / 2.0),
    )
    return PulseSequence(events, RotatingFrame(j / 2.0, 0.0))


def pseudopure_prep(system: SpinSystem) -> PulseSequence:
    """Spatial-averaging preparation of the pseudopure |00> state.

    Six events, all pulses on qubit b, run in the doubly on-resonance
    frame (pure coupling evolution during the delay): a pi/3 pulse and
    crush halve the b polarization, then a pi/4 pulse, a 1/(2J) delay,
    and a closing pi/4 pulse convert half of what remains into two-spin
    order before the final crush.  The closing y pulse must counter-
    rotate relative to the preceding x pulse; with the rotation
    convention used here its angle is -pi/4.  For
    thermal_ratio = CALIBRATED_THERMAL_RATIO the surviving deviation is
    proportional to diag(3, -1, -1, -1), a |00> population excess over a
    uniform background.
    """
    j = system.j_coupling
    events = (
        Pulse("b", "x", np.pi / 3.0),
        Gradient(),
        Pulse("b", "x", np.pi / 4.0),
        Delay(1.0 / (2.0 * j)),
        Pulse("b", "y", -np.pi / 4.0),
        Gradient(),
    )
    return PulseSequence(events, RotatingFrame(0.0, 0.0))


def thermal_state(system: SpinSystem, kappa: float | None = None) -> np.ndarray:
    """High-temperature equilibrium state I/4 + kappa (Iz_a + ratio * Iz_b).

    kappa defaults to 0.1 / (1 + thermal_ratio), small enough that the
    state stays positive semidefinite.
    """
    r = system.thermal_ratio
    if kappa is None:
        kappa = 0.1 / (1.0 + r)
    kappa = float(kappa)
    if not np.isfinite(kappa) or kappa <= 0.0:
        raise ValueError(f"kappa must be positive, got {kappa!r}")
    populations = 0.25 + kappa * (_M_A + r * _M_B)
    if populations.min() < 0.0:
        raise ValueError(f"kappa = {kappa!r} makes the thermal state indefinite")
    return density(np.diag(populations).astype(complex))


def pseudopure_contrast(rho: np.ndarray) -> float:
    """|00> population minus the mean of the other three.

    For a state (1 - p) I/4 + p |00><00| this recovers p exactly; it is
    the deviation amplitude against which transverse readings are
    normalized.
    """
    pops = np.real(np.diag(density(rho)))
    if pops.shape[0] != 4:
        raise ValueError("pseudopure_contrast expects a two-qubit state")
    return float(pops[0] - (pops[1] + pops[2] + pops[3]) / 3.0)


def calibrate_thermal_ratio(
    j_coupling: float = DEFAULT_J_COUPLING,
    lo: float = 0.5,
    hi: float = 16.0,
    tol: float = 1e-12,
) -> float:
    """Search for the thermal_ratio at which pseudopure_prep succeeds.

    Runs the preparation on the thermal state and bisects on the gap
    between the |01> population and the mean of the |10>, |11>
    populations; the gap is monotone in the ratio and crosses zero at
    exactly one point, where all three non-|00> populations coincide.
    """

    def population_gap(ratio: float) -> float:
        system = SpinSystem(j_coupling=j_coupling, thermal_ratio=ratio)
        rho = run_sequence(system, pseudopure_prep(system), thermal_state(system))
        pops = np.real(np.diag(rho))
        return float(pops[1] - 0.5 * (pops[2] + pops[3]))

    f_lo, f_hi = population_gap(lo), population_gap(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = population_gap(mid)
        if f_mid == 0.0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def u1_target(alpha: float) -> np.ndarray:
    """Gate-level target of sequence_u1: controlled(ry(alpha), "a")."""
    return controlled(ry(alpha), control="a")


def u2_target() -> np.ndarray:
    """Gate-level target of sequence_u2: controlled(ry(-pi), "b")."""
    return controlled(ry(-np.pi), control="b")


def controlled_gate_distance(u: np.ndarray, target: np.ndarray, control: str) -> float:
    """Blockwise distance of a propagator from a controlled gate.

    Compares the two control blocks separately, each insensitive to its
    own phase, and folds in any leakage between the blocks.  Zero iff u
    equals the target up to one phase per control subspace.
    """
    u = unitary(u)
    target = unitary(target)
    if u.shape != (4, 4) or target.shape != (4, 4):
        raise ValueError("controlled_gate_distance expects 4x4 unitaries")
    if control not in ("a", "b"):
        raise ValueError('control must be "a" or "b"')
    idle = (0, 1) if control == "a" else (0, 2)
    active = (2, 3) if control == "a" else (1, 3)
    worst = 0.0
    for block in (idle, active):
        sub = u[np.ix_(block, block)]
        ref = target[np.ix_(block, block)]
        worst = max(worst, 1.0 - abs(np.trace(sub.conj().T @ ref)) / 2.0)
    leak = max(
        np.max(np.abs(u[np.ix_(idle, active)])),
        np.max(np.abs(u[np.ix_(active, idle)])),
    )
    return float(max(worst, leak))
