"""Gate-level asymmetric cloning machine for equatorial qubit states.

The machine copies an input (|0> + e^{i phi} |1>)/sqrt(2) held on qubit
a onto a blank qubit b.  A single knob alpha in [0, pi] tunes how the
phase information is split between the outputs; the closed-form overlap
fidelities of the two reduced states with the input are

    F_a = (1 + cos(alpha/2)) / 2,      F_b = (1 + sin(alpha/2)) / 2,

independent of phi.  As alpha runs from 0 to pi the pair traces the
quarter circle (F_a - 1/2)^2 + (F_b - 1/2)^2 = 1/4 from (1, 1/2) to
(1/2, 1), with the symmetric point 1/2 + sqrt(2)/4 at alpha = pi/2.

The map is realized in two independent ways, as an explicit 4x4 unitary
(cloning_unitary) and as a two-gate circuit (circuit_unitary); the test
suite cross-checks them entrywise.  For comparison, the best cloner that
treats every input state equally well is strictly worse on equatorial
inputs; universal_bound_curve exposes that frontier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import (
    basis_ket,
    density,
    ket,
    partial_trace,
    pure_density,
    spin_rotation,
    tensor,
    unitary,
)

TWO_PI = 2.0 * np.pi
_ALPHA_SLACK = 1e-12


def _checked_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < -_ALPHA_SLACK or alpha > np.pi + _ALPHA_SLACK:
        raise ValueError(f"alpha must lie in [0, pi], got {alpha!r}")
    return min(max(alpha, 0.0), np.pi)


@dataclass(frozen=True)
class CloneParams:
    """Asymmetry angle alpha in [0, pi] and input phase phi (stored mod 2 pi)."""

    alpha: float
    phi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _checked_alpha(self.alpha))
        phi = float(self.phi)
        if not np.isfinite(phi):
            raise ValueError("phi must be finite")
        object.__setattr__(self, "phi", phi % TWO_PI)


@dataclass(frozen=True)
class FidelityPair:
    """Fidelities (F_a, F_b) of the ideal machine; both lie in [1/2, 1]."""

    f_a: float
    f_b: float

    def __post_init__(self) -> None:
        for name, value in (("f_a", self.f_a), ("f_b", self.f_b)):
            if not np.isfinite(value) or value < 0.5 - 1e-12 or value > 1.0 + 1e-12:
                raise ValueError(f"{name} must lie in [0.5, 1], got {value!r}")


def equatorial_state(phi: float) -> np.ndarray:
    """The input state (|0> + e^{i phi} |1>)/sqrt(2)."""
    phi = float(phi)
    if not np.isfinite(phi):
        raise ValueError("phi must be finite")
    return ket(np.array([1.0, np.exp(1j * phi)]) / np.sqrt(2.0))


def ry(theta: float) -> np.ndarray:
    """Rotation exp(-i theta sigma_y / 2)."""
    return spin_rotation(theta, (0.0, 1.0, 0.0))


def controlled(gate: np.ndarray, control: str) -> np.ndarray:
    """Two-qubit gate applying `gate` to the other qubit when `control` is |1>."""
    gate = unitary(gate)
    if gate.shape != (2, 2):
        raise ValueError("controlled() embeds a single-qubit gate")
    if control not in ("a", "b"):
        raise ValueError('control must be "a" or "b"')
    u = np.eye(4, dtype=complex)
    # Basis order |00>, |01>, |10>, |11>: control "a" selects rows 2,3;
    # control "b" selects rows 1,3 (the target amplitudes being qubit a's).
    active = (2, 3) if control == "a" else (1, 3)
    u[np.ix_(active, active)] = gate
    return unitary(u)


def cloning_unitary(alpha: float) -> np.ndarray:
    """The 4x4 cloning transformation at asymmetry angle alpha.

    Column action on the computational basis:
        |00> -> |00>
        |01> -> -|11>
        |10> -> cos(alpha/2) |10> + sin(alpha/2) |01>
        |11> -> cos(alpha/2) |01> - sin(alpha/2) |10>
    """
    alpha = _checked_alpha(alpha)
    c = np.cos(alpha / 2.0)
    s = np.sin(alpha / 2.0)
    u = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, s, c],
            [0.0, 0.0, c, -s],
            [0.0, -1.0, 0.0, 0.0],
        ],
        dtype=complex,
    )
    return unitary(u)


def circuit_unitary(alpha: float) -> np.ndarray:
    """The same transformation composed from two controlled rotations.

    First a y-rotation by alpha on qubit b controlled by qubit a, then a
    y-rotation by -pi on qubit a controlled by qubit b.  Equals
    cloning_unitary(alpha) entrywise, with no leftover global phase.
    """
    alpha = _checked_alpha(alpha)
    copy_gate = controlled(ry(alpha), control="a")
    swap_phase_gate = controlled(ry(-np.pi), control="b")
    return unitary(swap_phase_gate @ copy_gate)


def clone_state(params: CloneParams):
    """Run the machine; returns (rho_ab, rho_a, rho_b)."""
    if not isinstance(params, CloneParams):
        raise ValueError("clone_state expects CloneParams")
    psi_in = tensor(equatorial_state(params.phi), basis_ket(2, 0))
    u = cloning_unitary(params.alpha)
    rho_ab = u @ pure_density(psi_in) @ u.conj().T
    rho_ab = density(0.5 * (rho_ab + rho_ab.conj().T))
    return rho_ab, partial_trace(rho_ab, "a"), partial_trace(rho_ab, "b")


def theoretical_fidelities(alpha: float) -> FidelityPair:
    """Closed-form (F_a, F_b) at asymmetry angle alpha."""
    alpha = _checked_alpha(alpha)
    return FidelityPair(
        f_a=0.5 * (1.0 + np.cos(alpha / 2.0)),
        f_b=0.5 * (1.0 + np.sin(alpha / 2.0)),
    )


def circle_residual(f_a: float, f_b: float) -> float:
    """Signed distance-squared defect from the trade-off circle."""
    return (float(f_a) - 0.5) ** 2 + (float(f_b) - 0.5) ** 2 - 0.25


def tradeoff_residual(pair: FidelityPair) -> float:
    """(F_a - 1/2)^2 + (F_b - 1/2)^2 - 1/4; zero on the ideal curve."""
    if not isinstance(pair, FidelityPair):
        raise ValueError("tradeoff_residual expects a FidelityPair")
    return circle_residual(pair.f_a, pair.f_b)


def universal_bound_curve(n_points: int) -> list[FidelityPair]:
    """Optimal frontier of state-independent (universal) asymmetric cloning.

    Parametrized by a in [0, 1] with b >= 0 solving a^2 + b^2 + a*b = 1:

        F_a = 1 - b^2 / 2,      F_b = 1 - a^2 / 2.

    The symmetric point a = b = 1/sqrt(3) gives F_a = F_b = 5/6, strictly
    below what the equatorial machine reaches.
    """
    n_points = int(n_points)
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    a_vals = np.linspace(0.0, 1.0, n_points)
    b_vals = 0.5 * (-a_vals + np.sqrt(4.0 - 3.0 * a_vals**2))
    return [
        FidelityPair(f_a=1.0 - b * b / 2.0, f_b=1.0 - a * a / 2.0)
        for a, b in zip(a_vals, b_vals)
    ]


def universal_partner_fidelity(f_a: float) -> float:
    """F_b on the universal frontier at a given F_a in [1/2, 1]."""
    f_a = float(f_a)
    if not np.isfinite(f_a) or f_a < 0.5 - 1e-9 or f_a > 1.0 + 1e-9:
        raise ValueError(f"f_a must lie in [0.5, 1], got {f_a!r}")
    f_a = min(max(f_a, 0.5), 1.0)
    b_sq = 2.0 * (1.0 - f_a)
    b = np.sqrt(b_sq)
    a = 0.5 * (-b + np.sqrt(4.0 - 3.0 * b_sq))
    return float(1.0 - a * a / 2.0)
