"""Single-qubit gates generated by cyclic evolutions on the Bloch sphere.

A cyclic evolution maps some orthogonal pair |psi+>, |psi-> onto itself
up to opposite phases e^{+i gamma}, e^{-i gamma}.  Locating the pair by
polar angle chi and azimuth on the Bloch sphere, the propagator is fully
determined by (gamma, chi, azimuth); geometric_unitary builds it in the
computational basis.

The loop used by the pulse-level machine drives the equatorial pair
(|0> +/- i |1>)/sqrt(2), i.e. chi = azimuth = pi/2, around a geodesic
triangle through the north pole whose solid angle equals alpha.  The
acquired phase therefore has magnitude alpha/2, and the net propagator
is the planar rotation loop_rotation(alpha).  Traversing the same loop
in the opposite orientation negates gamma and transposes the rotation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import ket, unitary

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class GeomGateParams:
    """Cyclic phase gamma plus Bloch coordinates (chi, azimuth) of the cyclic pair."""

    gamma: float
    chi: float
    azimuth: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.gamma):
            raise ValueError("gamma must be finite")
        if not np.isfinite(self.chi) or self.chi < 0.0 or self.chi > np.pi:
            raise ValueError(f"chi must lie in [0, pi], got {self.chi!r}")
        if not np.isfinite(self.azimuth):
            raise ValueError("azimuth must be finite")
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "chi", float(self.chi))
        object.__setattr__(self, "azimuth", float(self.azimuth) % TWO_PI)


def cyclic_states(chi: float, azimuth: float):
    """The orthogonal pair fixed (up to phase) by the gate.

    |psi+> = cos(chi/2) |0> + e^{i azimuth} sin(chi/2) |1>
    |psi-> = sin(chi/2) |0> - e^{i azimuth} cos(chi/2) |1>
    """
    params = GeomGateParams(0.0, chi, azimuth)  # reuse the range validation
    half = params.chi / 2.0
    phase = np.exp(1j * params.azimuth)
    plus = ket(np.array([np.cos(half), phase * np.sin(half)]))
    minus = ket(np.array([np.sin(half), -phase * np.cos(half)]))
    return plus, minus


def geometric_unitary(params: GeomGateParams) -> np.ndarray:
    """Propagator with eigenpair cyclic_states(chi, azimuth) and phases e^{+/- i gamma}."""
    if not isinstance(params, GeomGateParams):
        raise ValueError("geometric_unitary expects GeomGateParams")
    g, chi, az = params.gamma, params.chi, params.azimuth
    cos2 = np.cos(chi / 2.0) ** 2
    sin2 = np.sin(chi / 2.0) ** 2
    eg = np.exp(1j * g)
    cross = 1j * np.sin(g) * np.sin(chi)
    u = np.array(
        [
            [eg * cos2 + np.conj(eg) * sin2, cross * np.exp(-1j * az)],
            [cross * np.exp(1j * az), eg * sin2 + np.conj(eg) * cos2],
        ]
    )
    return unitary(u)


def loop_phase(alpha: float) -> float:
    """Cyclic phase acquired on the equatorial loop of solid angle alpha.

    Magnitude alpha/2; the sign matches the traversal orientation for
    which geometric_unitary(loop_phase(alpha), pi/2, pi/2) equals
    loop_rotation(alpha).
    """
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < -1e-12 or alpha > np.pi + 1e-12:
        raise ValueError(f"alpha must lie in [0, pi], got {alpha!r}")
    return min(max(alpha, 0.0), np.pi) / 2.0


def loop_rotation(alpha: float) -> np.ndarray:
    """Net propagator of the equatorial loop: a planar rotation by alpha.

    [[ cos(alpha/2), sin(alpha/2)],
     [-sin(alpha/2), cos(alpha/2)]]

    equal to exp(+i alpha sigma_y / 2); it sends |0> to
    cos(alpha/2) |0> - sin(alpha/2) |1>.
    """
    half = loop_phase(alpha)
    c, s = np.cos(half), np.sin(half)
    return unitary(np.array([[c, s], [-s, c]], dtype=complex))
