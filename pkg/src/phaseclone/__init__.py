"""Two-qubit simulator of optimal asymmetric phase-covariant cloning.

Modules:
    qlinalg   validated dense linear algebra for 1-2 qubits
    cloner    gate-level cloning machine and its closed-form fidelities
    geomgate  gates from cyclic Bloch-sphere evolutions
    pulsesim  NMR pulse-train realization of the machine
    harness   sweeps, trade-off reports, CSV I/O, self checks
    plots     report figures (imported on demand; pulls in matplotlib)
    cli       command-line entry point
"""

from . import cloner, geomgate, harness, pulsesim, qlinalg

__all__ = ["cloner", "geomgate", "harness", "pulsesim", "qlinalg"]
__version__ = "0.1.0"
