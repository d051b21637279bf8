"""Pendular-state polar-molecule qubits under Milburn intrinsic decoherence."""

from .entanglement import Bipartition, negativity, partial_transpose, tripartite_negativity
from .errors import ConfigError, ConvergenceError
from .manybody import ChainGeometry, SystemHamiltonian, build_hamiltonian
from .milburn import MilburnPropagator, dephased_limit, evolve, evolve_series, master_equation_rhs
from .pendular import PendularQubit, converge_jmax, perturbative_qubit, solve_qubit
from .scan import InitialStateSpec, ScanConfig, ScanRecord, initial_state, long_time_value, run_scan, write_csv
from .teleport import bell_probabilities, channel_output, teleport_fidelity, uhlmann_fidelity

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "ChainGeometry",
    "ConfigError",
    "ConvergenceError",
    "InitialStateSpec",
    "MilburnPropagator",
    "PendularQubit",
    "ScanConfig",
    "ScanRecord",
    "SystemHamiltonian",
    "bell_probabilities",
    "build_hamiltonian",
    "channel_output",
    "converge_jmax",
    "dephased_limit",
    "evolve",
    "evolve_series",
    "initial_state",
    "long_time_value",
    "master_equation_rhs",
    "negativity",
    "partial_transpose",
    "perturbative_qubit",
    "run_scan",
    "solve_qubit",
    "teleport_fidelity",
    "tripartite_negativity",
    "uhlmann_fidelity",
    "write_csv",
]
