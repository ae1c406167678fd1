"""Correlation dynamics of a qubit pair coupled to a random classical field.

The library builds the evolved tripartite state of two qubits plus a
two-valued field-phase register, evaluates entanglement and information
measures on it, and detects dynamical events such as entanglement dark
periods and the freezing of tripartite correlations.
"""

from .densemat import (
    ComplexMatrix,
    DensityMatrix,
    SubsystemLayout,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    trace_distance,
)
from .dynamics import (
    GaussianRabi,
    InitialStateParams,
    PhaseConvention,
    SimConfig,
    build_environment_state,
    build_tripartite_state,
    damped_trig_moment,
    evolve_two_qubit_fixed_omega,
    evolve_two_qubit_gaussian,
    initial_two_qubit_state,
    qubit_unitary,
)
from .measures import (
    BipartitionCut,
    MonogamyLedger,
    concurrence,
    genuine_tripartite_tau,
    local_information,
    monogamy_ledger,
    mutual_information,
    pair_mutual_information,
    state_information,
    von_neumann_entropy,
)
from .sweep import (
    CorrelationRecord,
    EventReport,
    FluxSample,
    detect_dark_periods,
    detect_events,
    detect_freezing,
    evaluate_at,
    flux_derivatives,
    run_time_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexMatrix", "DensityMatrix", "SubsystemLayout",
    "hermitian_eigensystem", "hermitian_eigenvalues", "kron", "partial_trace",
    "trace_distance",
    "GaussianRabi", "InitialStateParams", "PhaseConvention", "SimConfig",
    "build_environment_state", "build_tripartite_state", "damped_trig_moment",
    "evolve_two_qubit_fixed_omega", "evolve_two_qubit_gaussian",
    "initial_two_qubit_state", "qubit_unitary",
    "BipartitionCut", "MonogamyLedger", "concurrence", "genuine_tripartite_tau",
    "local_information", "monogamy_ledger", "mutual_information",
    "pair_mutual_information", "state_information", "von_neumann_entropy",
    "CorrelationRecord", "EventReport", "FluxSample", "detect_dark_periods",
    "detect_events", "detect_freezing", "evaluate_at", "flux_derivatives",
    "run_time_sweep",
    "__version__",
]
