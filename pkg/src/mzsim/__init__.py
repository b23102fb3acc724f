"""Two-qubit density-matrix simulation of Mach-Zehnder interferometry:
open, closed, random delayed-choice and quantum delayed-choice setups, in
ideal-gate and NMR pulse-sequence modes."""

__version__ = "0.1.0"

from .experiments import (
    ExperimentConfig,
    SweepPoint,
    SweepResult,
    UndefinedVisibilityError,
    default_alphas,
    default_phis,
    run_closed,
    run_open,
    run_quantum_delayed,
    run_wheeler,
    sweep,
    theory_s0,
    variant_theory,
    visibility,
)
from .gates import (
    canonical_global_phase,
    controlled_hadamard,
    hadamard,
    on_ancilla,
    on_target,
    phase_gate,
    rf_pulse,
    y_rotation,
)
from .linalg import (
    DensityOperator,
    GateMatrix,
    ValidityReport,
    apply_unitary,
    basis_ket,
    expectation,
    partial_trace_ancilla,
    pure_density,
    tensor,
    tensor_density,
    validate_density,
)
from .nmr import (
    DiagonalCoefficients,
    PulseEvent,
    ReadoutInconsistencyError,
    SpectrumLines,
    SpinSystem,
    UnrealizablePhaseError,
    depolarize,
    echo_phase_shift,
    extract_diag_coeffs,
    free_evolution,
    free_evolution_propagator,
    pfg_dephase,
    phase_echo_events,
    polarization,
    pseudopure_state,
    read_spectrum,
    rebuild_diagonal,
    reconstruct_population,
    run_sequence,
    thermal_state,
)

__all__ = [
    "__version__",
    "DensityOperator",
    "GateMatrix",
    "ValidityReport",
    "apply_unitary",
    "basis_ket",
    "expectation",
    "partial_trace_ancilla",
    "pure_density",
    "tensor",
    "tensor_density",
    "validate_density",
    "canonical_global_phase",
    "controlled_hadamard",
    "hadamard",
    "on_ancilla",
    "on_target",
    "phase_gate",
    "rf_pulse",
    "y_rotation",
    "DiagonalCoefficients",
    "PulseEvent",
    "ReadoutInconsistencyError",
    "SpectrumLines",
    "SpinSystem",
    "UnrealizablePhaseError",
    "depolarize",
    "echo_phase_shift",
    "extract_diag_coeffs",
    "free_evolution",
    "free_evolution_propagator",
    "pfg_dephase",
    "phase_echo_events",
    "polarization",
    "pseudopure_state",
    "read_spectrum",
    "rebuild_diagonal",
    "reconstruct_population",
    "run_sequence",
    "thermal_state",
    "ExperimentConfig",
    "SweepPoint",
    "SweepResult",
    "UndefinedVisibilityError",
    "default_alphas",
    "default_phis",
    "run_closed",
    "run_open",
    "run_quantum_delayed",
    "run_wheeler",
    "sweep",
    "theory_s0",
    "variant_theory",
    "visibility",
]
