"""NMR physics layer: thermal and pseudopure states, free evolution under
resonance offsets and J coupling, gradient dephasing, depolarizing noise,
and the diagonal-readout chain (spectral line amplitudes to populations).

The free-evolution Hamiltonian is diagonal in the computational basis, so
every propagator here is written in closed form; nothing is exponentiated
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import rf_pulse
from .linalg import SIGMA_Z, DensityOperator, GateMatrix, apply_unitary

#: diagonal of sigma_z (x) I and I (x) sigma_z in the |target, ancilla> basis
_ZT = np.array([1.0, 1.0, -1.0, -1.0])
_ZA = np.array([1.0, -1.0, 1.0, -1.0])

_DIAGONAL_TOL = 1e-12
_POPULATION_TOL = 1e-10


class ReadoutInconsistencyError(ValueError):
    """The two spectra disagree on the shared coefficient; the readout chain is broken."""


class UnrealizablePhaseError(ValueError):
    """A phase shift was requested from a spin with no resonance offset."""


@dataclass(frozen=True)
class SpinSystem:
    """Two-spin configuration: rotating-frame offsets and J coupling in Hz,
    thermal polarization ``epsilon`` and residual pseudopure purity
    ``epsilon_prime`` (both dimensionless)."""

    offset_target: float = 100.0
    offset_ancilla: float = 0.0
    j_coupling: float = 209.0
    epsilon: float = 1e-5
    epsilon_prime: float = 1.0

    def __post_init__(self) -> None:
        if not self.j_coupling > 0:
            raise ValueError(f"j_coupling must be positive, got {self.j_coupling}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0.0 < self.epsilon_prime <= 1.0:
            raise ValueError(f"epsilon_prime must lie in (0, 1], got {self.epsilon_prime}")


@dataclass(frozen=True)
class PulseEvent:
    """One timeline element of a pulse sequence: an rf pulse, a free-evolution
    delay, or a field-gradient coherence wipe."""

    kind: str
    angle: float = 0.0
    axis: str = "x"
    qubit: str = "target"
    duration: float = 0.0
    j_active: bool = True

    @classmethod
    def pulse(cls, angle: float, axis: str, qubit: str) -> "PulseEvent":
        return cls(kind="pulse", angle=angle, axis=axis, qubit=qubit)

    @classmethod
    def delay(cls, duration: float, j_active: bool = True) -> "PulseEvent":
        return cls(kind="delay", duration=duration, j_active=j_active)

    @classmethod
    def gradient(cls) -> "PulseEvent":
        return cls(kind="gradient")


def thermal_state(epsilon: float) -> DensityOperator:
    """Single-spin Boltzmann mixture diag(e^{eps/2}, e^{-eps/2}) / (2 cosh(eps/2)).

    Normalized exactly so the unit-trace invariant holds to machine
    precision, not just to first order in epsilon.
    """
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    z = 2.0 * np.cosh(epsilon / 2.0)
    return DensityOperator(
        np.diag([np.exp(epsilon / 2.0) / z, np.exp(-epsilon / 2.0) / z]).astype(complex)
    )


def pseudopure_state(n_qubits: int, purity: float = 1.0, target_ket: int = 0) -> DensityOperator:
    """Pseudopure mixture (1-purity)/d * I + purity * |k><k| over 1 or 2 qubits."""
    if n_qubits not in (1, 2):
        raise ValueError(f"n_qubits must be 1 or 2, got {n_qubits}")
    purity = float(purity)
    if not 0.0 < purity <= 1.0:
        raise ValueError(f"purity must lie in (0, 1], got {purity}")
    dim = 2**n_qubits
    if not 0 <= target_ket < dim:
        raise ValueError(f"target_ket {target_ket} out of range for {n_qubits} qubit(s)")
    m = np.eye(dim, dtype=complex) * ((1.0 - purity) / dim)
    m[target_ket, target_ket] += purity
    return DensityOperator(m)


def free_evolution_propagator(sys: SpinSystem, tau: float, j_active: bool = True) -> GateMatrix:
    """Closed-form two-spin propagator exp(-i H tau) for
    H = 2*pi*offset_t*(sz (x) I)/2 + 2*pi*offset_a*(I (x) sz)/2
        [+ 2*pi*J*(sz (x) sz)/4 when J is active]."""
    tau = float(tau)
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    energies = np.pi * sys.offset_target * _ZT + np.pi * sys.offset_ancilla * _ZA
    if j_active:
        energies = energies + (np.pi * sys.j_coupling / 2.0) * _ZT * _ZA
    return GateMatrix(np.diag(np.exp(-1j * energies * tau)))


def free_evolution(rho: DensityOperator, sys: SpinSystem, tau: float, j_active: bool = True) -> DensityOperator:
    """Evolve a two-qubit state freely for ``tau`` seconds."""
    if rho.dim != 4:
        raise ValueError("free evolution is defined on the two-spin system")
    return apply_unitary(rho, free_evolution_propagator(sys, tau, j_active))


def run_sequence(rho: DensityOperator, events, sys: SpinSystem) -> DensityOperator:
    """Apply a pulse-sequence timeline to a two-qubit state, event by event."""
    for event in events:
        if event.kind == "pulse":
            rho = apply_unitary(rho, rf_pulse(event.angle, event.axis, event.qubit))
        elif event.kind == "delay":
            rho = free_evolution(rho, sys, event.duration, event.j_active)
        elif event.kind == "gradient":
            rho = pfg_dephase(rho)
        else:
            raise ValueError(f"unknown pulse event kind {event.kind!r}")
    return rho


def phase_echo_events(sys: SpinSystem, phi: float) -> tuple[PulseEvent, ...]:
    """Timeline realizing a target phase shift of ``phi`` with J refocused.

    The delay is split around two pi pulses on the ancilla (symmetric echo),
    so J and the ancilla offset cancel while the target offset accumulates
    phi = 2*pi*offset_target*tau, and the ancilla returns to its input state
    up to a global phase.
    """
    phi = float(phi)
    if phi < 0:
        raise ValueError(f"phi must be non-negative, got {phi}")
    if sys.offset_target <= 0:
        raise UnrealizablePhaseError(
            "a phase shift needs a positive resonance offset on the target spin"
        )
    tau = phi / (2.0 * np.pi * sys.offset_target)
    return (
        PulseEvent.delay(tau / 2.0, j_active=True),
        PulseEvent.pulse(np.pi, "x", "ancilla"),
        PulseEvent.delay(tau / 2.0, j_active=True),
        PulseEvent.pulse(np.pi, "x", "ancilla"),
    )


def echo_phase_shift(rho: DensityOperator, sys: SpinSystem, phi: float) -> DensityOperator:
    """Pulse-level phase gate on the target qubit via offset evolution and a
    two-pulse echo; equals the ideal diag(1, e^{i*phi}) (x) I map."""
    return run_sequence(rho, phase_echo_events(sys, phi), sys)


def pfg_dephase(rho: DensityOperator) -> DensityOperator:
    """Pulsed-field-gradient model: wipe all coherences, keep the diagonal."""
    return DensityOperator(np.diag(rho.matrix.diagonal()))


def depolarize(rho: DensityOperator, p: float) -> DensityOperator:
    """Depolarizing channel (1-p)*rho + p*I/d."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    d = rho.dim
    return DensityOperator((1.0 - p) * rho.matrix + (p / d) * np.eye(d, dtype=complex))


def _require_diagonal(rho: DensityOperator) -> np.ndarray:
    off = rho.matrix - np.diag(rho.matrix.diagonal())
    worst = float(np.max(np.abs(off)))
    if worst > _DIAGONAL_TOL:
        raise ValueError(f"state is not diagonal (largest coherence {worst:.3e})")
    return rho.diagonal()


@dataclass(frozen=True)
class DiagonalCoefficients:
    """Coefficients of a diagonal two-qubit state written as
    I/4 + c1*(sz (x) I) + c2*(I (x) sz) + c3*(sz (x) sz)."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        pops = self.populations()
        if np.any(pops < -_POPULATION_TOL) or np.any(pops > 1.0 + _POPULATION_TOL):
            raise ValueError(f"coefficients rebuild to populations outside [0, 1]: {pops}")

    def populations(self) -> np.ndarray:
        return 0.25 + self.c1 * _ZT + self.c2 * _ZA + self.c3 * _ZT * _ZA


def extract_diag_coeffs(rho: DensityOperator) -> DiagonalCoefficients:
    """Solve for (c1, c2, c3) of a diagonal two-qubit state; the unique
    solution is c_k = trace(op_k @ rho) / 4."""
    if rho.dim != 4:
        raise ValueError("coefficient extraction is defined on the two-spin system")
    pops = _require_diagonal(rho)
    return DiagonalCoefficients(
        c1=float(np.dot(_ZT, pops)) / 4.0,
        c2=float(np.dot(_ZA, pops)) / 4.0,
        c3=float(np.dot(_ZT * _ZA, pops)) / 4.0,
    )


def rebuild_diagonal(coeffs: DiagonalCoefficients) -> DensityOperator:
    """Inverse of :func:`extract_diag_coeffs`."""
    return DensityOperator(np.diag(coeffs.populations()).astype(complex))


def polarization(rho: DensityOperator) -> float:
    """Single-spin longitudinal coefficient c of rho = I/2 + c*sigma_z;
    after a (pi/2)_y detection pulse the observable signal is proportional to it."""
    if rho.dim != 2:
        raise ValueError("polarization is defined for a single spin")
    pops = _require_diagonal(rho)
    return float(np.dot(SIGMA_Z.diagonal().real, pops)) / 2.0


@dataclass(frozen=True)
class SpectrumLines:
    """Amplitudes of one spin's two spectral lines after a (pi/2)_y detection
    pulse on a diagonal state.

    ``line_low`` is the transition with the partner spin in |0>, ``line_high``
    the one with the partner in |1>.  Amplitudes are the raw coefficient
    combinations; ``normalization`` carries the reference scale (the line
    amplitude a pseudopure-state detection would give) rather than baking it in.
    """

    qubit: str
    line_low: float
    line_high: float
    normalization: float


def read_spectrum(rho: DensityOperator, qubit: str, reference: float = 0.5) -> SpectrumLines:
    """Spectral line amplitudes of the named spin for a diagonal two-qubit state.

    Target spectrum gives (c1+c3, c1-c3); ancilla spectrum gives (c2+c3, c2-c3).
    """
    if qubit not in ("target", "ancilla"):
        raise ValueError(f"qubit must be 'target' or 'ancilla', got {qubit!r}")
    coeffs = extract_diag_coeffs(rho)
    if qubit == "target":
        low, high = coeffs.c1 + coeffs.c3, coeffs.c1 - coeffs.c3
    else:
        low, high = coeffs.c2 + coeffs.c3, coeffs.c2 - coeffs.c3
    return SpectrumLines(qubit=qubit, line_low=low, line_high=high, normalization=float(reference))


def reconstruct_population(
    target_lines: SpectrumLines,
    ancilla_lines: SpectrumLines,
    c3_tol: float = 1e-10,
) -> float:
    """Rebuild the |00> population 1/4 + c1 + c2 + c3 from both spectra.

    The shared coefficient c3 is recoverable from either line pair; if the
    two estimates disagree beyond ``c3_tol`` the readout chain is broken and
    a :class:`ReadoutInconsistencyError` is raised.
    """
    if target_lines.qubit != "target" or ancilla_lines.qubit != "ancilla":
        raise ValueError(
            f"expected (target, ancilla) spectra, got ({target_lines.qubit!r}, {ancilla_lines.qubit!r})"
        )
    c1 = (target_lines.line_low + target_lines.line_high) / 2.0
    c3 = (target_lines.line_low - target_lines.line_high) / 2.0
    c2 = (ancilla_lines.line_low + ancilla_lines.line_high) / 2.0
    c3_ancilla = (ancilla_lines.line_low - ancilla_lines.line_high) / 2.0
    if abs(c3 - c3_ancilla) > c3_tol:
        raise ReadoutInconsistencyError(
            f"c3 disagrees between spectra: {c3!r} (target) vs {c3_ancilla!r} (ancilla)"
        )
    return 0.25 + c1 + c2 + c3
