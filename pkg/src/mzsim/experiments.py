"""The four interferometer experiments (open, closed, random delayed choice,
quantum delayed choice), sweep orchestration over (alpha, phi) grids,
visibility analysis, and comparison against the closed-form intensities.

Detector convention: s0 is the target-qubit D0 = |0><0| intensity.  For the
two-qubit variant this is the target marginal p(target=0) = 1/2 + 2*c1,
rebuilt from the spectral readout chain; s1 is reported as 1 - s0 on the
same marginal.  The |00> population 1/4 + c1 + c2 + c3 is still
reconstructed (and cross-checked) at every grid point.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gates import (
    controlled_hadamard,
    hadamard,
    on_ancilla,
    on_target,
    phase_gate,
    y_rotation,
)
from .linalg import DensityOperator, apply_unitary, partial_trace_ancilla
from .nmr import (
    SpectrumLines,
    SpinSystem,
    depolarize,
    echo_phase_shift,
    extract_diag_coeffs,
    pfg_dephase,
    polarization,
    pseudopure_state,
    read_spectrum,
    reconstruct_population,
)

VARIANTS = ("open", "closed", "wheeler", "quantum_delayed")
MODES = ("ideal_gate", "pulse_sequence")

_REDUCED_STATE_TOL = 1e-12


class UndefinedVisibilityError(ValueError):
    """Interference visibility is undefined for an identically zero curve."""


def default_phis(steps: int = 21) -> tuple[float, ...]:
    """Linearly spaced phases over [0, 2*pi], endpoints included."""
    if steps < 1:
        raise ValueError(f"need at least one phase value, got {steps}")
    return tuple(float(p) for p in np.linspace(0.0, 2.0 * np.pi, steps))


def default_alphas(steps: int = 5) -> tuple[float, ...]:
    """Linearly spaced ancilla angles over [0, pi/2], endpoints included."""
    return tuple(float(a) for a in np.linspace(0.0, np.pi / 2.0, steps))


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one sweep: variant, gate/pulse mode, grids,
    noise strength, pseudopure purity, spin system and rng seed."""

    variant: str
    mode: str = "ideal_gate"
    alphas: tuple[float, ...] = ()
    phis: tuple[float, ...] = field(default_factory=default_phis)
    noise_p: float = 0.0
    purity: float = 1.0
    sys: SpinSystem = SpinSystem()
    rng_seed: int = 0
    n_shots: int = 10000

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.phis:
            raise ValueError("phis must be non-empty")
        if not all(math.isfinite(p) for p in self.phis):
            raise ValueError("phis must all be finite")
        if not 0.0 <= self.noise_p <= 1.0:
            raise ValueError(f"noise_p must lie in [0, 1], got {self.noise_p}")
        if not 0.0 < self.purity <= 1.0:
            raise ValueError(f"purity must lie in (0, 1], got {self.purity}")
        if self.variant == "quantum_delayed":
            if not self.alphas:
                raise ValueError("the quantum_delayed variant needs a non-empty alphas grid")
            if not all(math.isfinite(a) for a in self.alphas):
                raise ValueError("alphas must all be finite")
        elif self.alphas:
            raise ValueError(f"alphas only apply to the quantum_delayed variant, not {self.variant!r}")
        if self.n_shots < 1:
            raise ValueError(f"n_shots must be at least 1, got {self.n_shots}")


@dataclass(frozen=True)
class SweepPoint:
    """One grid evaluation: detector intensities, the closed-form reference
    value, and (for the two-qubit variant) the spectral line amplitudes."""

    alpha: float | None
    phi: float
    s0: float
    s1: float
    theory_s0: float
    target_lines: SpectrumLines | None = None
    ancilla_lines: SpectrumLines | None = None


@dataclass(frozen=True)
class SweepResult:
    """Grid of sweep points plus per-alpha visibilities and the worst
    deviation from the closed-form intensity."""

    config: ExperimentConfig
    points: tuple[SweepPoint, ...]
    visibility_by_alpha: tuple[tuple[float | None, float], ...]
    max_abs_error_vs_theory: float

    def __post_init__(self) -> None:
        for alpha, nu in self.visibility_by_alpha:
            if not -1e-12 <= nu <= 1.0 + 1e-12:
                raise ValueError(f"visibility {nu} at alpha={alpha} is outside [0, 1]")


def theory_s0(alpha: float, phi: float) -> float:
    """Closed-form D0 intensity cos(alpha)^2 / 2 + cos(phi/2)^2 * sin(alpha)^2.

    Serves as the independent reference for every pipeline.
    """
    alpha = float(alpha)
    phi = float(phi)
    if not (math.isfinite(alpha) and math.isfinite(phi)):
        raise ValueError("alpha and phi must be finite")
    return 0.5 * math.cos(alpha) ** 2 + math.cos(phi / 2.0) ** 2 * math.sin(alpha) ** 2


def variant_theory(variant: str, alpha: float | None, phi: float) -> float:
    """Reference intensity for any variant; open and closed are the
    alpha = 0 and alpha = pi/2 limits, the random delayed choice is their mean."""
    if variant == "open":
        return theory_s0(0.0, phi)
    if variant == "closed":
        return theory_s0(np.pi / 2.0, phi)
    if variant == "wheeler":
        return 0.5 * (theory_s0(0.0, phi) + theory_s0(np.pi / 2.0, phi))
    if variant == "quantum_delayed":
        return theory_s0(alpha, phi)
    raise ValueError(f"unknown variant {variant!r}")


def _single_qubit_state(phi: float, closed: bool, cfg: ExperimentConfig) -> DensityOperator:
    """Dephased end state of the one-qubit interferometer.  Ideal mode runs on
    the lone target spin; pulse mode runs on the two-spin system with the
    phase shift realized as an offset/echo delay."""
    if cfg.mode == "ideal_gate":
        rho = pseudopure_state(1, cfg.purity)
        rho = apply_unitary(rho, hadamard())
        rho = apply_unitary(rho, phase_gate(phi))
        if closed:
            rho = apply_unitary(rho, hadamard())
    else:
        rho = pseudopure_state(2, cfg.purity)
        rho = apply_unitary(rho, on_target(hadamard()))
        rho = echo_phase_shift(rho, cfg.sys, phi)
        if closed:
            rho = apply_unitary(rho, on_target(hadamard()))
    if cfg.noise_p > 0.0:
        rho = depolarize(rho, cfg.noise_p)
    return pfg_dephase(rho)


def _single_qubit_s0(rho: DensityOperator, purity: float) -> float:
    """D0 intensity 1/2 + c of the target spin, normalized so the pseudopure
    reference detection sets the scale (divide the raw coefficient by purity)."""
    if rho.dim == 2:
        return 0.5 + polarization(rho) / purity
    return 0.5 + 2.0 * extract_diag_coeffs(rho).c1 / purity


def run_open(phi: float, cfg: ExperimentConfig) -> SweepPoint:
    """Interferometer without the recombining beam splitter: flat s0 = 1/2."""
    rho = _single_qubit_state(phi, closed=False, cfg=cfg)
    s0 = _single_qubit_s0(rho, cfg.purity)
    return SweepPoint(alpha=None, phi=float(phi), s0=s0, s1=1.0 - s0,
                      theory_s0=variant_theory("open", None, phi))


def run_closed(phi: float, cfg: ExperimentConfig) -> SweepPoint:
    """Interferometer with both beam splitters: s0 = cos(phi/2)^2."""
    rho = _single_qubit_state(phi, closed=True, cfg=cfg)
    s0 = _single_qubit_s0(rho, cfg.purity)
    return SweepPoint(alpha=None, phi=float(phi), s0=s0, s1=1.0 - s0,
                      theory_s0=variant_theory("closed", None, phi))


def run_wheeler(phi: float, cfg: ExperimentConfig, n_shots: int, rng=None) -> SweepPoint:
    """Random delayed choice: per shot a fair coin, drawn after the first beam
    splitter is applied, selects the closed or open circuit; s0 is the shot
    average of the selected circuit's intensity."""
    if n_shots < 1:
        raise ValueError(f"n_shots must be at least 1, got {n_shots}")
    if rng is None:
        rng = np.random.default_rng(cfg.rng_seed)
    open_s0 = run_open(phi, cfg).s0
    closed_s0 = run_closed(phi, cfg).s0
    coins = rng.integers(0, 2, size=n_shots)
    n_closed = int(np.sum(coins))
    s0 = (n_closed * closed_s0 + (n_shots - n_closed) * open_s0) / n_shots
    return SweepPoint(alpha=None, phi=float(phi), s0=s0, s1=1.0 - s0,
                      theory_s0=variant_theory("wheeler", None, phi))


def _expected_reduced(alpha: float, phi: float, purity: float) -> np.ndarray:
    """Closed-form reduced target state after the controlled beam splitter:
    the cos^2/sin^2 mixture of the particle and wave branches, diluted by
    the pseudopure identity background."""
    psi_p = np.array([1.0, np.exp(1j * phi)], dtype=complex) / np.sqrt(2.0)
    psi_w = np.array([np.cos(phi / 2.0), -1j * np.sin(phi / 2.0)], dtype=complex)
    mixture = (np.cos(alpha) ** 2) * np.outer(psi_p, psi_p.conj()) + (
        np.sin(alpha) ** 2
    ) * np.outer(psi_w, psi_w.conj())
    return purity * mixture + (1.0 - purity) * np.eye(2) / 2.0


def run_quantum_delayed(alpha: float, phi: float, cfg: ExperimentConfig) -> SweepPoint:
    """Quantum delayed choice: the recombining beam splitter is controlled by
    an ancilla prepared in cos(alpha)|0> + sin(alpha)|1>.

    Pipeline: pseudopure |00> -> Y_alpha on ancilla -> H on target -> phase
    shift (ideal gate or offset echo) -> controlled Hadamard -> optional
    depolarizing noise -> gradient dephasing -> spectra of both spins ->
    population reconstruction.
    """
    rho = pseudopure_state(2, cfg.purity)
    rho = apply_unitary(rho, on_ancilla(y_rotation(alpha)))
    rho = apply_unitary(rho, on_target(hadamard()))
    if cfg.mode == "ideal_gate":
        rho = apply_unitary(rho, on_target(phase_gate(phi)))
    else:
        rho = echo_phase_shift(rho, cfg.sys, phi)
    rho = apply_unitary(rho, controlled_hadamard())

    # Self-check: tracing out the ancilla must give the particle/wave mixture.
    reduced = partial_trace_ancilla(rho)
    defect = float(np.max(np.abs(reduced.matrix - _expected_reduced(alpha, phi, cfg.purity))))
    if defect > _REDUCED_STATE_TOL:
        raise RuntimeError(
            f"reduced target state deviates from the particle/wave mixture by {defect:.3e}"
        )

    if cfg.noise_p > 0.0:
        rho = depolarize(rho, cfg.noise_p)
    rho = pfg_dephase(rho)

    reference = cfg.purity / 2.0
    target_lines = read_spectrum(rho, "target", reference=reference)
    ancilla_lines = read_spectrum(rho, "ancilla", reference=reference)
    c3_tol = 1e-10 if cfg.noise_p == 0.0 else 0.05
    reconstruct_population(target_lines, ancilla_lines, c3_tol=c3_tol)

    c1 = (target_lines.line_low + target_lines.line_high) / 2.0
    s0 = 0.5 + 2.0 * c1 / cfg.purity
    return SweepPoint(
        alpha=float(alpha),
        phi=float(phi),
        s0=s0,
        s1=1.0 - s0,
        theory_s0=theory_s0(alpha, phi),
        target_lines=target_lines,
        ancilla_lines=ancilla_lines,
    )


def visibility(curve) -> float:
    """Interference contrast (max(S) - min(S)) / (max(S) + min(S)) over the
    sampled (phi, S) curve; no interpolation between grid points."""
    values = [float(s) for _, s in curve]
    if not values:
        raise ValueError("visibility needs a non-empty curve")
    if any(s < 0 for s in values):
        raise ValueError("visibility needs non-negative intensities")
    top, bottom = max(values), min(values)
    if top + bottom == 0.0:
        raise UndefinedVisibilityError("visibility is undefined for an all-zero curve")
    return (top - bottom) / (top + bottom)


def _worker_count() -> int:
    raw = os.environ.get("MZSIM_THREADS", "")
    if not raw:
        return 1
    count = int(raw)
    return max(count, 1)


def _evaluate_point(cfg: ExperimentConfig, index: int, alpha: float | None, phi: float) -> SweepPoint:
    if cfg.variant == "open":
        return run_open(phi, cfg)
    if cfg.variant == "closed":
        return run_closed(phi, cfg)
    if cfg.variant == "wheeler":
        # Per-point generator keyed on (seed, grid index): reproducible and
        # independent of worker scheduling.
        rng = np.random.default_rng([cfg.rng_seed, index])
        return run_wheeler(phi, cfg, cfg.n_shots, rng=rng)
    return run_quantum_delayed(alpha, phi, cfg)


def sweep(cfg: ExperimentConfig) -> SweepResult:
    """Evaluate the variant over the full grid (row-major: alpha outer, phi
    inner).  Points are independent pure-function evaluations; MZSIM_THREADS
    caps optional thread parallelism and the output order never depends on it.
    """
    alphas: tuple[float | None, ...]
    alphas = cfg.alphas if cfg.variant == "quantum_delayed" else (None,)
    tasks = [
        (index, alpha, phi)
        for index, (alpha, phi) in enumerate(
            (a, p) for a in alphas for p in cfg.phis
        )
    ]

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(
                pool.map(lambda t: _evaluate_point(cfg, t[0], t[1], t[2]), tasks)
            )
    else:
        points = [_evaluate_point(cfg, index, alpha, phi) for index, alpha, phi in tasks]

    n_phi = len(cfg.phis)
    visibilities = []
    for row, alpha in enumerate(alphas):
        group = points[row * n_phi : (row + 1) * n_phi]
        visibilities.append((alpha, visibility([(p.phi, p.s0) for p in group])))

    max_err = max(abs(p.s0 - p.theory_s0) for p in points)
    return SweepResult(
        config=cfg,
        points=tuple(points),
        visibility_by_alpha=tuple(visibilities),
        max_abs_error_vs_theory=float(max_err),
    )
