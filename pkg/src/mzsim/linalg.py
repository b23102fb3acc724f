"""Dense complex linear algebra for one- and two-qubit operators.

Every state and gate in this package is a small (2x2 or 4x4) complex
matrix.  This module owns their construction and validation plus the
primitive operations everything else builds on: tensor products, partial
trace over the ancilla, unitary conjugation, and expectation values.

Two-qubit basis ordering is |target, ancilla> with lexicographic indices
|00>=0, |01>=1, |10>=2, |11>=3, so the |00><00| detector projector is the
top-left matrix element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Structural tolerances (Hermiticity, trace, unitarity) sit at 1e-12;
# positive semidefiniteness gets looser spectral headroom.
STRUCTURAL_TOL = 1e-12
PSD_TOL = 1e-10

_ALLOWED_DIMS = (2, 4)

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def identity(dim: int = 2) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def basis_ket(dim: int, index: int) -> np.ndarray:
    """Computational-basis column vector |index> of the given dimension."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    ket = np.zeros(dim, dtype=complex)
    ket[index] = 1.0
    return ket


def as_complex_matrix(values) -> np.ndarray:
    """Coerce ``values`` to a read-only square complex matrix of dimension 2 or 4."""
    matrix = np.array(values, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] not in _ALLOWED_DIMS:
        raise ValueError(
            f"matrix dimension must be one of {_ALLOWED_DIMS}, got {matrix.shape[0]}"
        )
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True)
class ValidityReport:
    """Deviation of a matrix from the density-operator invariants."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    passed: bool


def validate_density(
    matrix, tol: float = STRUCTURAL_TOL, psd_tol: float | None = None
) -> ValidityReport:
    """Measure how far ``matrix`` is from a valid density operator.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix to check.
    tol : float
        Bound on the Hermiticity defect (max elementwise deviation from the
        conjugate transpose) and on ``|trace - 1|``.
    psd_tol : float, optional
        How negative the smallest eigenvalue of the Hermitian part may be.
        Defaults to ``tol``.

    Returns
    -------
    ValidityReport
        Report-only; never raises for an invalid matrix, only for a
        non-square input.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if psd_tol is None:
        psd_tol = tol
    hermiticity_defect = float(np.max(np.abs(m - m.conj().T)))
    trace_defect = float(abs(m.trace() - 1.0))
    hermitian_part = (m + m.conj().T) / 2.0
    min_eigenvalue = float(np.linalg.eigvalsh(hermitian_part)[0])
    passed = (
        hermiticity_defect <= tol
        and trace_defect <= tol
        and min_eigenvalue >= -psd_tol
    )
    return ValidityReport(hermiticity_defect, trace_defect, min_eigenvalue, passed)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite matrix over 1 or 2 qubits.

    Immutable after construction; invalid inputs are rejected outright.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = as_complex_matrix(self.matrix)
        report = validate_density(m, STRUCTURAL_TOL, psd_tol=PSD_TOL)
        if not report.passed:
            raise ValueError(
                "not a valid density operator: "
                f"hermiticity defect {report.hermiticity_defect:.3e}, "
                f"trace defect {report.trace_defect:.3e}, "
                f"min eigenvalue {report.min_eigenvalue:.3e}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def diagonal(self) -> np.ndarray:
        """Real diagonal (populations) as a fresh 1-d array."""
        return self.matrix.diagonal().real.copy()


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """Unitary matrix representing an ideal gate or pulse propagator."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = as_complex_matrix(self.matrix)
        defect = float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))
        if defect > STRUCTURAL_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def pure_density(ket) -> DensityOperator:
    """Projector |ket><ket| of a normalized state vector."""
    vec = np.asarray(ket, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector is not normalized (norm {norm})")
    return DensityOperator(np.outer(vec, vec.conj()))


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the first factor acting on the target qubit
    and the second on the ancilla."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def tensor_density(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    return DensityOperator(tensor(a.matrix, b.matrix))


def partial_trace_ancilla(rho: DensityOperator) -> DensityOperator:
    """Trace out the ancilla of a two-qubit state.

    Returns sum_k (I (x) <k|) rho (I (x) |k>); with the |target, ancilla>
    index convention this contracts adjacent index pairs.
    """
    if rho.dim != 4:
        raise ValueError(f"partial trace over the ancilla needs a 4x4 state, got {rho.dim}x{rho.dim}")
    m = rho.matrix
    reduced = np.empty((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            reduced[i, j] = m[2 * i, 2 * j] + m[2 * i + 1, 2 * j + 1]
    return DensityOperator(reduced)


def apply_unitary(rho: DensityOperator, u: GateMatrix) -> DensityOperator:
    """Conjugate ``rho`` by ``u``: U rho U^dagger."""
    if rho.dim != u.dim:
        raise ValueError(f"dimension mismatch: state is {rho.dim}x{rho.dim}, gate is {u.dim}x{u.dim}")
    return DensityOperator(u.matrix @ rho.matrix @ u.matrix.conj().T)


def expectation(rho: DensityOperator, obs) -> float:
    """Expectation value trace(obs @ rho) of a Hermitian observable."""
    o = np.asarray(obs, dtype=complex)
    if o.ndim != 2 or o.shape[0] != o.shape[1]:
        raise ValueError(f"observable must be square, got shape {o.shape}")
    if o.shape[0] != rho.dim:
        raise ValueError(f"dimension mismatch: state is {rho.dim}x{rho.dim}, observable is {o.shape[0]}x{o.shape[0]}")
    if np.max(np.abs(o - o.conj().T)) > STRUCTURAL_TOL:
        raise ValueError("observable is not Hermitian")
    value = complex(np.trace(o @ rho.matrix))
    if abs(value.imag) > STRUCTURAL_TOL:
        raise ValueError(f"expectation value has non-negligible imaginary part {value.imag:.3e}")
    return float(value.real)
