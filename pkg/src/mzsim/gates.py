"""Closed-form gates for the interferometer circuits and their rf realizations.

Angle conventions, fixed here and relied on everywhere else:

* ``y_rotation(alpha)`` is the full-angle map exp(-i*alpha*sigma_y); it
  prepares cos(alpha)|0> + sin(alpha)|1> from |0>.
* ``rf_pulse(theta, ...)`` follows spectrometer nomenclature, i.e. the
  half-angle map exp(-i*(theta/2)*sigma) on the addressed spin, so a
  "pi pulse" is theta = pi.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import SIGMA_X, SIGMA_Y, GateMatrix, identity, tensor

_AXES = {"x": SIGMA_X, "y": SIGMA_Y}
_QUBITS = ("target", "ancilla")

_P0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
_P1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def hadamard() -> GateMatrix:
    """50:50 beam-splitter analogue, (1/sqrt2) [[1, 1], [1, -1]]."""
    return GateMatrix(np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0))


def phase_gate(phi: float) -> GateMatrix:
    """Relative phase shifter diag(1, e^{i*phi}) on one qubit."""
    phi = _require_finite("phi", phi)
    return GateMatrix(np.array([[1.0, 0.0], [0.0, np.exp(1j * phi)]], dtype=complex))


def y_rotation(alpha: float) -> GateMatrix:
    """Full-angle y rotation exp(-i*alpha*sigma_y), used to prepare the ancilla."""
    alpha = _require_finite("alpha", alpha)
    c, s = np.cos(alpha), np.sin(alpha)
    return GateMatrix(np.array([[c, -s], [s, c]], dtype=complex))


def controlled_hadamard() -> GateMatrix:
    """Hadamard on the target when the ancilla is |1>, identity when it is |0>.

    Block structure in the |target, ancilla> basis: I (x) |0><0| + H (x) |1><1|.
    """
    return GateMatrix(tensor(identity(2), _P0) + tensor(hadamard().matrix, _P1))


def rf_pulse(angle: float, axis: str, qubit: str) -> GateMatrix:
    """Single-spin rotation exp(-i*(angle/2)*sigma_axis) embedded in the two-qubit space."""
    angle = _require_finite("angle", angle)
    if axis not in _AXES:
        raise ValueError(f"axis must be one of {sorted(_AXES)}, got {axis!r}")
    if qubit not in _QUBITS:
        raise ValueError(f"qubit must be one of {_QUBITS}, got {qubit!r}")
    sigma = _AXES[axis]
    rot = np.cos(angle / 2.0) * identity(2) - 1j * np.sin(angle / 2.0) * sigma
    if qubit == "target":
        return GateMatrix(tensor(rot, identity(2)))
    return GateMatrix(tensor(identity(2), rot))


def on_target(gate: GateMatrix) -> GateMatrix:
    """Embed a single-qubit gate on the target: gate (x) I."""
    return GateMatrix(tensor(gate.matrix, identity(2)))


def on_ancilla(gate: GateMatrix) -> GateMatrix:
    """Embed a single-qubit gate on the ancilla: I (x) gate."""
    return GateMatrix(tensor(identity(2), gate.matrix))


def canonical_global_phase(vec, tol: float = 1e-12) -> np.ndarray:
    """Rotate a state vector's global phase so its first nonzero amplitude
    is real and positive.  Lets states be compared up to global phase."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    for amp in v:
        if abs(amp) > tol:
            return v * (amp.conjugate() / abs(amp))
    raise ValueError("cannot fix the phase of a zero vector")
