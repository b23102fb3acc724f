"""Raw-numpy oracles shared by the test modules.

Everything here is built from explicit formulas and plain matrix products,
independent of the library code paths it is used to check.
"""

import numpy as np

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


def psi_particle(phi):
    """(|0> + e^{i phi} |1>) / sqrt(2): state after the phase shifter."""
    return np.array([1.0, np.exp(1j * phi)], dtype=complex) / np.sqrt(2.0)


def psi_wave(phi):
    """cos(phi/2)|0> - i sin(phi/2)|1>: state after the second beam splitter,
    with its global phase stripped."""
    return np.array([np.cos(phi / 2.0), -1j * np.sin(phi / 2.0)], dtype=complex)


def joint_ket(alpha, phi):
    """Two-qubit state after the controlled beam splitter, built from raw
    matrix products: cos(a)|psi_p>|0> + sin(a)(H psi_p)|1>.  The |1> branch
    equals psi_wave up to the phase e^{i phi/2} it inherits from H psi_p."""
    branch0 = np.kron(psi_particle(phi), np.array([1.0, 0.0]))
    branch1 = np.kron(HADAMARD @ psi_particle(phi), np.array([0.0, 1.0]))
    return np.cos(alpha) * branch0 + np.sin(alpha) * branch1


def reduced_mixture(alpha, phi):
    """cos^2(a) |psi_p><psi_p| + sin^2(a) |psi_w><psi_w|."""
    p, w = psi_particle(phi), psi_wave(phi)
    return (np.cos(alpha) ** 2) * np.outer(p, p.conj()) + (np.sin(alpha) ** 2) * np.outer(
        w, w.conj()
    )


def detector_intensity(alpha, phi):
    """Closed-form D0 intensity: cos^2(a)/2 + cos^2(phi/2) sin^2(a)."""
    return 0.5 * np.cos(alpha) ** 2 + np.cos(phi / 2.0) ** 2 * np.sin(alpha) ** 2


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return m / np.trace(m).real


def random_diagonal_density(rng, dim):
    return np.diag(rng.dirichlet(np.ones(dim)).astype(complex))


def random_unitary(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(a)
    return q
