"""Shared random generators and independent oracles for the test suite."""

import numpy as np

from noisegauge import UnitalChannel


def random_rotation(rng) -> np.ndarray:
    """Haar-ish random proper rotation from a normalized quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )


def in_cpt_tetrahedron(lam, tol: float = 0.0) -> bool:
    """|l1 + l2| <= 1 + l3 and |l1 - l2| <= 1 - l3 (diagonal-channel CP test)."""
    l1, l2, l3 = lam
    return abs(l1 + l2) <= 1 + l3 + tol and abs(l1 - l2) <= 1 - l3 + tol


def random_tetra_lambda(rng) -> np.ndarray:
    """Uniform sample from the CP tetrahedron of diagonal multipliers."""
    while True:
        lam = rng.uniform(-1, 1, 3)
        if in_cpt_tetrahedron(lam):
            return lam


def random_cp_unital(rng) -> UnitalChannel:
    """Random completely positive unital channel (rotations around a
    tetrahedron point)."""
    lam = random_tetra_lambda(rng)
    return UnitalChannel(random_rotation(rng) @ np.diag(lam) @ random_rotation(rng))


def random_density(rng) -> np.ndarray:
    """Random qubit density matrix, uniform Bloch-ball interior."""
    v = rng.normal(size=3)
    v *= rng.uniform() ** (1 / 3) / np.linalg.norm(v)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return (np.eye(2, dtype=complex) + v[0] * sx + v[1] * sy + v[2] * sz) / 2


def random_two_qubit_state(rng) -> np.ndarray:
    """Random full-rank 4x4 density matrix (Ginibre construction)."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def charpoly_coefficients(a: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients by Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with p(x) = x^n + c1 x^(n-1) + ... + cn,
    computed from traces alone; no eigensolver involved.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * a
        coeffs.append(-np.trace(m) / k)
    return np.asarray(coeffs)


def eigenvalues_by_charpoly(a: np.ndarray) -> np.ndarray:
    """Hermitian eigenvalues via companion-matrix roots of the
    characteristic polynomial; independent of eigvalsh."""
    roots = np.roots(charpoly_coefficients(a))
    return np.sort(roots.real)
