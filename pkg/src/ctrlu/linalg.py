"""Small dense complex linear algebra for one- and two-qubit operators.

Two-qubit operators use the basis order ``|q1 q0>`` with ``q1`` the most
significant bit; ``q1`` is the control wire everywhere in this package.
"""

import numpy as np
from scipy.linalg import schur

# entry-level comparisons
ATOL = 1e-10
# determinant / trace predicates
PRED_ATOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
# X eigenvectors
OMEGA0 = np.array([1, 1], dtype=complex) / np.sqrt(2)
OMEGA1 = np.array([1, -1], dtype=complex) / np.sqrt(2)

NAMED = {"I": I2, "X": X, "Z": Z, "H": H, "S": S, "T": T}


class NonUnitaryError(ValueError):
    """Raised when a matrix expected to be unitary is not."""


def as_matrix(m, n=2):
    """Return ``m`` as an ``n x n`` complex array, rejecting NaN/Inf."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m):
    return np.conj(np.transpose(m))


def max_dist(a, b):
    """Max-norm of ``a - b``: largest absolute row sum (largest modulus for vectors)."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b), np.inf))


def unitarity_error(m):
    m = np.asarray(m)
    return max_dist(dagger(m) @ m, np.eye(m.shape[0]))


def is_unitary(m, atol=None):
    m = np.asarray(m)
    if atol is None:
        atol = ATOL if m.shape[0] == 2 else PRED_ATOL
    return bool(np.all(np.isfinite(m))) and unitarity_error(m) <= atol


def check_unitary(m, n=2, atol=None, name="matrix"):
    """Validate and return ``m`` as a unitary ``n x n`` array."""
    a = as_matrix(m, n)
    if not is_unitary(a, atol):
        raise NonUnitaryError(
            f"{name} is not unitary (|M^dag M - I|_max = {unitarity_error(a):.3g})"
        )
    return a


def kron(a, b):
    """Tensor product ``a (x) b`` with ``a`` on q1 and ``b`` on q0."""
    return np.kron(a, b)


def rz(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def ry(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def phase_gate(phi):
    """``diag(1, e^{i phi})``."""
    return np.diag([1.0, np.exp(1j * phi)])


def _canonical_phase(v):
    # first non-negligible component made real positive
    k = 0 if abs(v[0]) > 1e-12 else 1
    return v * (abs(v[k]) / v[k])


def eig_unitary2(u):
    """Spectral decomposition of a 2x2 unitary.

    Returns ``(lam0, lam1, v0, v1)`` with ``u @ vk = lamk * vk``.  The
    eigenvalue with the smaller argument in ``[0, 2 pi)`` comes first, and
    each eigenvector has its first nonzero component real and positive.
    Scalar matrices return the computational basis.
    """
    u = check_unitary(u)
    tri, q = schur(u, output="complex")
    lams = np.diag(tri).copy()
    lams /= np.abs(lams)
    if abs(lams[0] - lams[1]) <= 1e-11:
        lam = np.trace(u) / 2
        lam /= abs(lam)
        return lam, lam, KET0.copy(), KET1.copy()
    args = np.mod(np.angle(lams), 2 * np.pi)
    order = np.argsort(args, kind="stable")
    v0 = _canonical_phase(q[:, order[0]])
    v1 = _canonical_phase(q[:, order[1]])
    return lams[order[0]], lams[order[1]], v0, v1


def phase_distance(m, t):
    """``1 - |tr(m^dag t)| / d``; zero iff ``m`` equals ``t`` up to a global phase."""
    m = np.asarray(m)
    d = m.shape[0]
    val = 1.0 - abs(np.trace(dagger(m) @ np.asarray(t))) / d
    return float(min(max(val, 0.0), 1.0))


def exact_distance(m, t):
    return max_dist(m, t)


def phase_align(m, t):
    """Global phase ``theta`` with ``e^{-i theta} m`` closest to ``t``."""
    return float(np.angle(np.trace(dagger(t) @ np.asarray(m))))


def haar_unitary(rng, n=2):
    """Haar-random unitary: QR of a complex Ginibre draw with phase fixing."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
