"""Controlled-U targets, circuit checks and executable entanglement lemmas."""

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Cnot, Single, evaluate
from .linalg import (
    H,
    X,
    check_unitary,
    eig_unitary2,
    haar_unitary,
    kron,
    max_dist,
    phase_align,
    phase_distance,
)

EXACT_TOL = 1e-10
PHASE_TOL = 1e-12
IDENTITY_TOL = 1e-12
LEMMA_TOL = 1e-9
# draws this close to the eigenvector / basis-state boundary are redrawn
EXCLUSION = 1e-6


def controlled(u):
    """``|0><0| (x) I + |1><1| (x) u`` in the ``|q1 q0>`` basis."""
    u = check_unitary(u, atol=1e-8)
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = u
    return out


@dataclass
class VerifyReport:
    mode: str
    distance: float
    passed: bool
    phase_recovered: float = None

    def to_dict(self):
        out = {"mode": self.mode, "distance": self.distance, "pass": self.passed}
        if self.phase_recovered is not None:
            out["phase_recovered"] = self.phase_recovered
        return out


def verify(circuit, u, mode="exact"):
    """Compare ``circuit`` with controlled-``u``.

    ``exact`` uses the max-norm of the difference (tolerance 1e-10);
    ``phase`` ignores a global phase (tolerance 1e-12 on the phase distance)
    and reports the phase that was factored out.
    """
    m = evaluate(circuit)
    target = controlled(u)
    if mode == "exact":
        d = max_dist(m, target)
        return VerifyReport("exact", d, d <= EXACT_TOL)
    if mode == "phase":
        d = phase_distance(m, target)
        return VerifyReport("phase", d, d <= PHASE_TOL, phase_align(m, target))
    raise ValueError(f"unknown verification mode {mode!r}")


def schmidt_entangled(state, eps=LEMMA_TOL):
    """Schmidt rank 2 test: ``|det M| > eps`` for the 2x2 amplitude matrix."""
    m = np.asarray(state, dtype=complex).reshape(2, 2)  # rows q1, cols q0
    return bool(abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) > eps)


def eigen_defect(u, phi):
    """Norm of the component of ``u|phi>`` orthogonal to ``|phi>`` (zero iff eigenvector)."""
    phi = np.asarray(phi, dtype=complex)
    phi = phi / np.linalg.norm(phi)
    w = u @ phi
    return float(np.linalg.norm(w - np.vdot(phi, w) * phi))


def lemma1_prediction(u, psi, phi, tol=LEMMA_TOL):
    return eigen_defect(u, phi) > tol and min(abs(psi[0]), abs(psi[1])) > tol


def check_lemma1(u, psi, phi):
    """Entangled output iff ``phi`` is not an eigenvector and ``psi`` has both amplitudes."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    predicted = lemma1_prediction(u, psi, phi)
    actual = schmidt_entangled(controlled(u) @ np.kron(psi, phi))
    return predicted == actual


def _random_state(rng):
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return v / np.linalg.norm(v)


def _lemma1_triple(rng):
    while True:
        u, psi, phi = haar_unitary(rng), _random_state(rng), _random_state(rng)
        if eigen_defect(u, phi) > EXCLUSION and min(abs(psi)) > EXCLUSION:
            return u, psi, phi


def _boundary_triple(rng, kind):
    # exactly on the non-entangling side of the criterion
    u, psi, phi = haar_unitary(rng), _random_state(rng), _random_state(rng)
    if kind == 0:
        psi = np.array([1, 0], dtype=complex) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    elif kind == 1:
        psi = np.array([0, 1], dtype=complex)
    else:
        _, _, v0, v1 = eig_unitary2(u)
        phi = v0 if rng.random() < 0.5 else v1
    return u, psi, phi


def lemma1_suite(trials, seed, boundary_fraction=0.0):
    """Run :func:`check_lemma1` on random triples; returns a report dict.

    A ``boundary_fraction`` of the trials use inputs exactly on the product
    side of the criterion (basis-state control or eigenvector target).
    """
    rng = np.random.default_rng(seed)
    failures = 0
    n_boundary = int(round(trials * boundary_fraction))
    for t in range(trials):
        if t < n_boundary:
            u, psi, phi = _boundary_triple(rng, t % 3)
        else:
            u, psi, phi = _lemma1_triple(rng)
        if not check_lemma1(u, psi, phi):
            failures += 1
    return {"name": "lemma1_entanglement", "trials": trials, "failures": failures,
            "max_residual": None}


def _identity_entry(name, residuals):
    residuals = np.asarray(residuals)
    return {
        "name": name,
        "trials": int(residuals.size),
        "failures": int(np.sum(residuals > IDENTITY_TOL)),
        "max_residual": float(residuals.max()) if residuals.size else 0.0,
    }


def check_identities(trials=100, seed=0):
    """Residuals of the fixed circuit identities over randomized instances.

    * control/target flip by Hadamard conjugation,
    * absorbing X into an antidiagonal gate before a CNOT,
    * diagonal gates commuting through either CNOT orientation,
    * a controlled-U acting on an eigenvector target as ``diag(1, lam)``.
    """
    rng = np.random.default_rng(seed)
    flip, absorb, diag, corollary = [], [], [], []
    for _ in range(trials):
        lhs = Circuit([Single(1, H, "H"), Single(0, H, "H"), Cnot(1, 0),
                       Single(1, H, "H"), Single(0, H, "H")])
        flip.append(max_dist(evaluate(lhs), evaluate(Circuit([Cnot(0, 1)]))))

        a, b = rng.uniform(0, 2 * np.pi, 2)
        a1 = np.array([[0, np.exp(1j * a)], [np.exp(1j * b), 0]])
        lhs = Circuit([Single(1, a1, "A"), Cnot(1, 0)])
        rhs = Circuit([Single(1, X @ a1, "XA"), Cnot(1, 0), Single(1, X, "X"),
                       Single(0, X, "X")])
        absorb.append(max_dist(evaluate(lhs), evaluate(rhs)))

        c = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 2)))
        lhs = Circuit([Cnot(0, 1), Single(1, c, "C"), Cnot(0, 1)])
        rhs = Circuit([Cnot(1, 0), Single(0, c, "C"), Cnot(1, 0)])
        diag.append(max_dist(evaluate(lhs), evaluate(rhs)))

        u = haar_unitary(rng)
        lam0, lam1, v0, v1 = eig_unitary2(u)
        lam, phi = (lam0, v0) if rng.random() < 0.5 else (lam1, v1)
        psi = _random_state(rng)
        out = controlled(u) @ kron(psi, phi)
        expected = kron(np.diag([1, lam]) @ psi, phi)
        corollary.append(max_dist(out, expected))
    return [
        _identity_entry("hadamard_flip", flip),
        _identity_entry("x_absorption", absorb),
        _identity_entry("diagonal_commutation", diag),
        _identity_entry("eigenvector_phase_kickback", corollary),
    ]


def lemma_report(trials=10_000, seed=7):
    """Identity checks plus the entanglement criterion, as consumed by the CLI."""
    checks = check_identities(trials=min(trials, 100), seed=seed)
    checks.append(lemma1_suite(trials, seed, boundary_fraction=0.1))
    return {"seed": seed, "checks": checks,
            "failures": sum(c["failures"] for c in checks)}
