"""Gate-optimal circuits for controlled-U.

Each class from :mod:`ctrlu.classify` has a fixed circuit shape.  With
``E = diag(1, e^{i phi})`` on the control wire and ``P``, ``A``, ``B``,
``C`` on the target wire, the general shapes are::

    C1 (tr U = 0):      E, P^dag, CNOT, P                    U = e^{i phi} P X P^dag
    C2 (tr UX = 0):     CNOT, E, P^dag, CNOT, P              U = e^{i phi} P X P^dag X
    C3 (det U = 1):     A, CNOT, B, CNOT, C                  U = C X B X A, C B A = I
    C4 (otherwise):     E, A, CNOT, B, CNOT, C               U = e^{i phi} C X B X A

``E`` is dropped whenever ``phi = 0``.  All CNOTs have control wire 1 and
target wire 0 except the single flipped CNOT of the ``e^{i phi} Z`` circuit.
"""

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Cnot, Single, circuit_to_dict, evaluate, matrix_to_json
from .classify import GateClass, classify
from .verify import controlled
from .linalg import (
    H,
    I2,
    PRED_ATOL,
    X,
    check_unitary,
    eig_unitary2,
    max_dist,
    phase_gate,
    ry,
    rz,
)

EXACT_ATOL = 1e-10
FAILURE_ATOL = 1e-8


class PreconditionError(ValueError):
    """Input lies outside the domain of a decomposition."""


class SynthesisError(RuntimeError):
    """Synthesized circuit misses the target by more than the allowed residual."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3g})")
        self.residual = residual


@dataclass(frozen=True)
class ZyzAngles:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma, self.delta))

    def matrix(self):
        return np.exp(1j * self.alpha) * rz(self.beta) @ ry(self.gamma) @ rz(self.delta)


def _wrap(x):
    # into (-pi, pi]
    y = np.mod(x + np.pi, 2 * np.pi) - np.pi
    if y <= -np.pi + 1e-12:
        y += 2 * np.pi
    return float(y)


def zyz(u):
    """Euler angles with ``u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)``.

    ``gamma`` lies in ``[0, pi]``; ``alpha``, ``beta`` and ``delta`` in
    ``(-pi, pi]``.  When ``gamma`` is 0 or ``pi`` only ``beta + delta`` (or
    ``beta - delta``) is determined and ``delta`` is set to 0.
    """
    u = check_unitary(u)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    v = u / np.sqrt(det)
    a, b = v[0, 0], v[1, 0]
    gamma = float(2 * np.arctan2(abs(b), abs(a)))
    if abs(b) <= 1e-12:
        beta, delta = _wrap(-2 * np.angle(a)), 0.0
    elif abs(a) <= 1e-12:
        beta, delta = _wrap(2 * np.angle(b)), 0.0
    else:
        s = -2 * np.angle(a)  # beta + delta
        d = 2 * np.angle(b)  # beta - delta
        beta, delta = _wrap((s + d) / 2), _wrap((s - d) / 2)
    rot = rz(beta) @ ry(gamma) @ rz(delta)
    alpha = _wrap(np.angle(np.sum(np.conj(rot) * u)))
    return ZyzAngles(alpha, beta, gamma, delta)


def decompose_traceless(u):
    """Write a traceless unitary as ``e^{i phi} P X P^dag``; returns ``(phi, P)``.

    ``e^{i phi}`` is the first eigenvalue from :func:`eig_unitary2`, except
    when ``det u = -1``, where the ``+1`` eigenvalue is used so that
    ``phi = 0``.
    """
    u = check_unitary(u)
    if abs(np.trace(u)) > PRED_ATOL:
        raise PreconditionError(f"matrix is not traceless (|tr| = {abs(np.trace(u)):.3g})")
    lam0, lam1, v0, v1 = eig_unitary2(u)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    if abs(det + 1) <= PRED_ATOL:
        if abs(lam1 - 1) < abs(lam0 - 1):
            v0, v1 = v1, v0
        phi = 0.0
    else:
        phi = float(np.mod(np.angle(lam0), 2 * np.pi))
    w = np.column_stack([v0, v1])
    return phi, w @ H


def decompose_xtraceless(u):
    """Write a unitary with ``tr(uX) = 0`` as ``e^{i phi} P X P^dag X``."""
    u = check_unitary(u)
    if abs(u[0, 1] + u[1, 0]) > PRED_ATOL:
        raise PreconditionError(
            f"tr(uX) is not zero (|tr(uX)| = {abs(u[0, 1] + u[1, 0]):.3g})"
        )
    return decompose_traceless(u @ X)


def decompose_abc(v):
    """Factor a determinant-one unitary as ``v = C X B X A`` with ``C B A = I``."""
    v = check_unitary(v)
    det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
    if abs(det - 1) > PRED_ATOL:
        raise PreconditionError(f"det is not 1 (|det - 1| = {abs(det - 1):.3g})")
    alpha, beta, gamma, delta = zyz(v)
    if np.cos(alpha) < 0:
        # Ry(gamma + 2 pi) = -Ry(gamma) absorbs e^{i alpha} = -1
        gamma += 2 * np.pi
    c = rz(beta) @ ry(gamma / 2)
    b = ry(-gamma / 2) @ rz(-(delta + beta) / 2)
    a = rz((delta - beta) / 2)
    return a, b, c


@dataclass
class SynthesisResult:
    circuit: Circuit
    cls: GateClass
    factors: dict = field(default_factory=dict)
    exact_error: float = 0.0

    @property
    def m(self):
        return self.cls.m

    def to_dict(self):
        factors = {}
        for k, val in self.factors.items():
            factors[k] = float(val) if np.isscalar(val) else {"u": matrix_to_json(val)}
        return {
            "class": self.cls.tag,
            "m": self.m,
            "exact_error": self.exact_error,
            "circuit": circuit_to_dict(self.circuit),
            "factors": factors,
        }


def _c1(phi, p):
    gates = [] if phi == 0 else [Single(1, phase_gate(phi), "E")]
    return gates + [Single(0, p.conj().T, "P†"), Cnot(1, 0), Single(0, p, "P")]


def _abc_gates(v):
    a, b, c = decompose_abc(v)
    gates = [Single(0, a, "A"), Cnot(1, 0), Single(0, b, "B"), Cnot(1, 0), Single(0, c, "C")]
    return gates, {"A": a, "B": b, "C": c}


def synth(u, eps=None):
    """Optimal circuit for controlled-``u``; see the module docstring for shapes."""
    u = check_unitary(u, atol=1e-8)
    report = classify(u) if eps is None else classify(u, eps)
    tag = report.tag
    factors = {}
    if tag == "a":
        gates = []
    elif tag == "b":
        phi = float(np.angle(np.trace(u) / 2))
        factors = {"phi": phi, "E": phase_gate(phi)}
        gates = [Single(1, phase_gate(phi), "E")]
    elif tag == "c":
        gates = [Cnot(1, 0)]
    elif tag == "d":
        phi = float(np.angle((u[0, 1] + u[1, 0]) / 2))
        factors = {"phi": phi, "P": I2, "E": phase_gate(phi)}
        gates = [Single(1, phase_gate(phi), "E"), Cnot(1, 0)]
    elif tag == "e":
        phi0 = float(np.angle((u[0, 0] - u[1, 1]) / 2))
        a = phase_gate(phi0)
        factors = {"phi": phi0, "A": a}
        gates = [Single(1, H @ a, "HA"), Cnot(0, 1), Single(1, H, "H")]
    elif tag in ("f", "g"):
        phi, p = decompose_traceless(u)
        factors = {"phi": phi, "P": p, "E": phase_gate(phi)}
        gates = _c1(phi, p)
    elif tag in ("h", "i"):
        phi, p = decompose_xtraceless(u)
        factors = {"phi": phi, "P": p, "E": phase_gate(phi)}
        gates = [Cnot(1, 0)] + _c1(phi, p)
    elif tag == "j":
        gates, factors = _abc_gates(u)
    else:
        phi = float(np.angle(report.det) / 2)
        v = u * np.exp(-1j * phi)
        abc, factors = _abc_gates(v)
        factors = {"phi": phi, "E": phase_gate(phi), **factors}
        gates = [Single(1, phase_gate(phi), "E")] + abc
    circuit = Circuit(gates)
    err = max_dist(evaluate(circuit), controlled(u))
    if err > FAILURE_ATOL:
        raise SynthesisError(f"class {tag} circuit does not implement controlled-U", err)
    return SynthesisResult(circuit, report.cls, factors, err)
