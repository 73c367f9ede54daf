"""Gate-count classes of controlled-U and samplers for each class.

Every 2x2 unitary ``U`` falls in exactly one class; the class fixes the
minimal number of elementary gates (CNOTs and single-qubit gates) needed for
controlled-U:

=====  ==========================================================  ===
tag    condition                                                   m
=====  ==========================================================  ===
a      U = I                                                       0
b      U = e^{i phi} I, phi != 0                                   1
c      U = X                                                       1
d      U = e^{i phi} X, phi != 0                                   2
e      U = e^{i phi} Z                                             3
f      tr U = 0, det U = -1, U != +-X                              3
g      tr U = 0, det U != -1, not of forms c-e                     4
h      tr UX = 0, tr U != 0, det U = 1, U != +-I                   4
i      tr UX = 0, tr U != 0, det U != 1, U not scalar              5
j      det U = 1, tr U != 0, tr UX != 0                            5
gen.   det U != 1, tr U != 0, tr UX != 0                           6
=====  ==========================================================  ===
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .linalg import I2, X, Z, check_unitary, haar_unitary, max_dist

DEFAULT_EPS = 1e-9
SAMPLE_MARGIN = 1e-3
MAX_SAMPLE_ATTEMPTS = 10_000


class GateClass(Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"
    F = "f"
    G = "g"
    H = "h"
    I = "i"  # noqa: E741
    J = "j"
    GENERIC = "generic"

    @property
    def tag(self):
        return self.value

    @property
    def m(self):
        return M_VALUES[self.value]


M_VALUES = {
    "a": 0, "b": 1, "c": 1, "d": 2, "e": 3, "f": 3,
    "g": 4, "h": 4, "i": 5, "j": 5, "generic": 6,
}
TAGS = tuple(M_VALUES)


def _as_class(tag):
    return tag if isinstance(tag, GateClass) else GateClass(tag)


@dataclass
class ClassificationReport:
    cls: GateClass
    trace: complex
    trace_ux: complex
    det: complex
    eps: float
    margins: dict = field(default_factory=dict)

    @property
    def tag(self):
        return self.cls.tag

    @property
    def m(self):
        return self.cls.m

    @property
    def near_boundary(self):
        """True if a quantity judged nonzero is within 100 eps of zero."""
        return any(self.eps < v < 100 * self.eps for v in self.margins.values())

    def to_dict(self):
        pair = lambda z: [float(z.real), float(z.imag)]  # noqa: E731
        return {
            "tag": self.tag,
            "m": self.m,
            "trace": pair(self.trace),
            "trace_ux": pair(self.trace_ux),
            "det": pair(self.det),
            "eps": self.eps,
            "margins": {k: float(v) for k, v in self.margins.items()},
            "near_boundary": self.near_boundary,
        }


def _witnesses(u):
    tr = complex(np.trace(u))
    tr_ux = complex(u[0, 1] + u[1, 0])
    det = complex(u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0])
    margins = {
        "trace": abs(tr),
        "trace_ux": abs(tr_ux),
        "det_minus_one": abs(det - 1),
        "det_plus_one": abs(det + 1),
        "diagonal": max(abs(u[0, 0]), abs(u[1, 1])),
        "off_diagonal": max(abs(u[0, 1]), abs(u[1, 0])),
        "x_asymmetry": abs(u[0, 1] - u[1, 0]),
        "scalar_spread": abs(u[0, 0] - u[1, 1]),
    }
    return tr, tr_ux, det, margins


def _decide(u, eps):
    tr, tr_ux, det, mg = _witnesses(u)
    if abs(tr) <= eps:
        if mg["diagonal"] <= eps and mg["x_asymmetry"] <= eps:
            tag = "c" if max_dist(u, X) <= eps else "d"
        elif mg["off_diagonal"] <= eps:
            tag = "e"
        elif abs(det + 1) <= eps:
            tag = "f"
        else:
            tag = "g"
    elif abs(tr_ux) <= eps:
        if mg["off_diagonal"] <= eps and mg["scalar_spread"] <= eps:
            tag = "a" if max_dist(u, I2) <= eps else "b"
        elif abs(det - 1) <= eps:
            tag = "h"
        else:
            tag = "i"
    elif abs(det - 1) <= eps:
        tag = "j"
    else:
        tag = "generic"
    return ClassificationReport(GateClass(tag), tr, tr_ux, det, eps, mg)


def classify(u, eps=DEFAULT_EPS):
    """Classify ``u`` and return a :class:`ClassificationReport`.

    Boundary cases follow the fixed precedence ``tr U = 0``, then
    ``tr UX = 0``, then ``det U = 1``.
    """
    if not 0 < eps <= 1e-3:
        raise ValueError(f"eps must lie in (0, 1e-3], got {eps}")
    u = check_unitary(u, atol=1e-8)
    return _decide(u, eps)


def is_generic(u, eps=DEFAULT_EPS):
    u = check_unitary(u, atol=1e-8)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    return bool(
        abs(det - 1) > eps and abs(np.trace(u)) > eps and abs(u[0, 1] + u[1, 0]) > eps
    )


def _phase(rng):
    return np.exp(1j * rng.uniform(0, 2 * np.pi))


def _x_traceless_su2(rng):
    # SU(2) element [[a, -b*], [b, a*]] with b real, so tr(UX) = b - b* = 0
    v = haar_unitary(rng)
    v = v / np.sqrt(np.linalg.det(v))
    a, b = v[0, 0], abs(v[1, 0]) * rng.choice([-1.0, 1.0])
    return np.array([[a, -b], [b, np.conj(a)]])


def _draw(tag, rng):
    if tag == "a":
        return I2.copy()
    if tag == "b":
        return _phase(rng) * I2
    if tag == "c":
        return X.copy()
    if tag == "d":
        return _phase(rng) * X
    if tag == "e":
        return _phase(rng) * Z
    if tag in ("f", "g"):
        p = haar_unitary(rng)
        u = p @ X @ p.conj().T
        return u if tag == "f" else _phase(rng) * u
    if tag == "h":
        return _x_traceless_su2(rng)
    if tag == "i":
        return _phase(rng) * _x_traceless_su2(rng)
    u = haar_unitary(rng)
    if tag == "j":
        u = u / np.sqrt(np.linalg.det(u))
    return u


def sample(tag, rng_seed, margin=SAMPLE_MARGIN):
    """Draw a unitary of class ``tag``, deterministic in ``rng_seed``.

    Draws are rejected until the class decision is unchanged when the
    tolerance is widened to ``margin``, so every quantity that must be
    nonzero for the class exceeds ``margin`` in modulus.
    """
    tag = _as_class(tag).tag
    rng = np.random.default_rng(rng_seed)
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        u = _draw(tag, rng)
        if _decide(u, margin).tag == tag and _decide(u, DEFAULT_EPS).tag == tag:
            return u
    raise RuntimeError(f"could not sample class {tag!r} with margin {margin}")
