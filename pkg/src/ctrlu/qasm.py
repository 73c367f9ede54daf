"""OpenQASM 3 export of two-qubit circuits, and a reader for the emitted subset.

Single-qubit gates are written through a 4-parameter gate ``zyz`` that keeps
the gate's phase (``gphase``), because inside a controlled-U circuit a gate's
phase is not always global.  Pure phase gates ``diag(1, e^{i t})`` are
written as ``p(t)``.  Wire ``w`` is ``q[w]``.
"""

import re

import numpy as np

from .circuit import Circuit, Cnot, Single
from .linalg import ry, rz
from .synth import zyz

HEADER = [
    "OPENQASM 3.0;",
    'include "stdgates.inc";',
    "gate zyz(a, b, c, d) t { gphase(a); rz(d) t; ry(c) t; rz(b) t; }",
    "qubit[2] q;",
]

_ANGLE_ATOL = 1e-12


def _wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def _single_statement(g):
    a, b, c, d = zyz(g.matrix)
    lam = b + d
    # zyz reduces to diag(1, e^{i lam}) when c = 0 and the phase is a - lam/2
    if abs(c) <= _ANGLE_ATOL and abs(_wrap(a - lam / 2)) <= _ANGLE_ATOL:
        return f"p({float(lam)!r}) q[{g.wire}];"
    return f"zyz({a!r}, {b!r}, {c!r}, {d!r}) q[{g.wire}];"


def to_qasm3(circuit):
    lines = list(HEADER)
    for g in circuit:
        if isinstance(g, Cnot):
            lines.append(f"cx q[{g.control}], q[{g.target}];")
        else:
            lines.append(_single_statement(g))
    return "\n".join(lines) + "\n"


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_CX = re.compile(r"^cx\s+q\[([01])\]\s*,\s*q\[([01])\]\s*;$")
_P = re.compile(rf"^p\(\s*({_NUM})\s*\)\s+q\[([01])\]\s*;$")
_ZYZ = re.compile(
    rf"^zyz\(\s*({_NUM})\s*,\s*({_NUM})\s*,\s*({_NUM})\s*,\s*({_NUM})\s*\)\s+q\[([01])\]\s*;$"
)


def from_qasm3(text):
    """Read back a program produced by :func:`to_qasm3`."""
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line in HEADER:
            continue
        if m := _CX.match(line):
            gates.append(Cnot(int(m[1]), int(m[2])))
        elif m := _P.match(line):
            gates.append(Single(int(m[2]), np.diag([1.0, np.exp(1j * float(m[1]))]), "p"))
        elif m := _ZYZ.match(line):
            a, b, c, d = (float(m[i]) for i in range(1, 5))
            mat = np.exp(1j * a) * rz(b) @ ry(c) @ rz(d)
            gates.append(Single(int(m[5]), mat, "zyz"))
        else:
            raise ValueError(f"line {lineno}: unsupported statement {line!r}")
    return Circuit(gates)
