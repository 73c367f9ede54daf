"""Two-qubit circuits over the gate set {single-qubit unitary, CNOT}.

Gate lists are in time order (leftmost acts first), so the circuit operator
is the product of the gate embeddings taken right to left.
"""

import json
from dataclasses import dataclass

import numpy as np

from .linalg import (
    I2,
    NAMED,
    X,
    as_matrix,
    check_unitary,
    is_unitary,
    kron,
    phase_gate,
    ry,
    rz,
)

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)

# unitarity tolerance for gates read from outside
GATE_ATOL = 1e-8

CNOT10 = kron(_P0, I2) + kron(_P1, X)  # control q1, target q0
CNOT01 = kron(I2, _P0) + kron(X, _P1)  # control q0, target q1


class CircuitParseError(ValueError):
    """Malformed circuit or matrix JSON; ``index`` names the offending gate."""

    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"gate {index}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Single:
    wire: int
    matrix: np.ndarray
    label: str = "U"

    def __post_init__(self):
        if self.wire not in (0, 1):
            raise ValueError(f"bad wire index {self.wire!r}")
        m = check_unitary(self.matrix, atol=GATE_ATOL, name=f"gate {self.label}").copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def operator(self):
        if self.wire == 1:
            return kron(self.matrix, I2)
        return kron(I2, self.matrix)


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int

    def __post_init__(self):
        if {self.control, self.target} != {0, 1}:
            raise ValueError(f"invalid cnot (control={self.control}, target={self.target})")

    def operator(self):
        return CNOT10 if self.control == 1 else CNOT01


@dataclass(frozen=True, eq=False)
class Circuit:
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other):
        return Circuit(self.gates + tuple(other.gates))


def evaluate(circuit):
    """Operator (4x4) of ``circuit``; the empty circuit gives the identity."""
    op = np.eye(4, dtype=complex)
    for g in circuit:
        op = g.operator() @ op
    return op


def gate_count(circuit):
    return len(circuit.gates)


# -- matrix JSON ------------------------------------------------------------

def matrix_to_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _matrix_from_pairs(rows):
    try:
        a = np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise CircuitParseError(f"bad matrix payload: {exc}") from None
    try:
        return as_matrix(a)
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from None


def matrix_from_json(obj):
    """Parse the matrix schema: ``{"u": ...}``, ``{"name": ...}``, ``{"rz"|"ry"|"phase": angle}``.

    The result is not checked for unitarity; callers decide how strict to be.
    """
    if not isinstance(obj, dict):
        raise CircuitParseError("matrix spec must be a JSON object")
    if "u" in obj:
        return _matrix_from_pairs(obj["u"])
    if "name" in obj:
        name = obj["name"]
        if name not in NAMED:
            raise CircuitParseError(f"unknown matrix name {name!r}")
        return NAMED[name].copy()
    for key, ctor in (("rz", rz), ("ry", ry), ("phase", phase_gate)):
        if key in obj:
            try:
                return ctor(float(obj[key]))
            except (TypeError, ValueError):
                raise CircuitParseError(f"bad angle for {key!r}") from None
    raise CircuitParseError("matrix spec needs one of u, name, rz, ry, phase")


# -- circuit JSON -----------------------------------------------------------

def circuit_to_dict(circuit):
    gates = []
    for g in circuit:
        if isinstance(g, Cnot):
            gates.append({"kind": "cnot", "control": g.control, "target": g.target})
        else:
            gates.append(
                {"kind": "single", "wire": g.wire, "label": g.label,
                 "matrix": matrix_to_json(g.matrix)}
            )
    return {"qubits": 2, "gates": gates}


def to_json(circuit, indent=None):
    return json.dumps(circuit_to_dict(circuit), indent=indent, ensure_ascii=False)


def circuit_from_dict(data):
    if not isinstance(data, dict) or data.get("qubits") != 2:
        raise CircuitParseError('expected an object with "qubits": 2')
    raw = data.get("gates")
    if not isinstance(raw, list):
        raise CircuitParseError('"gates" must be a list')
    gates = []
    for i, g in enumerate(raw):
        if not isinstance(g, dict):
            raise CircuitParseError("gate must be an object", i)
        kind = g.get("kind")
        if kind == "cnot":
            c, t = g.get("control"), g.get("target")
            if c not in (0, 1) or t not in (0, 1) or isinstance(c, bool) or isinstance(t, bool):
                raise CircuitParseError("bad wire index", i)
            if c == t:
                raise CircuitParseError("invalid cnot", i)
            gates.append(Cnot(c, t))
        elif kind == "single":
            w = g.get("wire")
            if w not in (0, 1) or isinstance(w, bool):
                raise CircuitParseError("bad wire index", i)
            try:
                m = _matrix_from_pairs(g.get("matrix"))
            except CircuitParseError as exc:
                raise CircuitParseError(str(exc), i) from None
            if not is_unitary(m, atol=GATE_ATOL):
                raise CircuitParseError("non-unitary gate", i)
            gates.append(Single(w, m, str(g.get("label", "U"))))
        else:
            raise CircuitParseError(f"unknown gate kind {kind!r}", i)
    return Circuit(gates)


def from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError(f"malformed JSON: {exc}") from None
    return circuit_from_dict(data)


# -- rendering --------------------------------------------------------------

def render_ascii(circuit):
    """Two-row wire diagram; top row is wire 1 (control), bottom is wire 0."""
    top, bottom = ["─"], ["─"]
    for g in circuit:
        if isinstance(g, Cnot):
            cells = {g.control: "●", g.target: "⊕"}
        else:
            cells = {g.wire: f"[{g.label}]", 1 - g.wire: ""}
        width = max(len(cells[0]), len(cells[1]), 1)
        top.append(cells[1].center(width, "─") + "─")
        bottom.append(cells[0].center(width, "─") + "─")
    return "".join(top) + "\n" + "".join(bottom)
