"""Gate-optimal synthesis of controlled single-qubit unitaries.

For any 2x2 unitary ``U`` the package classifies ``U``, returns the minimal
number of elementary gates (CNOTs and single-qubit gates) for controlled-U,
builds a circuit with that many gates, and checks it by simulation.
"""

from .circuit import Circuit, Cnot, Single, evaluate, from_json, gate_count, render_ascii, to_json
from .classify import GateClass, classify, is_generic, sample
from .falsify import Template, enumerate_templates, falsify, optimize_template
from .linalg import eig_unitary2, exact_distance, phase_distance
from .qasm import to_qasm3
from .synth import (
    decompose_abc,
    decompose_traceless,
    decompose_xtraceless,
    synth,
    zyz,
)
from .verify import check_identities, check_lemma1, controlled, schmidt_entangled, verify

__version__ = "0.1.0"
