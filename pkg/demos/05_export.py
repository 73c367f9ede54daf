"""Circuit JSON and OpenQASM 3 export, and reading both back."""

# %%
import numpy as np

from ctrlu import from_json, synth, to_json
from ctrlu.circuit import evaluate
from ctrlu.linalg import T
from ctrlu.qasm import from_qasm3, to_qasm3

circ = synth(T).circuit
text = to_json(circ, indent=1)
print(text[:300], "...\n")
print("JSON round trip bit-exact:", to_json(from_json(text), indent=1) == text)

# %%
qasm = to_qasm3(circ)
print(qasm)
err = np.max(np.abs(evaluate(from_qasm3(qasm)) - evaluate(circ)))
print(f"QASM re-simulation error {err:.1e}")
