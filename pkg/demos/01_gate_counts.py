"""Gate counts of controlled single-qubit gates.

Every 2x2 unitary falls into one of eleven classes, and the class fixes how
many elementary gates (CNOTs plus single-qubit gates) an optimal circuit for
controlled-U needs.  This script classifies a few familiar gates, builds
their circuits, and checks them against the 4x4 target.
"""

# %%
import numpy as np

from ctrlu import classify, render_ascii, synth, verify
from ctrlu.linalg import H, I2, S, T, X, Z, haar_unitary, rz

gates = {"I": I2, "X": X, "Z": Z, "H": H, "S": S, "T": T, "Rz(0.7)": rz(0.7),
         "-X": -X, "random": haar_unitary(np.random.default_rng(7))}

# %%
# Classification only looks at three numbers: tr U, tr UX and det U.
for name, u in gates.items():
    r = classify(u)
    print(f"{name:8s} class {r.tag:8s} m = {r.m}   |tr U| = {abs(r.trace):.3f}  "
          f"|tr UX| = {abs(r.trace_ux):.3f}  det U = {np.round(r.det, 3)}")

# %%
# Circuits are exact, not just up to a global phase.
for name in ("X", "Z", "T", "random"):
    res = synth(gates[name])
    print(f"\n{name}: {res.m} gates, exact error {res.exact_error:.1e}, "
          f"verified {verify(res.circuit, gates[name]).passed}")
    print(render_ascii(res.circuit))
