"""The single-qubit factorizations behind the circuits.

* zyz: ``U = e^{ia} Rz(b) Ry(c) Rz(d)``
* traceless U: ``U = e^{i phi} P X P^dagger``
* ``tr(UX) = 0``: the same form for ``UX``
* det U = 1: ``U = C X B X A`` with ``C B A = I``
"""

# %%
import numpy as np

from ctrlu.classify import sample
from ctrlu.linalg import H, X, ry, rz
from ctrlu.synth import decompose_abc, decompose_traceless, decompose_xtraceless, zyz

a, b, c, d = zyz(H)
print("zyz(H) =", np.round([a, b, c, d], 6))
print("rebuilt:", np.allclose(np.exp(1j * a) * rz(b) @ ry(c) @ rz(d), H))

# %%
u = sample("g", 3)
phi, p = decompose_traceless(u)
print(f"\ntraceless sample: phi = {phi:.4f}, "
      f"error {np.max(np.abs(np.exp(1j * phi) * p @ X @ p.conj().T - u)):.1e}")

u = sample("i", 3)
phi, p = decompose_xtraceless(u)
print(f"tr(UX) = 0 sample: phi = {phi:.4f}, "
      f"error {np.max(np.abs(np.exp(1j * phi) * p @ X @ p.conj().T @ X - u)):.1e}")

# %%
v = sample("j", 3)
A, B, C = decompose_abc(v)
print(f"\nABC: |CBA - I| = {np.max(np.abs(C @ B @ A - np.eye(2))):.1e}, "
      f"|CXBXA - V| = {np.max(np.abs(C @ X @ B @ X @ A - v)):.1e}")
