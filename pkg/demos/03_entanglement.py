"""When does controlled-U entangle a product input?

For ``|psi>|phi>`` the output of controlled-U is entangled exactly when both
amplitudes of ``psi`` are nonzero and ``phi`` is not an eigenvector of U.
The prediction is compared with a Schmidt-rank test on random inputs, then
the circuit identities used by the constructions are checked numerically.
"""

# %%
import numpy as np

from ctrlu.linalg import KET0, KET1, X
from ctrlu.verify import check_identities, controlled, lemma1_suite, schmidt_entangled

plus = (KET0 + KET1) / np.sqrt(2)
print("CNOT |+>|0> entangled:", schmidt_entangled(controlled(X) @ np.kron(plus, KET0)))
print("CNOT |+>|+> entangled:", schmidt_entangled(controlled(X) @ np.kron(plus, plus)))

# %%
r = lemma1_suite(10_000, seed=42)
print(f"\n{r['trials']} random triples, {r['failures']} disagreements")

# %%
for c in check_identities(trials=100, seed=42):
    print(f"{c['name']:28s} max residual {c['max_residual']:.1e}")
