"""Searching for shorter circuits than the table allows.

For a budget of k gates the falsifier tries every CNOT pattern and slot
layout and fits the single-qubit angles by multi-start Nelder-Mead.  A
residual at or above 0.01 on every template says no k-gate circuit was
found; a residual near zero at k = m confirms the table.

Pass ``--full`` for the full sweep including a generic target at k = 5
(several minutes on one core).
"""

# %%
import sys
import time

from ctrlu import classify, falsify
from ctrlu.classify import M_VALUES, sample
from ctrlu.linalg import T, Z, rz

full = "--full" in sys.argv
restarts = 200 if full else 60
targets = [("Z", Z), ("Rz(0.7)", rz(0.7)), ("phase * I", sample("b", 0, margin=0.75))]
if full:
    targets += [("T", T), ("generic", sample("generic", 42, margin=0.75))]

# %%
for name, u in targets:
    m = classify(u).m
    t0 = time.perf_counter()
    below = falsify(u, m - 1, restarts=restarts, seed=42)
    at = falsify(u, m, restarts=restarts, seed=42, stop_below=1e-6)
    print(f"{name:10s} m = {m}:  k = {m - 1} -> {below.min_residual:.4f} ({below.verdict}),"
          f"  k = {m} -> {at.min_residual:.1e}   [{time.perf_counter() - t0:.0f} s]")

# %%
# per-class check at m - 1 on well-separated samples
if full:
    for tag in "bcdefgh":
        u = sample(tag, 0, margin=0.75)
        r = falsify(u, M_VALUES[tag] - 1, restarts=restarts, seed=42)
        print(f"class {tag}: k = {M_VALUES[tag] - 1} -> {r.min_residual:.4f}")
