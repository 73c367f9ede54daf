"""Numerical search for small circuits that implement a controlled-U.

A :class:`Template` fixes the CNOTs of a circuit and the positions of its
single-qubit gates.  Each single-qubit gate is ``e^{i a} Rz(b) Ry(c) Rz(d)``
and the free angles are fitted by a multi-start Nelder-Mead search run on
all restarts at once.  A search that stays far from zero over every
template with at most ``k`` gates is evidence (not proof) that no ``k``-gate
circuit exists.
"""

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .linalg import check_unitary
from .verify import controlled

THRESHOLD = 0.01
SOLVED = 1e-6
DEFAULT_RESTARTS = 200
MAX_BUDGET = 7
XATOL = 1e-9
MAX_EVALS = 20_000
INITIAL_STEP = 0.5


@dataclass(frozen=True)
class Template:
    """Circuit skeleton: CNOT targets plus the single-qubit slots per segment.

    ``cnots[i]`` is the target wire of the i-th CNOT (its control is the other
    wire).  ``slots`` has ``len(cnots) + 1`` entries, one per segment before,
    between and after the CNOTs, each a sorted tuple of wires.
    """

    cnots: tuple
    slots: tuple

    def __post_init__(self):
        if len(self.slots) != len(self.cnots) + 1:
            raise ValueError("need one slot set per segment")

    @property
    def n_slots(self):
        return sum(len(s) for s in self.slots)

    @property
    def gate_count(self):
        return len(self.cnots) + self.n_slots

    def key(self):
        """Integers identifying the template; seeds are derived from them."""
        masks = [sum(1 << w for w in s) for s in self.slots]
        return [len(self.cnots), *self.cnots, *masks]

    def cancels(self):
        """True if two equal CNOTs meet with no gate between them."""
        return any(
            self.cnots[i] == self.cnots[i + 1] and not self.slots[i + 1]
            for i in range(len(self.cnots) - 1)
        )

    def is_maximal(self, k):
        return self.gate_count == k or self.n_slots == 2 * len(self.slots)

    def circuit(self, params):
        """Instantiate with ``params`` of shape ``(n_slots, 4)``."""
        from .circuit import Circuit, Cnot, Single

        params = np.asarray(params, dtype=float).reshape(-1, 4)
        gates, j = [], 0
        for seg, wires in enumerate(self.slots):
            if seg > 0:
                t = self.cnots[seg - 1]
                gates.append(Cnot(1 - t, t))
            for w in wires:
                gates.append(Single(w, _slot_matrix(params[j]), "U"))
                j += 1
        return Circuit(gates)

    def to_dict(self):
        return {"cnots": [[1 - t, t] for t in self.cnots],
                "slots": [list(s) for s in self.slots]}


def count_templates(k):
    return sum(
        2**c * sum(comb(2 * (c + 1), s) for s in range(k - c + 1))
        for c in range(k + 1)
    )


def enumerate_templates(k):
    """All templates with at most ``k`` gates, at most one slot per wire per segment."""
    if not 0 <= k <= MAX_BUDGET:
        raise ValueError(f"gate budget must be in [0, {MAX_BUDGET}], got {k}")
    out = []
    for c in range(k + 1):
        positions = [(seg, w) for seg in range(c + 1) for w in (1, 0)]
        for cnots in itertools.product((0, 1), repeat=c):
            for s in range(min(k - c, len(positions)) + 1):
                for chosen in itertools.combinations(positions, s):
                    slots = tuple(
                        tuple(sorted(w for sg, w in chosen if sg == seg))
                        for seg in range(c + 1)
                    )
                    out.append(Template(cnots, slots))
    return out


def _slot_matrix(p):
    a, b, c, d = p
    ch, sh = np.cos(c / 2), np.sin(c / 2)
    return np.exp(1j * a) * np.array(
        [[np.exp(-0.5j * (b + d)) * ch, -np.exp(-0.5j * (b - d)) * sh],
         [np.exp(0.5j * (b - d)) * sh, np.exp(0.5j * (b + d)) * ch]]
    )


def _batch_gates(p):
    # p: (..., 4) -> (..., 2, 2)
    a, b, c, d = np.moveaxis(p, -1, 0)
    ch, sh = np.cos(c / 2), np.sin(c / 2)
    ph = np.exp(1j * a)
    g = np.empty(p.shape[:-1] + (2, 2), dtype=complex)
    g[..., 0, 0] = ph * np.exp(-0.5j * (b + d)) * ch
    g[..., 0, 1] = -ph * np.exp(-0.5j * (b - d)) * sh
    g[..., 1, 0] = ph * np.exp(0.5j * (b - d)) * sh
    g[..., 1, 1] = ph * np.exp(0.5j * (b + d)) * ch
    return g


# row permutations applied by each CNOT, indexed by target wire
_CNOT_ROWS = {0: [0, 1, 3, 2], 1: [0, 3, 2, 1]}


class _Objective:
    """Vectorized residual of a template against a 4x4 target."""

    def __init__(self, template, target, metric):
        self.template = template
        self.target = np.asarray(target, dtype=complex)
        self.metric = metric
        self.conj_target = np.conj(self.target)
        # free angles per slot: the phase angle only matters for the exact metric
        self.per_slot = 4 if metric == "exact" else 3
        self.dim = self.per_slot * template.n_slots

    def full_params(self, x):
        x = np.asarray(x, dtype=float).reshape(x.shape[:-1] + (self.template.n_slots, self.per_slot))
        if self.per_slot == 4:
            return x
        return np.concatenate([np.zeros(x.shape[:-1] + (1,)), x], axis=-1)

    def operators(self, x):
        """Circuit operators for a batch of parameter vectors ``x`` (R, dim)."""
        x = np.atleast_2d(x)
        r = x.shape[0]
        gates = _batch_gates(self.full_params(x)) if self.dim else None
        op = np.broadcast_to(np.eye(4, dtype=complex), (r, 4, 4))
        j = 0
        for seg, wires in enumerate(self.template.slots):
            if seg > 0:
                op = op[:, _CNOT_ROWS[self.template.cnots[seg - 1]], :]
            if not wires:
                continue
            op = op.reshape(r, 2, 2, 4)  # (q1, q0, col)
            for w in wires:
                g = gates[:, j].reshape(r, 2, 2, 1, 1, 1)
                # explicit 2x2 products are much cheaper than einsum on tiny batches
                if w == 1:
                    lo, hi = op[:, 0:1], op[:, 1:2]
                    op = np.concatenate([g[:, 0, 0] * lo + g[:, 0, 1] * hi,
                                         g[:, 1, 0] * lo + g[:, 1, 1] * hi], axis=1)
                else:
                    lo, hi = op[:, :, 0:1], op[:, :, 1:2]
                    op = np.concatenate([g[:, 0, 0] * lo + g[:, 0, 1] * hi,
                                         g[:, 1, 0] * lo + g[:, 1, 1] * hi], axis=2)
                j += 1
            op = op.reshape(r, 4, 4)
        return np.array(op)

    def __call__(self, x):
        op = self.operators(x)
        if self.metric == "exact":
            return np.max(np.abs(op - self.target), axis=(1, 2))
        overlap = np.abs(np.einsum("rij,ij->r", op, self.conj_target)) / 4
        return np.clip(1.0 - overlap, 0.0, 1.0)


def nelder_mead_batch(f, x0, step=INITIAL_STEP, xatol=XATOL, max_evals=MAX_EVALS):
    """Independent Nelder-Mead runs from each row of ``x0``, advanced together.

    ``f`` maps an ``(m, n)`` array of points to ``m`` values.  A run stops when
    its simplex diameter (max-norm distance of every vertex from the best
    one) drops below ``xatol`` or after ``max_evals`` evaluations.  Returns
    ``(best_x, best_f, evals)`` per run.
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    runs, n = x0.shape
    if n == 0:
        fx = f(x0)
        return x0.copy(), fx, np.ones(runs, dtype=int)
    sim = np.repeat(x0[:, None, :], n + 1, axis=1)
    sim[:, 1:, :] += step * np.eye(n)
    fs = f(sim.reshape(-1, n)).reshape(runs, n + 1)
    evals = np.full(runs, n + 1)
    active = np.arange(runs)
    while active.size:
        s, fv = sim[active], fs[active]
        order = np.argsort(fv, axis=1, kind="stable")
        s = np.take_along_axis(s, order[:, :, None], axis=1)
        fv = np.take_along_axis(fv, order, axis=1)
        diam = np.max(np.abs(s[:, 1:] - s[:, :1]), axis=(1, 2))
        done = (diam < xatol) | (evals[active] >= max_evals)
        sim[active], fs[active] = s, fv
        keep = ~done
        active, s, fv = active[keep], s[keep], fv[keep]
        if not active.size:
            break

        best, second, worst = fv[:, 0], fv[:, -2], fv[:, -1]
        cen = s[:, :-1].mean(axis=1)
        xw = s[:, -1]
        xr = 2 * cen - xw
        fr = f(xr)
        evals[active] += 1

        expand = fr < best
        accept = (fr >= best) & (fr < second)
        outside = (fr >= second) & (fr < worst)
        inside = fr >= worst
        x2 = np.where(expand[:, None], 3 * cen - 2 * xw,
                      np.where(outside[:, None], 1.5 * cen - 0.5 * xw, 0.5 * (cen + xw)))
        need = ~accept
        f2 = np.full(active.size, np.inf)
        if need.any():
            f2[need] = f(x2[need])
            evals[active[need]] += 1

        new_x, new_f = xr.copy(), fr.copy()
        take2 = (expand & (f2 < fr)) | (outside & (f2 <= fr)) | (inside & (f2 < worst))
        new_x[take2], new_f[take2] = x2[take2], f2[take2]
        shrink = (outside & ~(f2 <= fr)) | (inside & ~(f2 < worst))

        s[:, -1], fv[:, -1] = new_x, new_f
        if shrink.any():
            ss = s[shrink]
            ss[:, 1:] = ss[:, :1] + 0.5 * (ss[:, 1:] - ss[:, :1])
            fnew = f(ss[:, 1:].reshape(-1, n)).reshape(-1, n)
            fvs = fv[shrink]
            fvs[:, 1:] = fnew
            s[shrink], fv[shrink] = ss, fvs
            evals[active[shrink]] += n
        sim[active], fs[active] = s, fv

    best = np.argmin(fs, axis=1)
    bx = sim[np.arange(runs), best]
    return bx, fs[np.arange(runs), best], evals


def template_seed(seed, template):
    return np.random.SeedSequence([int(seed), *template.key()])


def optimize_template(template, target, metric="phase", restarts=DEFAULT_RESTARTS, seed=0,
                      xatol=XATOL, max_evals=MAX_EVALS):
    """Best residual of ``template`` against the 4x4 ``target``.

    Returns ``(residual, params)`` with ``params`` of shape ``(n_slots, 4)``.
    Deterministic for a given ``seed``.
    """
    if metric not in ("phase", "exact"):
        raise ValueError(f"unknown metric {metric!r}")
    obj = _Objective(template, target, metric)
    rng = np.random.default_rng(template_seed(seed, template))
    x0 = rng.uniform(-np.pi, np.pi, size=(restarts, obj.dim))
    bx, bf, _ = nelder_mead_batch(obj, x0, xatol=xatol, max_evals=max_evals)
    i = int(np.argmin(bf))
    params = obj.full_params(bx[i]) if obj.dim else np.zeros((0, 4))
    return float(bf[i]), np.asarray(params).reshape(-1, 4)


def search_templates(k, prune=True):
    """Templates that must be searched to find the best ``k``-gate residual.

    With ``prune`` only maximal templates (no slot can be added within the
    budget) without a cancelling CNOT pair are kept; every other template is
    a special case of one of these, so the overall minimum is unchanged.
    """
    templates = enumerate_templates(k)
    if not prune:
        return templates
    return [t for t in templates if t.is_maximal(k) and not t.cancels()]


@dataclass
class FalsifyReport:
    target: np.ndarray
    k: int
    metric: str
    restarts: int
    seed: int
    threshold: float
    templates: list = field(default_factory=list)
    enumerated: int = 0

    @property
    def min_residual(self):
        return min(r for _, r, _ in self.templates) if self.templates else float("nan")

    @property
    def verdict(self):
        if self.min_residual <= SOLVED:
            return "realization found"
        if self.min_residual >= self.threshold:
            return "no realization found"
        return "inconclusive"

    def to_dict(self):
        from .circuit import matrix_to_json

        return {
            "target": matrix_to_json(self.target),
            "k": self.k,
            "metric": self.metric,
            "restarts": self.restarts,
            "seed": self.seed,
            "templates_enumerated": self.enumerated,
            "templates_searched": len(self.templates),
            "templates": [
                {**t.to_dict(), "residual": r, "params": np.asarray(p).tolist()}
                for t, r, p in self.templates
            ],
            "min_residual": self.min_residual,
            "threshold": self.threshold,
            "verdict": self.verdict,
        }


def falsify(u, k, restarts=DEFAULT_RESTARTS, seed=0, metric="phase", threshold=THRESHOLD,
            prune=True, stop_below=None, templates=None):
    """Search every template with at most ``k`` gates for controlled-``u``.

    ``stop_below`` ends the sweep as soon as one template reaches that
    residual (useful when only existence at budget ``k`` is in question).
    """
    u = check_unitary(u, atol=1e-8)
    target = controlled(u)
    if templates is None:
        templates = search_templates(k, prune)
    report = FalsifyReport(u, k, metric, restarts, seed, threshold,
                           enumerated=count_templates(k))
    for t in templates:
        r, p = optimize_template(t, target, metric, restarts, seed)
        report.templates.append((t, r, p))
        if stop_below is not None and r <= stop_below:
            break
    return report
