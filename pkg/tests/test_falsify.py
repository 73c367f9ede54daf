import numpy as np
import pytest

from ctrlu.classify import sample
from ctrlu.falsify import (
    Template,
    count_templates,
    enumerate_templates,
    falsify,
    nelder_mead_batch,
    optimize_template,
    search_templates,
)
from ctrlu.linalg import I2, T, X, haar_unitary, phase_distance
from ctrlu.circuit import evaluate
from ctrlu.verify import controlled

C3 = Template((0, 0), ((0,), (0,), (0,)))


def test_template_counts():
    assert count_templates(0) == 1
    assert [len(enumerate_templates(k)) for k in range(6)] == [count_templates(k) for k in range(6)]
    one = [t for t in enumerate_templates(1) if t.gate_count == 1]
    assert len(one) == 4  # a gate on either wire, or a CNOT either way
    assert C3 in enumerate_templates(5) and C3 in search_templates(5)
    with pytest.raises(ValueError):
        enumerate_templates(8)
    with pytest.raises(ValueError):
        enumerate_templates(-1)


def test_pruned_templates_cover_the_rest():
    # every template is a sub-template of a kept one: same CNOTs after
    # dropping cancelling pairs is not checked here, only slot inclusion
    for k in range(5):
        kept = search_templates(k)
        for t in enumerate_templates(k):
            if t.cancels():
                continue
            assert any(s.cnots == t.cnots and all(set(a) <= set(b) for a, b in zip(t.slots, s.slots))
                       for s in kept)


def test_template_circuit_matches_objective(rng):
    from ctrlu.falsify import _Objective

    target = controlled(haar_unitary(rng))
    for t in search_templates(4)[::3]:
        obj = _Objective(t, target, "exact")
        x = rng.uniform(-np.pi, np.pi, (2, obj.dim))
        ops = obj.operators(x)
        for op, xi in zip(ops, x):
            assert np.max(np.abs(op - evaluate(t.circuit(obj.full_params(xi))))) <= 1e-13


def test_empty_template_closed_form():
    r, params = optimize_template(Template((), ((),)), controlled(X), restarts=3)
    assert r == pytest.approx(0.5, abs=1e-15) and params.shape == (0, 4)


def test_nelder_mead_batch_quadratic():
    centre = np.array([0.3, -1.2, 2.0])
    f = lambda x: np.sum((x - centre) ** 2, axis=1)  # noqa: E731
    x0 = np.random.default_rng(0).uniform(-3, 3, (5, 3))
    bx, bf, evals = nelder_mead_batch(f, x0)
    assert np.max(np.abs(bx - centre)) <= 1e-8 and np.all(bf <= 1e-15)
    assert np.all(evals < 20_000)


def test_c3_finds_j_sample():
    u = sample("j", 3)
    r, params = optimize_template(C3, controlled(u), restarts=50, seed=1)
    assert r <= 1e-6
    assert phase_distance(evaluate(C3.circuit(params)), controlled(u)) <= 1e-6


def test_single_cnot_templates_miss_t():
    target = controlled(T)
    for t in search_templates(4):
        if len(t.cnots) == 1:
            r, _ = optimize_template(t, target, restarts=100, seed=42)
            assert r >= 0.01


def test_phase_x():
    u = np.exp(0.9j) * X
    assert falsify(u, 2, restarts=50, seed=42).min_residual <= 1e-6
    rep = falsify(u, 1, restarts=200, seed=42)
    assert rep.min_residual >= 0.01 and rep.verdict == "no realization found"


def test_determinism_and_monotone_budget():
    u = sample("e", 4)
    a = falsify(u, 2, restarts=30, seed=9)
    b = falsify(u, 2, restarts=30, seed=9)
    assert a.to_dict() == b.to_dict()
    # every k-gate template is also a (k+1)-gate template with an idle slot,
    # so the exhaustive search can only improve with the budget
    r = [falsify(u, k, restarts=30, seed=9, prune=False).min_residual for k in range(4)]
    assert all(x >= y - 1e-12 for x, y in zip(r, r[1:]))
    assert r[3] <= 1e-6


def test_report_json():
    rep = falsify(I2, 0, restarts=5)
    d = rep.to_dict()
    assert d["min_residual"] == 0 and d["verdict"] == "realization found"
    assert d["templates_enumerated"] == 1 and d["threshold"] == 0.01
    assert {"cnots", "slots", "residual", "params"} <= set(d["templates"][0])


@pytest.mark.slow
@pytest.mark.parametrize("tag", ["b", "c", "d", "e", "f", "g", "h", "i", "j"])
def test_consistency_with_synthesis(tag):
    # a circuit exists at budget m and none is found at m - 1;
    # samples sit well away from every neighbouring class (see README)
    from ctrlu.classify import M_VALUES

    m = M_VALUES[tag]
    for seed in range(1 if m >= 5 else 2):
        u = sample(tag, seed, margin=0.75)
        assert falsify(u, m, restarts=100, seed=42, stop_below=1e-6).min_residual <= 1e-6
        assert falsify(u, m - 1, restarts=200, seed=42).min_residual >= 0.01
