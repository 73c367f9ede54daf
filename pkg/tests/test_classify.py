import numpy as np
import pytest

from ctrlu.classify import M_VALUES, TAGS, GateClass, classify, is_generic, sample
from ctrlu.linalg import H, I2, S, T, X, Z, rz


def _close(a, b, tol=1e-9):
    return np.max(np.abs(a - b)) <= tol


def _scalar_multiple(u, base, tol=1e-9):
    # u = e^{i phi} base for some phi
    k = np.vdot(base, u) / 2
    return abs(abs(k) - 1) <= tol and _close(u, k * base, tol)


def case_conditions(u, tol=1e-9):
    """Every class whose defining conditions ``u`` satisfies.

    Written straight from the case list, independently of the precedence
    tree used by ``classify``.
    """
    tr, tr_ux, det = np.trace(u), np.trace(u @ X), np.linalg.det(u)
    zero = lambda z: abs(z) <= tol  # noqa: E731
    out = set()
    if _close(u, I2, tol):
        out.add("a")
    if _scalar_multiple(u, I2, tol) and not _close(u, I2, tol):
        out.add("b")
    if _close(u, X, tol):
        out.add("c")
    if _scalar_multiple(u, X, tol) and not _close(u, X, tol):
        out.add("d")
    if _scalar_multiple(u, Z, tol):
        out.add("e")
    pm_x = _close(u, X, tol) or _close(u, -X, tol)
    if zero(tr) and zero(det + 1) and not pm_x:
        out.add("f")
    if zero(tr) and not zero(det + 1) and not _scalar_multiple(u, X, tol) \
            and not _scalar_multiple(u, Z, tol):
        out.add("g")
    pm_i = _close(u, I2, tol) or _close(u, -I2, tol)
    if zero(tr_ux) and not zero(tr) and zero(det - 1) and not pm_i:
        out.add("h")
    if zero(tr_ux) and not zero(tr) and not zero(det - 1) and not _scalar_multiple(u, I2, tol):
        out.add("i")
    if zero(det - 1) and not zero(tr) and not zero(tr_ux):
        out.add("j")
    if not zero(det - 1) and not zero(tr) and not zero(tr_ux):
        out.add("generic")
    return out


def test_m_table():
    assert M_VALUES == {"a": 0, "b": 1, "c": 1, "d": 2, "e": 3, "f": 3,
                        "g": 4, "h": 4, "i": 5, "j": 5, "generic": 6}
    assert GateClass.GENERIC.m == 6 and GateClass("j").m == 5


@pytest.mark.parametrize("u, tag, m", [
    (I2, "a", 0), (H, "f", 3), (T, "i", 5), (X, "c", 1), (Z, "e", 3),
    (S, "i", 5), (rz(0.7), "h", 4), (-I2, "b", 1), (-X, "d", 2),
    (np.array([[0, 1], [-1, 0]]), "g", 4),
])
def test_named_examples(u, tag, m):
    r = classify(u)
    assert (r.tag, r.m) == (tag, m)
    assert tag in case_conditions(u)


def test_haar_samples_are_generic(haar_1000):
    for u in haar_1000:
        r = classify(u)
        assert (r.tag, r.m) == ("generic", 6)
        assert is_generic(u)


def test_report_witnesses_and_json():
    r = classify(T)
    assert r.trace == pytest.approx(1 + np.exp(1j * np.pi / 4))
    assert abs(r.trace_ux) == 0
    assert r.det == pytest.approx(np.exp(1j * np.pi / 4))
    assert all(v >= 0 for v in r.margins.values())
    d = r.to_dict()
    assert d["tag"] == "i" and d["m"] == 5 and len(d["trace"]) == 2
    assert not d["near_boundary"]


def test_near_boundary_flag():
    u = rz(1e-8)  # off the identity by 5e-9 in each diagonal entry
    assert classify(u).near_boundary


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        classify(np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        classify(I2, eps=0.1)


def test_is_generic_examples(haar_1000):
    assert not is_generic(X)
    assert not is_generic(T)
    for u in haar_1000[:200]:
        assert is_generic(u) == is_generic(u.conj().T)


@pytest.mark.parametrize("tag", TAGS)
def test_sampler_round_trip(tag):
    for seed in range(1000):
        u = sample(tag, seed)
        assert np.max(np.abs(u.conj().T @ u - I2)) <= 1e-10
        assert classify(u).tag == tag


@pytest.mark.parametrize("tag", TAGS)
def test_samples_satisfy_class_conditions(tag):
    for seed in range(100):
        u = sample(tag, seed)
        conds = case_conditions(u)
        assert tag in conds
        assert {M_VALUES[c] for c in conds} == {M_VALUES[tag]}


def test_sampler_is_deterministic():
    assert np.array_equal(sample("j", 5), sample("j", 5))
    assert not np.array_equal(sample("j", 5), sample("j", 6))


def test_f_sample_witnesses():
    for seed in range(200):
        u = sample("f", seed)
        assert abs(np.trace(u)) <= 1e-12
        assert abs(np.linalg.det(u) + 1) <= 1e-10


def test_generic_margins():
    margins = np.array([
        [classify(sample("generic", s)).margins[k] for k in ("trace", "trace_ux", "det_minus_one")]
        for s in range(500)
    ])
    assert np.all(margins.mean(axis=0) > 0.05)
    strict = [sample("generic", s, margin=0.5) for s in range(20)]
    for u in strict:
        mg = classify(u).margins
        assert min(mg["trace"], mg["trace_ux"], mg["det_minus_one"]) > 0.5


def test_dagger_preserves_count(haar_1000):
    for u in haar_1000:
        assert classify(u).m == classify(u.conj().T).m
    for tag in TAGS:
        for seed in range(100):
            u = sample(tag, seed)
            assert classify(u).m == classify(u.conj().T).m


def test_exhaustive_on_perturbed_inputs(rng):
    # nudging class members with diagonal or real rotations lands them in
    # other classes; the decision must always be one the case list allows
    for tag in TAGS:
        for seed in range(30):
            u = sample(tag, seed)
            for nudge in (rz(1e-3), rz(rng.uniform(-1, 1)), np.diag([1, np.exp(0.01j)])):
                v = nudge @ u
                conds = case_conditions(v)
                assert len({M_VALUES[c] for c in conds}) == 1
                assert classify(v).tag in conds
