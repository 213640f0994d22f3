import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from nacyclic.errors import MissingRootsOfUnity, UnsupportedCase, WildCase, ZeroInput
from nacyclic.extension import (
    Q2_NORM_TABLE, enumerate_extensions, ext_make, ext_norm, is_norm, make_artin_schreier,
    make_finite, make_kummer, make_quartic_tower, make_sqrt, make_unramified, norm_class_reps,
    sample_as_extensions, sigma_apply, subfield_degree,
)
from nacyclic.ffield import gf
from nacyclic.localfield import laurent, q2_square_class, qp, teichmuller

Q2_CLASSES = (1, -1, 2, -2, 3, -3, 6, -6)


def hilbert2(a: int, b: int) -> int:
    """The 2-adic Hilbert symbol of two nonzero integers."""
    def split(x):
        k = 0
        while x % 2 == 0:
            x //= 2
            k += 1
        return k, x
    al, u = split(a)
    be, v = split(b)
    eps = lambda w: ((w - 1) // 2) % 2
    omega = lambda w: ((w * w - 1) // 8) % 2
    e = eps(u) * eps(v) + al * omega(v) + be * omega(u)
    return -1 if e % 2 else 1


def brute_norm_classes(c: int, bound: int = 24) -> set:
    Q2 = qp(2)
    seen = set()
    for x, y in itertools.product(range(-bound, bound + 1), repeat=2):
        n = x * x - c * y * y
        if n:
            seen.add(q2_square_class(Q2(n)))
    return seen


# -- construction and Galois action ------------------------------------------------

def test_q5_sqrt2_is_unramified():
    E = ext_make(qp(5), 2, "sqrt", c=2)
    assert E.ramification == 1


def test_q7_kummer_cubic():
    F = qp(7)
    E = ext_make(F, 3, "kummer", b=7, zeta=teichmuller(2, F))
    b = E.gen()
    assert E.ramification == 3
    assert E.sigma(b) == E.params["zeta"] * b
    assert ext_norm(E, b) == 7


def test_artin_schreier_over_f2t():
    F = laurent(2)
    E = ext_make(F, 2, "artin-schreier", c=F.uniformizer() ** -1)
    al = E.gen()
    assert E.ramification == 2
    assert E.sigma(al) == al + 1
    assert al * al + al == E.embed(F.uniformizer() ** -1)


def test_sigma_on_square_root_and_identity():
    E = make_sqrt(qp(5), 2)
    r = E.gen()
    assert sigma_apply(E, 1, r) == -r
    assert sigma_apply(E, 0, r) == r


def test_quadratic_norm():
    E = make_sqrt(qp(5), 2)
    s = qp(5)(3)
    assert ext_norm(E, E.element([0, s])) == -2 * s * s
    assert ext_norm(E, E.one()) == 1


def test_is_norm_examples():
    E = make_sqrt(qp(2), -3)
    assert is_norm(E, -3) and not is_norm(E, 2)
    E = make_sqrt(qp(5), 2)
    assert not is_norm(E, 5)
    assert is_norm(E, 1)
    with pytest.raises(ZeroInput):
        is_norm(E, 0)


def test_class_reps():
    F = qp(7)
    U = make_unramified(F, 3)
    assert [r.valuation for r in norm_class_reps(U)] == [0, 1, 2]
    R = make_kummer(F, 3, 7)
    reps = norm_class_reps(R)
    assert reps[0] == 1
    assert sorted(r.residue().code for r in reps) == [1, 2, 4]
    assert all(r ** 3 == 1 for r in reps)
    Q = make_sqrt(qp(2), -3)
    assert [q2_square_class(r) for r in norm_class_reps(Q)] == [1, 2]


def test_enumerate_counts():
    assert [E.params["c"] for E in enumerate_extensions(qp(5), 2)] == [2, 5, 10]
    assert len(enumerate_extensions(qp(2), 2)) == 7
    assert len(enumerate_extensions(qp(7), 3)) == 4
    assert len(enumerate_extensions(qp(5), 4)) == 6
    assert len(enumerate_extensions(qp(3), 4)) == 2
    with pytest.raises(WildCase):
        enumerate_extensions(qp(3), 3)
    with pytest.raises(MissingRootsOfUnity):
        enumerate_extensions(qp(5), 3)
    with pytest.raises(UnsupportedCase):
        enumerate_extensions(laurent(2), 2)


def test_subfield_degree_examples():
    F = qp(7)
    K = make_kummer(F, 3, 7)
    assert subfield_degree(K, K.embed(3)) == 1
    assert subfield_degree(K, K.gen()) == 3
    K4 = make_kummer(qp(5), 4, 5)
    a = K4.gen() * K4.gen()
    assert subfield_degree(K4, a) == 2
    T = make_quartic_tower(qp(3))
    fixed = T.fixed_field_basis(2)
    assert len(fixed) == 2
    assert {subfield_degree(T, x) for x in fixed} == {1, 2}


# -- norm groups against independent oracles ---------------------------------------------

@pytest.mark.parametrize("c", [-3, -6, 2, -1, -2, 3, 6])
def test_q2_norm_group_hilbert_oracle(c):
    E = make_sqrt(qp(2), c)
    for x in Q2_CLASSES:
        assert E.is_norm(x) == (hilbert2(x, c) == 1), (c, x)


@pytest.mark.parametrize("c", [-3, -6, 2, -1, -2, 3, 6])
def test_q2_norm_group_brute_force_oracle(c):
    found = brute_norm_classes(c)
    assert found == set(Q2_NORM_TABLE[c])
    assert len(found) == 4


def test_as_norms_brute_force():
    F = laurent(2)
    t = F.uniformizer()
    E = make_artin_schreier(F, t ** -1)
    rng = random.Random(5)
    polys = [sum((t ** k for k in range(-3, 4) if rng.random() < 0.5), F.zero()) for _ in range(40)]
    for x, y in itertools.product(polys[:20], polys[20:]):
        n = x * x + x * y + t ** -1 * y * y
        if not n.is_zero():
            assert E.is_norm(n)
    gamma = E.class_reps[1]
    assert not E.is_norm(gamma)


def test_as_samples_have_distinct_norm_groups():
    F = laurent(2)
    t = F.uniformizer()
    exts = sample_as_extensions(F, 3)
    probes = [t, 1 + t, 1 + t ** 3, 1 + t ** 5, t * (1 + t)] + [r for E in exts for r in E.class_reps]
    for E1, E2 in itertools.combinations(exts, 2):
        assert any(E1.is_norm(x) != E2.is_norm(x) for x in probes)


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (5, 2), (7, 2), (8, 2), (9, 2), (2, 3), (3, 3), (4, 3), (2, 4), (3, 4)])
def test_finite_norm_surjective(q, m):
    E = make_finite(gf(q), m)
    image = {E.norm(x).code for x in E.all_elements() if not x.is_zero()}
    assert len(image) == q - 1


# -- properties ------------------------------------------------------------------------

def _local_exts():
    Q3, Q5, Q7 = qp(3, 8), qp(5, 8), qp(7, 8)
    return [make_sqrt(Q5, 2), make_sqrt(Q5, 5), make_sqrt(Q3, 3), make_unramified(Q7, 3),
            make_kummer(Q7, 3, 7), make_kummer(qp(13, 8), 3, 26), make_kummer(Q5, 4, 5),
            make_quartic_tower(Q3), make_unramified(Q3, 4), make_sqrt(qp(2, 8), -6)]


LOCAL_EXTS = _local_exts()


@st.composite
def ext_elem(draw, E):
    F = E.base
    p = F.p
    cs = []
    for _ in range(E.m):
        if draw(st.booleans()):
            cs.append(F.zero())
            continue
        v = draw(st.integers(-1, 2))
        ds = draw(st.lists(st.integers(0, p - 1), min_size=5, max_size=5))
        ds[0] = draw(st.integers(1, p - 1))
        cs.append(F.from_digits(v, ds, 6))
    x = E.element(cs)
    if x.is_zero():
        x = E.one()
    return x


ext_and_pair = st.sampled_from(range(len(LOCAL_EXTS))).flatmap(
    lambda k: st.tuples(st.just(LOCAL_EXTS[k]), ext_elem(LOCAL_EXTS[k]), ext_elem(LOCAL_EXTS[k])))


@settings(max_examples=120, deadline=None)
@given(ext_and_pair)
def test_galois_and_norm_laws(data):
    E, x, y = data
    assert E.sigma(x, E.m) == x
    assert E.sigma(E.sigma(x), E.m - 1) == x
    assert E.norm(E.sigma(x)) == E.norm(x)
    assert E.norm(x * y) == E.norm(x) * E.norm(y)
    assert E.is_norm(E.norm(x))
    assert (E.sigma(x) == x) == x.in_base()


@pytest.mark.parametrize("E", LOCAL_EXTS, ids=lambda E: E.label)
def test_class_reps_pairwise_inequivalent(E):
    reps = E.class_reps
    assert len(reps) == E.m
    for r, s in itertools.combinations(reps, 2):
        assert not E.is_norm(r / s)
