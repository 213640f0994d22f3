import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from nacyclic.errors import AlgebraMismatch, NotProper, SpecMismatch, TooLarge, ZeroInput
from nacyclic.extension import make_finite, make_kummer, make_quartic_tower, make_sqrt, make_unramified
from nacyclic.ffield import fq_make, gf
from nacyclic.localfield import qp
from nacyclic.nacalg import (
    CyclicAlgebra, alg_mul, associator, exhaustive_is_division, is_division, nucleus,
    require_proper, right_nucleus_structure, span_dimension,
)
from nacyclic.oracle import brute_is_division


def f9():
    return make_finite(fq_make(3, 1), 2)


def proper_elements(E):
    return [a for a in E.all_elements() if not a.in_base()]


def dims(A):
    return tuple(len(nucleus(A, k)) for k in ("left", "middle", "right", "nucleus", "center"))


def test_unital_and_twisted_relations():
    E = make_sqrt(qp(5), 2)
    A = CyclicAlgebra(E, E.gen())
    x = A.element([E.element([1, 2]), E.element([3, 0])])
    assert A.one() * x == x and x * A.one() == x
    a = A.from_ext(A.a)
    assert A.t() * a == A.from_ext(E.sigma(A.a), 1)
    assert A.t() * A.t() == a
    K = make_finite(gf(2), 3)
    B = CyclicAlgebra(K, K.gen())
    assert B.t(2) * B.t() == B.from_ext(B.a)


def test_i_t_squared_in_gf9():
    E = f9()
    i = E.gen()
    A = CyclicAlgebra(E, i)
    it = A.from_ext(i, 1)
    assert alg_mul(A, it, it) == A.from_ext(i)
    assert i * E.sigma(i) * i == i


def test_associators():
    E = make_sqrt(qp(5), 2)
    A = CyclicAlgebra(E, E.gen())
    ks = [A.from_ext(E.element(c)) for c in ([1, 2], [0, 3], [4, 1])]
    assert associator(A, *ks).is_zero()
    t = A.t()
    assert associator(A, t, t, t) == A.from_ext(A.a - E.sigma(A.a), 1)
    assert not associator(A, t, t, t).is_zero()
    for y, z in itertools.product(A.basis(), repeat=2):
        assert associator(A, ks[1], y, z).is_zero()


@pytest.mark.parametrize("E,a", [(make_finite(gf(3), 2), 2), (make_finite(gf(2), 3), 1),
                                 (make_sqrt(qp(5), 2), 5), (make_kummer(qp(7), 3, 7), 3)])
def test_associative_when_a_in_base(E, a):
    A = CyclicAlgebra(E, E.embed(a))
    assert not A.proper
    for x, y, z in itertools.product(A.basis(), repeat=3):
        assert associator(A, x, y, z).is_zero()


def test_conventions_agree_for_degree_two():
    E = f9()
    for a in proper_elements(E):
        P, Q = CyclicAlgebra(E, a), CyclicAlgebra(E, a, convention="printed")
        for x, y in itertools.product(P.basis(), repeat=2):
            assert P.mul(x, y).coeffs == Q.mul(Q.from_coords(P.coords(x)), Q.from_coords(P.coords(y))).coeffs


def test_constructor_errors():
    E = f9()
    with pytest.raises(ZeroInput):
        CyclicAlgebra(E, E.zero())
    with pytest.raises(SpecMismatch):
        CyclicAlgebra(E, E.gen(), generator_power=2)
    with pytest.raises(SpecMismatch):
        CyclicAlgebra(E, E.gen(), convention="other")
    A, B = CyclicAlgebra(E, E.gen()), CyclicAlgebra(E, E.one() + E.gen())
    with pytest.raises(AlgebraMismatch):
        A.mul(A.t(), B.t())
    with pytest.raises(NotProper):
        require_proper(CyclicAlgebra(E, E.one()))


# -- nuclei ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,m", [(3, 2), (2, 3), (4, 2), (5, 2)])
def test_nuclei_of_proper_finite_algebras(q, m):
    E = make_finite(gf(q), m)
    K = None
    for a in proper_elements(E):
        A = CyclicAlgebra(E, a)
        K = K or [A.from_ext(b) for b in E.basis()]
        assert dims(A) == (m, m, m, m, 1)
        left = nucleus(A, "left")
        assert span_dimension(A, left + K) == m
        center = nucleus(A, "center")
        assert span_dimension(A, center + [A.one()]) == 1


def test_nuclei_local_prime_degree():
    E = make_sqrt(qp(5), 2)
    assert dims(CyclicAlgebra(E, E.gen())) == (2, 2, 2, 2, 1)
    K = make_kummer(qp(7), 3, 7)
    assert dims(CyclicAlgebra(K, K.gen())) == (3, 3, 3, 3, 1)


def test_degree_four_right_nucleus():
    E = make_finite(gf(2), 4)
    a = next(x for x in proper_elements(E) if E.subfield_degree(x) == 2)
    A = CyclicAlgebra(E, a)
    assert dims(A) == (4, 4, 8, 4, 1)
    rn = right_nucleus_structure(A)
    assert (rn.stabilizer_order, rn.s, rn.dim_over_F) == (2, 2, 8)
    assert rn.checked_against_nucleus
    right = nucleus(A, "right")
    span = [A.from_ext(b, s) for s in (0, 2) for b in E.basis()]
    assert span_dimension(A, right + span) == 8
    Kl = make_kummer(qp(5), 4, 5)
    b2 = Kl.gen() * Kl.gen()
    assert dims(CyclicAlgebra(Kl, b2)) == (4, 4, 8, 4, 1)


def test_right_nucleus_structure_generic():
    E = make_finite(gf(2), 3)
    A = CyclicAlgebra(E, E.gen())
    rn = right_nucleus_structure(A)
    assert rn.stabilizer_order == 1 and rn.dim_over_F == 3 and rn.checked_against_nucleus
    E4 = make_finite(gf(2), 4)
    A4 = CyclicAlgebra(E4, E4.gen())
    rn4 = right_nucleus_structure(A4)
    assert rn4.stabilizer_order == 1 and rn4.quaternion_subalgebra is not None
    assert len(rn4.quaternion_subalgebra) == 8


# -- division ------------------------------------------------------------------------------

def test_division_examples():
    E = f9()
    r = is_division(CyclicAlgebra(E, E.gen()))
    assert (r.result, r.method) == (True, "exhaustive")
    r = is_division(CyclicAlgebra(E, E.one()))
    assert r.result is False
    Q = make_sqrt(qp(5), 2)
    r = is_division(CyclicAlgebra(Q, Q.gen()))
    assert (r.result, r.method) == (True, "prime-degree")


def test_division_local_associative_and_quartic():
    Q = make_sqrt(qp(5), 2)
    assert is_division(CyclicAlgebra(Q, Q.embed(5))).result is True
    assert is_division(CyclicAlgebra(Q, Q.embed(3))).result is False
    for T in (make_quartic_tower(qp(3)), make_kummer(qp(5), 4, 5), make_unramified(qp(3), 4)):
        # a = x * sigma^2(x) is a norm from K to E = Fix(sigma^2), so B and A split
        for coeffs in ([1, 1, 0, 0], [2, 0, 1, 1], [1, -1, 2, 3]):
            x = T.element(coeffs)
            a = x * T.sigma(x, 2)
            if a.in_base():
                continue
            r = is_division(CyclicAlgebra(T, a))
            assert (r.result, r.method) == (False, "quartic-right-nucleus")
        e = next(y for y in T.fixed_field_basis(2) if not y.in_base())
        results = [is_division(CyclicAlgebra(T, e * c)).result for c in T.class_reps]
        assert sorted(results) == [False, False, True, True]
    K = make_kummer(qp(5), 4, 5)
    assert is_division(CyclicAlgebra(K, K.gen() * K.gen())).result is False
    K = make_kummer(qp(5), 4, 5)
    r = is_division(CyclicAlgebra(K, K.gen()))
    assert (r.result, r.method) == (True, "generates-K")


def test_exhaustive_guard():
    E = make_finite(gf(3), 3)
    with pytest.raises(TooLarge):
        exhaustive_is_division(CyclicAlgebra(E, E.gen()), limit=1000)


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (2, 3)])
def test_exhaustive_agrees_with_oracle(q, m):
    E = make_finite(gf(q), m)
    for a in E.all_elements():
        if a.is_zero():
            continue
        for j in (k for k in range(1, m) if gcd(k, m) == 1):
            A = CyclicAlgebra(E, a, j)
            assert exhaustive_is_division(A) == brute_is_division(A)


# -- properties ----------------------------------------------------------------------------

ALGS = [CyclicAlgebra(make_finite(gf(3), 2), make_finite(gf(3), 2).gen()),
        CyclicAlgebra(make_finite(gf(2), 3), make_finite(gf(2), 3).gen()),
        CyclicAlgebra(make_finite(gf(4), 2), make_finite(gf(4), 2).gen())]


def coords_strategy(A):
    q = A.base.q
    return st.lists(st.integers(0, q - 1), min_size=A.dim, max_size=A.dim)


def vec(A, codes):
    els = list(A.base.elements())
    return A.from_coords([els[c] for c in codes])


alg_triples = st.sampled_from(range(len(ALGS))).flatmap(
    lambda k: st.tuples(st.just(ALGS[k]), coords_strategy(ALGS[k]), coords_strategy(ALGS[k]),
                        coords_strategy(ALGS[k]), st.integers(0, ALGS[k].base.q - 1)))


@settings(max_examples=200, deadline=None)
@given(alg_triples)
def test_bilinear_and_unital(data):
    A, cx, cy, cz, c = data
    x, y, z = vec(A, cx), vec(A, cy), vec(A, cz)
    lam = list(A.base.elements())[c]
    assert A.mul(x + y, z) == A.mul(x, z) + A.mul(y, z)
    assert A.mul(x, y + z) == A.mul(x, y) + A.mul(x, z)
    assert A.mul(x * lam, y) == A.mul(x, y) * lam == A.mul(x, y * lam)
    assert A.mul(A.one(), x) == x == A.mul(x, A.one())


@settings(max_examples=200, deadline=None)
@given(alg_triples)
def test_left_nucleus_is_k(data):
    A, cx, cy, cz, _ = data
    x, y, z = vec(A, cx), vec(A, cy), vec(A, cz)
    k = A.from_ext(x.coeffs[0])
    assert associator(A, k, y, z).is_zero()
    assert associator(A, y, k, z).is_zero()
