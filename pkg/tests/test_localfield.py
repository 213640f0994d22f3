from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nacyclic.errors import (
    DivisionByZero, HenselHypothesisFails, InsufficientPrecision, UnsupportedCase,
)
from nacyclic.ffield import fq_make
from nacyclic.localfield import (
    as_reduce, as_symbol, canonical_epsilon, hensel_lift, in_as_subgroup, is_mth_power, laurent,
    lf_arith, lf_decompose, local_precision_guard, local_sqrt, mth_unit_class, q2_square_class, qp,
    render_local,
    root_of_unity, square_class, teichmuller,
)


def digits(x):
    return [d.code for d in x.digits]


def test_sum_takes_smaller_precision():
    Q3 = qp(3)
    s = lf_arith("add", Q3(2, precision=5), Q3(1, precision=2))
    assert s.valuation == 1 and s.absprec == 2 and digits(s) == [1]


def test_inverse_of_four_in_q3():
    x = lf_arith("div", qp(3).one(3), qp(3)(4, precision=3))
    assert digits(x) == [1, 2, 0]


def test_multiplicative_identity():
    x = qp(7)(Fraction(5, 49))
    assert x * 1 == x and x.valuation == -2


def test_decompose():
    Q5 = qp(5)
    d = lf_decompose(Q5(5))
    assert d.valuation == 1 and d.teich == 1 and d.one_unit == 1
    d = lf_decompose(Q5(10))
    assert d.valuation == 1 and d.teich.residue() == 2 and d.one_unit.residue() == 1
    assert d.teich * d.one_unit * Q5(5) == Q5(10)
    d = lf_decompose(Q5(1))
    assert (d.valuation, d.teich, d.one_unit) == (0, 1, 1)


def test_hensel():
    Q3 = qp(3)
    b = hensel_lift([Q3(-7), Q3(0), Q3(1)], Q3(1), 3)
    assert b.to_fraction() % 27 == 13
    assert hensel_lift([Q3(-1), Q3(0), Q3(1)], Q3(1), 6) == 1
    with pytest.raises(HenselHypothesisFails):
        hensel_lift([Q3(-3), Q3(0), Q3(1)], Q3.zero(), 3)


def test_teichmuller():
    Q5 = qp(5)
    t = teichmuller(2, Q5, 2)
    assert digits(t) == [2, 1]
    assert teichmuller(1, Q5) == 1
    t10 = teichmuller(2, Q5, 10)
    assert t10 ** 4 == 1 and (t10 ** 4 - 1).absprec >= 10
    c = teichmuller(2, laurent(3))
    assert digits(c) == [2] + [0] * (c.precision - 1)


def test_square_classes():
    Q3 = qp(3)
    assert square_class(Q3(7)) == "1"
    assert square_class(Q3(3)) == "pi"
    assert square_class(Q3(6)) == "eps*pi"
    Q2 = qp(2)
    assert [q2_square_class(Q2(x)) for x in (17, 7, 2, 5, 12, -6)] == [1, -1, 2, -3, 3, -6]


def test_mth_unit_classes():
    Q7 = qp(7)
    c = mth_unit_class(Q7(2), 3)
    assert not c.is_mth_power and c.valuation_class == 0
    c = mth_unit_class(Q7(6), 3)
    assert c.is_mth_power and c.valuation_class == 0
    c = mth_unit_class(Q7(1), 3)
    assert c.is_mth_power and c.class_index == 0
    assert is_mth_power(Q7(343), 3) and not is_mth_power(Q7(49), 3)


def test_laurent_series_arithmetic():
    F = laurent(fq_make(2, 2))
    t = F.uniformizer()
    x = (1 + t) * (1 + t)
    assert x == 1 + t * t
    assert (t ** -1 + 1).valuation == -1
    with pytest.raises(DivisionByZero):
        F(Fraction(1, 2))


def test_render():
    assert render_local(qp(5)(Fraction(26, 5), precision=3)) == "5^-1*(1 + 0*5 + 1*5^2 + O(5^3))"


def test_sqrt_and_epsilon():
    Q5 = qp(5)
    assert canonical_epsilon(Q5) == 2
    r = local_sqrt(Q5(-1))
    assert r * r == -1
    with pytest.raises(UnsupportedCase):
        square_class(qp(2)(3))


def test_roots_of_unity():
    Q7 = qp(7)
    z = root_of_unity(Q7, 3)
    assert z ** 3 == 1 and z != 1


def test_artin_schreier_reduction():
    F = laurent(2)
    t = F.uniformizer()
    for c in (t ** -2, t ** -2 + t ** -1, t * t, t ** -4):
        r = as_reduce(c)
        assert in_as_subgroup(c - r)
    assert not in_as_subgroup(t ** -1)
    assert in_as_subgroup(t)
    assert as_symbol(t ** -1, F.one()) in (0, 1)


def test_precision_guard():
    x = qp(3).from_digits(0, [1, 2], precision=2)
    with pytest.raises(InsufficientPrecision):
        local_precision_guard(x, 5)


# -- properties --------------------------------------------------------------------

PRIMES = [2, 3, 5, 7]


@st.composite
def padic(draw, p=None, nonzero=True):
    p = p or draw(st.sampled_from(PRIMES))
    F = qp(p, 10)
    v = draw(st.integers(-3, 3))
    ds = draw(st.lists(st.integers(0, p - 1), min_size=10, max_size=10))
    if nonzero:
        ds[0] = draw(st.integers(1, p - 1))
    return F.from_digits(v, ds)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(padic(p), padic(p))))
def test_valuation_laws(pair):
    x, y = pair
    assert (x * y).valuation == x.valuation + y.valuation
    s = x + y
    if not s.is_zero():
        assert s.valuation >= min(x.valuation, y.valuation)
    if x.valuation != y.valuation:
        assert s.valuation == min(x.valuation, y.valuation)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]).flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1), st.integers(1, p - 1))))
def test_teichmuller_multiplicative(data):
    p, d, e = data
    F = qp(p, 8)
    td, te = teichmuller(d, F), teichmuller(e, F)
    assert td ** (p - 1) == 1
    assert teichmuller(d * e % p, F) == td * te


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(padic(p), padic(p))))
def test_square_class_invariant(pair):
    x, y = pair
    assert square_class(x * y * y) == square_class(x)


@settings(max_examples=150, deadline=None)
@given(padic())
def test_decompose_reconstructs(x):
    d = lf_decompose(x)
    assert d.teich * d.one_unit * x.spec.uniformizer() ** d.valuation == x
    assert d.one_unit.residue() == 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]).flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1), st.integers(0, 20))))
def test_hensel_uniqueness(data):
    p, r, k = data
    F = qp(p, 10)
    c = F(r * r)
    f = [-c, F(0), F(1)]
    b1 = hensel_lift(f, F(r), 8)
    b2 = hensel_lift(f, F(r + p * k), 8)
    assert (b1 * b1 - c).valuation_or_none() is None or (b1 * b1 - c).valuation >= 8
    assert (b1 - b2).is_zero() or (b1 - b2).valuation >= 8


@settings(max_examples=100, deadline=None)
@given(padic(2))
def test_q2_class_invariant(x):
    y = x.spec(3)
    assert q2_square_class(x * y * y) == q2_square_class(x)
