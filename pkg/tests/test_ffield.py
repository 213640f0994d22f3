import pytest
from hypothesis import given, settings, strategies as st

from nacyclic.errors import DegreeMismatch, DivisionByZero, NotPrime, ReducibleModulus, TooLarge
from nacyclic.ffield import (
    element_of_order, fq_arith, fq_generator, fq_make, fq_nonresidue, fq_power_class, gf,
    is_irreducible_mod_p, least_irreducible, multiplicative_order, prime_power,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2)]


def test_prime_field_modulus_is_linear():
    F = fq_make(3, 1)
    assert F.q == 3 and len(F.modulus) == 2


def test_gf9_with_x2_plus_1():
    F = fq_make(3, 2, [1, 0, 1])
    i = F([0, 1])
    assert fq_arith("mul", i, i) == F(2)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        fq_make(2, 2, [1, 0, 1])


def test_bad_inputs():
    with pytest.raises(NotPrime):
        fq_make(6, 1)
    with pytest.raises(DegreeMismatch):
        fq_make(3, 2, [1, 1])
    with pytest.raises(TooLarge):
        fq_make(2, 30)
    with pytest.raises(DegreeMismatch):
        fq_make(3, 2)([1, 2, 0])


def test_inverse_in_f5():
    assert fq_arith("inv", gf(5)(2)) == 3
    with pytest.raises(DivisionByZero):
        fq_arith("inv", gf(5)(0))


def test_power_classes_f5():
    assert not fq_power_class(gf(5)(2), 2).is_nth_power
    assert fq_power_class(gf(5)(4), 2).is_nth_power
    for n in (1, 2, 3, 4):
        pc = fq_power_class(gf(5).one(), n)
        assert pc.is_nth_power and pc.class_index == 0


@pytest.mark.parametrize("q,n,expected", [(5, 2, 2), (7, 3, 2), (3, 2, 2)])
def test_least_nonresidue(q, n, expected):
    assert fq_nonresidue(gf(q), n) == expected


def test_default_modulus_is_least_irreducible():
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert is_irreducible_mod_p(least_irreducible(2, 4), 2)
    assert prime_power(9) == (3, 2)
    with pytest.raises(NotPrime):
        prime_power(12)


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_generator_and_order(p, n):
    F = fq_make(p, n)
    g = fq_generator(F)
    assert multiplicative_order(g) == F.q - 1
    for m in (d for d in range(1, F.q) if (F.q - 1) % d == 0):
        assert multiplicative_order(element_of_order(F, m)) == m


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_elements_sorted_and_complete(p, n):
    F = fq_make(p, n)
    els = list(F.elements())
    assert len(els) == F.q
    assert [e.key() for e in els] == sorted(e.key() for e in els)
    assert els[0].is_zero()


def test_frobenius_is_field_automorphism():
    F = fq_make(2, 4)
    for x in F.elements():
        for y in list(F.elements())[:6]:
            assert (x * y).frobenius() == x.frobenius() * y.frobenius()
            assert (x + y).frobenius() == x.frobenius() + y.frobenius()
        assert x.frobenius(4) == x


# -- properties --------------------------------------------------------------------

field_and_codes = st.sampled_from(SMALL_FIELDS).flatmap(
    lambda pn: st.tuples(st.just(fq_make(*pn)), st.lists(st.integers(0, pn[0] ** pn[1] - 1), min_size=3, max_size=3)))


def _el(F, code):
    return list(F.elements())[code]


@settings(max_examples=200, deadline=None)
@given(field_and_codes)
def test_field_axioms(data):
    F, (a, b, c) = data
    x, y, z = _el(F, a), _el(F, b), _el(F, c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x * F.one() == x
    assert x + (-x) == F.zero()
    if not x.is_zero():
        assert x * x.inverse() == F.one()
        assert fq_arith("pow", x, F.q - 1) == F.one()


@settings(max_examples=200, deadline=None)
@given(field_and_codes, st.integers(1, 4))
def test_power_class_invariant_under_nth_powers(data, n):
    F, (a, b, _) = data
    x, y = _el(F, a), _el(F, b)
    if x.is_zero() or y.is_zero():
        return
    assert fq_power_class(x * y ** n, n).is_nth_power == fq_power_class(x, n).is_nth_power


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
@pytest.mark.parametrize("m", [2, 3])
def test_nonresidue_is_not_power(p, n, m):
    F = fq_make(p, n)
    if (F.q - 1) % m:
        return
    z = fq_nonresidue(F, m)
    assert not fq_power_class(z, m).is_nth_power
