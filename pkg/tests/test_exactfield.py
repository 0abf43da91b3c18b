from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jetsplit.errors import DivisionByZero, FieldMismatch, InvalidParams, Unsupported
from jetsplit.exactfield import FieldElement, FieldSpec, binomial, is_prime, reduce

Q = FieldSpec(0)
F2, F5 = FieldSpec(2), FieldSpec(5)


def el(v, f):
    return FieldElement(v, f)


# --- frozen examples ---

def test_inverse_in_f5():
    assert el(3, F5).inverse() == el(2, F5)


def test_rational_sum():
    assert el(Fraction(1, 3), Q) + el(Fraction(1, 6), Q) == el(Fraction(1, 2), Q)


def test_char_two_sum():
    assert el(1, F2) + el(1, F2) == el(0, F2)


@pytest.mark.parametrize("a,b,want", [(4, 2, 6), (3, -1, 0), (2, 5, 0), (0, 0, 1), (30, 15, 155117520)])
def test_binomial_values(a, b, want):
    assert binomial(a, b) == want


def test_binomial_negative_top_refused():
    with pytest.raises(Unsupported):
        binomial(-1, -1)


@pytest.mark.parametrize("z,f,want", [(6, F2, 0), (6, Q, 6), (-1, F5, 4)])
def test_reduce_examples(z, f, want):
    assert reduce(z, f) == el(want, f)
    assert reduce(z, f).value == want


# --- field construction ---

@pytest.mark.parametrize("p", [1, 4, 9, 561, 2**61, -3])
def test_bad_characteristic(p):
    with pytest.raises(InvalidParams):
        FieldSpec(p)


def test_large_word_prime_accepted():
    p = 2**61 - 1
    f = FieldSpec(p)
    assert (el(2, f) * el(2, f).inverse()).value == 1


def test_is_prime_small_table():
    assert [n for n in range(40) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert is_prime(18446744073709551557)  # largest prime below 2^64


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        el(0, F5).inverse()
    with pytest.raises(DivisionByZero):
        el(1, Q) / el(0, Q)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        el(1, F2) + el(1, F5)
    with pytest.raises(FieldMismatch):
        el(1, F2) == el(1, Q)


def test_canonical_storage():
    assert el(Fraction(4, -6), Q).value == Fraction(-2, 3)
    assert el(-7, F5).value == 3
    assert str(el(Fraction(-2, 3), Q)) == "-2/3"


# --- properties ---

@given(st.integers(0, 40).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, a))))
def test_pascal(ab):
    a, b = ab
    if a == 0:
        assert binomial(0, 0) == 1
    else:
        assert binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b)


WORD = st.integers(-(2**63), 2**63 - 1)


@given(WORD, WORD, WORD, st.sampled_from([Q, F2, F5, FieldSpec(2**61 - 1)]))
def test_reduce_is_ring_hom(x, y, z, f):
    assert reduce(x * y + z, f) == reduce(x, f) * reduce(y, f) + reduce(z, f)


@given(st.fractions(max_denominator=10**6))
def test_rational_text_roundtrip(q):
    e = el(q, Q)
    assert FieldElement.parse(str(e), Q) == e


@given(st.integers(), st.sampled_from([2, 3, 5, 7, 101, 2**31 - 1]))
def test_residue_text_roundtrip(z, p):
    f = FieldSpec(p)
    e = reduce(z, f)
    assert 0 <= e.value < p
    assert FieldElement.parse(str(e), f) == e


@given(st.integers(1, 10**9), st.sampled_from([3, 5, 7, 13]))
def test_inverse_property(z, p):
    f = FieldSpec(p)
    e = reduce(z, f)
    if e:
        assert e * e.inverse() == reduce(1, f)
