import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pearlcount.qpoly import (
    HalfLaurent,
    NonExactDivision,
    bracket_minus,
    codegree_coeff,
    eval_at_one,
    exact_divide,
    substitute_power,
)

q = HalfLaurent.monomial(2)
qh = HalfLaurent.monomial(1)  # q^(1/2)
one = HalfLaurent.constant(1)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=4).map(HalfLaurent)


def test_bracket_values():
    assert bracket_minus(1) == HalfLaurent({1: 1, -1: -1})
    assert bracket_minus(2) == q - HalfLaurent.monomial(-2)
    assert bracket_minus(3) ** 2 == HalfLaurent({6: 1, 0: -2, -6: 1})
    with pytest.raises(ValueError):
        bracket_minus(0)


def test_ring_examples():
    p = HalfLaurent({3: 2, -1: 5})
    assert p + HalfLaurent.zero() == p
    assert bracket_minus(1) * bracket_minus(1) == q - 2 + HalfLaurent.monomial(-2)
    plus = qh + HalfLaurent.monomial(-1)
    assert bracket_minus(1) * plus == bracket_minus(2)


def test_no_stored_zeros():
    p = HalfLaurent({1: 1, 2: 0}) + HalfLaurent({1: -1})
    assert p.terms == {}
    assert not p


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == HalfLaurent.zero()


@settings(max_examples=60)
@given(polys, polys, st.integers(1, 5))
def test_substitution_is_homomorphism(a, b, k):
    assert substitute_power(a * b, k) == substitute_power(a, k) * substitute_power(b, k)
    assert substitute_power(a + b, k) == substitute_power(a, k) + substitute_power(b, k)


def test_substitution_examples():
    p = HalfLaurent({5: 3, -2: 1})
    assert substitute_power(p, 1) == p
    assert substitute_power(bracket_minus(1), 2) == bracket_minus(2)
    assert substitute_power(q - 2 + HalfLaurent.monomial(-2), 3) == HalfLaurent({6: 1, 0: -2, -6: 1})


def test_exact_divide_examples():
    sq = q - 2 + HalfLaurent.monomial(-2)
    assert exact_divide(sq, bracket_minus(1)) == bracket_minus(1)
    p = HalfLaurent({7: 4, -3: 1})
    assert exact_divide(p, 1) == p
    quo = exact_divide(bracket_minus(4), bracket_minus(1))
    assert quo == HalfLaurent({3: 1, 1: 1, -1: 1, -3: 1})
    assert quo * bracket_minus(1) == bracket_minus(4)


def test_exact_divide_rejects_remainder():
    with pytest.raises(NonExactDivision):
        exact_divide(bracket_minus(3), bracket_minus(2))
    with pytest.raises(NonExactDivision):
        exact_divide(HalfLaurent({0: 3}), HalfLaurent({0: 2}))
    with pytest.raises(ZeroDivisionError):
        exact_divide(q, HalfLaurent.zero())


@settings(max_examples=60)
@given(polys, polys)
def test_divide_product_roundtrip(a, b):
    if b:
        assert exact_divide(a * b, b) == a


def test_brackets_divisible_by_first():
    for k in range(1, 101):
        quo = exact_divide(bracket_minus(k), bracket_minus(1))
        assert eval_at_one(quo) == k


def test_eval_at_one():
    assert eval_at_one(HalfLaurent.zero()) == 0
    assert all(eval_at_one(bracket_minus(k)) == 0 for k in range(1, 10))
    assert eval_at_one(q - 2 + HalfLaurent.monomial(-2)) == 0


def test_codegree():
    p = HalfLaurent({6: 1, 2: 4})  # q^3 + 4q
    assert [codegree_coeff(p, c) for c in range(3)] == [1, 0, 4]
    with pytest.raises(ValueError):
        codegree_coeff(HalfLaurent.zero(), 0)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 6), min_size=0, max_size=5))
def test_bracket_products_parity(ks):
    p = one
    for k in ks:
        p = p * bracket_minus(k)
    sign = -1 if len(ks) % 2 else 1
    assert p.reflect() == p.scalar_mul(sign)


def test_canonical_text():
    assert bracket_minus(1).to_text() == "1*q^(1/2) - 1*q^(-1/2)"
    assert HalfLaurent.zero().to_text() == "0"
    assert HalfLaurent({-2: -3}).to_text() == "-3*q^(-2/2)"
    p = HalfLaurent({4: 2, 0: -12, -3: 7})
    assert HalfLaurent.from_json(p.to_json()) == p
    assert list(p.to_json()) == ["4", "0", "-3"]
