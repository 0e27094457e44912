from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parcalc.scalars import ExactScalar, make_field, q_power, scalar_arith

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


def test_make_field_irrational_root():
    ctx = make_field(2)
    assert not ctx.s_is_rational


def test_make_field_rational_root():
    ctx = make_field(4)
    assert ctx.s_is_rational
    assert ctx.sqrt_q() == 2


@pytest.mark.parametrize("q", [6, 1, 0, -4, 12])
def test_make_field_rejects(q):
    with pytest.raises(ValueError):
        make_field(q)


def test_not_prime_power_message():
    with pytest.raises(ValueError, match="not a prime power"):
        make_field(6)


def test_s_squared_is_q():
    ctx = make_field(2)
    s = ctx.scalar(0, 1)
    assert scalar_arith(s, s, "mul") == ctx.scalar(2, 0)


def test_inverse_of_s():
    ctx = make_field(2)
    assert scalar_arith(ctx.scalar(0, 1), None, "inv") == ctx.scalar(0, Fraction(1, 2))


def test_additive_inverse():
    ctx = make_field(5)
    assert scalar_arith(ctx.scalar(1), ctx.scalar(-1), "add").is_zero()


def test_inverse_of_zero_raises():
    ctx = make_field(3)
    with pytest.raises(ZeroDivisionError):
        ctx.zero().inv()


@pytest.mark.parametrize("q,e,expected", [
    (3, 1, (3, 0)),
    (3, Fraction(1, 2), (0, 1)),
    (4, Fraction(-1, 2), (Fraction(1, 2), 0)),
    (9, Fraction(3, 2), (27, 0)),
])
def test_q_power_examples(q, e, expected):
    ctx = make_field(q)
    assert q_power(ctx, e) == ctx.scalar(*expected)


def test_q_power_integer_has_no_s_part():
    ctx = make_field(7)
    for e in range(-4, 5):
        assert q_power(ctx, e).b == 0


def test_q_power_rejects_third():
    with pytest.raises(ValueError):
        q_power(make_field(3), Fraction(1, 3))


@given(st.sampled_from([2, 3, 5, 8]), rationals, rationals, rationals, rationals, rationals, rationals)
def test_field_axioms(q, a1, b1, a2, b2, a3, b3):
    ctx = make_field(q)
    x, y, z = ctx.scalar(a1, b1), ctx.scalar(a2, b2), ctx.scalar(a3, b3)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + (-x) == ctx.zero()
    if not x.is_zero():
        assert x * x.inv() == ctx.one()
        # closed form (a + bs)^-1 = (a - bs)/(a^2 - b^2 q)
        a, b = x.a, x.b
        den = a * a - b * b * q
        assert x.inv() == ctx.scalar(a / den, -b / den)


@given(st.sampled_from([2, 3, 4, 5, 9]),
       st.integers(-12, 12), st.integers(-12, 12))
def test_q_power_additive(q, t1, t2):
    ctx = make_field(q)
    e1, e2 = Fraction(t1, 2), Fraction(t2, 2)
    assert q_power(ctx, e1) * q_power(ctx, e2) == q_power(ctx, e1 + e2)


@given(st.sampled_from([4, 9, 16]), rationals, rationals)
def test_canonicalization_idempotent(q, a, b):
    ctx = make_field(q)
    raw = ExactScalar(ctx, a, b)
    once = raw.canonical()
    assert once.b == 0
    assert once.canonical() == once
    assert once.a == a + b * ctx.root
