"""Exact arithmetic in K = Q(s) with s*s = q for a prime power q.

Elements are a + b*s with rational a, b.  When q is a perfect square the
symbol s is replaced by the positive integer root and b is always 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Union[int, Fraction]


def _prime_power_base(q: int) -> int | None:
    """Return p if q = p^k for a prime p and k >= 1, else None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q
    m = q
    while m % p == 0:
        m //= p
    return p if m == 1 else None


@dataclass(frozen=True)
class FieldCtx:
    q: int
    s_is_rational: bool
    root: int  # isqrt(q); meaningful only when s_is_rational

    def scalar(self, a: Rational = 0, b: Rational = 0) -> "ExactScalar":
        return ExactScalar.make(self, a, b)

    def zero(self) -> "ExactScalar":
        return self.scalar(0)

    def one(self) -> "ExactScalar":
        return self.scalar(1)

    def sqrt_q(self) -> "ExactScalar":
        return self.scalar(0, 1)

    def q_power(self, e: Rational) -> "ExactScalar":
        return q_power(self, e)


def make_field(q: int) -> FieldCtx:
    if not isinstance(q, int) or isinstance(q, bool):
        raise TypeError("q must be an integer")
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if _prime_power_base(q) is None:
        raise ValueError(f"q={q} is not a prime power")
    r = isqrt(q)
    return FieldCtx(q=q, s_is_rational=(r * r == q), root=r)


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class ExactScalar:
    ctx: FieldCtx
    a: Fraction
    b: Fraction

    @staticmethod
    def make(ctx: FieldCtx, a: Rational = 0, b: Rational = 0) -> "ExactScalar":
        a, b = _frac(a), _frac(b)
        if ctx.s_is_rational and b:
            a, b = a + b * ctx.root, Fraction(0)
        return ExactScalar(ctx, a, b)

    def canonical(self) -> "ExactScalar":
        return ExactScalar.make(self.ctx, self.a, self.b)

    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            if other.ctx.q != self.ctx.q:
                raise ValueError("scalars from different fields")
            return other
        return ExactScalar.make(self.ctx, other)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.ctx.q == other.ctx.q and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.ctx.q, self.a, self.b))

    def key(self) -> tuple:
        return (self.a, self.b)

    def __add__(self, other) -> "ExactScalar":
        o = self._coerce(other)
        return ExactScalar.make(self.ctx, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.ctx, -self.a, -self.b)

    def __sub__(self, other) -> "ExactScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        q = self.ctx.q
        return ExactScalar.make(
            self.ctx, self.a * o.a + self.b * o.b * q, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def inv(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        n = self.a * self.a - self.b * self.b * self.ctx.q
        return ExactScalar.make(self.ctx, self.a / n, -self.b / n)

    def __truediv__(self, other) -> "ExactScalar":
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> "ExactScalar":
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int) -> "ExactScalar":
        if k < 0:
            return self.inv() ** (-k)
        out = ExactScalar.make(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sb = "s" if self.b == 1 else ("-s" if self.b == -1 else f"{self.b}*s")
        if self.a == 0:
            return sb
        if sb.startswith("-"):
            return f"{self.a} - {sb[1:]}"
        return f"{self.a} + {sb}"


def scalar_arith(x: ExactScalar, y: ExactScalar | None, op: str) -> ExactScalar:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown operation {op!r}")


def q_power(ctx: FieldCtx, e: Rational) -> ExactScalar:
    """q**e for e in (1/2)Z."""
    e = _frac(e)
    if (2 * e).denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    twice = int(2 * e)
    half, odd = divmod(twice, 2)
    base = ExactScalar.make(ctx, Fraction(ctx.q) ** half)
    if odd:
        base = base * ctx.sqrt_q()
    return base
