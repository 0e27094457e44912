"""Degree-normalized period functions on Pic of a curve over F_q.

Line bundles are labelled (degree, twist) with twist in Z/m; P^1 has m = 1.
A theta characteristic K^(1/2) is the label (g-1, theta) and K = (2g-2, 2*theta).

    P(L)      = q^h0(L (x) K^(1/2))
    P^norm(L) = q^(h0(L (x) K^(1/2)) - deg(L (x) K^(1/2))/2)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .report import Report
from .scalars import ExactScalar, FieldCtx, q_power

Label = tuple[int, int]


@dataclass
class CurveData:
    genus: int
    twist_order: int = 1
    theta_twist: int = 0
    h0_table: dict[Label, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.genus < 0 or self.twist_order < 1:
            raise ValueError("genus must be >= 0 and twist order >= 1")
        if self.genus == 0 and self.twist_order != 1:
            raise ValueError("genus 0 has no twisted line bundles")
        self.theta_twist %= self.twist_order
        self.h0_table = {(int(d), int(t) % self.twist_order): int(h)
                         for (d, t), h in self.h0_table.items()}

    def label(self, d: int, t: int = 0) -> Label:
        return (d, t % self.twist_order)

    def tensor(self, a: Label, b: Label) -> Label:
        return self.label(a[0] + b[0], a[1] + b[1])

    def inverse(self, a: Label) -> Label:
        return self.label(-a[0], -a[1])

    @property
    def theta(self) -> Label:
        return self.label(self.genus - 1, self.theta_twist)

    @property
    def canonical(self) -> Label:
        return self.tensor(self.theta, self.theta)

    def h0(self, L: Label) -> int:
        L = self.label(*L)
        if L in self.h0_table:
            return self.h0_table[L]
        d, g = L[0], self.genus
        if d < 0:
            return 0
        if d > 2 * g - 2:
            return d - g + 1
        raise KeyError(f"missing h0 entry for degree {d}, twist {L[1]}")

    def labels_in(self, d_range) -> list[Label]:
        return [self.label(d, t) for d in d_range for t in range(self.twist_order)]


def p1() -> CurveData:
    return CurveData(0, 1, 0, {}, "P1")


def period(curve: CurveData, ctx: FieldCtx, L: Label) -> ExactScalar:
    return q_power(ctx, curve.h0(curve.tensor(L, curve.theta)))


def period_p1(ctx: FieldCtx, d: int) -> ExactScalar:
    return period(p1(), ctx, (d, 0))


def period_norm_exponent(curve: CurveData, L: Label) -> Fraction:
    M = curve.tensor(L, curve.theta)
    return curve.h0(M) - Fraction(M[0], 2)


def period_norm(curve: CurveData, ctx: FieldCtx, L: Label) -> ExactScalar:
    return q_power(ctx, period_norm_exponent(curve, L))


def riemann_roch_check(curve: CurveData, d_range) -> Report:
    """h0(M) - h0(K M^-1) = deg M - g + 1 for every label M with degree in d_range."""
    rep = Report("riemann-roch")
    K = curve.canonical
    for M in curve.labels_in(d_range):
        try:
            lhs = curve.h0(M) - curve.h0(curve.tensor(K, curve.inverse(M)))
        except KeyError as exc:
            rep.record(M, False, str(exc))
            continue
        rhs = M[0] - curve.genus + 1
        rep.record(M, lhs == rhs, f"degree {M[0]} twist {M[1]}: {lhs} != {rhs}")
    return rep


def fe_symmetry_check(curve: CurveData, ctx: FieldCtx, d_range) -> Report:
    """P^norm(L) = P^norm(L^-1) for every label L with degree in d_range."""
    rep = Report("functional equation")
    for L in curve.labels_in(d_range):
        try:
            a = period_norm(curve, ctx, L)
            b = period_norm(curve, ctx, curve.inverse(L))
        except KeyError as exc:
            rep.record(L, False, str(exc))
            continue
        rep.record(L, a == b, f"degree {L[0]} twist {L[1]}: {a} != {b}")
    return rep


def asymptotic_check(curve: CurveData, ctx: FieldCtx, d_range) -> Report:
    """log_q P^norm(L) = (|deg L| + 1 - g)/2 for |deg L| >= g; other degrees are skipped."""
    rep = Report("asymptotics")
    g = curve.genus
    for L in curve.labels_in(d_range):
        if abs(L[0]) < g:
            continue
        expected = Fraction(abs(L[0]) + 1 - g, 2)
        got = period_norm_exponent(curve, L)
        rep.record(L, got == expected, f"degree {L[0]}: exponent {got} != {expected}")
    return rep


# ---------------------------------------------------------------------------
# synthetic higher-genus tables


def synthetic_genus1(theta_twist: int = 1) -> CurveData:
    """Genus 1 with a Z/2 of degree-0 twists: h0 = 1 on the trivial bundle, 0 on
    the nontrivial one; the fallback gives h0(d) = d for d > 0 and 0 for d < 0."""
    return CurveData(1, 2, theta_twist, {(0, 0): 1, (0, 1): 0}, "genus1")


def random_rr_table(rng: random.Random, genus: int, twist_order: int) -> CurveData:
    """A table satisfying Riemann-Roch: h0 chosen freely on one label of each pair
    {M, K M^-1} inside the band [0, 2g-2] and forced on the other."""
    theta_twist = rng.randrange(twist_order)
    curve = CurveData(genus, twist_order, theta_twist, {})
    K = curve.canonical
    table: dict[Label, int] = {}
    for M in curve.labels_in(range(0, 2 * genus - 1)):
        if M in table:
            continue
        partner = curve.tensor(K, curve.inverse(M))
        diff = M[0] - genus + 1
        if partner == M:
            table[M] = rng.randrange(0, 3)
            continue
        low = max(0, diff)
        h = rng.randrange(low, low + 2)
        table[M] = h
        table[partner] = h - diff
    curve.h0_table = table
    return curve


# ---------------------------------------------------------------------------
# zeta series of P^1


@dataclass
class ZetaSeries:
    N: int
    coeffs: list[int]


def series_inverse(den: list[int], N: int) -> list[Fraction]:
    """Coefficients of 1/den(t) through t^N by long division."""
    if den[0] == 0:
        raise ZeroDivisionError("constant term of the denominator is zero")
    out: list[Fraction] = []
    rem = [Fraction(1)] + [Fraction(0)] * N
    for k in range(N + 1):
        c = rem[k] / den[0]
        out.append(c)
        for j, a in enumerate(den):
            if k + j <= N:
                rem[k + j] -= c * a
    return out


def zeta_series_p1(q: int, N: int) -> tuple[ZetaSeries, list[Fraction], bool]:
    """Effective divisor counts c_d = (q^h0(O(d)) - 1)/(q - 1), compared with the
    expansion of 1/((1-t)(1-qt))."""
    if N < 1:
        raise ValueError("N must be at least 1")
    curve = p1()
    coeffs = []
    for d in range(N + 1):
        num = q ** curve.h0((d, 0)) - 1
        if num % (q - 1):
            raise ArithmeticError("non-integral divisor count")
        coeffs.append(num // (q - 1))
    expansion = series_inverse([1, -(1 + q), q], N)
    return ZetaSeries(N, coeffs), expansion, [Fraction(c) for c in coeffs] == expansion


def zeta_recursion_holds(q: int, coeffs: list[int]) -> bool:
    return all(coeffs[d] - (1 + q) * coeffs[d - 1] + q * coeffs[d - 2] == 0
               for d in range(2, len(coeffs)))


__all__ = [
    "CurveData", "ZetaSeries", "asymptotic_check", "fe_symmetry_check", "p1", "period",
    "period_norm", "period_norm_exponent", "period_p1", "random_rr_table",
    "riemann_roch_check", "series_inverse", "synthetic_genus1", "zeta_recursion_holds",
    "zeta_series_p1",
]
