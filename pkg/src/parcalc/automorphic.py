"""A-side tables: characters of F^x on the components of Bun_{G_m} and the
Hecke period rows for GL_2, as exact symbolic descriptors.

A descriptor sitting at placement [k] is stored with degree -k.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .report import Report
from .scalars import ExactScalar, FieldCtx, q_power


def _half(e) -> Fraction:
    e = Fraction(e)
    if (2 * e).denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return e


@dataclass(frozen=True)
class Char:
    """The unramified character norm^e; its value at a uniformizer is q^-e."""

    e: Fraction
    finite: str = "trivial"

    def __post_init__(self):
        object.__setattr__(self, "e", _half(self.e))
        if self.finite != "trivial":
            raise ValueError("only characters with trivial finite part are supported")

    def value_at_pi(self, ctx: FieldCtx) -> ExactScalar:
        return q_power(ctx, -self.e)

    def twist(self, d) -> "Char":
        return Char(self.e + Fraction(d))

    def inverse(self) -> "Char":
        return Char(-self.e)

    def __mul__(self, other: "Char") -> "Char":
        return Char(self.e + other.e)

    def __str__(self) -> str:
        return f"norm^{self.e}"


@dataclass(frozen=True)
class CcToken:
    """Compactly supported smooth functions on F ("CcF") or on F^x ("CcFx"), tensored
    with norm^twist, with F^x acting by left or right translation."""

    kind: str
    twist: Fraction = Fraction(0)
    action: str = "left"

    def __post_init__(self):
        if self.kind not in ("CcF", "CcFx"):
            raise ValueError(f"unknown token {self.kind!r}")
        object.__setattr__(self, "twist", _half(self.twist))

    def twist_by(self, d) -> "CcToken":
        return replace(self, twist=self.twist + Fraction(d))

    def inverse(self) -> "CcToken":
        """Pullback along x -> 1/x: left and right translation swap, twists invert."""
        return replace(self, twist=-self.twist,
                       action="right" if self.action == "left" else "left")

    def __str__(self) -> str:
        t = f" (x) norm^{self.twist}" if self.twist else ""
        return f"{self.kind}[{self.action}]{t}"


@dataclass(frozen=True)
class CInd:
    """Compact induction from the subgroup A(F) to T(F) of a character."""

    inner: Char

    def __str__(self) -> str:
        return f"cInd({self.inner})"


@dataclass(frozen=True)
class OpaqueToken:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PeriodEntry:
    descriptor: object
    degree: int

    @property
    def placement(self) -> int:
        return -self.degree

    def __str__(self) -> str:
        return f"{self.descriptor}@{self.degree}"


@dataclass
class PeriodTable:
    label: str
    normalized: bool
    entries: dict[int, PeriodEntry]
    meta: dict = field(default_factory=dict, compare=False)

    def components(self) -> list[int]:
        return sorted(self.entries)


def _rng(n_max: int) -> range:
    return range(-n_max, n_max + 1)


# ---------------------------------------------------------------------------
# Iwasawa-Tate


def iwasawa_period_table(n_max: int) -> PeriodTable:
    """n < 0: trivial character @0; n = 0: CcF @0; n > 0: norm @2n."""
    entries = {}
    for n in _rng(n_max):
        if n < 0:
            entries[n] = PeriodEntry(Char(0), 0)
        elif n == 0:
            entries[n] = PeriodEntry(CcToken("CcF"), 0)
        else:
            entries[n] = PeriodEntry(Char(1), 2 * n)
    return PeriodTable("iwasawa_tate", False, entries)


def _twist_descriptor(d, e):
    if isinstance(d, (Char, CcToken)):
        return d.twist(e) if isinstance(d, Char) else d.twist_by(e)
    raise TypeError(f"cannot twist {d}")


def degree_twist(t: PeriodTable, eta: int) -> PeriodTable:
    """Component n: tensor with norm^(-eta/2) and shift by [n*eta]."""
    if eta == 0:
        return PeriodTable(t.label, t.normalized, dict(t.entries), dict(t.meta))
    entries = {}
    for n, ent in t.entries.items():
        entries[n] = PeriodEntry(_twist_descriptor(ent.descriptor, Fraction(-eta, 2)),
                                 ent.degree - n * eta)
    meta = dict(t.meta)
    meta["eta"] = meta.get("eta", 0) + eta
    return PeriodTable(t.label, meta["eta"] != 0, entries, meta)


def normalized_iwasawa_period_table(n_max: int) -> PeriodTable:
    return degree_twist(iwasawa_period_table(n_max), 1)


def fourier_canonical(d):
    """CcF with right translation twisted by norm^e is CcF with left translation
    twisted by norm^(e-1)."""
    if isinstance(d, CcToken) and d.kind == "CcF" and d.action == "right":
        return CcToken("CcF", d.twist - 1, "left")
    return d


def dual_period_table(t: PeriodTable) -> PeriodTable:
    """Pullback along inversion: component n receives the inverse of component -n."""
    entries = {}
    for n in t.entries:
        src = t.entries.get(-n)
        if src is None:
            continue
        entries[n] = PeriodEntry(src.descriptor.inverse(), src.degree)
    return PeriodTable(t.label + "_dual", t.normalized, entries, dict(t.meta))


def compare_period_tables(a: PeriodTable, b: PeriodTable, title: str = "") -> Report:
    rep = Report(title)
    for n in sorted(set(a.entries) | set(b.entries)):
        x, y = a.entries.get(n), b.entries.get(n)
        if x is None or y is None:
            rep.record(n, False, f"component {n} missing")
            continue
        ok = (fourier_canonical(x.descriptor) == fourier_canonical(y.descriptor)
              and x.degree == y.degree)
        rep.record(n, ok, f"component {n}: {x} != {y}")
    return rep


def period_fe_check(n_max: int) -> Report:
    std = normalized_iwasawa_period_table(n_max)
    return compare_period_tables(std, dual_period_table(std), "automorphic functional equation")


# ---------------------------------------------------------------------------
# Hecke period for GL_2 / A


@dataclass(frozen=True)
class EisAToken:
    parabolic: str       # "B" or "Bbar"
    first: CcToken       # first G_m factor of the torus datum
    second: Char         # second G_m factor
    degree: int

    def __str__(self) -> str:
        return f"Eis_{self.parabolic}!({self.first} x {self.second})@{self.degree}"


@dataclass(frozen=True)
class FiberSeqA:
    first: object
    middle: str
    last: object

    def __str__(self) -> str:
        return f"{self.first} -> {self.middle} -> {self.last}"


W_PSI = OpaqueToken("W_psi")
CC_G_MOD_A = OpaqueToken("CcGL2/A")


def hecke_period_table(n_max: int, normalized: bool = True) -> PeriodTable:
    """Normalized rows are Eisenstein tokens (fiber sequence at n = 0); the
    unnormalized rows are compact inductions cInd norm^-1 @[2n] (n < 0) and
    cInd norm @[-2n] (n > 0)."""
    entries = {}
    cc = CcToken("CcFx")
    for n in _rng(n_max):
        if not normalized:
            if n < 0:
                entries[n] = PeriodEntry(CInd(Char(-1)), -2 * n)
            elif n == 0:
                entries[n] = PeriodEntry(CC_G_MOD_A, 0)
            else:
                entries[n] = PeriodEntry(CInd(Char(1)), 2 * n)
            continue
        if n < 0:
            tok = EisAToken("B", cc, Char(Fraction(-1, 2)), -n)
        elif n == 0:
            tok = FiberSeqA(W_PSI, "P_0", EisAToken("B", cc, Char(Fraction(-1, 2)), 0))
        else:
            tok = EisAToken("Bbar", cc, Char(Fraction(1, 2)), n)
        entries[n] = PeriodEntry(tok, tok.degree if isinstance(tok, EisAToken) else 0)
    return PeriodTable("hecke", normalized, entries)


def restrict_to_stratum(tok: EisAToken, n: int) -> PeriodEntry:
    """Eis_B! on the stratum b_n twists by norm^(-1/2) and shifts by [n]; Eis_Bbar!
    twists by norm^(1/2) and shifts by [-n]."""
    if tok.parabolic == "B":
        return PeriodEntry(CInd(tok.second.twist(Fraction(-1, 2))), tok.degree - n)
    if tok.parabolic == "Bbar":
        return PeriodEntry(CInd(tok.second.twist(Fraction(1, 2))), tok.degree + n)
    raise ValueError(f"unknown parabolic {tok.parabolic!r}")


__all__ = [
    "CC_G_MOD_A", "CInd", "CcToken", "Char", "EisAToken", "FiberSeqA", "OpaqueToken",
    "PeriodEntry", "PeriodTable", "W_PSI", "compare_period_tables", "degree_twist",
    "dual_period_table", "fourier_canonical", "hecke_period_table", "iwasawa_period_table",
    "normalized_iwasawa_period_table", "period_fe_check", "restrict_to_stratum",
]
