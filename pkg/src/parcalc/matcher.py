"""Local class field theory dictionary and table comparison.

An unramified character chi corresponds to the point T = chi(pi) on the trivial
component; norm(pi) = 1/q, so norm^e sits at T = q^-e.  Compact-support tokens
are not points: CcF on the trivial component is rewritten to CcFx, twists of
CcFx are absorbed, and CcFx goes to the free rank-one module (the Whittaker
normalization).
"""

from __future__ import annotations

from dataclasses import dataclass

from .automorphic import (
    CcToken,
    Char,
    EisAToken,
    FiberSeqA,
    PeriodEntry,
    PeriodTable,
    W_PSI,
    fourier_canonical,
)
from .laurent import FgModule
from .report import Report
from .scalars import ExactScalar, FieldCtx
from .spectral import O_PAR_GL2, O_PAR_GM, EisSpecToken, FiberSeqToken, GradedTable, linear

# Bun component n is matched against central weight WEIGHT_SIGN * n.
WEIGHT_SIGN = 1

# Eisenstein series along B on the automorphic side pair with the opposite
# parabolic on the spectral side.
PARABOLIC_DICTIONARY = {"B": "Bbar", "Bbar": "B"}


class MatchError(ValueError):
    pass


@dataclass(frozen=True)
class CFTPoint:
    component: str
    t_value: ExactScalar

    def __post_init__(self):
        if self.t_value.is_zero():
            raise ValueError("T = 0 is not a point of G_m")


def cft_point(ctx: FieldCtx, chi) -> CFTPoint:
    if not isinstance(chi, Char):
        raise MatchError(f"{chi} is not a character; compact-support tokens match free modules")
    return CFTPoint("triv", chi.value_at_pi(ctx))


def whittaker_rule(tok: CcToken) -> FgModule:
    """CcF ~ CcFx (Bernstein component), CcFx (x) chi ~ CcFx, CcFx -> O."""
    if not isinstance(tok, CcToken):
        raise MatchError(f"Whittaker rule does not apply to {tok}")
    tok = fourier_canonical(tok)
    if tok.kind == "CcF":
        tok = CcToken("CcFx", tok.twist, tok.action)
    tok = CcToken("CcFx", 0, tok.action)  # twist absorbed
    return FgModule(1, ())


def a_entry_to_b(ctx: FieldCtx, ent: PeriodEntry) -> tuple:
    d = ent.descriptor
    if isinstance(d, Char):
        t = cft_point(ctx, d).t_value
        return ((FgModule.make(0, [linear(ctx, t)]), ent.degree),)
    if isinstance(d, CcToken):
        return ((whittaker_rule(d), ent.degree),)
    raise MatchError(f"no spectral counterpart for {d}")


def _canon_iwasawa(ctx: FieldCtx, t, sign: int) -> dict[int, tuple]:
    if isinstance(t, PeriodTable):
        return {sign * n: a_entry_to_b(ctx, e) for n, e in t.entries.items()}
    if isinstance(t, GradedTable):
        return {w: tuple(v) for w, v in t.weights.items()}
    raise TypeError(f"cannot compare {type(t).__name__}")


def _fmt(row) -> str:
    return "[" + ", ".join(f"{M}@{d}" for M, d in row) + "]"


def match_iwasawa(ctx: FieldCtx, x, y, weight_sign: int = WEIGHT_SIGN) -> Report:
    """Compare a period table with an L-sheaf table (either order)."""
    cx, cy = _canon_iwasawa(ctx, x, weight_sign), _canon_iwasawa(ctx, y, weight_sign)
    rep = Report("iwasawa-tate comparison")
    if set(cx) != set(cy):
        raise MatchError(f"component ranges differ: {sorted(cx)} vs {sorted(cy)}")
    for n in sorted(cx):
        a, b = cx[n], cy[n]
        rep.record(n, a == b, f"weight {n}: {_fmt(a)} != {_fmt(b)}")
    if 0 in cx and cx[0] == cy[0]:
        rep.notes.append("weight 0 matched through the Whittaker rule")
    return rep


def _eis_key(ctx: FieldCtx, tok) -> tuple:
    if isinstance(tok, EisAToken):
        first = whittaker_rule(tok.first)
        if first != FgModule(1, ()):
            raise MatchError(f"unexpected first factor {tok.first}")
        return (PARABOLIC_DICTIONARY[tok.parabolic], O_PAR_GM,
                cft_point(ctx, tok.second).t_value, tok.degree)
    if isinstance(tok, EisSpecToken):
        return (tok.parabolic, tok.first, tok.point, tok.degree)
    raise MatchError(f"not an Eisenstein token: {tok}")


def _hecke_key(ctx: FieldCtx, tok) -> tuple:
    if isinstance(tok, PeriodEntry):
        tok = tok.descriptor
    if isinstance(tok, (EisAToken, EisSpecToken)):
        return ("eis",) + _eis_key(ctx, tok)
    if isinstance(tok, FiberSeqA):
        if tok.first != W_PSI:
            raise MatchError(f"unexpected first term {tok.first}")
        return ("fiber", O_PAR_GL2, _eis_key(ctx, tok.last))
    if isinstance(tok, FiberSeqToken):
        return ("fiber", tok.first, _eis_key(ctx, tok.last))
    raise MatchError(f"unrecognized Hecke row {tok}")


def match_hecke(ctx: FieldCtx, p, l, weight_sign: int = WEIGHT_SIGN) -> Report:
    """Row-by-row token comparison; each argument is a PeriodTable or a dict of
    spectral rows."""
    def rows(t):
        if isinstance(t, PeriodTable):
            return {weight_sign * n: e for n, e in t.entries.items()}
        return t

    rows_p, rows_l = rows(p), rows(l)
    if set(rows_p) != set(rows_l):
        raise MatchError("row ranges differ")
    rep = Report("hecke comparison")
    for n in sorted(rows_p):
        try:
            ka, kb = _hecke_key(ctx, rows_p[n]), _hecke_key(ctx, rows_l[n])
        except MatchError as exc:
            rep.record(n, False, str(exc))
            continue
        rep.record(n, ka == kb, f"row {n}: {rows_p[n]} vs {rows_l[n]}")
    return rep


__all__ = [
    "CFTPoint", "MatchError", "PARABOLIC_DICTIONARY", "WEIGHT_SIGN", "a_entry_to_b",
    "cft_point", "match_hecke", "match_iwasawa", "whittaker_rule",
]
