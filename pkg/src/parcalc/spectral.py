"""B-side tables over the trivial component of the stack of G_m-parameters.

Everything lives over R = K[T, 1/T], T the coordinate on the component.  The
standard representation `std` has universal Frobenius T; `std_dual` has T^-1.
Weights are indexed so that Sym^n of the cyclotomic piece sits in weight +n
and Sym^n of the dual trivial piece in weight -n.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .complexes import (
    Complex,
    GradedCohomology,
    cohomology,
    dual,
    sym_power_fast,
    sym_power_oracle,
    two_term,
    unit_complex,
    zero_complex,
)
from .laurent import FgModule, FieldRing, LaurentPoly, LaurentRing
from .report import Report
from .scalars import ExactScalar, FieldCtx, q_power
from .weil_deligne import WDRep, wd_complex

VARIETIES = ("std", "std_dual")
Entry = tuple  # (FgModule, degree)


# ---------------------------------------------------------------------------
# universal complexes


def _frob(ring: LaurentRing, variety: str) -> LaurentPoly:
    if variety not in VARIETIES:
        raise ValueError(f"unknown variety {variety!r}")
    T = ring.T()
    return T if variety == "std" else T.unit_inverse()


def e_triv(ctx: FieldCtx, variety: str = "std") -> Complex:
    """[R --Phi-1--> R] in degrees [0, 1]."""
    ring = LaurentRing(ctx)
    return two_term(ring, _frob(ring, variety) - 1, 0)


def e_cyc_shifted(ctx: FieldCtx, variety: str = "std") -> Complex:
    """[R --q*Phi-1--> R] in degrees [1, 2]."""
    ring = LaurentRing(ctx)
    return two_term(ring, _frob(ring, variety) * ctx.q - 1, 1)


def universal_complex(ctx: FieldCtx, component: str = "triv", variety: str = "std") -> Complex:
    """The rank (1, 2, 1) complex with d^0 = (Phi-1, 0)^t and d^1 = (0, q*Phi-1)."""
    ring = LaurentRing(ctx)
    if component != "triv":
        return zero_complex(ring)
    phi = _frob(ring, variety)
    z = ring.zero()
    return Complex(ring, {0: 1, 1: 2, 2: 1},
                   {0: [[phi - 1], [z]], 1: [[z, phi * ctx.q - 1]]})


def special_points(ctx: FieldCtx, variety: str = "std") -> dict[str, ExactScalar]:
    """Support of the trivial and cyclotomic pieces: T = 1 and T = Phi^-1(1/q)."""
    one = ctx.one()
    return {"triv": one, "cyc": q_power(ctx, -1 if variety == "std" else 1)}


# ---------------------------------------------------------------------------
# localization of torsion modules


def linear(ctx: FieldCtx, p: ExactScalar) -> LaurentPoly:
    return LaurentPoly(ctx, {1: 1, 0: -p})


def strip_point(f: LaurentPoly, p: ExactScalar) -> tuple[LaurentPoly, int]:
    """f = (T-p)^k * g with g(p) != 0; returns (g, k)."""
    lin = linear(f.ctx, p)
    k = 0
    while True:
        quo, rem = f.divmod(lin)
        if not rem.is_zero():
            return f, k
        f, k = quo, k + 1


def localize(M: FgModule, points) -> FgModule:
    """Restrict to the open set where T avoids every point in `points`."""
    out = []
    for f in M.torsion:
        for p in points:
            f, _ = strip_point(f, p)
        out.append(f)
    return FgModule.make(M.free_rank, out)


# ---------------------------------------------------------------------------
# charts


@dataclass
class ChartData:
    chart: str                     # "U1" or "Uq"
    variety: str
    removed: ExactScalar           # the point missing from this chart
    complexes: dict[int, Complex]  # weight -> complex over R
    entries: dict[int, list]       # weight -> [(FgModule, degree)] restricted to the chart

    def points(self) -> list[ExactScalar]:
        return [self.removed]


def chart_compute(ctx: FieldCtx, chart: str, n_max: int, variety: str = "std") -> ChartData:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    pts = special_points(ctx, variety)
    ring = LaurentRing(ctx)
    cx: dict[int, Complex] = {0: unit_complex(ring)}
    if chart == "U1":
        removed = pts["triv"]
        E = e_cyc_shifted(ctx, variety)
        for n in range(1, n_max + 1):
            cx[n] = sym_power_fast(E, n)
            cx[-n] = zero_complex(ring)
    elif chart == "Uq":
        removed = pts["cyc"]
        E = dual(e_triv(ctx, variety))
        for n in range(1, n_max + 1):
            cx[-n] = sym_power_fast(E, n)
            cx[n] = zero_complex(ring)
    else:
        raise ValueError(f"unknown chart {chart!r}")
    entries = {}
    for w, X in cx.items():
        H = cohomology(X)
        row = []
        for deg in H.degrees():
            M = localize(H[deg], [removed])
            if not M.is_zero():
                row.append((M, deg))
        entries[w] = row
    return ChartData(chart, variety, removed, cx, entries)


# ---------------------------------------------------------------------------
# graded tables


@dataclass
class GradedTable:
    component: str
    normalized: bool
    weights: dict[int, tuple]      # weight -> ((FgModule, degree), ...)
    variety: str = "std"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.weights = {int(w): tuple(sorted(v, key=lambda e: e[1]))
                        for w, v in self.weights.items()}

    def entry(self, w: int) -> tuple:
        return self.weights.get(w, ())

    def nonzero(self) -> dict[int, tuple]:
        return {w: v for w, v in self.weights.items() if v}

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedTable):
            return NotImplemented
        return (self.component == other.component and self.normalized == other.normalized
                and self.nonzero() == other.nonzero())


def _combine(MA: FgModule, pA: ExactScalar, MB: FgModule, pB: ExactScalar) -> FgModule:
    """Glue a module on {T != pA} with one on {T != pB} into a module on G_m."""
    if MA.free_rank != MB.free_rank:
        raise ValueError("free ranks disagree on the overlap")
    if localize(MA, [pA, pB]) != localize(MB, [pA, pB]):
        raise ValueError(f"charts disagree on the overlap: {MA} vs {MB}")
    a, b = list(MA.torsion), list(MB.torsion)
    k = max(len(a), len(b))
    a = [None] * (k - len(a)) + a
    b = [None] * (k - len(b)) + b
    out = []
    for fa, fb in zip(a, b):
        g = fa
        if fb is not None:
            _, e = strip_point(fb, pA)
            lin = linear(fb.ctx, pA) ** e
            g = lin if g is None else g * lin
        if g is not None:
            out.append(g)
    return FgModule.make(MA.free_rank, out)


def glue(u1: ChartData, uq: ChartData, transition: LaurentPoly | None = None) -> GradedTable:
    """Glue chart tables along the overlap.

    The weight-0 transition (default T - 1) must be a unit on the overlap; a
    line bundle on G_m is trivial, so the glued weight-0 piece is free.
    """
    if u1.variety != uq.variety:
        raise ValueError("charts come from different varieties")
    pA, pB = u1.removed, uq.removed
    ctx = pA.ctx
    if transition is None:
        transition = LaurentPoly(ctx, {1: 1, 0: -1})
    g = transition
    for p in (pA, pB):
        g, _ = strip_point(g, p)
    if not g.is_unit():
        raise ValueError(f"transition {transition} is not invertible on the overlap")
    weights = {}
    for w in sorted(set(u1.entries) | set(uq.entries)):
        ea = {deg: M for M, deg in u1.entries.get(w, [])}
        eb = {deg: M for M, deg in uq.entries.get(w, [])}
        row = []
        for deg in sorted(set(ea) | set(eb)):
            MA = ea.get(deg, FgModule(0, ()))
            MB = eb.get(deg, FgModule(0, ()))
            M = _combine(MA, pA, MB, pB)
            if not M.is_zero():
                row.append((M, deg))
        weights[w] = row
    return GradedTable("triv", False, weights, u1.variety,
                       meta={"transition": str(transition)})


def iwasawa_lsheaf_table(ctx: FieldCtx, n_max: int, variety: str = "std") -> GradedTable:
    return glue(chart_compute(ctx, "U1", n_max, variety), chart_compute(ctx, "Uq", n_max, variety))


def ramified_table(label: str) -> GradedTable:
    """Components with nontrivial inertia carry no data beyond the structure sheaf."""
    return GradedTable(label, False, {})


# ---------------------------------------------------------------------------
# normalization


def _move_point(f: LaurentPoly, z_hat: int) -> LaurentPoly:
    """Pull back along T -> q^(-z/2) T: f(T) becomes f(q^(-z/2) T), renormalized."""
    c = q_power(f.ctx, Fraction(-z_hat, 2))
    return f.substitute_scale(c).normal_form()[1]


def normalize_table(t: GradedTable, z_hat: int) -> GradedTable:
    """Shear weight w by [w*z_hat] and pull back along T -> q^(-z_hat/2) T."""
    weights = {}
    for w, row in t.weights.items():
        weights[w] = [(FgModule.make(M.free_rank, [_move_point(f, z_hat) for f in M.torsion]),
                       deg - w * z_hat) for M, deg in row]
    meta = dict(t.meta)
    meta["z_hat"] = meta.get("z_hat", 0) + z_hat
    return GradedTable(t.component, meta["z_hat"] != 0, weights, t.variety, meta)


def denormalize_table(t: GradedTable, z_hat: int) -> GradedTable:
    return normalize_table(t, -z_hat)


def relabel_weights(t: GradedTable, sign: int) -> GradedTable:
    return replace(t, weights={sign * w: v for w, v in t.weights.items()}, meta=dict(t.meta))


def normalized_iwasawa_table(ctx: FieldCtx, n_max: int, variety: str = "std") -> GradedTable:
    """std: z_hat = 1 on weights as computed.  std_dual: its central cocharacter is
    the inverse one, so weights are first relabelled w -> -w and z_hat = -1."""
    t = iwasawa_lsheaf_table(ctx, n_max, variety)
    if variety == "std":
        return normalize_table(t, 1)
    return normalize_table(relabel_weights(t, -1), -1)


def compare_fe(std_norm: GradedTable, dual_norm: GradedTable, n_max: int) -> Report:
    """L^norm_std at n against L^norm_std_dual at the same central weight n.

    `dual_norm` is indexed by central weight, which is minus the grading weight,
    so this is the comparison of std at n with std_dual at grading weight -n.
    """
    rep = Report("spectral functional equation")
    for n in range(-n_max, n_max + 1):
        a, b = std_norm.entry(n), dual_norm.entry(n)
        rep.record(n, a == b, f"weight {n}: {_fmt(a)} != {_fmt(b)}")
    return rep


def functional_equation_check(ctx: FieldCtx, n_max: int) -> Report:
    return compare_fe(normalized_iwasawa_table(ctx, n_max, "std"),
                      normalized_iwasawa_table(ctx, n_max, "std_dual"), n_max)


def _fmt(row) -> str:
    return "[" + ", ".join(f"{M}@{d}" for M, d in row) + "]"


# ---------------------------------------------------------------------------
# Hecke: graded pieces at parameter points and symbolic rows


def hecke_graded_piece(phi: WDRep, n: int) -> GradedCohomology:
    if not 1 <= n <= 4:
        raise ValueError("n must be in 1..4")
    if not isinstance(phi.ring, FieldRing) or phi.dim != 2:
        raise ValueError("expected a 2-dimensional representation over K")
    return cohomology(sym_power_oracle(wd_complex(phi), n))


@dataclass(frozen=True)
class EisSpecToken:
    parabolic: str          # "B" or "Bbar"
    first: str              # structure sheaf of the G_m-parameter stack
    point: ExactScalar      # support point T of the second factor
    degree: int
    weight: int

    def normalize(self, w: int, z_hat: int) -> "EisSpecToken":
        p = self.point * q_power(self.point.ctx, Fraction(z_hat, 2))
        return replace(self, point=p, degree=self.degree - w * z_hat)

    def __str__(self) -> str:
        return (f"Eis^spec_{self.parabolic}({self.first} x pt[T={self.point}])"
                f"@{self.degree} (wt {self.weight})")


@dataclass(frozen=True)
class SymPiece:
    n: int

    def __str__(self) -> str:
        return f"SymPiece({self.n})"


@dataclass(frozen=True)
class FiberSeqToken:
    first: object
    middle: str
    last: object

    def __str__(self) -> str:
        return f"{self.first} -> {self.middle} -> {self.last}"


O_PAR_GM = "O_Par_Gm"
O_PAR_GL2 = "O_Par_GL2"


def hecke_lsheaf_table(ctx: FieldCtx, n_max: int, normalized: bool = False) -> dict:
    """Symbolic rows indexed by n in [-n_max, n_max].

    Unnormalized: n < 0 is a single Eisenstein token; n = 0 and n > 0 are fiber
    sequences.  Normalized: n <= 0 is sheared and translated with z_hat = 1; n > 0
    is routed through the functional equation, i.e. the std_dual row at grading
    weight -n (parabolic B, trivial point) normalized with central weight n and
    z_hat = -1.
    """
    one = ctx.one()
    rows: dict[int, object] = {}
    for n in range(-n_max, n_max + 1):
        eis = EisSpecToken("Bbar", O_PAR_GM, one, 0, n)
        if not normalized:
            if n < 0:
                rows[n] = eis
            elif n == 0:
                rows[n] = FiberSeqToken(O_PAR_GL2, "L_0", eis)
            else:
                rows[n] = FiberSeqToken(SymPiece(n), f"L_{n}", eis)
            continue
        if n < 0:
            rows[n] = eis.normalize(n, 1)
        elif n == 0:
            rows[n] = FiberSeqToken(O_PAR_GL2, "L_0^norm", eis.normalize(0, 1))
        else:
            dual_row = EisSpecToken("B", O_PAR_GM, one, 0, n)
            rows[n] = dual_row.normalize(n, -1)
    return rows


__all__ = [
    "ChartData", "EisSpecToken", "FiberSeqToken", "GradedTable", "O_PAR_GL2", "O_PAR_GM",
    "SymPiece", "chart_compute", "compare_fe", "denormalize_table", "e_cyc_shifted", "e_triv",
    "functional_equation_check", "glue", "hecke_graded_piece", "hecke_lsheaf_table",
    "iwasawa_lsheaf_table", "localize", "normalize_table", "normalized_iwasawa_table",
    "ramified_table", "relabel_weights", "special_points", "universal_complex",
]
