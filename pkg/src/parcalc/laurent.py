"""Laurent polynomials over K, Smith normal form and f.g. module normal forms.

R = K[T, 1/T] is a Euclidean domain once T-powers are factored out: the
size of f is its span (top exponent minus bottom exponent), and units are
exactly the monomials c*T^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .scalars import ExactScalar, FieldCtx


class LaurentPoly:
    """Immutable Laurent polynomial; coefficients stored sparsely by exponent."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs: dict | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        acc: dict[int, ExactScalar] = {}
        for e, c in items:
            if not isinstance(c, ExactScalar):
                c = ExactScalar.make(ctx, c)
            acc[e] = acc[e] + c if e in acc else c
        self.ctx = ctx
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        self._hash = None

    @classmethod
    def const(cls, ctx: FieldCtx, c) -> "LaurentPoly":
        return cls(ctx, {0: c})

    @classmethod
    def monomial(cls, ctx: FieldCtx, c, k: int) -> "LaurentPoly":
        return cls(ctx, {k: c})

    @classmethod
    def T(cls, ctx: FieldCtx) -> "LaurentPoly":
        return cls(ctx, {1: 1})

    @property
    def terms(self) -> tuple:
        return self._terms

    def coeff(self, k: int) -> ExactScalar:
        for e, c in self._terms:
            if e == k:
                return c
        return self.ctx.zero()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def low(self) -> int:
        return self._terms[0][0]

    def high(self) -> int:
        return self._terms[-1][0]

    def span(self) -> int:
        if not self._terms:
            raise ValueError("span of zero polynomial")
        return self.high() - self.low()

    norm = span

    def leading(self) -> ExactScalar:
        return self._terms[-1][1]

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.const(self.ctx, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ExactScalar)):
            other = LaurentPoly.const(self.ctx, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ctx.q == other.ctx.q and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.q, self._terms))
        return self._hash

    def __add__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        return LaurentPoly(self.ctx, list(self._terms) + list(o._terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ctx, [(e, -c) for e, c in self._terms])

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction, ExactScalar)):
            if isinstance(other, (int, Fraction)) and other == 0:
                return LaurentPoly(self.ctx)
            return LaurentPoly(self.ctx, [(e, c * other) for e, c in self._terms])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, ExactScalar] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                k = e1 + e2
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return LaurentPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.const(self.ctx, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift_exp(self, k: int) -> "LaurentPoly":
        """Multiply by T^k."""
        return LaurentPoly(self.ctx, [(e + k, c) for e, c in self._terms])

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of K[T, 1/T]")
        (e, c), = self._terms
        return LaurentPoly(self.ctx, {-e: c.inv()})

    def substitute_scale(self, c: ExactScalar) -> "LaurentPoly":
        """f(T) -> f(c*T)."""
        return LaurentPoly(self.ctx, [(e, a * (c ** e)) for e, a in self._terms])

    def evaluate(self, t: ExactScalar) -> ExactScalar:
        out = self.ctx.zero()
        for e, c in self._terms:
            out = out + c * (t ** e)
        return out

    def divmod(self, g: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Euclidean division: self = quo*g + rem with rem == 0 or span(rem) < span(g)."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.ctx), LaurentPoly(self.ctx)
        a, b = self.low(), g.low()
        p = {e - a: c for e, c in self._terms}
        r = {e - b: c for e, c in g.terms}
        dr = max(r)
        lead_inv = r[dr].inv()
        quo: dict[int, ExactScalar] = {}
        while p and max(p) >= dr:
            dp = max(p)
            c = p[dp] * lead_inv
            quo[dp - dr] = c
            for e, rc in r.items():
                k = e + dp - dr
                v = p.get(k, self.ctx.zero()) - c * rc
                if v.is_zero():
                    p.pop(k, None)
                else:
                    p[k] = v
        qpoly = LaurentPoly(self.ctx, {e + a - b: c for e, c in quo.items()})
        rem = LaurentPoly(self.ctx, {e + a: c for e, c in p.items()})
        return qpoly, rem

    def divides(self, other: "LaurentPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def normal_form(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Return (u, f) with u a unit, f = u*self, low(f) = 0 and leading coefficient 1."""
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        u = LaurentPoly(self.ctx, {-self.low(): self.leading().inv()})
        return u, u * self

    def key(self) -> tuple:
        return (self.span() if self._terms else -1,
                tuple((e, c.a, c.b) for e, c in self._terms))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            cs = str(c)
            if c.b != 0 and c.a != 0:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                mono = "T" if e == 1 else f"T^{e}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def normalize_unit(f: LaurentPoly) -> LaurentPoly:
    if f.is_zero():
        raise ValueError("normalize_unit: zero input")
    return f.normal_form()[1]


# ---------------------------------------------------------------------------
# base rings: a thin interface shared by the field K and the ring K[T, 1/T]


class FieldRing:
    """The coefficient field K viewed as a Euclidean domain (every nonzero element has size 0)."""

    name = "K"

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx

    def zero(self) -> ExactScalar:
        return self.ctx.zero()

    def one(self) -> ExactScalar:
        return self.ctx.one()

    def coerce(self, x) -> ExactScalar:
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, LaurentPoly):
            if x.is_zero():
                return self.zero()
            if len(x.terms) != 1 or x.low() != 0:
                raise ValueError(f"{x} is not a constant")
            return x.terms[0][1]
        return ExactScalar.make(self.ctx, x)

    def norm(self, x: ExactScalar) -> int:
        return 0

    def divmod(self, x: ExactScalar, y: ExactScalar):
        return x / y, self.zero()

    def normal_form(self, x: ExactScalar):
        u = x.inv()
        return u, self.one()

    def xgcd(self, x: ExactScalar, y: ExactScalar):
        """(g, s, t) with s*x + t*y = g = 1 (x, y not both zero)."""
        if not x.is_zero():
            return self.one(), x.inv(), self.zero()
        return self.one(), self.zero(), y.inv()

    def is_unit(self, x: ExactScalar) -> bool:
        return not x.is_zero()

    def unit_inverse(self, x: ExactScalar) -> ExactScalar:
        return x.inv()

    def key(self, x: ExactScalar) -> tuple:
        return (0, x.key())

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldRing) and other.ctx == self.ctx

    def __hash__(self) -> int:
        return hash(("K", self.ctx.q))


class LaurentRing:
    """R = K[T, 1/T]."""

    name = "K[T±]"

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx

    def zero(self) -> LaurentPoly:
        return LaurentPoly(self.ctx)

    def one(self) -> LaurentPoly:
        return LaurentPoly.const(self.ctx, 1)

    def T(self) -> LaurentPoly:
        return LaurentPoly.T(self.ctx)

    def coerce(self, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(self.ctx, x)

    def norm(self, x: LaurentPoly) -> int:
        return x.span()

    def divmod(self, x: LaurentPoly, y: LaurentPoly):
        return x.divmod(y)

    def normal_form(self, x: LaurentPoly):
        return x.normal_form()

    def xgcd(self, x: LaurentPoly, y: LaurentPoly):
        """(g, s, t) with s*x + t*y = g, g the normalized gcd.

        Remainders are made monic at every step, which keeps the Bezout
        coefficients small.
        """
        r0, r1 = x, y
        s0, s1, t0, t1 = self.one(), self.zero(), self.zero(), self.one()
        if r0.is_zero():
            r0, r1, s0, s1, t0, t1 = r1, r0, t0, t1, s0, s1
        u, r0 = r0.normal_form()
        s0, t0 = s0 * u, t0 * u
        while not r1.is_zero():
            u, r1 = r1.normal_form()
            s1, t1 = s1 * u, t1 * u
            quo, rem = r0.divmod(r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
            t0, t1 = t1, t0 - quo * t1
        return r0, s0, t0

    def is_unit(self, x: LaurentPoly) -> bool:
        return x.is_unit()

    def unit_inverse(self, x: LaurentPoly) -> LaurentPoly:
        return x.unit_inverse()

    def key(self, x: LaurentPoly) -> tuple:
        return x.normal_form()[1].key()

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentRing) and other.ctx == self.ctx

    def __hash__(self) -> int:
        return hash(("R", self.ctx.q))


Ring = FieldRing | LaurentRing
Matrix = list  # list of rows


# ---------------------------------------------------------------------------
# dense matrix helpers


def identity(ring: Ring, n: int) -> Matrix:
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def zeros(ring: Ring, m: int, n: int) -> Matrix:
    return [[ring.zero() for _ in range(n)] for _ in range(m)]


def mat_mul(ring: Ring, A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    """A (m x k) times B (k x n).  `inner` is required when k cannot be read off A."""
    m = len(A)
    k = inner if inner is not None else (len(A[0]) if A else len(B))
    n = len(B[0]) if B else 0
    out = zeros(ring, m, n)
    for i in range(m):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a.is_zero():
                continue
            Bt = B[t]
            row = out[i]
            for j in range(n):
                b = Bt[j]
                if not b.is_zero():
                    row[j] = row[j] + a * b
    return out


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_eq(A: Matrix, B: Matrix) -> bool:
    if len(A) != len(B):
        return False
    return all(len(a) == len(b) and all(x == y for x, y in zip(a, b)) for a, b in zip(A, B))


def is_zero_matrix(A: Matrix) -> bool:
    return all(x.is_zero() for row in A for x in row)


def scale(A: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in A]


def det(ring: Ring, A: Matrix):
    """Determinant by cofactor expansion along the sparsest row (sizes here are small)."""
    n = len(A)
    if n == 0:
        return ring.one()
    if any(len(r) != n for r in A):
        raise ValueError("det of a non-square matrix")
    if n == 1:
        return A[0][0]
    best = min(range(n), key=lambda i: sum(not x.is_zero() for x in A[i]))
    total = ring.zero()
    for j, a in enumerate(A[best]):
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for i, row in enumerate(A) if i != best]
        term = a * det(ring, minor)
        total = total + term if (best + j) % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithResult:
    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    rank: int

    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(self.rank)]


def smith_normal_form(ring: Ring, M: Matrix, ncols: int | None = None,
                      transforms: bool = True) -> SmithResult:
    """U*M*V = D with U, V invertible, D diagonal, d_i | d_{i+1}, d_i normalized.

    Pivot choice: smallest size, then smallest normalized form, then position.
    `ncols` must be given when M has no rows.  With transforms=False only D and
    the rank are meaningful; U, V and their inverses are left as identities.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    A = [[ring.coerce(x) for x in row] for row in M]
    U, Ui = identity(ring, m), identity(ring, m)
    V, Vi = identity(ring, n), identity(ring, n)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if not transforms:
                return
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            if not transforms:
                return
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        if not transforms:
            return
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]
        for row in Ui:
            row[src] = row[src] - row[dst] * c

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for row in A:
            row[dst] = row[dst] + row[src] * c
        if not transforms:
            return
        for row in V:
            row[dst] = row[dst] + row[src] * c
        Vi[src] = [x - c * y for x, y in zip(Vi[src], Vi[dst])]

    def scale_row(i, u):
        A[i] = [x * u for x in A[i]]
        if not transforms:
            return
        uinv = ring.unit_inverse(u)
        U[i] = [x * u for x in U[i]]
        for row in Ui:
            row[i] = row[i] * uinv

    def combine_rows(t, i, s_, x, y, w):
        # (row_t, row_i) <- (s_*row_t + x*row_i, y*row_t + w*row_i), determinant 1
        A[t], A[i] = ([s_ * a + x * b for a, b in zip(A[t], A[i])],
                      [y * a + w * b for a, b in zip(A[t], A[i])])
        if not transforms:
            return
        U[t], U[i] = ([s_ * a + x * b for a, b in zip(U[t], U[i])],
                      [y * a + w * b for a, b in zip(U[t], U[i])])
        for row in Ui:
            a, b = row[t], row[i]
            row[t], row[i] = a * w - b * y, b * s_ - a * x

    def combine_cols(t, j, s_, x, y, w):
        # (col_t, col_j) <- (s_*col_t + x*col_j, y*col_t + w*col_j), determinant 1
        for M in (A, V) if transforms else (A,):
            for row in M:
                a, b = row[t], row[j]
                row[t], row[j] = s_ * a + x * b, y * a + w * b
        if not transforms:
            return
        Vi[t], Vi[j] = ([w * a - y * b for a, b in zip(Vi[t], Vi[j])],
                        [s_ * b - x * a for a, b in zip(Vi[t], Vi[j])])

    def eliminate_row(i) -> bool:
        """Clear A[i][t]; returns True if the pivot was unchanged."""
        a, b = A[t][t], A[i][t]
        quo, rem = ring.divmod(b, a)
        if rem.is_zero():
            add_row(i, t, -quo)
            return True
        g, s_, x = ring.xgcd(a, b)
        combine_rows(t, i, s_, x, -ring.divmod(b, g)[0], ring.divmod(a, g)[0])
        return False

    def eliminate_col(j) -> bool:
        a, b = A[t][t], A[t][j]
        quo, rem = ring.divmod(b, a)
        if rem.is_zero():
            add_col(j, t, -quo)
            return True
        g, s_, x = ring.xgcd(a, b)
        combine_cols(t, j, s_, x, -ring.divmod(b, g)[0], ring.divmod(a, g)[0])
        return False

    t = 0
    while t < min(m, n):
        cands = [(ring.norm(A[i][j]), ring.key(A[i][j]), i, j)
                 for i in range(t, m) for j in range(t, n) if not A[i][j].is_zero()]
        if not cands:
            break
        _, _, pi, pj = min(cands)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            # smallest entry of row t and column t becomes the monic pivot
            line = [(ring.norm(A[i][t]), ring.key(A[i][t]), i, t)
                    for i in range(t, m) if not A[i][t].is_zero()]
            line += [(ring.norm(A[t][j]), ring.key(A[t][j]), t, j)
                     for j in range(t + 1, n) if not A[t][j].is_zero()]
            _, _, pi, pj = min(line)
            swap_rows(t, pi)
            swap_cols(t, pj)
            u, _ = ring.normal_form(A[t][t])
            scale_row(t, u)
            clean = True
            for i in range(t + 1, m):
                if not A[i][t].is_zero():
                    clean = eliminate_row(i) and clean
            for j in range(t + 1, n):
                if not A[t][j].is_zero():
                    clean = eliminate_col(j) and clean
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if not ring.divmod(A[i][j], A[t][t])[1].is_zero()), None)
            if bad is None:
                break
            add_row(t, bad[0], ring.one())
        u, _ = ring.normal_form(A[t][t])
        scale_row(t, u)
        t += 1
    return SmithResult(U=U, D=A, V=V, U_inv=Ui, V_inv=Vi, rank=t)


# ---------------------------------------------------------------------------
# finitely generated modules


@dataclass(frozen=True)
class FgModule:
    """free_rank copies of R plus the cyclic modules R/(f) for f in torsion."""

    free_rank: int
    torsion: tuple = field(default_factory=tuple)

    @staticmethod
    def make(free_rank: int, torsion: Iterable[LaurentPoly] = ()) -> "FgModule":
        fs = []
        for f in torsion:
            g = normalize_unit(f)
            if not g.is_unit():
                fs.append(g)
        fs.sort(key=lambda f: f.key())
        return FgModule(free_rank, tuple(fs))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("R" if self.free_rank == 1 else f"R^{self.free_rank}")
        parts += [f"R/({f})" for f in self.torsion]
        return " + ".join(parts) if parts else "0"


def module_from_presentation(ring: Ring, gens: int, rels: Matrix) -> FgModule:
    """Cokernel of rels: R^k -> R^gens (rels has `gens` rows)."""
    if len(rels) != gens:
        raise ValueError(f"relation matrix has {len(rels)} rows, expected {gens}")
    if gens == 0:
        return FgModule(0, ())
    if not rels[0]:
        return FgModule(gens, ())
    snf = smith_normal_form(ring, rels, transforms=False)
    diag = snf.diagonal()
    if isinstance(ring, FieldRing):
        return FgModule(gens - snf.rank, ())
    return FgModule.make(gens - snf.rank, diag)
