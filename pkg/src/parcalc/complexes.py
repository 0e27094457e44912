"""Bounded cochain complexes of free modules over K or K[T, 1/T].

A complex stores the rank of each term and, for each degree i, the matrix of
d^i : X^i -> X^{i+1} (rank_{i+1} rows, rank_i columns, acting on columns).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .laurent import (
    FgModule,
    FieldRing,
    LaurentRing,
    Matrix,
    Ring,
    is_zero_matrix,
    mat_mul,
    module_from_presentation,
    scale,
    smith_normal_form,
    transpose,
    zeros,
)

ORACLE_LIMIT = 10 ** 4


class ComplexError(ValueError):
    pass


class Complex:
    def __init__(self, ring: Ring, terms: dict[int, int], diffs: dict[int, Matrix] | None = None,
                 check: bool = True):
        self.ring = ring
        self.terms = {int(d): int(r) for d, r in terms.items() if r > 0}
        self.diffs: dict[int, Matrix] = {}
        for i, M in (diffs or {}).items():
            src, dst = self.rank(i), self.rank(i + 1)
            if src == 0 or dst == 0:
                if any(row for row in M) and not is_zero_matrix(M):
                    raise ComplexError(f"nonzero differential d^{i} between zero terms")
                continue
            M = [[ring.coerce(x) for x in row] for row in M]
            if len(M) != dst or any(len(row) != src for row in M):
                raise ComplexError(f"d^{i} has shape {len(M)}x{len(M[0]) if M else 0}, "
                                   f"expected {dst}x{src}")
            if not is_zero_matrix(M):
                self.diffs[int(i)] = M
        if check:
            self.check_d_squared()

    # -- basic accessors
    def rank(self, i: int) -> int:
        return self.terms.get(i, 0)

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def d(self, i: int) -> Matrix:
        if i in self.diffs:
            return self.diffs[i]
        return zeros(self.ring, self.rank(i + 1), self.rank(i))

    def total_rank(self) -> int:
        return sum(self.terms.values())

    def is_field(self) -> bool:
        return isinstance(self.ring, FieldRing)

    def check_d_squared(self) -> None:
        for i in self.diffs:
            if i + 1 in self.diffs:
                prod = mat_mul(self.ring, self.diffs[i + 1], self.diffs[i])
                if not is_zero_matrix(prod):
                    raise ComplexError(f"d^{i + 1} o d^{i} != 0")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        if self.ring != other.ring or self.terms != other.terms:
            return False
        return all(_mat_equal(self.d(i), other.d(i)) for i in self.terms)

    def __repr__(self) -> str:
        return f"Complex({self.ring.name}, terms={self.terms})"

    def euler_char(self) -> int:
        return sum((-1) ** (i % 2) * r for i, r in self.terms.items())


def _mat_equal(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(
        len(a) == len(b) and all(x == y for x, y in zip(a, b)) for a, b in zip(A, B))


def zero_complex(ring: Ring) -> Complex:
    return Complex(ring, {})


def unit_complex(ring: Ring, degree: int = 0) -> Complex:
    return Complex(ring, {degree: 1})


def two_term(ring: Ring, f, a: int) -> Complex:
    """[R --f--> R] in degrees [a, a+1]."""
    return Complex(ring, {a: 1, a + 1: 1}, {a: [[f]]})


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class GradedCohomology:
    """degree -> FgModule (ring base) or dimension (field base); zero entries omitted."""

    groups: dict

    def __getitem__(self, i):
        return self.groups.get(i, 0 if self._field() else FgModule(0, ()))

    def _field(self) -> bool:
        return any(isinstance(v, int) for v in self.groups.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, dict):
            return self.groups == other
        return isinstance(other, GradedCohomology) and self.groups == other.groups

    def degrees(self) -> list[int]:
        return sorted(self.groups)


def cohomology(X: Complex) -> GradedCohomology:
    ring = X.ring
    out = {}
    if isinstance(ring, FieldRing):
        # over a field only ranks matter
        ranks = {i: smith_normal_form(ring, M, X.rank(i), transforms=False).rank
                 for i, M in X.diffs.items()}
        for i in X.degrees():
            h = X.rank(i) - ranks.get(i, 0) - ranks.get(i - 1, 0)
            if h:
                out[i] = h
        return GradedCohomology(out)
    for i in X.degrees():
        n = X.rank(i)
        nxt = X.rank(i + 1)
        prev = X.rank(i - 1)
        if nxt and i in X.diffs:
            snf = smith_normal_form(ring, X.diffs[i])
            r, Vi = snf.rank, snf.V_inv
        else:
            r, Vi = 0, None
        k = n - r
        if k == 0:
            continue
        if prev and (i - 1) in X.diffs:
            D = X.diffs[i - 1]
            coords = mat_mul(ring, Vi, D) if Vi is not None else [list(row) for row in D]
            rels = coords[r:]
        else:
            rels = [[] for _ in range(k)]
        mod = module_from_presentation(ring, k, rels)
        if mod.is_zero():
            continue
        out[i] = mod.free_rank if isinstance(ring, FieldRing) else mod
    return GradedCohomology(out)


# ---------------------------------------------------------------------------
# shift, dual, sums, tensor


def shift(X: Complex, k: int) -> Complex:
    """(X[k])^i = X^{i+k}, differentials multiplied by (-1)^k."""
    sign = -1 if k % 2 else 1
    terms = {i - k: r for i, r in X.terms.items()}
    diffs = {i - k: scale(M, sign) for i, M in X.diffs.items()}
    return Complex(X.ring, terms, diffs, check=False)


def dual(X: Complex) -> Complex:
    """(X^v)^i = (X^{-i})^v; d^i is the transpose of d^{-i-1} times (-1)^{i+1}."""
    terms = {-i: r for i, r in X.terms.items()}
    diffs = {}
    for j, M in X.diffs.items():
        i = -j - 1
        diffs[i] = scale(transpose(M), -1 if (i + 1) % 2 else 1)
    return Complex(X.ring, terms, diffs, check=False)


def direct_sum(X: Complex, Y: Complex) -> Complex:
    ring = X.ring
    degs = sorted(set(X.terms) | set(Y.terms))
    terms = {i: X.rank(i) + Y.rank(i) for i in degs}
    diffs = {}
    for i in degs:
        if i not in X.diffs and i not in Y.diffs:
            continue
        a, b = X.d(i), Y.d(i)
        rows = []
        for r in range(X.rank(i + 1)):
            rows.append(list(a[r]) + [ring.zero()] * Y.rank(i))
        for r in range(Y.rank(i + 1)):
            rows.append([ring.zero()] * X.rank(i) + list(b[r]))
        diffs[i] = rows
    return Complex(ring, terms, diffs)


def _tensor_index(X: Complex, Y: Complex):
    """degree k -> list of (i, x, y) basis labels, and label -> position."""
    idx: dict[int, list] = {}
    for i in X.degrees():
        for j in Y.degrees():
            lst = idx.setdefault(i + j, [])
            for x in range(X.rank(i)):
                for y in range(Y.rank(j)):
                    lst.append((i, x, y))
    pos = {k: {lab: p for p, lab in enumerate(lst)} for k, lst in idx.items()}
    return idx, pos


def tensor(X: Complex, Y: Complex) -> Complex:
    """Total complex with d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy."""
    ring = X.ring
    idx, pos = _tensor_index(X, Y)
    terms = {k: len(v) for k, v in idx.items()}
    diffs = {}
    for k, labels in idx.items():
        if k + 1 not in idx:
            continue
        M = zeros(ring, terms[k + 1], terms[k])
        tgt = pos[k + 1]
        for col, (i, x, y) in enumerate(labels):
            j = k - i
            if i in X.diffs:
                dx = X.diffs[i]
                for r in range(X.rank(i + 1)):
                    c = dx[r][x]
                    if not c.is_zero():
                        p = tgt[(i + 1, r, y)]
                        M[p][col] = M[p][col] + c
            if j in Y.diffs:
                dy = Y.diffs[j]
                for r in range(Y.rank(j + 1)):
                    c = dy[r][y]
                    if not c.is_zero():
                        p = tgt[(i, x, r)]
                        M[p][col] = M[p][col] + (c if i % 2 == 0 else -c)
        diffs[k] = M
    return Complex(ring, terms, diffs)


# ---------------------------------------------------------------------------
# symmetric powers


def sym_power_fast(E: Complex, n: int) -> Complex:
    """Sym^n of a rank-one two-term complex [E^a -> E^{a+1}].

    For even a the result is [(E^a)^n -> E^{a+1} (E^a)^{n-1}] starting in degree n*a;
    for odd a it is [E^a (E^{a+1})^{n-1} -> (E^{a+1})^n] ending in degree n*(a+1).
    Both differentials are d (x) id.
    """
    if n < 1:
        raise ValueError("n must be positive")
    degs = E.degrees()
    if len(degs) != 2 or degs[1] != degs[0] + 1 or any(E.rank(i) != 1 for i in degs):
        raise ComplexError("sym_power_fast needs two rank-1 terms in adjacent degrees")
    a = degs[0]
    f = E.d(a)[0][0]
    lo = n * a if a % 2 == 0 else n * (a + 1) - 1
    return two_term(E.ring, f, lo)


class TensorPower:
    """E^{(x)n} with its Koszul-signed differential and symmetric group action.

    Vectors are sparse dicts from basis tuples (one basis label of E per slot)
    to coefficients.
    """

    def __init__(self, X: Complex, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        if X.total_rank() ** n > ORACLE_LIMIT:
            raise ComplexError(
                f"tensor power too large: {X.total_rank()}^{n} > {ORACLE_LIMIT}")
        self.X, self.n, self.ring = X, n, X.ring
        self.labels = [(i, j) for i in X.degrees() for j in range(X.rank(i))]
        self.deg = [lab[0] for lab in self.labels]
        where = {lab: g for g, lab in enumerate(self.labels)}
        self.dcol: list[list] = []
        for (i, j) in self.labels:
            out = []
            if i in X.diffs:
                M = X.diffs[i]
                for r in range(X.rank(i + 1)):
                    if not M[r][j].is_zero():
                        out.append((where[(i + 1, r)], M[r][j]))
            self.dcol.append(out)

    def basis(self, degree: int | None = None):
        for tup in product(range(len(self.labels)), repeat=self.n):
            if degree is None or self.degree(tup) == degree:
                yield tup

    def degree(self, tup) -> int:
        return sum(self.deg[g] for g in tup)

    def d(self, vec: dict) -> dict:
        out: dict = {}
        for tup, c in vec.items():
            pre = 0
            for k, g in enumerate(tup):
                sign = -1 if pre % 2 else 1
                for h, a in self.dcol[g]:
                    new = tup[:k] + (h,) + tup[k + 1:]
                    _acc(out, new, c * a * sign)
                pre += self.deg[g]
        return {t: v for t, v in out.items() if not _is_zero(v)}

    def koszul_sign(self, sigma: tuple, tup: tuple) -> int:
        """Sign of moving the factor in slot k to slot sigma[k]."""
        s = 0
        n = self.n
        for k in range(n):
            for l in range(k + 1, n):
                if sigma[k] > sigma[l]:
                    s += self.deg[tup[k]] * self.deg[tup[l]]
        return -1 if s % 2 else 1

    def act_basis(self, sigma: tuple, tup: tuple) -> tuple[tuple, int]:
        new = [None] * self.n
        for k, g in enumerate(tup):
            new[sigma[k]] = g
        return tuple(new), self.koszul_sign(sigma, tup)

    def act(self, sigma: tuple, vec: dict) -> dict:
        out: dict = {}
        for tup, c in vec.items():
            new, s = self.act_basis(sigma, tup)
            _acc(out, new, c * s)
        return {t: v for t, v in out.items() if not _is_zero(v)}

    def symmetrize(self, vec: dict) -> dict:
        out: dict = {}
        w = Fraction(1, factorial(self.n))
        for sigma in permutations(range(self.n)):
            for tup, c in self.act(sigma, vec).items():
                _acc(out, tup, c * w)
        return {t: v for t, v in out.items() if not _is_zero(v)}

    def full_complex(self) -> Complex:
        """E^{(x)n} as a Complex (basis tuples in lexicographic order per degree)."""
        by_deg: dict[int, list] = {}
        for tup in self.basis():
            by_deg.setdefault(self.degree(tup), []).append(tup)
        pos = {k: {t: p for p, t in enumerate(v)} for k, v in by_deg.items()}
        diffs = {}
        for k, tups in by_deg.items():
            if k + 1 not in by_deg:
                continue
            M = zeros(self.ring, len(by_deg[k + 1]), len(tups))
            for col, tup in enumerate(tups):
                for t, c in self.d({tup: self.ring.one()}).items():
                    M[pos[k + 1][t]][col] = c
            diffs[k] = M
        return Complex(self.ring, {k: len(v) for k, v in by_deg.items()}, diffs)

    def check_action_commutes(self) -> bool:
        """sigma o d == d o sigma for each adjacent transposition, on every basis tuple."""
        one = self.ring.one()
        gens = []
        for k in range(self.n - 1):
            s = list(range(self.n))
            s[k], s[k + 1] = s[k + 1], s[k]
            gens.append(tuple(s))
        for tup in self.basis():
            v = {tup: one}
            dv = self.d(v)
            for s in gens:
                if not _vec_eq(self.act(s, dv), self.d(self.act(s, v))):
                    return False
        return True

    def symmetric_image(self) -> tuple[Complex, dict]:
        """Image of the symmetrizer as a subcomplex.

        A basis in each degree is given by the symmetrized sorted tuples that do
        not vanish; distinct orbits have disjoint supports.
        """
        one = self.ring.one()
        basis: dict[int, list] = {}
        for tup in self.basis():
            if list(tup) != sorted(tup):
                continue
            v = self.symmetrize({tup: Fraction(1)})
            if v:
                basis.setdefault(self.degree(tup), []).append((tup, v))
        diffs = {}
        for k, elems in basis.items():
            if k + 1 not in basis:
                continue
            tgt = basis[k + 1]
            M = zeros(self.ring, len(tgt), len(elems))
            for col, (_, v) in enumerate(elems):
                w = self.d({t: one * c for t, c in v.items()})
                recon: dict = {}
                for row, (rep, u) in enumerate(tgt):
                    c = w.get(rep)
                    if c is None:
                        continue
                    c = c * (1 / u[rep])
                    M[row][col] = c
                    for t, x in u.items():
                        _acc(recon, t, c * x)
                recon = {t: x for t, x in recon.items() if not _is_zero(x)}
                if not _vec_eq(recon, w):
                    raise ComplexError("differential leaves the symmetric image")
            diffs[k] = M
        return Complex(self.ring, {k: len(v) for k, v in basis.items()}, diffs), basis


def _acc(d: dict, key, val) -> None:
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val


def _is_zero(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return v == 0
    return v.is_zero()


def _vec_eq(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        x, y = a.get(k), b.get(k)
        if x is None:
            if not _is_zero(y):
                return False
        elif y is None:
            if not _is_zero(x):
                return False
        elif not _is_zero(x - y):
            return False
    return True


def sym_power_oracle(X: Complex, n: int) -> Complex:
    """Sym^n(X) as the image of (1/n!) sum_sigma sigma on X^{(x)n}."""
    if n == 1:
        return X
    return TensorPower(X, n).symmetric_image()[0]


def change_ring(X: Complex, ring: Ring) -> Complex:
    return Complex(ring, X.terms, {i: [[ring.coerce(x) for x in row] for row in M]
                                   for i, M in X.diffs.items()})


__all__ = [
    "Complex", "ComplexError", "GradedCohomology", "TensorPower", "change_ring",
    "cohomology", "direct_sum", "dual", "shift", "sym_power_fast", "sym_power_oracle",
    "tensor", "two_term", "unit_complex", "zero_complex", "LaurentRing",
]
