"""Finite groups: double cosets, rational character tables, fixed-vector dimensions.

Groups are multiplication tables on 0..n-1.  Character tables are computed by
Burnside's method: the class sums span the centre of the group algebra, and the
central characters are joint eigenvectors of the class-multiplication matrices.
Only rational tables are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import isqrt
from typing import Callable, Hashable, Iterable, Sequence

MAX_ORDER = 48


class GroupError(ValueError):
    pass


@dataclass
class FiniteGroup:
    table: list[list[int]]
    labels: list | None = None
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or n > MAX_ORDER:
            raise GroupError(f"group order must be in 1..{MAX_ORDER}")
        if any(len(r) != n or any(not 0 <= x < n for x in r) for r in self.table):
            raise GroupError("multiplication table is not square or has bad entries")
        e = next((i for i in range(n)
                  if all(self.table[i][j] == j and self.table[j][i] == j for j in range(n))), None)
        if e is None:
            raise GroupError("no identity element")
        self.identity = e
        self.inv = [0] * n
        for i in range(n):
            j = next((j for j in range(n) if self.table[i][j] == e), None)
            if j is None or self.table[j][i] != e:
                raise GroupError(f"element {i} has no inverse")
            self.inv[i] = j
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupError("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(self.order)

    def is_subgroup(self, S: Iterable[int]) -> bool:
        S = set(S)
        if self.identity not in S:
            return False
        return all(self.inv[a] in S and all(self.table[a][b] in S for b in S) for a in S)

    def generate(self, gens: Iterable[int]) -> frozenset:
        S = {self.identity}
        frontier = list(S)
        gens = list(gens)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in S:
                        S.add(b)
                        new.append(b)
            frontier = new
        return frozenset(S)

    def center(self) -> frozenset:
        t = self.table
        return frozenset(a for a in self.elements() if all(t[a][b] == t[b][a] for b in self.elements()))

    def conjugacy_classes(self) -> list[list[int]]:
        seen, classes = set(), []
        t, inv = self.table, self.inv
        for a in self.elements():
            if a in seen:
                continue
            cls = sorted({t[t[g][a]][inv[g]] for g in self.elements()})
            seen.update(cls)
            classes.append(cls)
        return classes

    def subgroups(self) -> list[frozenset]:
        """All subgroups, by joining cyclic subgroups until nothing new appears."""
        cyc = {self.generate([a]) for a in self.elements()}
        found = set(cyc)
        frontier = set(cyc)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyc:
                    if C <= H:
                        continue
                    J = self.generate(set(H) | set(C))
                    if J not in found:
                        new.add(J)
            found |= new
            frontier = new
        return sorted(found, key=lambda H: (len(H), sorted(H)))


def group_from_elements(elements: Sequence[Hashable], mul: Callable, name: str = "") -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, list(elements), name)


def _compose(p, r):
    # (p o r)(i) = p[r[i]]
    return tuple(p[i] for i in r)


def permutation_group(gens: Sequence[tuple], name: str = "") -> FiniteGroup:
    n = len(gens[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = _compose(a, g)
                if b not in elems:
                    elems.add(b)
                    new.append(b)
        frontier = new
    return group_from_elements(sorted(elems), _compose, name)


def symmetric_group(n: int) -> FiniteGroup:
    return group_from_elements(sorted(permutations(range(n))), _compose, f"S{n}")


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_elements(list(range(n)), lambda a, b: (a + b) % n, f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon acting on its vertices (order 2n)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], f"D{n}")


def quaternion_group() -> FiniteGroup:
    """{+-1, +-i, +-j, +-k} as (sign, unit) pairs."""
    units = {("1", "1"): (1, "1"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
             ("k", "k"): (-1, "1"), ("i", "j"): (1, "k"), ("j", "k"): (1, "i"),
             ("k", "i"): (1, "j"), ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"),
             ("i", "k"): (-1, "j")}

    def mul(a, b):
        (sa, ua), (sb, ub) = a, b
        if ua == "1":
            s, u = 1, ub
        elif ub == "1":
            s, u = 1, ua
        else:
            s, u = units[(ua, ub)]
        return (sa * sb * s, u)

    elems = [(s, u) for u in "1ijk" for s in (1, -1)]
    return group_from_elements(elems, mul, "Q8")


BUILTIN_GROUPS = {
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "Z2": lambda: cyclic_group(2),
}


def builtin_group(name: str) -> FiniteGroup:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise GroupError(f"unknown group {name!r}; choose from {sorted(BUILTIN_GROUPS)}") from None


# ---------------------------------------------------------------------------
# double cosets


def _check_subgroup(G: FiniteGroup, S, what: str) -> frozenset:
    S = frozenset(S)
    if not G.is_subgroup(S):
        raise GroupError(f"{what} is not a subgroup")
    return S


def double_cosets(G: FiniteGroup, A, B) -> list[frozenset]:
    A = _check_subgroup(G, A, "A")
    B = _check_subgroup(G, B, "B")
    t = G.table
    seen: set[int] = set()
    out = []
    for g in G.elements():
        if g in seen:
            continue
        orbit = frozenset(t[t[a][g]][b] for a in A for b in B)
        seen |= orbit
        out.append(orbit)
    return out


def double_coset_count(G: FiniteGroup, A, B) -> int:
    return len(double_cosets(G, A, B))


def prasad_sum(G: FiniteGroup, Z, H_list, require_central: bool = False) -> int:
    """Sum over H in H_list of #(Z \\ G / H)."""
    Z = _check_subgroup(G, Z, "Z")
    if require_central and not Z <= G.center():
        raise GroupError("Z is not central")
    return sum(double_coset_count(G, Z, H) for H in H_list)


# ---------------------------------------------------------------------------
# character tables


def _nullspace(A: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [list(r) for r in A]
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


@dataclass
class CharacterTable:
    group: FiniteGroup
    classes: list[list[int]]
    class_of: list[int]
    chars: list[list[Fraction]]   # chars[rho][class]

    def value(self, rho: int, g: int) -> Fraction:
        return self.chars[rho][self.class_of[g]]

    def degree(self, rho: int) -> int:
        return int(self.value(rho, self.group.identity))

    def __len__(self) -> int:
        return len(self.chars)

    def check_orthogonality(self) -> bool:
        n = self.group.order
        sizes = [len(c) for c in self.classes]
        k = len(self.classes)
        for a in range(len(self.chars)):
            for b in range(len(self.chars)):
                s = sum(sizes[c] * self.chars[a][c] * self.chars[b][c] for c in range(k))
                if s != (n if a == b else 0):
                    return False
        for c in range(k):
            for d in range(k):
                s = sum(ch[c] * ch[d] for ch in self.chars)
                if s != (Fraction(n, sizes[c]) if c == d else 0):
                    return False
        return True


def character_table(G: FiniteGroup) -> CharacterTable:
    classes = G.conjugacy_classes()
    k = len(classes)
    class_of = [0] * G.order
    for i, c in enumerate(classes):
        for g in c:
            class_of[g] = i
    t = G.table
    # A[i][j][l] = number of (x, y) in C_i x C_j with x*y = representative of C_l
    reps = [c[0] for c in classes]
    A = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i, ci in enumerate(classes):
        for x in ci:
            for j, cj in enumerate(classes):
                for y in cj:
                    z = t[x][y]
                    l = class_of[z]
                    if z == reps[l]:
                        A[i][j][l] += 1
    spaces = [[[Fraction(int(a == b)) for a in range(k)] for b in range(k)]]  # basis vectors
    for i in range(k):
        bound = len(classes[i])
        refined = []
        for W in spaces:
            if len(W) == 1:
                refined.append(W)
                continue
            # M W c = lam W c restricted to span(W)
            MW = [[sum(A[i][r][s] * w[s] for s in range(k)) for r in range(k)] for w in W]
            got = 0
            for lam in range(-bound, bound + 1):
                cols = len(W)
                eqs = [[MW[c][r] - lam * W[c][r] for c in range(cols)] for r in range(k)]
                ns = _nullspace(eqs, cols)
                if ns:
                    refined.append([[sum(v[c] * W[c][r] for c in range(cols)) for r in range(k)]
                                    for v in ns])
                    got += len(ns)
            if got != len(W):
                raise GroupError("character table is not rational")
        spaces = refined
    if any(len(W) != 1 for W in spaces):
        raise GroupError("class algebra did not split into lines")
    e_cls = class_of[G.identity]
    chars = []
    for (v,) in spaces:
        omega = [x / v[e_cls] for x in v]
        s = sum(omega[c] ** 2 / len(classes[c]) for c in range(k))
        d2 = Fraction(G.order) / s
        if d2.denominator != 1 or isqrt(d2.numerator) ** 2 != d2.numerator:
            raise GroupError("character degree is not an integer")
        d = isqrt(d2.numerator)
        chars.append([d * omega[c] / len(classes[c]) for c in range(k)])
    chars.sort(key=lambda ch: (ch[e_cls], [-x for x in ch]))
    ct = CharacterTable(G, classes, class_of, chars)
    if not ct.check_orthogonality():
        raise GroupError("orthogonality relations fail")
    return ct


def fixed_dim(ct: CharacterTable, rho: int, H) -> int:
    H = _check_subgroup(ct.group, H, "H")
    s = sum(ct.value(rho, h) for h in H) / len(H)
    if s.denominator != 1:
        raise GroupError(f"non-integral fixed dimension {s}: invalid character table")
    return int(s)


def mackey_sides(G: FiniteGroup, A, B, ct: CharacterTable | None = None) -> tuple[int, int]:
    ct = ct or character_table(G)
    lhs = sum(fixed_dim(ct, r, A) * fixed_dim(ct, r, B) for r in range(len(ct)))
    return lhs, double_coset_count(G, A, B)


def mackey_check(G: FiniteGroup, A, B, ct: CharacterTable | None = None) -> bool:
    lhs, rhs = mackey_sides(G, A, B, ct)
    return lhs == rhs


@dataclass
class ExtReport:
    multiplicity: int
    higher_ext_vanish: bool
    reason: str


def higher_ext_vanishing_report(ct: CharacterTable, rho: int, H_list) -> ExtReport:
    m = sum(fixed_dim(ct, rho, H) for H in H_list)
    return ExtReport(m, True, "representations of a finite group in characteristic 0 form a "
                              "semisimple category, so Ext^i vanishes for i > 0")


__all__ = [
    "BUILTIN_GROUPS", "CharacterTable", "ExtReport", "FiniteGroup", "GroupError",
    "builtin_group", "character_table", "cyclic_group", "dihedral_group", "double_coset_count",
    "double_cosets", "fixed_dim", "group_from_elements", "higher_ext_vanishing_report",
    "mackey_check", "mackey_sides", "permutation_group", "prasad_sum", "quaternion_group",
    "symmetric_group",
]
