"""Acceptance suite: one PASS/FAIL line per criterion, with wall-clock budgets.

Run with `pytest tests/test_acceptance.py -v` or `python3 tests/test_acceptance.py`.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from parcalc.automorphic import (  # noqa: E402
    Char,
    PeriodEntry,
    PeriodTable,
    compare_period_tables,
    dual_period_table,
    hecke_period_table,
    normalized_iwasawa_period_table,
    period_fe_check,
)
from parcalc.cli import run  # noqa: E402
from parcalc.complexes import (  # noqa: E402
    TensorPower,
    cohomology,
    sym_power_fast,
    sym_power_oracle,
    two_term,
)
from parcalc.ffcurve import (  # noqa: E402
    fe_symmetry_check,
    p1,
    period_norm,
    riemann_roch_check,
    synthetic_genus1,
    zeta_series_p1,
)
from parcalc.laurent import (  # noqa: E402
    FgModule,
    FieldRing,
    LaurentPoly,
    LaurentRing,
    det,
    identity,
    mat_eq,
    mat_mul,
    module_from_presentation,
    normalize_unit,
    smith_normal_form,
)
from parcalc.matcher import match_hecke, match_iwasawa  # noqa: E402
from parcalc.multiplicity import (  # noqa: E402
    builtin_group,
    character_table,
    double_coset_count,
    fixed_dim,
    mackey_check,
    prasad_sum,
)
from parcalc.scalars import make_field, q_power  # noqa: E402
from parcalc.spectral import (  # noqa: E402
    GradedTable,
    compare_fe,
    e_cyc_shifted,
    e_triv,
    hecke_lsheaf_table,
    iwasawa_lsheaf_table,
    normalized_iwasawa_table,
)
from parcalc.weil_deligne import (  # noqa: E402
    cyclotomic_character,
    euler_char,
    random_wdrep,
    tate_dual_rep,
    trivial_character,
    wd_cohomology,
)

from test_laurent import random_matrix, random_unimodular  # noqa: E402

Check = tuple[str, bool]


@dataclass
class Criterion:
    number: int
    title: str
    budget: float
    body: Callable[[], list[Check]]


CRITERIA: list[Criterion] = []


def criterion(number: int, title: str, budget: float):
    def wrap(fn):
        CRITERIA.append(Criterion(number, title, budget, fn))
        return fn
    return wrap


def evaluate(c: Criterion) -> tuple[bool, float, list[str]]:
    start = time.perf_counter()
    checks = c.body()
    elapsed = time.perf_counter() - start
    failed = [name for name, ok in checks if not ok]
    in_budget = elapsed < c.budget
    ok = bool(checks) and not failed and in_budget
    lines = [f"{'PASS' if ok else 'FAIL'} criterion {c.number}: {c.title} "
             f"({len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.2f}s, "
             f"budget {c.budget:g}s)"]
    if failed or not in_budget:
        for name, good in checks:
            lines.append(f"    {'ok  ' if good else 'FAIL'} {name}")
        if not in_budget:
            lines.append(f"    FAIL runtime {elapsed:.2f}s exceeds {c.budget:g}s")
    return ok, elapsed, lines


# ---------------------------------------------------------------------------
# helpers


def lin(ctx, root) -> LaurentPoly:
    return LaurentPoly(ctx, {1: 1, 0: -root})


def tors(f) -> FgModule:
    return FgModule.make(0, [f])


FREE = FgModule(1, ())


# ---------------------------------------------------------------------------
# criteria


@criterion(1, "glued unnormalized Iwasawa-Tate L-sheaf table, q in {2,3,4}, n_max 5", 5)
def c1() -> list[Check]:
    out = []
    for q in (2, 3, 4):
        ctx = make_field(q)
        t = iwasawa_lsheaf_table(ctx, 5)
        expected = {0: [(FREE, 0)]}
        for n in range(1, 6):
            expected[-n] = [(tors(lin(ctx, 1)), 0)]
            expected[n] = [(tors(LaurentPoly(ctx, {1: q, 0: -1})), 2 * n)]
        out.append((f"q={q}: table equals the closed decomposition",
                    t == GradedTable("triv", False, expected)))
        out.append((f"q={q}: weights -5..5 present", sorted(t.nonzero()) == list(range(-5, 6))))
    return out


@criterion(2, "normalized Iwasawa-Tate comparison through the CFT dictionary", 5)
def c2() -> list[Check]:
    out = []
    for q in (2, 3, 4):
        ctx = make_field(q)
        code, text = run(["iwasawa", "--q", str(q), "--n-max", "5"])
        out.append((f"q={q}: iwasawa command exits 0", code == 0))
        out.append((f"q={q}: Whittaker rule fires at n=0", "Whittaker rule" in text))
        l = normalized_iwasawa_table(ctx, 5)
        p = normalized_iwasawa_period_table(5)
        up, down = q_power(ctx, Fraction(1, 2)), q_power(ctx, Fraction(-1, 2))
        entries_ok = True
        for n in range(1, 6):
            entries_ok &= p.entries[-n] == PeriodEntry(Char(Fraction(-1, 2)), n)
            entries_ok &= p.entries[n] == PeriodEntry(Char(Fraction(1, 2)), n)
            entries_ok &= l.entry(-n) == ((tors(lin(ctx, up)), n),)
            entries_ok &= l.entry(n) == ((tors(lin(ctx, down)), n),)
        out.append((f"q={q}: entries norm^(-+1/2)@[+-n] and R/(T-q^(+-1/2))@[+-n]",
                    entries_ok))
        out.append((f"q={q}: match_iwasawa overall", match_iwasawa(ctx, p, l).overall))
    return out


def _perturbed_graded(t: GradedTable, w: int) -> GradedTable:
    M, deg = t.entry(w)[0]
    return GradedTable(t.component, t.normalized, {**t.weights, w: ((M, deg + 1),)}, t.variety)


def _perturbed_period(t: PeriodTable, n: int) -> PeriodTable:
    e = t.entries[n]
    return PeriodTable(t.label, t.normalized, {**t.entries, n: PeriodEntry(e.descriptor, e.degree + 1)})


@criterion(3, "spectral and automorphic functional equations with mutation tests, n_max 5", 5)
def c3() -> list[Check]:
    out = []
    for q in (2, 3, 4):
        ctx = make_field(q)
        std = normalized_iwasawa_table(ctx, 5, "std")
        dual = normalized_iwasawa_table(ctx, 5, "std_dual")
        out.append((f"q={q}: spectral functional equation", compare_fe(std, dual, 5).overall))
        caught = all(not compare_fe(_perturbed_graded(std, w), dual, 5).overall
                     for w in range(-5, 6))
        out.append((f"q={q}: every single spectral perturbation is caught", caught))
    out.append(("automorphic functional equation", period_fe_check(5).overall))
    std = normalized_iwasawa_period_table(5)
    caught = all(not compare_period_tables(_perturbed_period(std, n),
                                           dual_period_table(std)).overall
                 for n in range(-5, 6))
    out.append(("every single automorphic perturbation is caught", caught))
    twisted = PeriodTable(std.label, True, {**std.entries,
                                            2: PeriodEntry(Char(Fraction(3, 2)), 2)})
    out.append(("a perturbed character is caught",
                not compare_period_tables(twisted, dual_period_table(twisted)).overall))
    return out


@criterion(4, "Weil-Deligne Tate duality on 60 random representations, dim <= 4", 10)
def c4() -> list[Check]:
    out = []
    K = FieldRing(make_field(3))
    rng = random.Random(2024)
    dual_ok = euler_ok = True
    for _ in range(60):
        rep = random_wdrep(K, rng, 4)
        h = wd_cohomology(rep).h
        hd = wd_cohomology(tate_dual_rep(rep)).h
        dual_ok &= hd == (h[2], h[1], h[0])
        euler_ok &= euler_char(rep) == 0
    out.append(("h^i = h^(2-i) of the Tate dual", dual_ok))
    out.append(("Euler characteristic 0", euler_ok))
    out.append(("trivial character h = (1,1,0)", wd_cohomology(trivial_character(K)).h == (1, 1, 0)))
    out.append(("cyclotomic character h = (0,1,1)",
                wd_cohomology(cyclotomic_character(K)).h == (0, 1, 1)))
    return out


@criterion(5, "symmetric power oracle equals the two-term formula, n = 1..4", 30)
def c5() -> list[Check]:
    out = []
    ctx = make_field(3)
    for name, E in (("E_triv", e_triv(ctx)), ("E_cyc[-1]", e_cyc_shifted(ctx))):
        for n in range(1, 5):
            same = cohomology(sym_power_oracle(E, n)) == cohomology(sym_power_fast(E, n))
            out.append((f"{name} over K[T^+-1], n={n}", same))
        out.append((f"{name}: permutation action commutes with d, n=2..4",
                    all(TensorPower(E, n).check_action_commutes() for n in range(2, 5))))
    K = FieldRing(ctx)
    for a, name in ((0, "E_triv"), (1, "E_cyc[-1]")):
        for c in (0, 1, Fraction(1, 3), 2):
            E = two_term(K, c, a)
            same = all(cohomology(sym_power_oracle(E, n)) == cohomology(sym_power_fast(E, n))
                       for n in range(1, 5))
            out.append((f"{name} fibre over K with differential {c}, n=1..4", same))
    return out


@criterion(6, "Hecke matching, n_max 4, including functional-equation routed rows", 5)
def c6() -> list[Check]:
    out = []
    for q in (2, 3, 4):
        ctx = make_field(q)
        code, _ = run(["hecke", "--q", str(q), "--n-max", "4"])
        out.append((f"q={q}: hecke command exits 0", code == 0))
        rep = match_hecke(ctx, hecke_period_table(4), hecke_lsheaf_table(ctx, 4, normalized=True))
        out.append((f"q={q}: rows n>0 match", all(rep.per_component[str(n)] == "pass"
                                                 for n in range(1, 5))))
        out.append((f"q={q}: rows n<0 match", all(rep.per_component[str(-n)] == "pass"
                                                 for n in range(1, 5))))
        out.append((f"q={q}: n=0 fiber sequence aligns", rep.per_component["0"] == "pass"))
    return out


@criterion(7, "multiplicity formulas: exhaustive Mackey and the S3 fixtures 2, 4, 1, 0", 10)
def c7() -> list[Check]:
    out = []
    for name in ("S3", "S4", "D4", "Q8"):
        G = builtin_group(name)
        ct = character_table(G)
        subs = G.subgroups()
        ok = all(mackey_check(G, A, B, ct) for A in subs for B in subs)
        out.append((f"Mackey identity over all {len(subs)}^2 subgroup pairs of {name}", ok))
    G = builtin_group("S3")
    ct = character_table(G)
    t12 = G.generate([G.labels.index((1, 0, 2))])
    c123 = G.generate([G.labels.index((1, 2, 0))])
    e = frozenset([G.identity])
    std = next(r for r in range(len(ct)) if ct.degree(r) == 2)
    sgn = next(r for r in range(len(ct))
               if ct.degree(r) == 1 and ct.value(r, G.labels.index((1, 0, 2))) == -1)
    got = double_coset_count(G, t12, t12)
    out.append((f"double_coset_count(S3, <(12)>, <(12)>) = 2 (got {got})", got == 2))
    got = prasad_sum(G, e, [t12, c123])
    out.append((f"prasad_sum(S3, {{e}}, [<(12)>, <(123)>]) = 4 (got {got})", got == 4))
    got = fixed_dim(ct, std, t12)
    out.append((f"fixed_dim(standard, <(12)>) = 1 (got {got})", got == 1))
    got = fixed_dim(ct, sgn, t12)
    out.append((f"fixed_dim(sign, <(12)>) = 0 (got {got})", got == 0))
    return out


@criterion(8, "period functions on curves: P^1 closed form, symmetry, zeta through t^10", 2)
def c8() -> list[Check]:
    out = []
    for q in (2, 3, 5):
        ctx = make_field(q)
        ok = all(period_norm(p1(), ctx, (d, 0)) == q_power(ctx, Fraction(abs(d) + 1, 2))
                 for d in range(-10, 11))
        out.append((f"q={q}: P^norm(O(d)) = q^((|d|+1)/2) for d in [-10, 10]", ok))
        out.append((f"q={q}: P^1 symmetry",
                    fe_symmetry_check(p1(), ctx, range(-10, 11)).overall))
        for theta in (0, 1):
            curve = synthetic_genus1(theta)
            valid = riemann_roch_check(curve, range(-10, 11)).overall
            sym = fe_symmetry_check(curve, ctx, range(-10, 11)).overall
            out.append((f"q={q}: genus-1 table (theta twist {theta}) is RR-valid and symmetric",
                        valid and sym))
        z, expansion, ok = zeta_series_p1(q, 10)
        out.append((f"q={q}: zeta coefficients match 1/((1-t)(1-qt)) through t^10",
                    ok and len(z.coeffs) == 11))
    return out


def _snf_sound(R, M) -> bool:
    res = smith_normal_form(R, M)
    m, n = len(M), len(M[0])
    if not mat_eq(mat_mul(R, mat_mul(R, res.U, M), res.V), res.D):
        return False
    if not (R.is_unit(det(R, res.U)) and R.is_unit(det(R, res.V))):
        return False
    if any(not res.D[i][j].is_zero() for i in range(m) for j in range(n) if i != j):
        return False
    diag = res.diagonal()
    chain = all(y.is_zero() or (not x.is_zero() and x.divides(y)) for x, y in zip(diag, diag[1:]))
    normal = all(x.is_zero() or normalize_unit(x) == x for x in diag)
    return chain and normal


@criterion(9, "Laurent-ring SNF soundness on 100 random matrices; presentation invariance", 10)
def c9() -> list[Check]:
    ctx = make_field(3)
    R = LaurentRing(ctx)
    rng = random.Random(11)
    sound = sum(_snf_sound(R, random_matrix(ctx, rng)) for _ in range(100))
    out = [(f"U*M*V = D, unit determinants, divisibility chain ({sound}/100)", sound == 100)]
    rng = random.Random(17)
    same = 0
    for _ in range(30):
        rels = random_matrix(ctx, rng)
        m, n = len(rels), len(rels[0])
        P, Q = random_unimodular(R, rng, m), random_unimodular(R, rng, n)
        moved = mat_mul(R, mat_mul(R, P, rels), Q)
        same += module_from_presentation(R, m, moved) == module_from_presentation(R, m, rels)
    out.append((f"module normal form invariant under unimodular change ({same}/30)", same == 30))
    out.append(("identity presentation", module_from_presentation(R, 2, identity(R, 2)).is_zero()))
    return out


# ---------------------------------------------------------------------------
# pytest entry points


@pytest.mark.parametrize("c", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(c: Criterion, capsys):
    ok, elapsed, lines = evaluate(c)
    with capsys.disabled():
        print("\n" + "\n".join(lines))
    assert ok, "\n".join(lines)


if __name__ == "__main__":
    results = [evaluate(c) for c in CRITERIA]
    for _, _, lines in results:
        print("\n".join(lines))
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
