"""Command-line front end.

Every subcommand builds a Report; the exit status is 0 iff every check passes,
1 if some check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import serialize as ser
from .automorphic import (
    PeriodEntry,
    hecke_period_table,
    iwasawa_period_table,
    normalized_iwasawa_period_table,
    period_fe_check,
    restrict_to_stratum,
)
from .complexes import TensorPower, cohomology, sym_power_fast, sym_power_oracle
from .ffcurve import (
    asymptotic_check,
    fe_symmetry_check,
    p1,
    period_norm,
    period_norm_exponent,
    riemann_roch_check,
    synthetic_genus1,
    zeta_recursion_holds,
    zeta_series_p1,
)
from .laurent import FieldRing
from .matcher import match_hecke, match_iwasawa
from .multiplicity import (
    FiniteGroup,
    GroupError,
    builtin_group,
    character_table,
    double_coset_count,
    double_cosets,
    fixed_dim,
    higher_ext_vanishing_report,
    mackey_sides,
    prasad_sum,
)
from .report import Report
from .scalars import make_field
from .spectral import (
    e_cyc_shifted,
    e_triv,
    functional_equation_check,
    hecke_lsheaf_table,
    iwasawa_lsheaf_table,
    normalized_iwasawa_table,
)
from .weil_deligne import (
    WDRepError,
    euler_char,
    random_wdrep,
    tate_dual_rep,
    wd_cohomology,
)

N_MAX_LIMIT = 16


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    q: int = 3
    n_max: int = 5
    command: str = ""
    inputs: list[str] = field(default_factory=list)
    fmt: str = "markdown"
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n_max <= N_MAX_LIMIT:
            raise InputError(f"--n-max must be in 1..{N_MAX_LIMIT}")
        try:
            make_field(self.q)
        except ValueError as exc:
            raise InputError(f"--q: {exc}") from None


@dataclass
class Outcome:
    """A command result: the report plus extra JSON data and markdown sections."""

    report: Report
    data: dict = field(default_factory=dict)
    sections: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.report.overall

    def to_json(self, cfg: RunConfig) -> dict:
        return {"schema": ser.SCHEMA, "command": cfg.command, "q": cfg.q, "n_max": cfg.n_max,
                "seed": cfg.seed, "report": ser.report_to_json(self.report), **self.data}

    def to_markdown(self) -> str:
        return "\n\n".join(self.sections + [ser.report_markdown(self.report)]) + "\n"


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


# ---------------------------------------------------------------------------
# wd


def cmd_wd(cfg: RunConfig, path: str) -> Outcome:
    ctx = make_field(cfg.q)
    try:
        rep = ser.wdrep_from_json(ctx, _load_json(path))
    except WDRepError as exc:
        raise InputError(f"{path}: {exc}") from None
    h = wd_cohomology(rep).dims()
    hd = wd_cohomology(tate_dual_rep(rep)).dims()
    chi = euler_char(rep)
    report = Report("Weil-Deligne cohomology")
    report.record("duality h^i = h^(2-i) of the Tate dual", h == hd[::-1], f"{h} vs dual {hd}")
    report.record("euler characteristic 0", chi == 0, f"chi = {chi}")
    line = f"h=({h[0]},{h[1]},{h[2]}), dual h=({hd[0]},{hd[1]},{hd[2]}), χ={chi}"
    return Outcome(report, {"h": list(h), "dual_h": list(hd), "euler": chi}, [line])


# ---------------------------------------------------------------------------
# iwasawa / fe / hecke


def inject_fault(table):
    """Perturb the top component of a period table by one cohomological degree."""
    n = max(table.entries)
    ent = table.entries[n]
    table.entries[n] = PeriodEntry(ent.descriptor, ent.degree + 1)
    return table


def cmd_iwasawa(cfg: RunConfig, fault: bool = False) -> Outcome:
    ctx = make_field(cfg.q)
    spec_norm = normalized_iwasawa_table(ctx, cfg.n_max)
    aut_norm = normalized_iwasawa_period_table(cfg.n_max)
    if fault:
        inject_fault(aut_norm)
    report = Report("Iwasawa-Tate comparison")
    report.merge(match_iwasawa(ctx, aut_norm, spec_norm), "normalized:")
    report.merge(match_iwasawa(ctx, iwasawa_period_table(cfg.n_max),
                               iwasawa_lsheaf_table(ctx, cfg.n_max)), "unnormalized:")
    data = {"spectral": ser.graded_table_to_json(spec_norm),
            "automorphic": ser.period_table_to_json(aut_norm)}
    sections = [ser.graded_table_markdown(spec_norm), ser.period_table_markdown(aut_norm)]
    return Outcome(report, data, sections)


def cmd_fe(cfg: RunConfig) -> Outcome:
    ctx = make_field(cfg.q)
    report = Report("functional equations")
    report.merge(functional_equation_check(ctx, cfg.n_max), "spectral:")
    report.merge(period_fe_check(cfg.n_max), "automorphic:")
    return Outcome(report)


def cmd_hecke(cfg: RunConfig) -> Outcome:
    ctx = make_field(cfg.q)
    aut = hecke_period_table(cfg.n_max, normalized=True)
    spec = hecke_lsheaf_table(ctx, cfg.n_max, normalized=True)
    report = Report("Hecke comparison")
    report.merge(match_hecke(ctx, aut, spec), "normalized:")
    unnorm = hecke_period_table(cfg.n_max, normalized=False)
    for n, ent in sorted(aut.entries.items()):
        if n == 0:
            continue
        got = restrict_to_stratum(ent.descriptor, n)
        report.record(f"stratum restriction:{n}", got == unnorm.entries[n],
                      f"{got} != {unnorm.entries[n]}")
    rows = [[str(n), str(aut.entries[n].descriptor), str(spec[n])] for n in sorted(spec)]
    section = "**Hecke rows**\n\n" + ser.md_table(["n", "automorphic", "spectral"], rows)
    data = {"automorphic": ser.period_table_to_json(aut),
            "spectral_rows": {str(n): str(spec[n]) for n in sorted(spec)}}
    return Outcome(report, data, [section])


# ---------------------------------------------------------------------------
# mult


def _default_fixture(G: FiniteGroup) -> dict | None:
    """For S3: Z = {e}, H_list = [<(12)>, <(123)>]."""
    if G.name != "S3" or G.labels is None:
        return None
    idx = {lab: i for i, lab in enumerate(G.labels)}
    return {"Z": [G.identity],
            "H_list": [sorted(G.generate([idx[(1, 0, 2)]])), sorted(G.generate([idx[(1, 2, 0)]]))]}


def cmd_mult(cfg: RunConfig, group: str | None, group_file: str | None,
             fixture_file: str | None) -> Outcome:
    try:
        if group_file:
            G = ser.group_from_json(_load_json(group_file))
        else:
            G = builtin_group(group or "S3")
        ct = character_table(G)
    except GroupError as exc:
        raise InputError(str(exc)) from None
    report = Report(f"multiplicity formulas on {G.name or 'G'}")
    report.record("character table orthogonality", ct.check_orthogonality())
    subs = G.subgroups()
    bad = []
    for A in subs:
        for B in subs:
            lhs, rhs = mackey_sides(G, A, B, ct)
            if lhs != rhs:
                bad.append((sorted(A), sorted(B), lhs, rhs))
            if sum(len(D) for D in double_cosets(G, A, B)) != G.order:
                bad.append((sorted(A), sorted(B), "partition", None))
    report.record(f"Mackey identity over {len(subs)}^2 subgroup pairs", not bad, str(bad[:3]))
    for r in range(len(ct)):
        report.record(f"fixed_dim(rho{r}, e) = deg", fixed_dim(ct, r, [G.identity]) == ct.degree(r))

    fixture = _load_json(fixture_file) if fixture_file else _default_fixture(G)
    data: dict = {"group": ser.group_to_json(G),
                  "character_degrees": [ct.degree(r) for r in range(len(ct))]}
    lines = [f"group {G.name or 'G'} of order {G.order}; irreducible degrees "
             f"{data['character_degrees']}"]
    if fixture is not None:
        try:
            Z = fixture.get("Z", [G.identity])
            H_list = fixture.get("H_list", [])
            counts = [double_coset_count(G, Z, H) for H in H_list]
            total = prasad_sum(G, Z, H_list)
        except (GroupError, AttributeError) as exc:
            raise InputError(f"fixture: {exc}") from None
        dims = {f"rho{r}": [fixed_dim(ct, r, H) for H in H_list] for r in range(len(ct))}
        ext = {f"rho{r}": higher_ext_vanishing_report(ct, r, H_list).multiplicity
               for r in range(len(ct))}
        data.update({"double_coset_counts": counts, "prasad_sum": total,
                     "fixed_dims": dims, "multiplicities": ext})
        lines.append(f"double coset counts {counts}; prasad_sum = {total}")
        for r in range(len(ct)):
            lines.append(f"rho{r} (degree {ct.degree(r)}): fixed dims {dims[f'rho{r}']}, "
                         f"multiplicity {ext[f'rho{r}']}")
        report.notes.append("Ext^i vanishes for i > 0: the representation category of a finite "
                            "group in characteristic 0 is semisimple")
    return Outcome(report, data, ["\n".join(f"- {x}" for x in lines)])


# ---------------------------------------------------------------------------
# curve / zeta


def parse_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputError(f"--range expects a..b, got {text!r}") from None
    if lo > hi:
        raise InputError("--range must have a <= b")
    return range(lo, hi + 1)


def _zeta_report(q: int, trunc: int) -> tuple[Report, dict, str]:
    series, expansion, match = zeta_series_p1(q, trunc)
    report = Report("zeta series of P^1")
    report.record(f"coefficients match 1/((1-t)(1-qt)) through t^{trunc}", match,
                  f"{series.coeffs} vs {[str(x) for x in expansion]}")
    report.record("recursion c_d - (1+q)c_(d-1) + q c_(d-2) = 0",
                  zeta_recursion_holds(q, series.coeffs))
    line = "zeta coefficients: " + ", ".join(map(str, series.coeffs))
    return report, {"zeta": series.coeffs}, line


def cmd_curve(cfg: RunConfig, genus: int, d_range: range, trunc: int,
              curve_file: str | None = None) -> Outcome:
    ctx = make_field(cfg.q)
    if curve_file:
        try:
            curve = ser.curve_from_json(_load_json(curve_file))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif genus == 0:
        curve = p1()
    elif genus == 1:
        curve = synthetic_genus1()
    else:
        raise InputError("--genus must be 0 or 1 without --curve-file")
    report = Report(f"period calculus on {curve.name or 'curve'}")
    report.merge(fe_symmetry_check(curve, ctx, d_range), "FE:")
    report.merge(asymptotic_check(curve, ctx, d_range), "asymptotics:")
    report.merge(riemann_roch_check(curve, d_range), "RR:")
    rows, table = [], []
    for L in curve.labels_in(d_range):
        try:
            h = curve.h0(curve.tensor(L, curve.theta))
            e = period_norm_exponent(curve, L)
            val = str(period_norm(curve, ctx, L))
        except KeyError:
            h, e, val = "?", "?", "?"
        rows.append([str(L[0]), str(L[1]), str(h), str(e), val])
        table.append({"degree": L[0], "twist": L[1], "h0": h if h == "?" else int(h),
                      "exponent": str(e), "value": val})
    section = (f"**normalized period table, q = {cfg.q}**\n\n"
               + ser.md_table(["deg L", "twist", "h0(L K^1/2)", "log_q P^norm", "P^norm"], rows))
    data = {"curve": ser.curve_to_json(curve), "periods": table}
    sections = [section]
    if curve.genus == 0:
        zr, zd, zl = _zeta_report(cfg.q, trunc)
        report.merge(zr, "zeta:")
        data.update(zd)
        sections.append(zl)
    return Outcome(report, data, sections)


def cmd_zeta(cfg: RunConfig, trunc: int) -> Outcome:
    if trunc < 1:
        raise InputError("--trunc must be at least 1")
    report, data, line = _zeta_report(cfg.q, trunc)
    return Outcome(report, data, [line])


# ---------------------------------------------------------------------------
# selftest


def cmd_selftest(cfg: RunConfig) -> Outcome:
    report = Report("selftest")
    for q in (2, 3, 4):
        sub = RunConfig(q, cfg.n_max, "iwasawa")
        report.merge(cmd_iwasawa(sub).report, f"iwasawa q={q}:")
    report.merge(cmd_fe(cfg).report, "fe:")
    report.merge(cmd_hecke(RunConfig(cfg.q, min(cfg.n_max, 4), "hecke")).report, "hecke:")

    ctx = make_field(cfg.q)
    K = FieldRing(ctx)
    rng = random.Random(cfg.seed)
    bad = []
    for i in range(50):
        rep = random_wdrep(K, rng)
        h, hd = wd_cohomology(rep).dims(), wd_cohomology(tate_dual_rep(rep)).dims()
        if h != hd[::-1] or euler_char(rep) != 0:
            bad.append((i, h, hd))
    report.record("wd: duality suite (50 random representations)", not bad, str(bad[:3]))

    for name, E in (("E_triv", e_triv(ctx)), ("E_cyc[-1]", e_cyc_shifted(ctx))):
        for n in (1, 2, 3):
            ok = cohomology(sym_power_fast(E, n)) == cohomology(sym_power_oracle(E, n))
            report.record(f"sym: {name} n={n}", ok)
        ok = TensorPower(E, 2).check_action_commutes()
        report.record(f"sym: {name} action commutes with d", ok)

    report.merge(cmd_mult(cfg, "S3", None, None).report, "mult S3:")
    report.merge(cmd_curve(cfg, 0, range(-10, 11), 10).report, "curve g=0:")
    report.merge(cmd_curve(cfg, 1, range(-10, 11), 10).report, "curve g=1:")
    return Outcome(report)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="residue field size (a prime power)")
    common.add_argument("--n-max", type=int, default=5, help=f"weight range bound (<= {N_MAX_LIMIT})")
    common.add_argument("--format", choices=("json", "markdown"), default="markdown")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="parcalc", description="Exact period and L-sheaf calculator.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("wd", parents=[common], help="Weil-Deligne cohomology of a representation file")
    s.add_argument("input", help="WDRep JSON file")

    s = sub.add_parser("iwasawa", parents=[common], help="normalized Iwasawa-Tate comparison")
    s.add_argument("--inject-fault", action="store_true", help="perturb one entry (must fail)")

    sub.add_parser("hecke", parents=[common], help="Hecke period comparison")
    sub.add_parser("fe", parents=[common], help="spectral and automorphic functional equations")

    s = sub.add_parser("mult", parents=[common], help="multiplicity formulas for a finite group")
    s.add_argument("--group", help="builtin group: S3, S4, D4, Q8, Z2 (default S3)")
    s.add_argument("--group-file", help="Group JSON file")
    s.add_argument("--fixture", help='JSON {"Z": [...], "H_list": [[...], ...]}')

    s = sub.add_parser("curve", parents=[common], help="degree-normalized periods on a curve")
    s.add_argument("--genus", type=int, default=0)
    s.add_argument("--range", default="-10..10", help="degree range a..b")
    s.add_argument("--trunc", type=int, default=10, help="zeta truncation order")
    s.add_argument("--curve-file", help="CurveData JSON file")

    s = sub.add_parser("zeta", parents=[common], help="zeta series of P^1")
    s.add_argument("--trunc", type=int, default=10)

    sub.add_parser("selftest", parents=[common], help="run every check with default settings")
    return p


def _join_range(argv: list[str]) -> list[str]:
    # "--range -10..10" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append(f"--range={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def run(argv: list[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(_join_range(list(sys.argv[1:] if argv is None else argv)))
    cfg = RunConfig(args.q, args.n_max, args.command, [], args.format, args.seed)
    if args.command == "wd":
        cfg.inputs = [args.input]
        out = cmd_wd(cfg, args.input)
    elif args.command == "iwasawa":
        out = cmd_iwasawa(cfg, args.inject_fault)
    elif args.command == "hecke":
        out = cmd_hecke(cfg)
    elif args.command == "fe":
        out = cmd_fe(cfg)
    elif args.command == "mult":
        out = cmd_mult(cfg, args.group, args.group_file, args.fixture)
    elif args.command == "curve":
        out = cmd_curve(cfg, args.genus, parse_range(args.range), args.trunc, args.curve_file)
    elif args.command == "zeta":
        out = cmd_zeta(cfg, args.trunc)
    else:
        out = cmd_selftest(cfg)
    text = (json.dumps(out.to_json(cfg), indent=2) + "\n" if cfg.fmt == "json"
            else out.to_markdown())
    if args.out:
        Path(args.out).write_text(text)
        text = ""
    return (0 if out.ok else 1), text


def main(argv: list[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except (InputError, ser.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


__all__ = ["RunConfig", "build_parser", "cmd_curve", "cmd_fe", "cmd_hecke", "cmd_iwasawa",
           "cmd_mult", "cmd_selftest", "cmd_wd", "cmd_zeta", "main", "parse_range", "run"]
