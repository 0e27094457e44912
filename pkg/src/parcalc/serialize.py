"""JSON encodings (all top-level objects carry "schema": "v1") and markdown renderers.

Decoders take the field context explicitly: q is a run-level setting, never
stored in the files.  Decoding errors raise SchemaError naming the field path.
"""

from __future__ import annotations

from fractions import Fraction

from .automorphic import CInd, CcToken, Char, EisAToken, FiberSeqA, OpaqueToken, PeriodEntry, PeriodTable
from .complexes import Complex
from .ffcurve import CurveData
from .laurent import FgModule, FieldRing, LaurentPoly, LaurentRing, Ring
from .multiplicity import FiniteGroup
from .report import Report
from .scalars import ExactScalar, FieldCtx
from .spectral import GradedTable
from .weil_deligne import WDRep

SCHEMA = "v1"


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _need(obj, key: str, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing field")
    return obj[key]


def _check_schema(obj, path: str) -> None:
    if isinstance(obj, dict) and obj.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"{path}.schema", f"unsupported version {obj.get('schema')!r}")


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(path, f"expected an integer, got {x!r}")
    return x


def _frac(x, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(path, f"expected a rational string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"bad rational {x!r}") from None


# ---------------------------------------------------------------------------
# scalars, polynomials, modules, matrices


def scalar_to_json(x: ExactScalar) -> dict:
    return {"a": str(x.a), "b": str(x.b)}


def scalar_from_json(ctx: FieldCtx, obj, path: str = "$") -> ExactScalar:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return ctx.scalar(_frac(obj, path))
    a = _frac(_need(obj, "a", path), f"{path}.a")
    b = _frac(obj.get("b", "0"), f"{path}.b")
    return ctx.scalar(a, b)


def poly_to_json(f: LaurentPoly) -> dict:
    return {"terms": [[e, scalar_to_json(c)] for e, c in f.terms]}


def poly_from_json(ctx: FieldCtx, obj, path: str = "$") -> LaurentPoly:
    terms = _need(obj, "terms", path)
    if not isinstance(terms, list):
        raise SchemaError(f"{path}.terms", "expected a list")
    out = []
    for i, t in enumerate(terms):
        p = f"{path}.terms[{i}]"
        if not isinstance(t, list) or len(t) != 2:
            raise SchemaError(p, "expected [exponent, scalar]")
        out.append((_int(t[0], f"{p}[0]"), scalar_from_json(ctx, t[1], f"{p}[1]")))
    return LaurentPoly(ctx, out)


def module_to_json(M: FgModule) -> dict:
    return {"free": M.free_rank, "torsion": [poly_to_json(f) for f in M.torsion]}


def module_from_json(ctx: FieldCtx, obj, path: str = "$") -> FgModule:
    free = _int(_need(obj, "free", path), f"{path}.free")
    tors = obj.get("torsion", [])
    return FgModule.make(free, [poly_from_json(ctx, f, f"{path}.torsion[{i}]")
                                for i, f in enumerate(tors)])


def _base_name(ring: Ring) -> str:
    return "K" if isinstance(ring, FieldRing) else "K[T±]"


def ring_from_base(ctx: FieldCtx, base, path: str = "$.base") -> Ring:
    if base == "K":
        return FieldRing(ctx)
    if base in ("K[T±]", "K[T,1/T]"):
        return LaurentRing(ctx)
    raise SchemaError(path, f"unknown base {base!r}; expected 'K' or 'K[T±]'")


def entry_to_json(ring: Ring, x):
    return scalar_to_json(x) if isinstance(ring, FieldRing) else poly_to_json(x)


def entry_from_json(ring: Ring, obj, path: str):
    if isinstance(ring, FieldRing):
        return scalar_from_json(ring.ctx, obj, path)
    if isinstance(obj, dict) and "terms" in obj:
        return poly_from_json(ring.ctx, obj, path)
    return ring.coerce(scalar_from_json(ring.ctx, obj, path))


def matrix_to_json(ring: Ring, A) -> list:
    return [[entry_to_json(ring, x) for x in row] for row in A]


def matrix_from_json(ring: Ring, obj, path: str, shape: tuple[int, int] | None = None) -> list:
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise SchemaError(path, "expected a list of rows")
    if shape is not None:
        m, n = shape
        if len(obj) != m or any(len(r) != n for r in obj):
            raise SchemaError(path, f"expected a {m}x{n} matrix")
    return [[entry_from_json(ring, x, f"{path}[{i}][{j}]") for j, x in enumerate(row)]
            for i, row in enumerate(obj)]


# ---------------------------------------------------------------------------
# complexes and Weil-Deligne representations


def complex_to_json(X: Complex) -> dict:
    return {"schema": SCHEMA, "base": _base_name(X.ring),
            "terms": {str(i): X.rank(i) for i in X.degrees()},
            "diffs": {str(i): matrix_to_json(X.ring, M) for i, M in sorted(X.diffs.items())}}


def complex_from_json(ctx: FieldCtx, obj, path: str = "$") -> Complex:
    _check_schema(obj, path)
    ring = ring_from_base(ctx, _need(obj, "base", path), f"{path}.base")
    terms = {int(k): _int(v, f"{path}.terms.{k}") for k, v in _need(obj, "terms", path).items()}
    diffs = {}
    for k, M in obj.get("diffs", {}).items():
        i = int(k)
        diffs[i] = matrix_from_json(ring, M, f"{path}.diffs.{k}",
                                    (terms.get(i + 1, 0), terms.get(i, 0)))
    return Complex(ring, terms, diffs)


def wdrep_to_json(rep: WDRep) -> dict:
    out = {"schema": SCHEMA, "base": _base_name(rep.ring), "dim": rep.dim,
           "frobenius": matrix_to_json(rep.ring, rep.frobenius),
           "nilpotent": matrix_to_json(rep.ring, rep.nilpotent)}
    if rep.inertia is None:
        out["inertia"] = "trivial"
    else:
        m, g = rep.inertia
        out["inertia"] = {"order": m, "generator": matrix_to_json(rep.ring, g)}
    return out


def wdrep_from_json(ctx: FieldCtx, obj, path: str = "$") -> WDRep:
    _check_schema(obj, path)
    ring = ring_from_base(ctx, obj.get("base", "K") if isinstance(obj, dict) else None,
                          f"{path}.base")
    d = _int(_need(obj, "dim", path), f"{path}.dim")
    if d < 1:
        raise SchemaError(f"{path}.dim", "dimension must be positive")
    Phi = matrix_from_json(ring, _need(obj, "frobenius", path), f"{path}.frobenius", (d, d))
    N = matrix_from_json(ring, _need(obj, "nilpotent", path), f"{path}.nilpotent", (d, d))
    inertia = obj.get("inertia", "trivial")
    if inertia == "trivial":
        inertia = None
    elif isinstance(inertia, dict):
        m = _int(_need(inertia, "order", f"{path}.inertia"), f"{path}.inertia.order")
        g = matrix_from_json(ring, _need(inertia, "generator", f"{path}.inertia"),
                             f"{path}.inertia.generator", (d, d))
        inertia = (m, g)
    else:
        raise SchemaError(f"{path}.inertia", "expected 'trivial' or {order, generator}")
    return WDRep(ring, d, Phi, N, inertia)


# ---------------------------------------------------------------------------
# tables


def graded_table_to_json(t: GradedTable) -> dict:
    return {"schema": SCHEMA, "component": t.component, "normalized": t.normalized,
            "variety": t.variety,
            "weights": {str(w): [{"module": module_to_json(M), "degree": d} for M, d in t.weights[w]]
                        for w in sorted(t.weights)}}


def graded_table_from_json(ctx: FieldCtx, obj, path: str = "$") -> GradedTable:
    _check_schema(obj, path)
    weights = {}
    for k, row in _need(obj, "weights", path).items():
        p = f"{path}.weights.{k}"
        weights[int(k)] = tuple((module_from_json(ctx, _need(e, "module", f"{p}[{i}]"), f"{p}[{i}].module"),
                                 _int(_need(e, "degree", f"{p}[{i}]"), f"{p}[{i}].degree"))
                                for i, e in enumerate(row))
    return GradedTable(_need(obj, "component", path), bool(_need(obj, "normalized", path)),
                       weights, obj.get("variety", "std"))


def descriptor_to_json(d) -> dict:
    if isinstance(d, Char):
        return {"type": "Char", "e": str(d.e)}
    if isinstance(d, CcToken):
        return {"type": "CcToken", "kind": d.kind, "twist": str(d.twist), "action": d.action}
    if isinstance(d, CInd):
        return {"type": "CInd", "inner": descriptor_to_json(d.inner)}
    if isinstance(d, OpaqueToken):
        return {"type": "Opaque", "name": d.name}
    if isinstance(d, EisAToken):
        return {"type": "EisA", "parabolic": d.parabolic, "first": descriptor_to_json(d.first),
                "second": descriptor_to_json(d.second), "degree": d.degree}
    if isinstance(d, FiberSeqA):
        return {"type": "FiberSeqA", "first": descriptor_to_json(d.first), "middle": d.middle,
                "last": descriptor_to_json(d.last)}
    raise TypeError(f"cannot encode descriptor {d!r}")


def descriptor_from_json(obj, path: str = "$"):
    kind = _need(obj, "type", path)
    if kind == "Char":
        return Char(_frac(_need(obj, "e", path), f"{path}.e"))
    if kind == "CcToken":
        return CcToken(_need(obj, "kind", path), _frac(obj.get("twist", "0"), f"{path}.twist"),
                       obj.get("action", "left"))
    if kind == "CInd":
        return CInd(descriptor_from_json(_need(obj, "inner", path), f"{path}.inner"))
    if kind == "Opaque":
        return OpaqueToken(_need(obj, "name", path))
    if kind == "EisA":
        return EisAToken(_need(obj, "parabolic", path),
                         descriptor_from_json(_need(obj, "first", path), f"{path}.first"),
                         descriptor_from_json(_need(obj, "second", path), f"{path}.second"),
                         _int(_need(obj, "degree", path), f"{path}.degree"))
    if kind == "FiberSeqA":
        return FiberSeqA(descriptor_from_json(_need(obj, "first", path), f"{path}.first"),
                         _need(obj, "middle", path),
                         descriptor_from_json(_need(obj, "last", path), f"{path}.last"))
    raise SchemaError(f"{path}.type", f"unknown descriptor type {kind!r}")


def period_table_to_json(t: PeriodTable) -> dict:
    return {"schema": SCHEMA, "label": t.label, "normalized": t.normalized,
            "entries": {str(n): {"descriptor": descriptor_to_json(e.descriptor), "degree": e.degree}
                        for n, e in sorted(t.entries.items())}}


def period_table_from_json(obj, path: str = "$") -> PeriodTable:
    _check_schema(obj, path)
    entries = {}
    for k, e in _need(obj, "entries", path).items():
        p = f"{path}.entries.{k}"
        entries[int(k)] = PeriodEntry(descriptor_from_json(_need(e, "descriptor", p), f"{p}.descriptor"),
                                      _int(_need(e, "degree", p), f"{p}.degree"))
    return PeriodTable(_need(obj, "label", path), bool(_need(obj, "normalized", path)), entries)


# ---------------------------------------------------------------------------
# reports, groups, curves


def report_to_json(r: Report) -> dict:
    out = r.to_json()
    if r.notes:
        out["notes"] = list(r.notes)
    return out


def report_from_json(obj, path: str = "$") -> Report:
    _check_schema(obj, path)
    pc = _need(obj, "per_component", path)
    for k, v in pc.items():
        if v != "pass" and not (isinstance(v, str) and v.startswith("fail:")):
            raise SchemaError(f"{path}.per_component.{k}", f"bad status {v!r}")
    r = Report(obj.get("title", ""), dict(pc), list(obj.get("notes", [])))
    if "overall" in obj and bool(obj["overall"]) != r.overall:
        raise SchemaError(f"{path}.overall", "inconsistent with per_component")
    return r


def group_to_json(G: FiniteGroup) -> dict:
    return {"schema": SCHEMA, "name": G.name, "order": G.order, "table": [list(r) for r in G.table]}


def group_from_json(obj, path: str = "$") -> FiniteGroup:
    _check_schema(obj, path)
    n = _int(_need(obj, "order", path), f"{path}.order")
    table = _need(obj, "table", path)
    if not isinstance(table, list) or len(table) != n:
        raise SchemaError(f"{path}.table", f"expected {n} rows")
    rows = []
    for i, r in enumerate(table):
        if not isinstance(r, list) or len(r) != n:
            raise SchemaError(f"{path}.table[{i}]", f"expected {n} entries")
        rows.append([_int(x, f"{path}.table[{i}][{j}]") for j, x in enumerate(r)])
    return FiniteGroup(rows, None, obj.get("name", ""))


def curve_to_json(c: CurveData) -> dict:
    return {"schema": SCHEMA, "name": c.name, "genus": c.genus, "twist_order": c.twist_order,
            "theta_twist": c.theta_twist,
            "h0": [[d, t, h] for (d, t), h in sorted(c.h0_table.items())]}


def curve_from_json(obj, path: str = "$") -> CurveData:
    _check_schema(obj, path)
    table = {}
    for i, row in enumerate(obj.get("h0", [])):
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaError(f"{path}.h0[{i}]", "expected [degree, twist, h0]")
        d, t, h = (_int(x, f"{path}.h0[{i}][{j}]") for j, x in enumerate(row))
        if h < 0:
            raise SchemaError(f"{path}.h0[{i}][2]", "h0 must be nonnegative")
        table[(d, t)] = h
    return CurveData(_int(_need(obj, "genus", path), f"{path}.genus"),
                     _int(obj.get("twist_order", 1), f"{path}.twist_order"),
                     _int(obj.get("theta_twist", 0), f"{path}.theta_twist"), table,
                     obj.get("name", ""))


# ---------------------------------------------------------------------------
# markdown


def md_table(header: list[str], rows: list[list[str]]) -> str:
    out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    out += ["| " + " | ".join(str(c).replace("|", "\\|") for c in r) + " |" for r in rows]
    return "\n".join(out)


def graded_table_markdown(t: GradedTable) -> str:
    rows = []
    for w in sorted(t.weights):
        cells = ", ".join(f"{M} [{-d}]" for M, d in t.weights[w]) or "0"
        rows.append([str(w), cells])
    title = f"**{t.component} component, {'normalized' if t.normalized else 'unnormalized'}**"
    return title + "\n\n" + md_table(["weight", "cohomology (module [shift])"], rows)


def period_table_markdown(t: PeriodTable) -> str:
    rows = [[str(n), str(e.descriptor), f"[{e.placement}]"] for n, e in sorted(t.entries.items())]
    title = f"**{t.label}, {'normalized' if t.normalized else 'unnormalized'}**"
    return title + "\n\n" + md_table(["component", "entry", "placement"], rows)


def report_markdown(r: Report) -> str:
    rows = [[k, "✓" if v == "pass" else "✗ " + v[5:]] for k, v in r.per_component.items()]
    out = f"### {r.title or 'report'}: {'PASS' if r.overall else 'FAIL'}\n\n"
    out += md_table(["check", "status"], rows)
    if r.notes:
        out += "\n\n" + "\n".join(f"- {n}" for n in r.notes)
    return out


__all__ = [
    "SCHEMA", "SchemaError", "md_table", "complex_from_json", "complex_to_json", "curve_from_json",
    "curve_to_json", "descriptor_from_json", "descriptor_to_json", "graded_table_from_json",
    "graded_table_markdown", "graded_table_to_json", "group_from_json", "group_to_json",
    "module_from_json", "module_to_json", "period_table_from_json", "period_table_markdown",
    "period_table_to_json", "poly_from_json", "poly_to_json", "report_from_json",
    "report_markdown", "report_to_json", "scalar_from_json", "scalar_to_json",
    "wdrep_from_json", "wdrep_to_json",
]
