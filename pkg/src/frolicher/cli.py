"""Command-line front end: ``frolicher analyze`` and ``frolicher spectral``.

Each run assembles one report dictionary; the text and JSON renderings are
both produced from it, so the two never disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb
from pathlib import Path

from . import __version__
from .cohomology import (
    BIGRADED_THEORIES,
    SYMPLECTIC_THEORIES,
    bc_aeppli_duality_check,
    cohomology_dims,
    decomposition_check,
    laplacian,
    symplectic_cohomology_dims,
)
from .complexes import (
    CochainComplex,
    degeneration_page,
    double_complex_from_model,
    doub_construction,
    spectral_pages,
)
from .errors import FrolicherError, NotOrientable
from .linalg import kernel_basis
from .model import BUILTIN_NAMES, ModelSpec, builtin, load_model, operator_matrix, validate
from .symplectic import (
    build_operators,
    de_rham_complex,
    hard_lefschetz,
    lambda_power_identity,
    lefschetz_equivalence_report,
    phi_intertwine_check,
)
from .verdicts import (
    CONDITION_NAMES,
    convergence_check,
    froelicher_bigraded,
    froelicher_symplectic,
    lemma_check,
    zgraded_equality_and_degeneration,
    zgraded_lemma,
)

SCHEMA_VERSION = 1
ANALYSES = ("validate", "cohomology", "lemma", "froelicher", "spectral", "symplectic", "hodge", "duality", "lefschetz")

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


def _cell(c) -> str:
    return f"{c[0]},{c[1]}"


def _table(d: dict) -> dict:
    return {(_cell(k) if isinstance(k, tuple) else str(k)): v for k, v in sorted(d.items())}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- sections


def section_validate(spec: ModelSpec) -> dict:
    rep = validate(spec)
    return {"ok": rep.ok, "checks": dict(rep.checks), "messages": list(rep.failures())}


def section_cohomology(spec: ModelSpec) -> dict:
    out = {}
    if spec.is_complex:
        dc = double_complex_from_model(spec)
        for theory in BIGRADED_THEORIES:
            out[theory] = _table(cohomology_dims(dc, theory).dims)
    if spec.symplectic_form is not None:
        cx = de_rham_complex(spec)
        for theory in SYMPLECTIC_THEORIES:
            out[f"symplectic_{theory}"] = _table(symplectic_cohomology_dims(cx, theory).dims)
    elif not spec.is_complex:
        n = spec.n_generators
        cx = CochainComplex({k: comb(n, k) for k in range(n + 1)}, {k: operator_matrix(spec, "d", k) for k in range(n)})
        out["de_rham"] = _table(symplectic_cohomology_dims(cx, "de_rham").dims)
    return out


def section_lemma(spec: ModelSpec) -> dict:
    out = {}
    if spec.is_complex:
        v = lemma_check(double_complex_from_model(spec))
        out["del_delbar"] = {
            "holds": v.holds,
            "conditions": {name: val for name, val in zip(CONDITION_NAMES, (v.by_definition,) + v.six_conditions)},
            "consistent": v.consistent,
        }
        if v.holds:
            out["del_delbar"]["note"] = "the lemma implies formality of the complex (not computed)"
    if spec.symplectic_form is not None:
        z = zgraded_lemma(de_rham_complex(spec))
        out["ddlambda"] = {
            "holds": z.holds,
            "graded_form": z.graded,
            "ungraded_form": z.ungraded,
            "kernel_cross_check": z.kernel_cross_check,
            "consistent": z.consistent,
        }
    return out


def _ineq_rows(rep) -> dict:
    return {str(k): dict(v) for k, v in sorted(rep.per_degree.items())}


def section_froelicher(spec: ModelSpec) -> dict:
    out = {}
    if spec.is_complex:
        rep = froelicher_bigraded(double_complex_from_model(spec))
        out["complex"] = {
            "rows": _ineq_rows(rep),
            "overall_equality": rep.overall_equality,
            "lemma": rep.lemma,
            "lemma_equivalent": rep.lemma_equivalent,
        }
    if spec.symplectic_form is not None:
        rep = froelicher_symplectic(de_rham_complex(spec), spec.half_codim)
        out["symplectic"] = {
            "rows": _ineq_rows(rep),
            "overall_equality": rep.overall_equality,
            "lemma": rep.lemma,
            "lemma_equivalent": rep.lemma_equivalent,
        }
    return out


def _pages(dc, max_page: int) -> dict:
    out = {}
    for filtration in ("first", "second"):
        pages = spectral_pages(dc, filtration, max_page)
        out[filtration] = {
            "pages": {str(pg.r): _table(pg.dims) for pg in pages},
            "differential_ranks": {str(pg.r): _table(pg.differential_ranks) for pg in pages},
            "degeneration_page": degeneration_page(dc, filtration),
            "e_infinity_matches_total": convergence_check(dc, filtration),
        }
    return out


def section_spectral(spec: ModelSpec, max_page: int) -> dict:
    out = {}
    if spec.is_complex:
        out["dolbeault"] = _pages(double_complex_from_model(spec), max_page)
    if spec.symplectic_form is not None:
        dc = doub_construction(de_rham_complex(spec), 1, -1)
        section = _pages(dc, max_page)
        section["periodic_window"] = True
        out["doub_d_dlambda"] = section
    return out


def section_symplectic(spec: ModelSpec) -> dict:
    if spec.symplectic_form is None:
        return {"skipped": "model has no symplectic form"}
    ops = build_operators(spec)
    cx = de_rham_complex(spec)
    n, q = ops.n, ops.q
    op = ops.op
    identities = {
        "d_lambda_bracket": ops.checks["d_lambda_bracket"],
        "pairing": ops.checks["pairing"],
        "star_squared_identity": ops.checks["star_squared_identity"],
        "d_lambda_squared_zero": all((op("d_lambda", k - 1) @ op("d_lambda", k)).is_zero() for k in range(n + 1)),
        "anticommute": all(
            (op("d", k - 1) @ op("d_lambda", k) + op("d_lambda", k + 1) @ op("d", k)).is_zero() for k in range(n + 1)
        ),
        "lambda_power": {str(k): v for k, v in lambda_power_identity(spec).items()},
    }
    phi = phi_intertwine_check(spec)
    dr = symplectic_cohomology_dims(cx, "de_rham").dims
    dlc = symplectic_cohomology_dims(cx, "d_lambda").dims
    eqd = zgraded_equality_and_degeneration(cx, (1, -1))
    return {
        "half_codim": q,
        "pairing_convention": ops.convention,
        "identities": identities,
        "phi": {
            "invertible": phi.invertible,
            "intertwines_minus": phi.identity_minus,
            "intertwines_plus": phi.identity_plus,
            "decomposition": phi.decomposition,
            "u_dims": {str(k): v for k, v in sorted(phi.u_dims.items())},
        },
        "reversed_gradation": all(dlc.get(j, 0) == dr.get(n - j, 0) for j in range(n + 1)),
        "equality_and_degeneration": {
            "equality": eqd.equality,
            "degeneration_pages": dict(eqd.degeneration_pages),
            "lemma": eqd.lemma,
            "equivalence_confirmed": eqd.equivalence_confirmed,
        },
    }


def section_hodge(spec: ModelSpec) -> dict:
    if not spec.is_complex:
        return {"skipped": "model has no bidegree splitting"}
    dc = double_complex_from_model(spec)
    out = {}
    for which, theory in (("bc", "bott_chern"), ("aeppli", "aeppli")):
        dec = decomposition_check(spec, which)
        lap = laplacian(spec, which).matrices
        coh = cohomology_dims(dc, theory).dims
        harm = {c: kernel_basis(m).dim for c, m in lap.items()}
        out[which] = {
            "decomposition_ok": dec.ok,
            "summand_dims": {_cell(c): list(v) for c, v in sorted(dec.summand_dims.items())},
            "harmonic_dims": _table(harm),
            "harmonic_matches_cohomology": all(harm[c] == coh.get(c, 0) for c in harm),
        }
    return out


def section_duality(spec: ModelSpec) -> dict:
    if not spec.is_complex:
        return {"skipped": "model has no bidegree splitting"}
    try:
        res = bc_aeppli_duality_check(spec)
    except NotOrientable as exc:
        return {"skipped": str(exc)}
    return {"n": res.n, "dims_match": res.dims_match, "harmonic_match": res.harmonic_match, "ok": res.ok}


def section_lefschetz(spec: ModelSpec) -> dict:
    if spec.symplectic_form is None:
        return {"skipped": "model has no symplectic form"}
    hl = hard_lefschetz(spec)
    eq = lefschetz_equivalence_report(spec)
    return {
        "hard_lefschetz": {"per_k": {str(k): v for k, v in hl.per_k.items()}, "overall": hl.overall},
        "conditions": {
            "hard_lefschetz": eq.hard_lefschetz,
            "quotient_map_iso": eq.quotient_iso,
            "closed_representatives": eq.closed_representatives,
            "ddlambda_lemma": eq.ddlambda_lemma,
        },
        "agree": eq.agree,
    }


# ---------------------------------------------------------------- driver


def resolve_model(source: dict) -> ModelSpec:
    if source.get("builtin"):
        name = source["builtin"]
        if name not in BUILTIN_NAMES:
            raise UsageError(f"unknown built-in {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
        spec = builtin(name, source.get("half_codim") or 1)
        hc = source.get("half_codim")
        if hc is not None and name != "torus2q" and spec.half_codim != hc:
            raise UsageError(f"{name} has half codimension {spec.half_codim}, not {hc}")
        return spec
    return load_model(source["file"])


def build_report(source: dict, analyses: list[str], max_page: int = 3) -> tuple[dict, int]:
    """Run the requested analyses and return (report, exit code)."""
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "frolicher", "version": __version__},
        "exact_arithmetic": True,
        "model": {"source": source.get("builtin") or str(source.get("file"))},
        "sections": {},
    }
    try:
        spec = resolve_model(source)
    except (FrolicherError, OSError) as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        return report, EXIT_INVALID
    report["model"].update({"name": spec.name, "field": spec.field, "generators": spec.n_generators})
    val = section_validate(spec)
    report["sections"]["validate"] = val
    if not val["ok"]:
        return report, EXIT_INVALID
    runners = {
        "cohomology": section_cohomology,
        "lemma": section_lemma,
        "froelicher": section_froelicher,
        "spectral": lambda s: section_spectral(s, max_page),
        "symplectic": section_symplectic,
        "hodge": section_hodge,
        "duality": section_duality,
        "lefschetz": section_lefschetz,
    }
    for name in ANALYSES[1:]:
        if name in analyses:
            report["sections"][name] = runners[name](spec)
    return report, EXIT_OK


# ---------------------------------------------------------------- text rendering


def _yes(b) -> str:
    return "yes" if b else "no"


def _grid(table: dict) -> list[str]:
    cells = {tuple(int(x) for x in k.split(",")): v for k, v in table.items()}
    if not cells:
        return ["    (empty)"]
    ps = sorted({c[0] for c in cells})
    qs = sorted({c[1] for c in cells}, reverse=True)
    lines = ["      " + "".join(f"p={p:<4}" for p in ps)]
    for q in qs:
        lines.append(f"  q={q:<2}" + "".join(f"{cells.get((p, q), 0):<6}" for p in ps))
    return lines


def _render_ineq(title: str, sec: dict, lhs_label: str, rhs_label: str) -> list[str]:
    lines = [f"  {title}", f"    {'k':>3}  {lhs_label:>10}  {rhs_label:>10}  comparison"]
    for k, row in sec["rows"].items():
        rel = "=" if row["equal"] else "≥"
        tag = "" if row["equal"] else " (strict)"
        lines.append(f"    {k:>3}  {row['lhs']:>10}  {row['rhs']:>10}  {row['lhs']} {rel} {row['rhs']}{tag}")
    lines.append(f"    equality in every degree: {_yes(sec['overall_equality'])}")
    return lines


def render_text(report: dict) -> str:
    out = [f"frolicher {report['tool']['version']}  (schema {report['schema_version']}, exact arithmetic)"]
    m = report["model"]
    if "error" in report:
        out.append(f"model {m['source']}: {report['error']['kind']}: {report['error']['message']}")
        return "\n".join(out) + "\n"
    out.append(f"model: {m['name']}  field: {m['field']}  generators: {m['generators']}")
    secs = report["sections"]
    val = secs["validate"]
    out.append("")
    out.append("validation: " + ("ok" if val["ok"] else "FAILED"))
    for name, ok in val["checks"].items():
        out.append(f"  {name}: {'ok' if ok else 'FAILED'}")
    for msg in val["messages"]:
        out.append(f"  ! {msg}")
    if "cohomology" in secs:
        out.append("")
        out.append("cohomology dimensions")
        for theory, table in secs["cohomology"].items():
            out.append(f"  {theory}")
            if table and "," in next(iter(table)):
                out.extend("  " + line for line in _grid(table))
            else:
                out.append("    " + "  ".join(f"H^{k}={v}" for k, v in table.items()))
    if "lemma" in secs:
        out.append("")
        lem = secs["lemma"]
        if "del_delbar" in lem:
            s = lem["del_delbar"]
            out.append(f"∂∂̄-lemma: {'HOLDS' if s['holds'] else 'FAILS'}")
            for name, val_ in s["conditions"].items():
                out.append(f"  {name}: {val_}")
            out.append(f"  all seven agree: {_yes(s['consistent'])}")
            if "note" in s:
                out.append(f"  note: {s['note']}")
        if "ddlambda" in lem:
            s = lem["ddlambda"]
            out.append(f"dd^Λ-lemma: {'HOLDS' if s['holds'] else 'FAILS'}")
            out.append(f"  graded form: {s['graded_form']}  ungraded form: {s['ungraded_form']}  Ker(d+d^Λ) cross-check: {s['kernel_cross_check']}")
    if "froelicher" in secs:
        out.append("")
        out.append("Frölicher-type inequalities")
        f = secs["froelicher"]
        if "complex" in f:
            out.extend(_render_ineq("complex: Σ(BC + A) vs 2·b_k", f["complex"], "BC+A", "2·b_k"))
            out.append(f"    ∂∂̄-lemma: {'HOLDS' if f['complex']['lemma'] else 'FAILS'}; equality ⇔ lemma: {_yes(f['complex']['lemma_equivalent'])}")
        if "symplectic" in f:
            out.extend(_render_ineq("symplectic: d+d^Λ and dd^Λ vs b_j + b_(2q-j)", f["symplectic"], "lhs", "rhs"))
            out.append(f"    dd^Λ-lemma: {'HOLDS' if f['symplectic']['lemma'] else 'FAILS'}; equality ⇔ lemma: {_yes(f['symplectic']['lemma_equivalent'])}")
    if "spectral" in secs:
        out.append("")
        out.extend(render_spectral(secs["spectral"]))
    if "symplectic" in secs:
        out.append("")
        s = secs["symplectic"]
        out.append("symplectic operators")
        if "skipped" in s:
            out.append(f"  skipped: {s['skipped']}")
        else:
            ids = s["identities"]
            for k, v in ids.items():
                if isinstance(v, dict):
                    v = ", ".join(f"k={a}: {b}" for a, b in v.items())
                out.append(f"  {k}: {v}")
            ph = s["phi"]
            out.append(f"  Φ invertible: {ph['invertible']}  d∘Φ = Φ∘(d − d^Λ/2i): {ph['intertwines_minus']}  d∘Φ = Φ∘(d + d^Λ/2i): {ph['intertwines_plus']}")
            out.append(f"  U decomposition direct: {ph['decomposition']}  dims: " + ", ".join(f"U^{k}={v}" for k, v in ph["u_dims"].items()))
            out.append(f"  reversed gradation H_dΛ^j = H^(2q-j): {s['reversed_gradation']}")
            e = s["equality_and_degeneration"]
            out.append(
                f"  equality: {e['equality']}  degeneration pages: {e['degeneration_pages']['first']}/{e['degeneration_pages']['second']}"
                f"  lemma: {e['lemma']}  equivalence confirmed: {e['equivalence_confirmed']}"
            )
    if "hodge" in secs:
        out.append("")
        s = secs["hodge"]
        out.append("Hodge decompositions")
        if "skipped" in s:
            out.append(f"  skipped: {s['skipped']}")
        else:
            for which, r in s.items():
                out.append(f"  {which}: decomposition exact: {r['decomposition_ok']}  harmonic = cohomology: {r['harmonic_matches_cohomology']}")
                out.append("    summand dims (harmonic, middle, last): " + "  ".join(f"{c}:{tuple(v)}" for c, v in r["summand_dims"].items()))
    if "duality" in secs:
        out.append("")
        s = secs["duality"]
        if "skipped" in s:
            out.append(f"BC/Aeppli duality skipped: {s['skipped']}")
        else:
            out.append(f"BC/Aeppli duality (n={s['n']}): dims match: {s['dims_match']}  harmonic forms match: {s['harmonic_match']}")
    if "lefschetz" in secs:
        out.append("")
        s = secs["lefschetz"]
        out.append("Lefschetz")
        if "skipped" in s:
            out.append(f"  skipped: {s['skipped']}")
        else:
            for k, row in s["hard_lefschetz"]["per_k"].items():
                out.append(f"  ω^{k}: rank {row['map_rank']} from dim {row['source_dim']} to dim {row['target_dim']}  iso: {row['is_iso']}")
            out.append(f"  hard Lefschetz: {s['hard_lefschetz']['overall']}")
            for k, v in s["conditions"].items():
                out.append(f"  {k}: {v}")
            out.append(f"  all four agree: {s['agree']}")
    return "\n".join(out) + "\n"


def render_spectral(sec: dict) -> list[str]:
    out = ["spectral sequences"]
    for cname, cx in sec.items():
        label = cname + (" (periodic window)" if cx.get("periodic_window") else "")
        out.append(f"  {label}")
        for filtration in ("first", "second"):
            f = cx[filtration]
            out.append(
                f"    {filtration} filtration: degenerates at page {f['degeneration_page']}"
                f"; E_∞ matches total cohomology: {_yes(f['e_infinity_matches_total'])}"
            )
            for r, table in f["pages"].items():
                out.append(f"      E_{r}")
                out.extend("      " + line for line in _grid(table))
    return out


# ---------------------------------------------------------------- argparse


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frolicher", description="Exact cohomology and lemma checks for finite models.")
    ap.add_argument("--version", action="version", version=f"frolicher {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def source_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--builtin", metavar="NAME", help=f"one of {', '.join(BUILTIN_NAMES)}")
        g.add_argument("--file", metavar="PATH", type=Path, help="JSON model file")
        p.add_argument("--half-codim", type=int, metavar="Q", help="half codimension (sizes the torus built-in)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", metavar="PATH", type=Path, help="write the report here instead of stdout")
        p.add_argument("--max-page", type=int, default=3, metavar="R", help="last spectral page to print")

    an = sub.add_parser("analyze", help="run analyses on a model")
    source_args(an)
    for name in ANALYSES:
        an.add_argument(f"--{name}", action="store_true")
    an.add_argument("--all", action="store_true", help="every analysis (the default)")

    sp = sub.add_parser("spectral", help="print spectral sequence pages")
    source_args(sp)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    if args.max_page < 1:
        ap.error("--max-page must be at least 1")
    if args.half_codim is not None and args.half_codim < 1:
        ap.error("--half-codim must be at least 1")
    source = {"builtin": args.builtin, "file": args.file, "half_codim": args.half_codim}
    if args.command == "spectral":
        analyses = ["validate", "spectral"]
    else:
        picked = [a for a in ANALYSES if getattr(args, a)]
        analyses = list(ANALYSES) if args.all or not picked else ["validate"] + picked
    try:
        report, code = build_report(source, analyses, args.max_page)
    except UsageError as exc:
        ap.error(str(exc))
    if args.format == "json":
        text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    else:
        text = render_text(report)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
