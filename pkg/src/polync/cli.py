"""Command-line front end.

Exit codes: 0 when every check passes, 1 when an analysis finds violations,
2 when the input cannot be analyzed (unreadable, schema errors, inconsistent
data).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path
from typing import Sequence

from polync.coloring import (
    Coloring,
    ColoringError,
    Obstruction,
    check_coloring,
    conflict_graph,
    edge_color,
    is_colorable,
)
from polync.complex import (
    SurfaceType,
    classify,
    euler_characteristic,
    euler_relations_check,
    natural_key,
    sort_ids,
    validate,
)
from polync.generators import GENERATORS, GeneratorError, generate
from polync.geometry import TOTAL_CHARGE, LabelError, check_labels, check_triple_point_formula, component_profile, tp_sums
from polync.io import (
    Bundle,
    ComponentSpec,
    InputError,
    build_components,
    coloring_from_dict,
    dumps,
    example_bundle,
    load_bundle,
    load_component_specs,
    load_labels,
    load_matrix,
    load_period,
    read_json,
)
from polync.lattice import LatticeError, all_slab_classes, check_d_semistable, numerically_cartier
from polync.monodromy import MonodromyError, basechange_triangle_count, gram_matrix, matrix_from_sequence
from polync.report import AnalysisReport
from polync.resolution import ResolutionError, snc_resolution, subdivide_square
from polync.slabs import parameter_count, slab_count_identity, slabs, triangle_counts

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

COMMANDS = ("validate", "classify", "color", "analyze", "slabs", "params", "monodromy", "lattice", "resolve", "generate")


class Abort(Exception):
    """Input problem detected after parsing; exits with code 2."""


# -- loading ----------------------------------------------------------------


def _load(args) -> Bundle:
    if not args.input:
        raise Abort("--input is required")
    bundle = load_bundle(args.input)
    if getattr(args, "labels", None):
        bundle.labels = load_labels(read_json(args.labels), args.labels)
    if getattr(args, "coloring", None):
        bundle.coloring = coloring_from_dict(read_json(args.coloring), args.coloring)
    if getattr(args, "components", None):
        bundle.components = load_component_specs(read_json(args.components), args.components)
    return bundle


def _require_valid(bundle: Bundle, report: AnalysisReport) -> bool:
    rep = validate(bundle.complex)
    report.validation = {
        "ok": rep.ok,
        "counts": rep.counts,
        "violations": [{"code": v.code, "cell": v.cell, "message": v.message} for v in rep.violations],
    }
    if not rep.ok:
        report.fail("complex is invalid; later analyses skipped")
    return rep.ok


def _coloring_for(bundle: Bundle, report: AnalysisReport) -> Coloring | None:
    """The supplied coloring if valid, else the canonical one; None if uncolorable."""
    cx = bundle.complex
    result = is_colorable(cx)
    section: dict = {}
    if isinstance(result, Obstruction):
        section = {
            "colorable": False,
            "obstruction": {
                "cell": result.cell,
                "slots": [list(s) for s in result.slots],
                "trace": [list(t) for t in result.trace],
            },
        }
        report.coloring = section
        report.fail(f"complex is not colorable (obstruction at {result.cell})")
        return None
    coloring = result.coloring
    source = "canonical"
    if bundle.coloring is not None:
        try:
            valid = check_coloring(cx, bundle.coloring)
        except ColoringError as exc:
            raise Abort(f"coloring: {exc}") from None
        section["valid"] = valid
        if valid:
            coloring, source = bundle.coloring, "supplied"
        else:
            report.fail("supplied coloring violates injectivity or face compatibility")
    section.update(
        {
            "colorable": True,
            "source": source,
            "colors": list(coloring.colors),
            "n_forced_classes": len(result.classes),
        }
    )
    if cx.dim >= 1:
        by_color: dict[str, list[str]] = {s: [] for s in coloring.colors}
        for e in sorted(cx.edges, key=lambda c: natural_key(c.id)):
            by_color[edge_color(coloring, e.id)].append(e.id)
        section["edges_by_color"] = by_color
    report.coloring = {"colorable": True, **section}
    return coloring


def _need_surface(bundle: Bundle) -> None:
    if bundle.complex.dim > 2:
        raise Abort(f"analysis needs a complex of dimension <= 2, got {bundle.complex.dim}")


def _classification(bundle: Bundle, report: AnalysisReport) -> SurfaceType:
    cx = bundle.complex
    kind = classify(cx)
    section = {"type": kind.value, "euler_characteristic": euler_characteristic(cx)}
    if cx.dim == 2 and kind in (SurfaceType.SPHERE, SurfaceType.TORUS):
        section["euler_relations"] = euler_relations_check(cx, 2 if kind is SurfaceType.SPHERE else 0)
    report.classification = section
    return kind


def _labels_sections(bundle: Bundle, report: AnalysisReport, sphere: bool = True) -> None:
    cx, labels = bundle.complex, bundle.labels
    try:
        check_labels(cx, labels)
        sums = tp_sums(cx, labels)
    except LabelError as exc:
        raise Abort(f"labels: {exc}") from None
    viol = check_triple_point_formula(cx, labels)
    report.triple_point = {
        "ok": not viol,
        "sums": {e: list(sums[e]) for e in sort_ids(sums)},
        "violations": [{"edge": v.edge, "total": v.total, "expected": v.expected} for v in viol],
    }
    if viol:
        report.fail(f"{len(viol)} edges violate the triple point formula")
    comps = {}
    for v in sort_ids(cx.vertices):
        try:
            prof = component_profile(cx, labels, v)
        except (LabelError, ValueError) as exc:
            raise Abort(f"charge at {v}: {exc}") from None
        comps[v] = {"k": prof.k, "cycle": [list(x) for x in prof.cycle], "charge": prof.charge}
    total = sum(c["charge"] for c in comps.values())
    # conservation of charge is a statement about spheres; elsewhere just report
    ok = total == TOTAL_CHARGE if sphere else None
    report.charges = {"components": comps, "total": total, "ok": ok}
    if ok is False:
        report.fail(f"total charge is {total}, not {TOTAL_CHARGE}")


def _slab_sections(
    bundle: Bundle, coloring: Coloring, report: AnalysisReport, colors=None, identity: bool = True
) -> None:
    cx = bundle.complex
    tri = triangle_counts(cx, coloring)
    ident = slab_count_identity(cx, coloring) if identity else {}
    section = {}
    for s in colors or coloring.colors:
        dec = slabs(cx, coloring, s)
        holds = ident[s].holds if identity else None
        section[s] = {
            "n": dec.n,
            "triangles": tri[s],
            "identity": holds,
            "slabs": [sort_ids(g) for g in dec.slabs],
        }
        if holds is False:
            report.fail(f"slab identity fails for color {s}")
    report.slabs = section


def _params_section(bundle: Bundle, coloring: Coloring, report: AnalysisReport) -> None:
    pc = parameter_count(bundle.complex, coloring)
    report.parameters = {
        "structural": pc.structural,
        "expected": pc.expected,
        "agree": pc.agree,
        "slab_counts": pc.slab_counts,
    }
    if not pc.agree:
        report.fail("structural parameter count disagrees with 20 - |S|")


def _gram_section(gram, report: AnalysisReport, basechange: list | None = None) -> None:
    report.monodromy = {
        "colors": list(gram.colors),
        "matrix": [list(r) for r in gram.matrix],
        "determinant": gram.determinant,
        "rank": gram.rank,
        "signature": list(gram.signature),
    }
    if basechange is not None:
        report.monodromy["basechange"] = basechange


def _components(bundle: Bundle):
    if bundle.labels is None:
        raise Abort("lattice analysis needs labels")
    if not bundle.components:
        raise Abort("lattice analysis needs component models (--components)")
    try:
        return build_components(bundle.complex, bundle.labels, bundle.components)
    except LatticeError as exc:
        raise Abort(f"components: {exc}") from None


def _lattice_section(bundle: Bundle, coloring: Coloring, report: AnalysisReport, period_path: str | None) -> None:
    cx = bundle.complex
    comps = _components(bundle)
    for v, comp in comps.items():
        problems = comp.problems()
        if problems:
            raise Abort(f"component at {v}: {problems[0]}")
    lat = numerically_cartier(cx, bundle.labels, comps)
    classes = all_slab_classes(cx, coloring, comps, lat)
    slab_index = {s: {g: i for i, g in enumerate(slabs(cx, coloring, s).slabs)} for s in coloring.colors}
    entries = []
    for sc in classes:
        entries.append(
            {
                "color": sc.color,
                "slab": slab_index[sc.color][sc.slab],
                "coordinates": list(lat.coordinates(sc.vector)),
            }
        )
    if period_path:
        period = load_period(read_json(period_path), period_path)
        try:
            verdicts = check_d_semistable(period, lat, classes)
        except LatticeError as exc:
            raise Abort(f"period: {exc}") from None
        for entry, ver in zip(entries, verdicts):
            entry["exponent"] = list(ver.exponent)
            entry["ok"] = ver.ok
            if not ver.ok:
                report.fail(f"slab {entry['slab']} of color {entry['color']} has nontrivial period")
    report.lattice = {"rank": lat.rank, "dim": lat.dim, "slab_classes": entries}


# -- commands ---------------------------------------------------------------


def cmd_validate(args, report: AnalysisReport) -> None:
    _require_valid(_load(args), report)


def cmd_classify(args, report: AnalysisReport) -> None:
    bundle = _load(args)
    if _require_valid(bundle, report):
        _need_surface(bundle)
        _classification(bundle, report)


def cmd_color(args, report: AnalysisReport) -> None:
    bundle = _load(args)
    if not _require_valid(bundle, report):
        return
    coloring = _coloring_for(bundle, report)
    if coloring is None:
        return
    report.coloring["assignment"] = [
        {"cell": s.cell, "factor": s.factor, "color": c}
        for s, c in sorted(coloring.assignment.items(), key=lambda kv: (natural_key(kv[0].cell), kv[0].factor))
    ]
    g = conflict_graph(bundle.complex)
    classes = {i: f"c{i}" for i in g.nodes}
    report.coloring["conflicts"] = sorted(sorted((classes[a], classes[b]), key=natural_key) for a, b in g.edges)


def _surface_prelude(args, report: AnalysisReport):
    bundle = _load(args)
    if not _require_valid(bundle, report):
        return bundle, None, None
    _need_surface(bundle)
    kind = _classification(bundle, report)
    coloring = _coloring_for(bundle, report)
    return bundle, kind, coloring


def cmd_analyze(args, report: AnalysisReport) -> None:
    bundle, kind, coloring = _surface_prelude(args, report)
    if kind is None:
        return
    closed = kind in (SurfaceType.SPHERE, SurfaceType.TORUS)
    if bundle.labels is not None:
        if closed:
            _labels_sections(bundle, report, kind is SurfaceType.SPHERE)
        else:
            report.notes.append("labels ignored: not a closed surface")
    if coloring is None:
        return
    if kind is SurfaceType.SPHERE:
        _slab_sections(bundle, coloring, report)
        _params_section(bundle, coloring, report)
    else:
        report.notes.append("slab and parameter identities need a sphere; skipped")
    if bundle.complex.dim == 2:
        _gram_section(gram_matrix(bundle.complex, coloring), report)
        if bundle.components and bundle.labels is not None and closed:
            _lattice_section(bundle, coloring, report, args.period)


def cmd_slabs(args, report: AnalysisReport) -> None:
    bundle, kind, coloring = _surface_prelude(args, report)
    if coloring is None:
        return
    if args.color is not None and args.color not in coloring.colors:
        raise Abort(f"unknown color {args.color!r}; colors are {list(coloring.colors)}")
    if kind is not SurfaceType.SPHERE:
        report.notes.append("slab identity assumes a sphere")
    _slab_sections(bundle, coloring, report, [args.color] if args.color else None, kind is SurfaceType.SPHERE)


def cmd_params(args, report: AnalysisReport) -> None:
    bundle, kind, coloring = _surface_prelude(args, report)
    if coloring is None:
        return
    if kind is not SurfaceType.SPHERE:
        report.fail("parameter count needs a sphere")
    _params_section(bundle, coloring, report)


def cmd_monodromy(args, report: AnalysisReport) -> None:
    if args.matrix:
        rows, colors = load_matrix(read_json(args.matrix), args.matrix)
        try:
            gram = matrix_from_sequence(rows, colors)
        except ValueError as exc:
            raise Abort(f"{args.matrix}: {exc}") from None
        _gram_section(gram, report)
        return
    bundle, kind, coloring = _surface_prelude(args, report)
    if coloring is None:
        return
    if bundle.complex.dim != 2:
        raise Abort("the Gram matrix needs a 2-dimensional complex")
    gram = gram_matrix(bundle.complex, coloring)
    basechange = None
    if args.basechange:
        basechange = []
        for s, t in itertools.combinations(coloring.colors, 2):
            try:
                n = basechange_triangle_count(bundle.complex, coloring, s, t)
            except MonodromyError as exc:
                report.fail(str(exc))
                continue
            basechange.append({"pair": [s, t], "triangles": n})
    _gram_section(gram, report, basechange)


def cmd_lattice(args, report: AnalysisReport) -> None:
    bundle, kind, coloring = _surface_prelude(args, report)
    if coloring is None:
        return
    _lattice_section(bundle, coloring, report, args.period)


def _emit_bundle(bundle: Bundle, args, stdout) -> int:
    text = dumps(bundle.to_dict())
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK


def cmd_resolve(args, stdout) -> int:
    bundle = _load(args)
    rep = validate(bundle.complex)
    if not rep.ok:
        raise Abort(f"complex is invalid: {rep.violations[0].message}")
    if bool(args.all) == bool(args.square):
        raise Abort("give exactly one of --all or --square")
    if args.diag and not args.square:
        raise Abort("--diag needs --square")
    comps = _components(bundle) if bundle.components else None
    try:
        if args.all:
            out = snc_resolution(bundle.complex, bundle.labels, components=comps)
        else:
            diag = args.diag.split(",") if args.diag else None
            if diag is not None and len(diag) != 2:
                raise Abort("--diag takes two vertex ids: a,c")
            out = subdivide_square(bundle.complex, bundle.labels, args.square, diag, comps)
    except (ResolutionError, LatticeError) as exc:
        raise Abort(str(exc)) from None
    specs = []
    if out.components is not None:
        for v, comp in out.components.items():
            specs.append(ComponentSpec(v, gram=comp.gram, curves=tuple(comp.curves.items())))
    return _emit_bundle(Bundle(out.complex, out.labels, None, specs), args, stdout)


def _parse_param(text: str) -> tuple[str, object]:
    key, sep, value = text.partition("=")
    if not sep:
        raise Abort(f"--param expects key=value, got {text!r}")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = [int(x) for x in value.split(",")] if "," in value else value
    return key.replace("-", "_"), parsed


def cmd_generate(args, stdout) -> int:
    params = dict(_parse_param(p) for p in args.param)
    try:
        ex = generate(args.name, **params)
    except (GeneratorError, TypeError, ValueError) as exc:
        raise Abort(str(exc)) from None
    return _emit_bundle(example_bundle(ex), args, stdout)


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polync", description="Analyze polysimplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, labels=True, coloring=True):
        p.add_argument("--input", "-i", help="complex JSON (may embed labels, coloring, components)")
        if labels:
            p.add_argument("--labels", help="labels JSON")
        if coloring:
            p.add_argument("--coloring", help="coloring JSON")
        p.add_argument("--output", "-o", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="text")
        return p

    common(sub.add_parser("validate", help="check structural invariants"), labels=False, coloring=False)
    common(sub.add_parser("classify", help="homeomorphism type"), labels=False, coloring=False)
    common(sub.add_parser("color", help="canonical coloring or obstruction"), labels=False)
    p = common(sub.add_parser("analyze", help="all analyses at once"))
    p.add_argument("--components", help="component models JSON")
    p.add_argument("--period", help="period matrix JSON")
    p = common(sub.add_parser("slabs", help="slabs per color"), labels=False)
    p.add_argument("--color", help="only this color")
    common(sub.add_parser("params", help="parameter count"), labels=False)
    p = common(sub.add_parser("monodromy", help="monodromy Gram matrix"), labels=False)
    p.add_argument("--matrix", help="analyze this matrix JSON instead of a complex")
    p.add_argument("--basechange", action="store_true", help="cross-check every color pair by subdivision")
    p = common(sub.add_parser("lattice", help="numerically Cartier lattice and slab periods"))
    p.add_argument("--components", help="component models JSON")
    p.add_argument("--period", help="period matrix JSON")
    p = sub.add_parser("resolve", help="subdivide squares")
    p.add_argument("--input", "-i")
    p.add_argument("--labels")
    p.add_argument("--components")
    p.add_argument("--output", "-o")
    p.add_argument("--square", help="subdivide only this square")
    p.add_argument("--diag", help="diagonal endpoints a,c")
    p.add_argument("--all", action="store_true", help="subdivide every square")
    p = sub.add_parser("generate", help="emit a bundled example")
    p.add_argument("name", choices=sorted(GENERATORS))
    p.add_argument("--param", action="append", default=[], help="constructor parameter key=value")
    p.add_argument("--output", "-o")
    return parser


HANDLERS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "color": cmd_color,
    "analyze": cmd_analyze,
    "slabs": cmd_slabs,
    "params": cmd_params,
    "monodromy": cmd_monodromy,
    "lattice": cmd_lattice,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "resolve":
            return cmd_resolve(args, stdout)
        if args.command == "generate":
            return cmd_generate(args, stdout)
        report = AnalysisReport(args.command)
        HANDLERS[args.command](args, report)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except (Abort, LabelError, LatticeError, ColoringError, ResolutionError, GeneratorError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    if args.format == "json":
        text = dumps(report.to_dict())
    else:
        text = report.render_text(stdout if not args.output else None)
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
