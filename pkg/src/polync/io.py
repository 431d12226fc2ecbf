"""JSON interchange for complexes, labels, colorings, components and matrices.

Every writer is deterministic (sorted keys, cells in dimension then natural id
order), so ``dumps(load(dumps(x))) == dumps(x)``.  Integers whose magnitude
exceeds 2**53 are written as decimal strings and accepted back either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import jsonschema

from polync.coloring import Coloring, FactorSlot
from polync.complex import FaceIncidence, Polysimplex, PolysimplicialComplex, natural_key, rotation_at, sort_ids
from polync.geometry import EdgeLabeling
from polync.lattice import ComponentLattice, LatticeError, PeriodHom, attach_component, build_component

FORMAT = "polync-complex"
VERSION = 1
SAFE_INT = 2**53

_INT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_ID = {"type": "string", "minLength": 1}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _INT}}

LABELS_ITEMS = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["edge", "vertex", "d"],
        "properties": {"edge": _ID, "vertex": _ID, "d": _INT},
    },
}

COLORING_SCHEMA = {
    "type": "object",
    "required": ["colors", "assignment"],
    "properties": {
        "colors": {"type": "array", "items": _ID},
        "assignment": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["cell", "factor", "color"],
                "properties": {"cell": _ID, "factor": {"type": "integer", "minimum": 0}, "color": _ID},
            },
        },
    },
}

_BLOWUP = {
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "curve"],
            "properties": {"type": {"enum": ["interior", "corner"]}, "curve": {"type": "integer", "minimum": 0}},
        },
        {
            "type": "array",
            "prefixItems": [{"enum": ["interior", "corner"]}, {"type": "integer", "minimum": 0}],
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}

COMPONENT_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "required": ["vertex", "kind"],
            "properties": {
                "vertex": _ID,
                "kind": {"enum": ["P2-triangle", "P1xP1-square"]},
                "blowups": {"type": "array", "items": _BLOWUP},
                "edges": {"type": "array", "items": _ID},
            },
        },
        {
            "type": "object",
            "required": ["vertex", "rank", "gram", "curves"],
            "properties": {
                "vertex": _ID,
                "rank": {"type": "integer", "minimum": 0},
                "gram": _MATRIX,
                "curves": {
                    "oneOf": [
                        {"type": "object", "additionalProperties": {"type": "array", "items": _INT}},
                        {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["edge", "class"],
                                "properties": {"edge": _ID, "class": {"type": "array", "items": _INT}},
                            },
                        },
                    ]
                },
            },
        },
    ]
}

COMPLEX_SCHEMA = {
    "type": "object",
    "required": ["cells"],
    "properties": {
        "format": {"const": FORMAT},
        "version": {"const": VERSION},
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "factors", "vertices"],
                "properties": {
                    "id": _ID,
                    "dim": {"type": "integer", "minimum": 0},
                    "factors": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "vertices": {"type": "array", "items": _ID, "minItems": 1},
                },
            },
        },
        "incidences": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["face", "coface", "slot_map"],
                "properties": {
                    "face": _ID,
                    "coface": _ID,
                    "slot_map": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
        "rotation": {"type": "object", "additionalProperties": {"type": "array", "items": _ID}},
        "closed_surface": {"type": "boolean"},
        "labels": LABELS_ITEMS,
        "coloring": COLORING_SCHEMA,
        "components": {"type": "array", "items": COMPONENT_SCHEMA},
    },
}

LABELS_SCHEMA = {"type": "object", "required": ["labels"], "properties": {"labels": LABELS_ITEMS}}
COMPONENTS_SCHEMA = {
    "type": "object",
    "required": ["components"],
    "properties": {"components": {"type": "array", "items": COMPONENT_SCHEMA}},
}
MATRIX_SCHEMA = {
    "oneOf": [
        _MATRIX,
        {
            "type": "object",
            "required": ["matrix"],
            "properties": {"matrix": _MATRIX, "colors": {"type": "array", "items": _ID}},
        },
    ]
}
PERIOD_SCHEMA = {
    "oneOf": [_MATRIX, {"type": "object", "required": ["period"], "properties": {"period": _MATRIX}}]
}


class InputError(ValueError):
    """Malformed input, located by a JSON pointer into the offending document."""

    def __init__(self, pointer: str, message: str, source: str | None = None):
        self.pointer = pointer or "/"
        self.message = message
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{self.pointer}: {message}")


def pointer(*parts: Any) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _check_schema(doc: Any, schema: Mapping, source: str | None) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise InputError(pointer(*err.absolute_path), err.message, source)


def _int(x: Any) -> int:
    return int(x)


def encode_int(x: int) -> int | str:
    return str(x) if abs(x) > SAFE_INT else x


def _enc_vec(v: Sequence[int]) -> list:
    return [encode_int(int(x)) for x in v]


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError("/", f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("/", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(path)) from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- complexes --------------------------------------------------------------


def _cell_key(cell: Polysimplex):
    return (cell.dim, natural_key(cell.id))


def complex_to_dict(cx: PolysimplicialComplex) -> dict:
    cells = sorted(cx.cells.values(), key=_cell_key)
    incs = sorted(cx.incidences, key=lambda i: (natural_key(i.face), natural_key(i.coface)))
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "closed_surface": cx.closed_surface,
        "cells": [
            {"id": c.id, "dim": c.dim, "factors": list(c.factors), "vertices": list(c.vertices)} for c in cells
        ],
        "incidences": [{"face": i.face, "coface": i.coface, "slot_map": list(i.slot_map)} for i in incs],
    }
    if cx.rotation is not None:
        doc["rotation"] = {v: list(order) for v, order in cx.rotation.items()}
    return doc


def complex_from_dict(doc: Any, source: str | None = None) -> PolysimplicialComplex:
    _check_schema(doc, COMPLEX_SCHEMA, source)
    cells = []
    seen: set[str] = set()
    for n, c in enumerate(doc["cells"]):
        if c["id"] in seen:
            raise InputError(pointer("cells", n, "id"), f"duplicate cell id {c['id']!r}", source)
        seen.add(c["id"])
        cell = Polysimplex(c["id"], tuple(c["factors"]), tuple(c["vertices"]))
        if "dim" in c and c["dim"] != cell.dim:
            raise InputError(pointer("cells", n, "dim"), f"dim {c['dim']} but factors sum to {cell.dim}", source)
        cells.append(cell)
    rotation = doc.get("rotation")
    closed = bool(doc.get("closed_surface", False))
    if "incidences" not in doc:
        return PolysimplicialComplex.from_cells(cells, rotation=rotation, closed_surface=closed)
    incs = tuple(FaceIncidence(i["face"], i["coface"], tuple(i["slot_map"])) for i in doc["incidences"])
    return PolysimplicialComplex(
        {c.id: c for c in cells},
        incs,
        {v: tuple(o) for v, o in rotation.items()} if rotation is not None else None,
        closed,
    )


# -- labels and colorings ---------------------------------------------------


def labels_to_list(labels: EdgeLabeling) -> list[dict]:
    items = sorted(labels.items(), key=lambda kv: (natural_key(kv[0][0]), natural_key(kv[0][1])))
    return [{"edge": e, "vertex": v, "d": encode_int(d)} for (e, v), d in items]


def labels_from_list(items: Sequence[Mapping], source: str | None = None, base: tuple = ("labels",)) -> EdgeLabeling:
    values: dict[tuple[str, str], int] = {}
    for n, item in enumerate(items):
        key = (item["edge"], item["vertex"])
        if key in values:
            raise InputError(pointer(*base, n), f"label for edge {key[0]!r} at {key[1]!r} given twice", source)
        values[key] = _int(item["d"])
    return EdgeLabeling(values)


def load_labels(doc: Any, source: str | None = None) -> EdgeLabeling:
    _check_schema(doc, LABELS_SCHEMA, source)
    return labels_from_list(doc["labels"], source)


def coloring_to_dict(coloring: Coloring) -> dict:
    items = sorted(coloring.assignment.items(), key=lambda kv: (natural_key(kv[0].cell), kv[0].factor))
    return {
        "colors": list(coloring.colors),
        "assignment": [{"cell": s.cell, "factor": s.factor, "color": c} for s, c in items],
    }


def coloring_from_dict(doc: Any, source: str | None = None, base: tuple = ()) -> Coloring:
    _check_schema(doc, COLORING_SCHEMA, source)
    colors = tuple(doc["colors"])
    if len(set(colors)) != len(colors):
        raise InputError(pointer(*base, "colors"), "color names repeat", source)
    assignment: dict[FactorSlot, str] = {}
    for n, a in enumerate(doc["assignment"]):
        slot = FactorSlot(a["cell"], a["factor"])
        if a["color"] not in colors:
            raise InputError(pointer(*base, "assignment", n, "color"), f"unknown color {a['color']!r}", source)
        if slot in assignment:
            raise InputError(pointer(*base, "assignment", n), f"slot {tuple(slot)} assigned twice", source)
        assignment[slot] = a["color"]
    return Coloring(colors, assignment)


# -- components -------------------------------------------------------------


@dataclass(frozen=True)
class ComponentSpec:
    """A component description as read from JSON, before attaching to a vertex."""

    vertex: str
    kind: str | None = None
    blowups: tuple = ()
    edges: tuple[str, ...] | None = None
    gram: tuple[tuple[int, ...], ...] | None = None
    curves: tuple[tuple[str, tuple[int, ...]], ...] | None = None
    ordered: bool = True

    def to_dict(self) -> dict:
        if self.kind is not None:
            doc: dict = {
                "vertex": self.vertex,
                "kind": self.kind,
                "blowups": [{"type": t, "curve": c} for t, c in self.blowups],
            }
            if self.edges is not None:
                doc["edges"] = list(self.edges)
            return doc
        return {
            "vertex": self.vertex,
            "rank": len(self.gram),
            "gram": [_enc_vec(r) for r in self.gram],
            "curves": [{"edge": e, "class": _enc_vec(c)} for e, c in self.curves],
        }


def component_spec_from_dict(doc: Mapping, source: str | None = None, base: tuple = ()) -> ComponentSpec:
    if "kind" in doc:
        blowups = []
        for b in doc.get("blowups", []):
            t, c = (b["type"], b["curve"]) if isinstance(b, Mapping) else b
            blowups.append((t, int(c)))
        edges = tuple(doc["edges"]) if "edges" in doc else None
        return ComponentSpec(doc["vertex"], doc["kind"], tuple(blowups), edges)
    gram = tuple(tuple(_int(x) for x in r) for r in doc["gram"])
    if len(gram) != doc["rank"] or any(len(r) != len(gram) for r in gram):
        raise InputError(pointer(*base, "gram"), f"Gram matrix is not {doc['rank']}x{doc['rank']}", source)
    raw = doc["curves"]
    if isinstance(raw, Mapping):
        curves = tuple((e, tuple(_int(x) for x in v)) for e, v in raw.items())
        ordered = False
    else:
        curves = tuple((c["edge"], tuple(_int(x) for x in c["class"])) for c in raw)
        ordered = True
    for e, v in curves:
        if len(v) != len(gram):
            raise InputError(pointer(*base, "curves"), f"class of edge {e!r} has length {len(v)}, rank is {len(gram)}", source)
    return ComponentSpec(doc["vertex"], gram=gram, curves=curves, ordered=ordered)


def load_component_specs(doc: Any, source: str | None = None) -> list[ComponentSpec]:
    _check_schema(doc, COMPONENTS_SCHEMA, source)
    return [component_spec_from_dict(c, source, ("components", n)) for n, c in enumerate(doc["components"])]


def build_components(
    cx: PolysimplicialComplex, labels: EdgeLabeling, specs: Sequence[ComponentSpec]
) -> dict[str, ComponentLattice]:
    """Attach every spec to its vertex; explicit curve maps without order follow the rotation."""
    out: dict[str, ComponentLattice] = {}
    for spec in specs:
        if spec.vertex not in cx.cells or cx.cells[spec.vertex].dim != 0:
            raise LatticeError(f"component for unknown vertex {spec.vertex!r}")
        if spec.kind is not None:
            model = build_component(spec.kind, spec.blowups)
            out[spec.vertex] = attach_component(cx, labels, spec.vertex, model, spec.edges)
            continue
        curves = dict(spec.curves)
        if spec.ordered:
            edges = [e for e, _ in spec.curves]
        else:
            edges = [e for e in rotation_at(cx, spec.vertex) if e in curves]
            if len(edges) != len(curves):
                raise LatticeError(f"curves at {spec.vertex!r} name edges that do not meet it")
        model = ComponentLattice(spec.gram, tuple(curves[e] for e in edges))
        out[spec.vertex] = attach_component(cx, labels, spec.vertex, model, edges)
    missing = [v for v in cx.vertices if v not in out]
    if missing:
        raise LatticeError(f"no component model for vertices {sort_ids(missing)[:5]}")
    return out


# -- matrices ---------------------------------------------------------------


def load_matrix(doc: Any, source: str | None = None) -> tuple[list[list[int]], list[str] | None]:
    _check_schema(doc, MATRIX_SCHEMA, source)
    rows = doc["matrix"] if isinstance(doc, Mapping) else doc
    colors = doc.get("colors") if isinstance(doc, Mapping) else None
    m = [[_int(x) for x in r] for r in rows]
    for n, r in enumerate(m):
        if len(r) != len(m):
            raise InputError(pointer(*(("matrix",) if isinstance(doc, Mapping) else ()), n), "matrix is not square", source)
    return m, colors


def load_period(doc: Any, source: str | None = None) -> PeriodHom:
    _check_schema(doc, PERIOD_SCHEMA, source)
    rows = doc["period"] if isinstance(doc, Mapping) else doc
    try:
        return PeriodHom(tuple(tuple(_int(x) for x in r) for r in rows))
    except LatticeError as exc:
        raise InputError(pointer("period") if isinstance(doc, Mapping) else "/", str(exc), source) from None


# -- bundles ----------------------------------------------------------------


@dataclass
class Bundle:
    complex: PolysimplicialComplex
    labels: EdgeLabeling | None = None
    coloring: Coloring | None = None
    components: list[ComponentSpec] = field(default_factory=list)

    def to_dict(self) -> dict:
        doc = complex_to_dict(self.complex)
        if self.labels is not None:
            doc["labels"] = labels_to_list(self.labels)
        if self.coloring is not None:
            doc["coloring"] = coloring_to_dict(self.coloring)
        if self.components:
            specs = sorted(self.components, key=lambda s: natural_key(s.vertex))
            doc["components"] = [s.to_dict() for s in specs]
        return doc


def bundle_from_dict(doc: Any, source: str | None = None) -> Bundle:
    cx = complex_from_dict(doc, source)
    labels = labels_from_list(doc["labels"], source) if "labels" in doc else None
    coloring = coloring_from_dict(doc["coloring"], source, ("coloring",)) if "coloring" in doc else None
    comps = [component_spec_from_dict(c, source, ("components", n)) for n, c in enumerate(doc.get("components", []))]
    return Bundle(cx, labels, coloring, comps)


def load_bundle(path: str | Path) -> Bundle:
    return bundle_from_dict(read_json(path), str(path))


def example_bundle(example) -> Bundle:
    """Bundle a generated example, components included as schedules."""
    specs = []
    if example.labels is not None and example.component_models:
        for v, comp in example.components().items():
            kind, sched = example.component_models[v]
            blowups = tuple((b["type"], b["curve"]) if isinstance(b, Mapping) else tuple(b) for b in sched)
            specs.append(ComponentSpec(v, kind, blowups, comp.edges))
    return Bundle(example.complex, example.labels, example.coloring, specs)
