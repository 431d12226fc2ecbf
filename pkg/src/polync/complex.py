"""Polysimplicial complexes: cells that are products of simplices, glued along faces.

A cell with factor dimensions ``(d_1, ..., d_r)`` is the product
``Δ_{d_1} × ... × Δ_{d_r}``.  Its vertex list enumerates the product in
row-major order over the factors, so a square ``Δ_1 × Δ_1`` stores its corners
as ``[p00, p01, p10, p11]``; the boundary cycle is ``p00 p01 p11 p10``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

MAX_STORED_DIM = 3


def natural_key(name: str) -> tuple:
    """Sort key treating digit runs numerically, so ``v2 < v10``."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", str(name)))


def sort_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=natural_key)


@dataclass(frozen=True)
class Polysimplex:
    id: str
    factors: tuple[int, ...]
    vertices: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def dim(self) -> int:
        return sum(self.factors)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(f + 1 for f in self.factors)

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @property
    def is_triangle(self) -> bool:
        return self.factors == (2,)

    @property
    def is_square(self) -> bool:
        return self.factors == (1, 1)

    def multi_index(self, vertex: str) -> tuple[int, ...]:
        flat = self.vertices.index(vertex)
        return tuple(int(i) for i in _unravel(flat, self.shape))

    def vertex_at(self, index: Sequence[int]) -> str:
        return self.vertices[_ravel(index, self.shape)]

    def boundary_cycle(self) -> tuple[str, ...]:
        """Cyclic vertex order of a 2-cell, inducing its reference orientation."""
        if self.is_triangle:
            return self.vertices
        if self.is_square:
            p00, p01, p10, p11 = self.vertices
            return (p00, p01, p11, p10)
        raise ValueError(f"cell {self.id} is not 2-dimensional")

    def face_specs(self) -> Iterator[tuple[tuple[int, ...], tuple[str, ...], tuple[int, ...]]]:
        """Yield ``(factors, vertices, slot_map)`` for every proper face."""
        choices = [
            [sub for r in range(1, m + 1) for sub in itertools.combinations(range(m), r)]
            for m in self.shape
        ]
        for pick in itertools.product(*choices):
            if all(len(sub) == m for sub, m in zip(pick, self.shape)):
                continue
            verts = tuple(self.vertex_at(idx) for idx in itertools.product(*pick))
            slot_map = tuple(i for i, sub in enumerate(pick) if len(sub) >= 2)
            factors = tuple(len(pick[i]) - 1 for i in slot_map)
            yield factors, verts, slot_map


def _unravel(flat: int, shape: Sequence[int]) -> tuple[int, ...]:
    out = []
    for m in reversed(shape):
        out.append(flat % m)
        flat //= m
    return tuple(reversed(out))


def _ravel(index: Sequence[int], shape: Sequence[int]) -> int:
    flat = 0
    for i, m in zip(index, shape):
        flat = flat * m + i
    return flat


def expected_face_count(cell: Polysimplex) -> int:
    return math.prod(2**m - 1 for m in cell.shape) - 1


def derive_slot_map(face: Polysimplex, coface: Polysimplex) -> tuple[int, ...] | None:
    """Slot map of ``face`` inside ``coface`` or None when it is not a face.

    The face must be a product of vertex subsets, one per coface factor, and its
    own product structure must line up with the coface's factor by factor.
    """
    if not face.vertex_set <= coface.vertex_set or face.vertex_set == coface.vertex_set:
        return None
    coords = [coface.multi_index(v) for v in face.vertices]
    subsets = [sorted({c[i] for c in coords}) for i in range(len(coface.shape))]
    if math.prod(len(s) for s in subsets) != len(face.vertices):
        return None
    moving = [i for i, s in enumerate(subsets) if len(s) >= 2]
    if len(moving) != len(face.factors):
        return None
    slot_map: list[int] = []
    for k in range(len(face.factors)):
        target = None
        for idx in itertools.product(*(range(m) for m in face.shape)):
            if idx[k] + 1 >= face.shape[k]:
                continue
            nxt = list(idx)
            nxt[k] += 1
            a = coface.multi_index(face.vertex_at(idx))
            b = coface.multi_index(face.vertex_at(nxt))
            diff = [i for i in range(len(a)) if a[i] != b[i]]
            if len(diff) != 1 or (target is not None and diff[0] != target):
                return None
            target = diff[0]
        if target is None or face.factors[k] != len(subsets[target]) - 1:
            return None
        slot_map.append(target)
    if len(set(slot_map)) != len(slot_map):
        return None
    return tuple(slot_map)


@dataclass(frozen=True)
class FaceIncidence:
    face: str
    coface: str
    slot_map: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slot_map", tuple(int(i) for i in self.slot_map))


class SurfaceType(str, Enum):
    POINT = "Point"
    INTERVAL = "Interval"
    CIRCLE = "Circle"
    SPHERE = "Sphere"
    TORUS = "Torus"
    OTHER = "Other"


@dataclass(frozen=True, eq=False)
class PolysimplicialComplex:
    """Immutable polysimplicial complex with explicit face incidences.

    ``rotation`` optionally fixes, for each vertex of a surface, the cyclic
    order of its incident edges.  When absent it is derived from a coherent
    orientation of the 2-cells.
    """

    cells: Mapping[str, Polysimplex]
    incidences: tuple[FaceIncidence, ...]
    rotation: Mapping[str, tuple[str, ...]] | None = None
    closed_surface: bool = False

    @classmethod
    def from_cells(
        cls,
        cells: Iterable[Polysimplex],
        rotation: Mapping[str, Sequence[str]] | None = None,
        closed_surface: bool = False,
    ) -> "PolysimplicialComplex":
        """Build a complex, deriving every face incidence from vertex structure."""
        cell_map = {c.id: c for c in cells}
        by_vset = {c.vertex_set: c for c in cell_map.values()}
        incidences = []
        for cell in cell_map.values():
            for _, verts, slot_map in cell.face_specs():
                face = by_vset.get(frozenset(verts))
                if face is None:
                    continue
                derived = derive_slot_map(face, cell)
                incidences.append(FaceIncidence(face.id, cell.id, derived if derived is not None else slot_map))
        rot = None if rotation is None else {v: tuple(es) for v, es in rotation.items()}
        return cls(cell_map, tuple(incidences), rot, closed_surface)

    def with_cells(
        self,
        remove: Iterable[str],
        add: Sequence[Polysimplex],
        rotation: Mapping[str, Sequence[str]] | None = None,
    ) -> "PolysimplicialComplex":
        """Drop ``remove`` and add ``add``, deriving incidences only where a new cell is the coface.

        Added cells must not be faces of surviving cells; local surgery such as
        cutting a square satisfies this and avoids rebuilding every incidence.
        """
        gone = set(remove)
        cell_map = {cid: c for cid, c in self.cells.items() if cid not in gone}
        cell_map.update((c.id, c) for c in add)
        by_vset = {c.vertex_set: c for c in cell_map.values()}
        incidences = [i for i in self.incidences if i.face not in gone and i.coface not in gone]
        for cell in add:
            for _, verts, slot_map in cell.face_specs():
                face = by_vset.get(frozenset(verts))
                if face is None:
                    continue
                derived = derive_slot_map(face, cell)
                incidences.append(FaceIncidence(face.id, cell.id, derived if derived is not None else slot_map))
        rot = None if rotation is None else {v: tuple(es) for v, es in rotation.items()}
        return PolysimplicialComplex(cell_map, tuple(incidences), rot, self.closed_surface)

    @classmethod
    def from_maximal(
        cls,
        top_cells: Iterable[tuple[Sequence[int], Sequence[str]]],
        closed_surface: bool = False,
    ) -> "PolysimplicialComplex":
        """Build the closure of ``(factors, vertices)`` cells under taking faces.

        Generated ids: vertices keep their names, other cells are named by
        their vertices joined with ``-`` in natural order.
        """
        found: dict[frozenset, Polysimplex] = {}

        def add(factors, verts):
            key = frozenset(verts)
            if key in found:
                return
            if not factors:
                found[key] = Polysimplex(verts[0], (), (verts[0],))
            else:
                found[key] = Polysimplex(cell_name(verts), tuple(factors), tuple(verts))

        for factors, verts in top_cells:
            top = Polysimplex("tmp", tuple(factors), tuple(verts))
            add(top.factors, top.vertices)
            for f, v, _ in top.face_specs():
                add(f, v)
        ordered = sorted(found.values(), key=lambda c: (c.dim, natural_key(c.id)))
        return cls.from_cells(ordered, closed_surface=closed_surface)

    # -- lookups -------------------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return max((c.dim for c in self.cells.values()), default=-1)

    def cells_of_dim(self, d: int) -> list[Polysimplex]:
        return self._by_dim.get(d, [])

    @cached_property
    def _by_dim(self) -> dict[int, list[Polysimplex]]:
        out: dict[int, list[Polysimplex]] = {}
        for c in self.cells.values():
            out.setdefault(c.dim, []).append(c)
        for d in out:
            out[d].sort(key=lambda c: natural_key(c.id))
        return out

    @property
    def vertices(self) -> list[str]:
        return [c.id for c in self.cells_of_dim(0)]

    @property
    def edges(self) -> list[Polysimplex]:
        return self.cells_of_dim(1)

    @property
    def faces2(self) -> list[Polysimplex]:
        return self.cells_of_dim(2)

    @property
    def triangles(self) -> list[Polysimplex]:
        return [c for c in self.faces2 if c.is_triangle]

    @property
    def squares(self) -> list[Polysimplex]:
        return [c for c in self.faces2 if c.is_square]

    @cached_property
    def slot_maps(self) -> dict[tuple[str, str], tuple[int, ...]]:
        return {(i.face, i.coface): i.slot_map for i in self.incidences}

    @cached_property
    def _cofaces(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {cid: [] for cid in self.cells}
        for inc in self.incidences:
            out.setdefault(inc.face, []).append(inc.coface)
        return out

    def cofaces(self, cell_id: str, dim: int | None = None) -> list[str]:
        ids = self._cofaces.get(cell_id, [])
        if dim is None:
            return list(ids)
        return [c for c in ids if c in self.cells and self.cells[c].dim == dim]

    @cached_property
    def edge_by_endpoints(self) -> dict[frozenset, str]:
        return {e.vertex_set: e.id for e in self.edges}

    def edge_between(self, a: str, b: str) -> str:
        return self.edge_by_endpoints[frozenset((a, b))]

    def edges_at(self, vertex: str) -> list[str]:
        return self.cofaces(vertex, 1)

    def degree(self, vertex: str) -> int:
        return len(self.edges_at(vertex))

    def other_end(self, edge: str, vertex: str) -> str:
        a, b = self.cells[edge].vertices
        return b if a == vertex else a

    def faces_at_edge(self, edge: str) -> list[str]:
        return self.cofaces(edge, 2)

    def graph(self) -> nx.Graph:
        """1-skeleton with edge ids stored under the ``id`` attribute."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(*e.vertices, id=e.id)
        return g

    def counts(self) -> dict[str, int]:
        return {
            "v": len(self.cells_of_dim(0)),
            "e": len(self.cells_of_dim(1)),
            "n_triangles": len(self.triangles),
            "n_squares": len(self.squares),
            "n_other_2cells": len(self.faces2) - len(self.triangles) - len(self.squares),
            "n_3cells": len(self.cells_of_dim(3)),
        }

    @cached_property
    def _orientation(self) -> dict[str, int] | None:
        return orientation(self)

    def replace(self, **changes) -> "PolysimplicialComplex":
        data = {
            "cells": self.cells,
            "incidences": self.incidences,
            "rotation": self.rotation,
            "closed_surface": self.closed_surface,
        }
        data.update(changes)
        return PolysimplicialComplex(**data)


def cell_name(vertices: Sequence[str]) -> str:
    return "-".join(sort_ids(vertices))


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    cell: str | None
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, cell: str | None, message: str) -> None:
        self.violations.append(Violation(code, cell, message))


def validate(cx: PolysimplicialComplex) -> ValidationReport:
    """Report every structural problem of ``cx``; an empty report means valid."""
    rep = ValidationReport(counts=cx.counts())
    cells = cx.cells

    for cid, cell in cells.items():
        if cid != cell.id:
            rep.add("id-mismatch", cid, f"cell stored under {cid!r} has id {cell.id!r}")
        if any(f < 1 for f in cell.factors):
            rep.add("bad-factor", cid, "factor dimensions must be >= 1")
            continue
        if cell.dim > MAX_STORED_DIM:
            rep.add("dim-too-large", cid, f"dimension {cell.dim} exceeds {MAX_STORED_DIM}")
        if len(cell.vertices) != math.prod(cell.shape):
            rep.add("vertex-count", cid, f"expected {math.prod(cell.shape)} vertices, got {len(cell.vertices)}")
            continue
        if len(set(cell.vertices)) != len(cell.vertices):
            rep.add("not-embedded", cid, "cell is glued to itself (repeated vertex)")
            continue
        if cell.dim == 0:
            if cell.vertices != (cid,):
                rep.add("vertex-self", cid, "a 0-cell must list itself as its only vertex")
        else:
            for v in cell.vertices:
                if v not in cells or cells[v].dim != 0:
                    rep.add("unknown-vertex", cid, f"vertex {v!r} is not a 0-cell")

    seen: dict[frozenset, str] = {}
    for cid, cell in cells.items():
        other = seen.setdefault(cell.vertex_set, cid)
        if other != cid:
            rep.add("duplicate-cell", cid, f"same vertex set as {other!r} (identified faces)")
    if not rep.ok:
        return rep

    by_vset = {c.vertex_set: c for c in cells.values()}
    recorded: dict[tuple[str, str], tuple[int, ...]] = {}
    for inc in cx.incidences:
        key = (inc.face, inc.coface)
        if inc.face not in cells or inc.coface not in cells:
            rep.add("unknown-cell", inc.coface, f"incidence {key} references a missing cell")
            continue
        if key in recorded:
            rep.add("duplicate-incidence", inc.coface, f"incidence {key} listed twice")
        recorded[key] = inc.slot_map
        face, coface = cells[inc.face], cells[inc.coface]
        derived = derive_slot_map(face, coface)
        if derived is None:
            rep.add("not-a-face", inc.coface, f"face not a face of coface: {inc.face!r} in {inc.coface!r}")
            continue
        if len(inc.slot_map) != len(face.factors):
            rep.add("slot-map-length", inc.coface, f"slot map of {inc.face!r} has wrong length")
        elif len(set(inc.slot_map)) != len(inc.slot_map):
            rep.add("slot-map-not-injective", inc.coface, f"slot map of {inc.face!r} is not injective")
        elif tuple(inc.slot_map) != derived:
            rep.add(
                "slot-map-inconsistent",
                inc.coface,
                f"slot map {list(inc.slot_map)} of {inc.face!r} disagrees with structure {list(derived)}",
            )

    for cell in cells.values():
        n_faces = 0
        for _, verts, _ in cell.face_specs():
            n_faces += 1
            face = by_vset.get(frozenset(verts))
            if face is None:
                rep.add("missing-face", cell.id, f"face on vertices {sort_ids(verts)} is absent")
            elif (face.id, cell.id) not in recorded:
                rep.add("missing-incidence", cell.id, f"no incidence recorded for face {face.id!r}")
        assert n_faces == expected_face_count(cell)

    # chains low < mid < top: composite slot map must equal the direct one
    faces_of: dict[str, list[str]] = {}
    for low, mid in recorded:
        faces_of.setdefault(mid, []).append(low)
    for (mid, top), outer in recorded.items():
        for low in faces_of.get(mid, []):
            direct = recorded.get((low, top))
            inner = recorded[(low, mid)]
            if direct is None or any(i >= len(outer) for i in inner):
                continue
            if tuple(outer[i] for i in inner) != direct:
                rep.add("slot-map-composition", top, f"slot maps do not compose along {low} < {mid} < {top}")

    if cx.rotation is not None:
        _check_rotation(cx, rep)
    if cx.closed_surface:
        for problem in closed_surface_problems(cx):
            rep.add("not-closed-surface", None, problem)
    return rep


def _check_rotation(cx: PolysimplicialComplex, rep: ValidationReport) -> None:
    for v in cx.vertices:
        order = cx.rotation.get(v)
        if order is None:
            rep.add("rotation-missing", v, "no rotation given for vertex")
            continue
        if sorted(order) != sorted(cx.edges_at(v)):
            rep.add("rotation-edges", v, "rotation does not list exactly the incident edges")
            continue
        for a, b in zip(order, order[1:] + order[:1]):
            shared = set(cx.faces_at_edge(a)) & set(cx.faces_at_edge(b))
            if not shared:
                rep.add("rotation-order", v, f"consecutive edges {a!r}, {b!r} share no 2-cell")


# -- topology ---------------------------------------------------------------


def euler_characteristic(cx: PolysimplicialComplex) -> int:
    return sum((-1) ** c.dim for c in cx.cells.values())


def vertex_link(cx: PolysimplicialComplex, v: str) -> nx.MultiGraph:
    """Link of a vertex in a 2-complex: incident edges joined through 2-cells."""
    link = nx.MultiGraph()
    link.add_nodes_from(cx.edges_at(v))
    for fid in cx.cofaces(v, 2):
        at_v = [e for e in cx.cofaces(v, 1) if fid in cx.faces_at_edge(e)]
        if len(at_v) == 2:
            link.add_edge(at_v[0], at_v[1], face=fid)
    return link


def closed_surface_problems(cx: PolysimplicialComplex) -> list[str]:
    problems = []
    if cx.dim != 2:
        return [f"dimension is {cx.dim}, not 2"]
    for e in cx.edges:
        n = len(cx.faces_at_edge(e.id))
        if n != 2:
            problems.append(f"edge {e.id} lies on {n} 2-cells")
    for v in cx.vertices:
        link = vertex_link(cx, v)
        if link.number_of_nodes() == 0:
            problems.append(f"vertex {v} is isolated")
            continue
        if any(d != 2 for _, d in link.degree()) or not nx.is_connected(link):
            problems.append(f"link of vertex {v} is not a single cycle")
    return problems


def orientation(cx: PolysimplicialComplex) -> dict[str, int] | None:
    """Coherent signs for the 2-cells' boundary cycles, or None if impossible.

    Two cells sharing an edge must traverse it in opposite directions.  Each
    connected piece is anchored at its first cell (natural id order), which
    gets sign +1.
    """
    def directed(fid: str, sign: int) -> set[tuple[str, str]]:
        cyc = cx.cells[fid].boundary_cycle()
        pairs = set(zip(cyc, cyc[1:] + cyc[:1]))
        return pairs if sign > 0 else {(b, a) for a, b in pairs}

    signs: dict[str, int] = {}
    for start in cx.faces2:
        if start.id in signs:
            continue
        signs[start.id] = 1
        stack = [start.id]
        while stack:
            fid = stack.pop()
            mine = directed(fid, signs[fid])
            for e in _edges_of(cx, fid):
                others = [g for g in cx.faces_at_edge(e) if g != fid]
                if len(others) != 1:
                    if len(others) > 1:
                        return None
                    continue
                g = others[0]
                a, b = cx.cells[e].vertices
                mine_dir = (a, b) if (a, b) in mine else (b, a)
                want = -1 if mine_dir in directed(g, 1) else 1
                if g in signs:
                    if signs[g] != want:
                        return None
                else:
                    signs[g] = want
                    stack.append(g)
    return signs


def _edges_of(cx: PolysimplicialComplex, fid: str) -> list[str]:
    cyc = cx.cells[fid].boundary_cycle()
    return [cx.edge_between(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])]


def is_orientable(cx: PolysimplicialComplex) -> bool:
    return orientation(cx) is not None


def oriented_boundary(cx: PolysimplicialComplex, fid: str, signs: Mapping[str, int]) -> list[tuple[str, str]]:
    cyc = list(cx.cells[fid].boundary_cycle())
    if signs[fid] < 0:
        cyc.reverse()
    return list(zip(cyc, cyc[1:] + cyc[:1]))


def rotation_at(cx: PolysimplicialComplex, v: str) -> tuple[str, ...]:
    """Cyclic order of edges at ``v``, from the stored rotation or derived.

    Derivation walks around ``v`` through the coherently oriented 2-cells; the
    order starts at the first incident edge in natural id order.
    """
    if cx.rotation is not None and v in cx.rotation:
        return tuple(cx.rotation[v])
    signs = _cached_orientation(cx)
    if signs is None:
        raise ValueError("complex is not orientable; a rotation system must be supplied")
    succ: dict[str, str] = {}
    for fid in cx.cofaces(v, 2):
        bnd = oriented_boundary(cx, fid, signs)
        incoming = next(cx.edge_between(a, b) for a, b in bnd if b == v)
        outgoing = next(cx.edge_between(a, b) for a, b in bnd if a == v)
        succ[incoming] = outgoing
    edges = sort_ids(cx.edges_at(v))
    if not edges:
        return ()
    order = [edges[0]]
    while True:
        nxt = succ.get(order[-1])
        if nxt is None:
            raise ValueError(f"link of vertex {v} is not a closed cycle")
        if nxt == order[0]:
            break
        order.append(nxt)
        if len(order) > len(edges):
            raise ValueError(f"link of vertex {v} is not a single cycle")
    if len(order) != len(edges):
        raise ValueError(f"link of vertex {v} is not a single cycle")
    return tuple(order)


def _cached_orientation(cx: PolysimplicialComplex) -> dict[str, int] | None:
    return cx._orientation


def classify(cx: PolysimplicialComplex) -> SurfaceType:
    if cx.dim > 2:
        raise ValueError("classification needs a complex of dimension <= 2")
    if cx.dim <= 0:
        return SurfaceType.POINT if len(cx.vertices) == 1 else SurfaceType.OTHER
    g = cx.graph()
    if not nx.is_connected(g):
        return SurfaceType.OTHER
    if cx.dim == 1:
        degrees = sorted(d for _, d in g.degree())
        if all(d == 2 for d in degrees):
            return SurfaceType.CIRCLE
        if degrees[:2] == [1, 1] and all(d == 2 for d in degrees[2:]):
            return SurfaceType.INTERVAL
        return SurfaceType.OTHER
    if closed_surface_problems(cx) or not is_orientable(cx):
        return SurfaceType.OTHER
    chi = euler_characteristic(cx)
    if chi == 2:
        return SurfaceType.SPHERE
    if chi == 0:
        return SurfaceType.TORUS
    return SurfaceType.OTHER


def euler_relations_hold(v: int, e: int, n_triangles: int, n_squares: int, chi: int = 2) -> bool:
    return 3 * n_triangles + 4 * n_squares == 2 * e and v - e + n_triangles + n_squares == chi


def euler_relations_check(cx: PolysimplicialComplex, chi: int = 2) -> bool:
    """Edge/face incidence count and Euler relation for a triangle-square surface."""
    c = cx.counts()
    if c["n_other_2cells"] or c["n_3cells"]:
        return False
    return euler_relations_hold(c["v"], c["e"], c["n_triangles"], c["n_squares"], chi)
