"""Bundled example complexes with their labels, colorings and component models.

Vertex numbering: polyhedra name vertices ``v0, v1, ...`` in the order of
their coordinate lists below.  Grids name points ``t{i}_{j}``; glued strips
name bottom points ``b{k}`` and other lattice points ``p{x}_{y}``.
"""

from __future__ import annotations

import inspect
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from networkx.utils import UnionFind
from scipy.spatial import ConvexHull

from polync.coloring import Coloring, canonical_coloring, coloring_from_edge_colors, forced_classes, is_colorable
from polync.complex import PolysimplicialComplex, sort_ids, validate
from polync.geometry import EdgeLabeling
from polync.lattice import P1XP1_SQUARE, P2_TRIANGLE, ComponentLattice, attach_component, build_component


class GeneratorError(ValueError):
    pass


@dataclass
class Example:
    name: str
    complex: PolysimplicialComplex
    labels: EdgeLabeling | None = None
    coloring: Coloring | None = None
    component_models: Mapping[str, tuple[str, list]] = field(default_factory=dict)

    def components(self) -> dict[str, ComponentLattice]:
        """Attach each vertex's component model, matching the labels."""
        if self.labels is None or not self.component_models:
            raise GeneratorError(f"example {self.name!r} has no component models")
        return {
            v: attach_component(self.complex, self.labels, v, build_component(kind, sched))
            for v, (kind, sched) in self.component_models.items()
        }


# -- polyhedra --------------------------------------------------------------

PHI = (1 + math.sqrt(5)) / 2
RHOMBI = 1 + math.sqrt(2)


def _cyclic_perms(p):
    x, y, z = p
    return [(x, y, z), (z, x, y), (y, z, x)]


def _signed(p):
    pts = []
    for signs in itertools.product((1, -1), repeat=3):
        q = tuple(s * c for s, c in zip(signs, p))
        if q not in pts:
            pts.append(q)
    return pts


TETRAHEDRON = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
OCTAHEDRON = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
CUBE = [p for p in itertools.product((-1, 1), repeat=3)]
ICOSAHEDRON = [q for p in _cyclic_perms((0, 1, PHI)) for q in _signed(p)]
RHOMBICUBOCTAHEDRON = [q for p in _cyclic_perms((1, 1, RHOMBI)) for q in _signed(p)]


def hull_faces(points: Sequence[Sequence[float]]) -> list[list[int]]:
    """Faces of the convex hull as vertex-index cycles, counterclockwise from outside."""
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    planes: list[tuple[np.ndarray, set[int]]] = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        for plane, members in planes:
            if np.allclose(plane, eq, atol=1e-9):
                members.update(int(i) for i in simplex)
                break
        else:
            planes.append((eq, {int(i) for i in simplex}))
    faces = []
    for eq, members in planes:
        normal = eq[:3]
        idx = sorted(members)
        centre = pts[idx].mean(axis=0)
        u = pts[idx[0]] - centre
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)
        ang = {i: math.atan2(float((pts[i] - centre) @ w), float((pts[i] - centre) @ u)) for i in idx}
        cyc = sorted(idx, key=ang.__getitem__)
        start = cyc.index(min(cyc))
        faces.append(cyc[start:] + cyc[:start])
    faces.sort()
    return faces


def polyhedron(points: Sequence[Sequence[float]]) -> PolysimplicialComplex:
    """Boundary complex of a convex polyhedron with triangle and square faces."""
    names = [f"v{i}" for i in range(len(points))]
    top = []
    for cyc in hull_faces(points):
        vs = [names[i] for i in cyc]
        if len(vs) == 3:
            top.append(((2,), vs))
        elif len(vs) == 4:
            a, b, c, d = vs
            top.append(((1, 1), [a, b, d, c]))
        else:
            raise GeneratorError(f"face with {len(vs)} sides is not a polysimplex")
    return PolysimplicialComplex.from_maximal(top, closed_surface=True)


def _axis_colors(cx: PolysimplicialComplex, points, names=("yellow", "green", "blue"), other="red") -> dict[str, str]:
    coords = {f"v{i}": p for i, p in enumerate(points)}
    out = {}
    for e in cx.edges:
        a, b = (coords[v] for v in e.vertices)
        moving = [i for i in range(3) if not math.isclose(a[i], b[i], abs_tol=1e-9)]
        out[e.id] = names[moving[0]] if len(moving) == 1 else other
    return out


def _single_color(cx: PolysimplicialComplex, name: str = "s") -> Coloring:
    return coloring_from_edge_colors(cx, {e.id: name for e in cx.edges}, [name])


def _uniform_models(cx: PolysimplicialComplex, model: tuple[str, list]) -> dict[str, tuple[str, list]]:
    return {v: model for v in cx.vertices}


def tetrahedron() -> Example:
    cx = polyhedron(TETRAHEDRON)
    sched = [("interior", i) for i in (0, 0, 1, 1, 2, 2)]
    return Example("tetrahedron", cx, EdgeLabeling.constant(cx, -1), _single_color(cx),
                   _uniform_models(cx, (P2_TRIANGLE, sched)))


def octahedron() -> Example:
    cx = polyhedron(OCTAHEDRON)
    sched = [("interior", i) for i in range(4)]
    return Example("octahedron", cx, EdgeLabeling.constant(cx, -1), _single_color(cx),
                   _uniform_models(cx, (P1XP1_SQUARE, sched)))


def icosahedron() -> Example:
    cx = polyhedron(ICOSAHEDRON)
    # corner blow-up of the toric square gives (-1,-1,-1,0,0); then one point on each 0-curve
    sched = [("corner", 0), ("interior", 3), ("interior", 4)]
    return Example("icosahedron", cx, EdgeLabeling.constant(cx, -1), _single_color(cx),
                   _uniform_models(cx, (P1XP1_SQUARE, sched)))


def cube() -> Example:
    cx = polyhedron(CUBE)
    colors = _axis_colors(cx, CUBE)
    sched = [("interior", i) for i in range(3)]
    return Example("cube", cx, EdgeLabeling.constant(cx, 0),
                   coloring_from_edge_colors(cx, colors, ["yellow", "green", "blue"]),
                   _uniform_models(cx, (P2_TRIANGLE, sched)))


def rhombicuboctahedron() -> Example:
    """Triangles and the edges parallel to them are red; axis-parallel edges
    are yellow, green, blue for the x, y, z axes.

    Labels: every square/square edge is (0, 0).  Going around each triangle,
    each edge gets -1 at its tail and 0 at its head, so every vertex sees
    exactly one -1 in its cycle.
    """
    cx = polyhedron(RHOMBICUBOCTAHEDRON)
    colors = _axis_colors(cx, RHOMBICUBOCTAHEDRON)
    values = {(e.id, v): 0 for e in cx.edges for v in e.vertices}
    for t in cx.triangles:
        cyc = t.boundary_cycle()
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            values[(cx.edge_between(a, b), a)] = -1
    coloring = coloring_from_edge_colors(cx, colors, ["red", "yellow", "green", "blue"])
    return Example("rhombicuboctahedron", cx, EdgeLabeling(values), coloring,
                   _uniform_models(cx, (P1XP1_SQUARE, [("interior", 0)])))


def prism() -> Example:
    """A single triangular prism Δ1 × Δ2 with all of its faces."""
    cx = PolysimplicialComplex.from_maximal([((1, 2), [f"v{i}" for i in range(6)])])
    return Example("prism", cx, coloring=canonical_coloring(cx))


def fig5_colorable() -> Example:
    """Two squares sharing an edge, with a triangle on the far side: three colors."""
    top = [
        ((1, 1), ["a", "b", "d", "e"]),
        ((1, 1), ["b", "c", "e", "f"]),
        ((2,), ["c", "f", "g"]),
    ]
    cx = PolysimplicialComplex.from_maximal(top)
    names = {}
    for cls_name, cls in zip(("red", "blue", "green"), _edge_classes(cx)):
        for e in cls:
            names[e] = cls_name
    return Example("fig5-colorable", cx, coloring=coloring_from_edge_colors(cx, names, ["red", "blue", "green"]))


def fig5_obstruction() -> Example:
    """A square with a chain of two triangles around its corner ``b``.

    The chain joins side ``ab`` to side ``bc``, forcing both factors of the
    square into one color.
    """
    top = [
        ((1, 1), ["a", "b", "d", "c"]),
        ((2,), ["a", "b", "x"]),
        ((2,), ["x", "b", "c"]),
    ]
    return Example("fig5-obstruction", PolysimplicialComplex.from_maximal(top))


def _edge_classes(cx: PolysimplicialComplex) -> list[list[str]]:
    out = []
    for cls in forced_classes(cx):
        edges = [s.cell for s in cls if cx.cells[s.cell].dim == 1]
        if edges:
            out.append(edges)
    return out


def torus_grid(n: int = 3, m: int = 3) -> Example:
    """``n × m`` square grid with opposite sides glued."""
    if n < 3 or m < 3:
        raise GeneratorError("torus grid needs n, m >= 3 to stay embedded")
    name = lambda i, j: f"t{i % n}_{j % m}"  # noqa: E731
    top = [((1, 1), [name(i, j), name(i, j + 1), name(i + 1, j), name(i + 1, j + 1)]) for i in range(n) for j in range(m)]
    cx = PolysimplicialComplex.from_maximal(top, closed_surface=True)
    return Example("torus-grid", cx, EdgeLabeling.constant(cx, 0), canonical_coloring(cx))


# -- glued strips -----------------------------------------------------------


def strip_heights(shear_schedule: Sequence[int], height: int) -> list[int]:
    ys = [height]
    for m in shear_schedule:
        ys.append(ys[-1] + int(m))
    return ys


def strip_glued(
    bottom_segments: int,
    shear_schedule: Sequence[int] | None = None,
    height: int = 0,
    band: bool = False,
    offset: int = 0,
    flip: bool = False,
) -> PolysimplicialComplex:
    """Lattice region above ``n`` unit bottom segments, with paired edges glued.

    Column ``k`` spans ``x ∈ [k-1, k]`` and is bounded above by the segment
    from ``(k-1, y_{k-1})`` to ``(k, y_k)``, where ``y_0 = height`` and the
    ``shear_schedule`` lists the slopes ``y_k - y_{k-1}``.  Each column holds
    unit squares up to the lower of its two heights and a fan of unimodular
    triangles above them.

    With a schedule, bottom segment ``k`` is glued to top segment ``k +
    offset`` (mod n), reversed if ``flip``.  Without one the top stays free.
    ``band`` glues the left side to the right side.
    """
    n = int(bottom_segments)
    if n < 1:
        raise GeneratorError("need at least one bottom segment")
    glue_tb = shear_schedule is not None
    slopes = [0] * n if shear_schedule is None else [int(m) for m in shear_schedule]
    if len(slopes) != n:
        raise GeneratorError(f"{n} bottom segments but {len(slopes)} top segments")
    ys = strip_heights(slopes, height)
    if min(ys) < 0:
        raise GeneratorError("top boundary dips below the bottom edge")
    if band and ys[0] != ys[n]:
        raise GeneratorError(f"band gluing needs equal side lengths, got {ys[0]} and {ys[n]}")
    if (offset or flip) and not (glue_tb and (band or not offset)):
        raise GeneratorError("offset needs a band; flip needs a top gluing")

    top_cells: list[tuple[tuple[int, ...], list[tuple[int, int]]]] = []
    for k in range(1, n + 1):
        lo, hi_l, hi_r = min(ys[k - 1], ys[k]), ys[k - 1], ys[k]
        for j in range(lo):
            top_cells.append(((1, 1), [(k - 1, j), (k - 1, j + 1), (k, j), (k, j + 1)]))
        if hi_r > hi_l:
            apex = (k - 1, hi_l)
            for j in range(hi_l, hi_r):
                top_cells.append(((2,), [apex, (k, j), (k, j + 1)]))
        elif hi_l > hi_r:
            apex = (k, hi_r)
            for j in range(hi_r, hi_l):
                top_cells.append(((2,), [apex, (k - 1, j + 1), (k - 1, j)]))

    uf = UnionFind()
    for _, pts in top_cells:
        for p in pts:
            uf[p]
    if glue_tb:
        for k in range(1, n + 1):
            bottom = [(k - 1, 0), (k, 0)]
            t = (k - 1 + offset) % n + 1 if not flip else n - k + 1
            top = [(t - 1, ys[t - 1]), (t, ys[t])]
            if flip:
                top.reverse()
            uf.union(bottom[0], top[0])
            uf.union(bottom[1], top[1])
    if band:
        for j in range(ys[0] + 1):
            uf.union((0, j), (n, j))
    if not top_cells:
        raise GeneratorError("strip has no cells")

    names: dict = {}
    for group in uf.to_sets():
        bottoms = sorted(p[0] for p in group if p[1] == 0)
        label = f"b{bottoms[0]}" if bottoms else "p{}_{}".format(*min(group))
        for p in group:
            names[p] = label
    cells = []
    seen = set()
    for factors, pts in top_cells:
        vs = [names[p] for p in pts]
        if len(set(vs)) != len(vs):
            raise GeneratorError(f"gluing folds a cell onto itself at {sort_ids(vs)}")
        key = frozenset(vs)
        if key in seen:
            raise GeneratorError(f"gluing identifies two cells on {sort_ids(vs)}")
        seen.add(key)
        cells.append((factors, vs))
    closed = glue_tb and (band or (ys[0] == 0 and ys[n] == 0))
    cx = PolysimplicialComplex.from_maximal(cells, closed_surface=closed)
    report = validate(cx)
    if not report.ok:
        raise GeneratorError(f"glued strip is not a valid complex: {report.violations[0].message}")
    return cx


RAINBOW_SEGMENTS = 19


def rainbow_schedule() -> list[int]:
    return [10 - n for n in range(1, RAINBOW_SEGMENTS + 1)]


def rainbow() -> Example:
    """Nineteen bottom segments glued to top segments of slopes 9, 8, ..., -9.

    Color ``s`` (1..10) is the forced class through the bottom edges of
    columns ``s`` and ``20 - s``.
    """
    cx = strip_glued(RAINBOW_SEGMENTS, rainbow_schedule())
    edge_names: dict[str, str] = {}
    for cls in _edge_classes(cx):
        bottom_cols = [
            k for k in range(1, RAINBOW_SEGMENTS + 1)
            if frozenset((f"b{k - 1}", f"b{k}")) in {cx.cells[e].vertex_set for e in cls}
        ]
        if not bottom_cols:
            raise GeneratorError("a color class meets no bottom segment")
        name = str(min(bottom_cols[0], RAINBOW_SEGMENTS + 1 - bottom_cols[0]))
        for e in cls:
            edge_names[e] = name
    colors = [str(s) for s in range(1, 11)]
    return Example("rainbow", cx, coloring=coloring_from_edge_colors(cx, edge_names, colors))


def strip_example(
    bottom_segments: int,
    shear_schedule: Sequence[int] | None = None,
    height: int = 0,
    band: bool = False,
    offset: int = 0,
    flip: bool = False,
) -> Example:
    cx = strip_glued(bottom_segments, shear_schedule, height, band, offset, flip)
    return Example("strip-glued", cx, coloring=canonical_coloring(cx) if is_colorable(cx).ok else None)


GENERATORS: dict[str, Callable[..., Example]] = {
    "tetrahedron": tetrahedron,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "cube": cube,
    "prism": prism,
    "rhombicuboctahedron": rhombicuboctahedron,
    "fig5-colorable": fig5_colorable,
    "fig5-obstruction": fig5_obstruction,
    "torus-grid": torus_grid,
    "strip-glued": strip_example,
    "rainbow": rainbow,
}

SPHERES = ("tetrahedron", "octahedron", "icosahedron", "cube", "rhombicuboctahedron", "rainbow")


def generate(name: str, **params) -> Example:
    try:
        make = GENERATORS[name]
    except KeyError:
        raise GeneratorError(f"unknown example {name!r}; choose from {sorted(GENERATORS)}") from None
    try:
        inspect.signature(make).bind(**params)
    except TypeError as exc:
        raise GeneratorError(f"bad parameters for {name!r}: {exc}") from None
    return make(**params)
