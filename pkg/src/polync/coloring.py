"""Colorings of polysimplicial complexes by their simplex factors.

Every factor of every cell is a *slot*.  Face incidences identify a slot of the
face with a slot of the coface; the connected classes of that identification
are the forced classes.  A complex is colorable exactly when no cell has two
slots in the same forced class, and the forced classes themselves then form
the finest (canonical) coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import networkx as nx

from polync.complex import PolysimplicialComplex, natural_key, sort_ids


class ColoringError(ValueError):
    pass


class FactorSlot(NamedTuple):
    cell: str
    factor: int


def all_slots(cx: PolysimplicialComplex) -> list[FactorSlot]:
    return [
        FactorSlot(c.id, i)
        for c in sorted(cx.cells.values(), key=lambda c: (c.dim, natural_key(c.id)))
        for i in range(len(c.factors))
    ]


@dataclass(frozen=True)
class Coloring:
    colors: tuple[str, ...]
    assignment: Mapping[FactorSlot, str]

    def color(self, cell: str, factor: int = 0) -> str:
        return self.assignment[FactorSlot(cell, factor)]

    def cell_colors(self, cx: PolysimplicialComplex, cell: str) -> tuple[str, ...]:
        return tuple(self.color(cell, i) for i in range(len(cx.cells[cell].factors)))

    def merge(self, keep: str, drop: str) -> "Coloring":
        """Relabel every ``drop`` slot as ``keep``."""
        if keep not in self.colors or drop not in self.colors:
            raise ColoringError(f"unknown color in merge: {keep!r}, {drop!r}")
        colors = tuple(c for c in self.colors if c != drop)
        return Coloring(colors, {s: keep if c == drop else c for s, c in self.assignment.items()})


@dataclass(frozen=True)
class Colorable:
    coloring: Coloring
    classes: tuple[tuple[FactorSlot, ...], ...]

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class Obstruction:
    cell: str
    slots: tuple[FactorSlot, FactorSlot]
    trace: tuple[tuple[str, str, int, int], ...]
    """Incidences ``(face, coface, face_factor, coface_factor)`` merging the two slots."""

    @property
    def ok(self) -> bool:
        return False


def slot_graph(cx: PolysimplicialComplex) -> nx.Graph:
    """Slots joined whenever an incidence identifies them."""
    g = nx.Graph()
    g.add_nodes_from(all_slots(cx))
    for inc in cx.incidences:
        for k, target in enumerate(inc.slot_map):
            g.add_edge(
                FactorSlot(inc.face, k),
                FactorSlot(inc.coface, target),
                incidence=(inc.face, inc.coface, k, target),
            )
    return g


def forced_classes(cx: PolysimplicialComplex) -> list[tuple[FactorSlot, ...]]:
    """Finest partition of slots compatible with all face incidences.

    Classes are sorted internally and ordered by their least slot, so the
    result does not depend on the order in which incidences are stored.
    """
    order = {s: i for i, s in enumerate(all_slots(cx))}
    classes = [tuple(sorted(comp, key=order.__getitem__)) for comp in nx.connected_components(slot_graph(cx))]
    classes.sort(key=lambda cls: order[cls[0]])
    return classes


def is_colorable(cx: PolysimplicialComplex) -> Colorable | Obstruction:
    graph = slot_graph(cx)
    classes = forced_classes(cx)
    class_of = {s: i for i, cls in enumerate(classes) for s in cls}
    for cell in sorted(cx.cells.values(), key=lambda c: (c.dim, natural_key(c.id))):
        seen: dict[int, int] = {}
        for k in range(len(cell.factors)):
            cls = class_of[FactorSlot(cell.id, k)]
            if cls in seen:
                a, b = FactorSlot(cell.id, seen[cls]), FactorSlot(cell.id, k)
                path = nx.shortest_path(graph, a, b)
                trace = tuple(graph.edges[u, v]["incidence"] for u, v in zip(path, path[1:]))
                return Obstruction(cell.id, (a, b), trace)
            seen[cls] = k
    labels = tuple(f"c{i}" for i in range(len(classes)))
    assignment = {s: labels[class_of[s]] for s in class_of}
    return Colorable(Coloring(labels, assignment), tuple(classes))


def canonical_coloring(cx: PolysimplicialComplex) -> Coloring:
    result = is_colorable(cx)
    if isinstance(result, Obstruction):
        raise ColoringError(f"complex is not colorable: obstruction at cell {result.cell!r}")
    return result.coloring


def check_coloring(cx: PolysimplicialComplex, coloring: Coloring) -> bool:
    """True iff the coloring is injective on every cell and compatible with faces."""
    for slot in all_slots(cx):
        if slot not in coloring.assignment:
            raise ColoringError(f"no color assigned to slot {tuple(slot)}")
        if coloring.assignment[slot] not in coloring.colors:
            raise ColoringError(f"slot {tuple(slot)} has undeclared color {coloring.assignment[slot]!r}")
    for cell in cx.cells.values():
        used = coloring.cell_colors(cx, cell.id)
        if len(set(used)) != len(used):
            return False
    for inc in cx.incidences:
        for k, target in enumerate(inc.slot_map):
            if coloring.color(inc.face, k) != coloring.color(inc.coface, target):
                return False
    return True


def conflict_graph(cx: PolysimplicialComplex) -> nx.Graph:
    """Forced classes as nodes; an edge whenever two classes meet in one cell.

    Proper colorings of this graph are exactly the valid colorings of ``cx``.
    """
    classes = forced_classes(cx)
    class_of = {s: i for i, cls in enumerate(classes) for s in cls}
    g = nx.Graph()
    g.add_nodes_from(range(len(classes)))
    for cell in cx.cells.values():
        ids = sorted({class_of[FactorSlot(cell.id, k)] for k in range(len(cell.factors))})
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                g.add_edge(a, b)
    return g


def coloring_from_edge_colors(
    cx: PolysimplicialComplex, edge_colors: Mapping[str, str], colors: Sequence[str] | None = None
) -> Coloring:
    """Extend an edge coloring to every slot through the incidence maps.

    Each slot of a higher cell takes the color of an edge lying along it.
    """
    assignment: dict[FactorSlot, str] = {}
    for e in cx.edges:
        assignment[FactorSlot(e.id, 0)] = edge_colors[e.id]
    for inc in cx.incidences:
        if cx.cells[inc.face].dim == 1:
            assignment.setdefault(FactorSlot(inc.coface, inc.slot_map[0]), edge_colors[inc.face])
    if colors is None:
        colors = sort_ids(set(edge_colors.values()))
    return Coloring(tuple(colors), assignment)


def edge_color(coloring: Coloring, edge: str) -> str:
    return coloring.color(edge, 0)


def triangle_color(coloring: Coloring, cell: str) -> str:
    return coloring.color(cell, 0)


def square_colors(coloring: Coloring, cell: str) -> tuple[str, str]:
    return coloring.color(cell, 0), coloring.color(cell, 1)
