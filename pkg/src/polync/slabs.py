"""Slabs of each color and the naive parameter count."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from polync.coloring import Coloring, ColoringError, edge_color, triangle_color
from polync.complex import PolysimplicialComplex, natural_key, sort_ids
from polync.geometry import TOTAL_CHARGE


@dataclass(frozen=True)
class SlabDecomposition:
    color: str
    slabs: tuple[frozenset[str], ...]

    @property
    def n(self) -> int:
        return len(self.slabs)

    def slab_of(self, vertex: str) -> int:
        return next(i for i, s in enumerate(self.slabs) if vertex in s)


def slabs(cx: PolysimplicialComplex, coloring: Coloring, color: str) -> SlabDecomposition:
    """Components of the 1-skeleton once every edge of ``color`` is removed.

    This is the dual picture of removing the color-``color`` curves from the
    intersection complex: components on either side of a surviving double
    curve are merged.
    """
    if color not in coloring.colors:
        raise ColoringError(f"unknown color {color!r}")
    g = nx.Graph()
    g.add_nodes_from(cx.vertices)
    g.add_edges_from(e.vertices for e in cx.edges if edge_color(coloring, e.id) != color)
    parts = [frozenset(c) for c in nx.connected_components(g)]
    parts.sort(key=lambda s: natural_key(sort_ids(s)[0]))
    return SlabDecomposition(color, tuple(parts))


def slab_boundary(
    cx: PolysimplicialComplex, coloring: Coloring, color: str, slab: frozenset[str]
) -> list[tuple[str, str, str]]:
    """Color-``color`` edges leaving ``slab``, as ``(edge, inside, outside)``."""
    out = []
    for e in cx.edges:
        if edge_color(coloring, e.id) != color:
            continue
        a, b = e.vertices
        if a in slab and b not in slab:
            out.append((e.id, a, b))
        elif b in slab and a not in slab:
            out.append((e.id, b, a))
    return out


def triangle_counts(cx: PolysimplicialComplex, coloring: Coloring) -> dict[str, int]:
    counts = {s: 0 for s in coloring.colors}
    for t in cx.triangles:
        counts[triangle_color(coloring, t.id)] += 1
    return counts


@dataclass(frozen=True)
class SlabIdentity:
    color: str
    n_slabs: int
    n_triangles: int
    holds: bool


def slab_count_identity(cx: PolysimplicialComplex, coloring: Coloring) -> dict[str, SlabIdentity]:
    """Check ``n_s = 2 + n_{△,s}/2`` for every color; odd triangle counts fail."""
    tri = triangle_counts(cx, coloring)
    out = {}
    for s in coloring.colors:
        n_s = slabs(cx, coloring, s).n
        holds = tri[s] % 2 == 0 and n_s == 2 + tri[s] // 2
        out[s] = SlabIdentity(s, n_s, tri[s], holds)
    return out


@dataclass(frozen=True)
class ParameterCount:
    structural: int
    expected: int
    slab_counts: dict[str, int]

    @property
    def agree(self) -> bool:
        return self.structural == self.expected


def parameter_count(cx: PolysimplicialComplex, coloring: Coloring) -> ParameterCount:
    """``e + 24 − 2v − Σ_s (n_s − 1)`` next to the closed form ``20 − |S|``."""
    counts = {s: slabs(cx, coloring, s).n for s in coloring.colors}
    v, e = len(cx.vertices), len(cx.edges)
    structural = e + TOTAL_CHARGE - 2 * v - sum(n - 1 for n in counts.values())
    return ParameterCount(structural, 20 - len(coloring.colors), counts)
