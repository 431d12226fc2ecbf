"""Picard lattices of components, numerically Cartier classes, and slab classes."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from polync.coloring import Coloring
from polync.complex import PolysimplicialComplex, rotation_at, sort_ids
from polync.geometry import EdgeLabeling
from polync.linalg import integer_kernel, matvec, solve_in_basis
from polync.slabs import slab_boundary, slabs

Vector = tuple[int, ...]

P2_TRIANGLE = "P2-triangle"
P1XP1_SQUARE = "P1xP1-square"


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Blowup:
    """Blow-up on the boundary cycle.

    ``interior`` blows up a general point of curve ``curve``; ``corner``
    blows up the node where curve ``curve`` meets the next curve in the cycle,
    inserting the exceptional curve between them.
    """

    type: str
    curve: int

    def __post_init__(self) -> None:
        if self.type not in ("interior", "corner"):
            raise LatticeError(f"unknown blow-up type {self.type!r}")


@dataclass(frozen=True)
class ComponentLattice:
    gram: tuple[tuple[int, ...], ...]
    cycle: tuple[Vector, ...]
    basis_names: tuple[str, ...] = ()
    vertex: str | None = None
    edges: tuple[str, ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def k(self) -> int:
        return len(self.cycle)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(a, matvec(self.gram, b)))

    def self_intersections(self) -> tuple[int, ...]:
        return tuple(self.pair(c, c) for c in self.cycle)

    @property
    def curves(self) -> dict[str, Vector]:
        if self.edges is None:
            raise LatticeError("component is not attached to a vertex")
        return dict(zip(self.edges, self.cycle))

    def attach(self, vertex: str, edges: Sequence[str]) -> "ComponentLattice":
        if len(edges) != self.k:
            raise LatticeError(f"component has {self.k} boundary curves, vertex {vertex!r} has {len(edges)} edges")
        return ComponentLattice(self.gram, self.cycle, self.basis_names, vertex, tuple(edges))

    def problems(self) -> list[str]:
        """Consistency of the Gram matrix with an anticanonical cycle."""
        out = []
        n = self.rank
        if any(len(r) != n for r in self.gram) or any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(i)):
            out.append("Gram matrix is not symmetric")
            return out
        if any(len(c) != n for c in self.cycle):
            out.append("curve class has the wrong length")
            return out
        k = self.k
        for i in range(k):
            for j in range(i + 1, k):
                adjacent = (j - i) % k in (1, k - 1)
                want = (2 if k == 2 else 1) if adjacent else 0
                got = self.pair(self.cycle[i], self.cycle[j])
                if got != want:
                    out.append(f"boundary curves {i} and {j} meet {got} times, expected {want}")
        # Noether: rank Pic = 10 - K^2 with K^2 = sum(d) + 2k
        if k >= 2 and n != 10 - sum(self.self_intersections()) - 2 * k:
            out.append("rank disagrees with Noether's formula for the boundary cycle")
        return out

    def blow_up(self, b: Blowup) -> "ComponentLattice":
        k = self.k
        if not 0 <= b.curve < k:
            raise LatticeError(f"blow-up references curve {b.curve}, but the boundary has {k} curves")
        gram = [list(r) + [0] for r in self.gram] + [[0] * self.rank + [-1]]
        cycle = [list(c) + [0] for c in self.cycle]
        e = [0] * self.rank + [1]
        name = f"E{sum(1 for x in self.basis_names if x.startswith('E')) + 1}"
        edges = list(self.edges) if self.edges is not None else None
        cycle[b.curve][-1] -= 1
        if b.type == "corner":
            nxt = (b.curve + 1) % k
            cycle[nxt][-1] -= 1
            cycle.insert(b.curve + 1, e)
            if edges is not None:
                edges.insert(b.curve + 1, None)
        return ComponentLattice(
            tuple(tuple(r) for r in gram),
            tuple(tuple(c) for c in cycle),
            self.basis_names + (name,),
            self.vertex,
            tuple(edges) if edges is not None else None,
        )


def _as_blowup(item) -> Blowup:
    if isinstance(item, Blowup):
        return item
    if isinstance(item, Mapping):
        return Blowup(str(item["type"]), int(item["curve"]))
    kind, curve = item
    return Blowup(str(kind), int(curve))


def build_component(kind: str, schedule: Iterable = ()) -> ComponentLattice:
    """Toric model with boundary blow-ups applied in order."""
    if kind == P2_TRIANGLE:
        comp = ComponentLattice(((1,),), ((1,), (1,), (1,)), ("H",))
    elif kind == P1XP1_SQUARE:
        f1, f2 = (1, 0), (0, 1)
        comp = ComponentLattice(((0, 1), (1, 0)), (f1, f2, f1, f2), ("F1", "F2"))
    else:
        raise LatticeError(f"unknown component kind {kind!r}")
    for item in schedule:
        comp = comp.blow_up(_as_blowup(item))
    return comp


def blow_up_corner(comp: ComponentLattice, edge_a: str, edge_b: str, new_edge: str) -> ComponentLattice:
    """Blow up the node between two cyclically adjacent boundary curves."""
    if comp.edges is None:
        raise LatticeError("component is not attached")
    edges = list(comp.edges)
    i, j = edges.index(edge_a), edges.index(edge_b)
    k = len(edges)
    if (i + 1) % k == j:
        first = i
    elif (j + 1) % k == i:
        first = j
    else:
        raise LatticeError(f"edges {edge_a!r} and {edge_b!r} are not adjacent on the boundary cycle")
    out = comp.blow_up(Blowup("corner", first))
    return ComponentLattice(
        out.gram, out.cycle, out.basis_names, out.vertex, tuple(new_edge if e is None else e for e in out.edges)
    )


def attach_component(
    cx: PolysimplicialComplex,
    labels: EdgeLabeling,
    vertex: str,
    model: ComponentLattice,
    edges: Sequence[str] | None = None,
) -> ComponentLattice:
    """Place a boundary model on ``vertex`` so self-intersections match the labels.

    Without explicit ``edges`` the rotation at the vertex is tried in every
    cyclic shift, forwards then backwards; the first match wins.
    """
    if edges is not None:
        comp = model.attach(vertex, edges)
        _check_labels(comp, labels)
        return comp
    order = list(rotation_at(cx, vertex))
    want = model.self_intersections()
    k = len(order)
    for seq in (order, order[::-1]):
        for shift in range(k):
            cand = seq[shift:] + seq[:shift]
            if tuple(labels.d(e, vertex) for e in cand) == want:
                return model.attach(vertex, cand)
    raise LatticeError(f"no placement of the boundary cycle {want} matches the labels at {vertex!r}")


def _check_labels(comp: ComponentLattice, labels: EdgeLabeling) -> None:
    for e, c in comp.curves.items():
        if comp.pair(c, c) != labels.d(e, comp.vertex):
            raise LatticeError(
                f"curve class of edge {e!r} at {comp.vertex!r} has self-pairing {comp.pair(c, c)}, "
                f"label says {labels.d(e, comp.vertex)}"
            )


@dataclass(frozen=True)
class CartierLattice:
    """Integer kernel of the double-curve degree map, as HNF basis rows."""

    basis: tuple[Vector, ...]
    offsets: Mapping[str, tuple[int, int]]
    dim: int
    degree_matrix: tuple[Vector, ...]
    edge_order: tuple[str, ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def degrees(self, vec: Sequence[int]) -> list[int]:
        return matvec(self.degree_matrix, vec)

    def contains(self, vec: Sequence[int]) -> bool:
        return len(vec) == self.dim and not any(self.degrees(vec))

    def coordinates(self, vec: Sequence[int]) -> list[int]:
        try:
            return solve_in_basis(self.basis, vec)
        except ValueError as exc:
            raise LatticeError(str(exc)) from None

    def block(self, vec: Sequence[int], vertex: str) -> Vector:
        start, n = self.offsets[vertex]
        return tuple(vec[start : start + n])


def component_layout(components: Mapping[str, ComponentLattice], vertices: Iterable[str]) -> tuple[dict, int]:
    offsets = {}
    pos = 0
    for v in sort_ids(vertices):
        offsets[v] = (pos, components[v].rank)
        pos += components[v].rank
    return offsets, pos


def numerically_cartier(
    cx: PolysimplicialComplex,
    labels: EdgeLabeling,
    components: Mapping[str, ComponentLattice],
    cancel: threading.Event | None = None,
) -> CartierLattice:
    missing = [v for v in cx.vertices if v not in components]
    if missing:
        raise LatticeError(f"no component lattice for vertices {missing[:5]}")
    for v in cx.vertices:
        comp = components[v]
        if comp.vertex != v:
            raise LatticeError(f"component for {v!r} is attached to {comp.vertex!r}")
        if sorted(comp.edges) != sorted(cx.edges_at(v)):
            raise LatticeError(f"component curves at {v!r} do not match the incident edges")
        _check_labels(comp, labels)
    offsets, dim = component_layout(components, cx.vertices)
    rows = []
    for e in cx.edges:
        a, b = sort_ids(e.vertices)
        row = [0] * dim
        for v, sign in ((a, 1), (b, -1)):
            comp = components[v]
            start, _ = offsets[v]
            for t, x in enumerate(matvec(comp.gram, comp.curves[e.id])):
                row[start + t] += sign * x
        rows.append(tuple(row))
    basis = integer_kernel(rows, dim, cancel)
    return CartierLattice(tuple(tuple(b) for b in basis), offsets, dim, tuple(rows), tuple(e.id for e in cx.edges))


@dataclass(frozen=True)
class SlabClass:
    color: str
    slab: frozenset[str]
    vector: Vector


def slab_class(
    cx: PolysimplicialComplex,
    coloring: Coloring,
    components: Mapping[str, ComponentLattice],
    lattice: CartierLattice,
    color: str,
    slab: frozenset[str],
) -> SlabClass:
    """``Σ [D_ji] − [D_ij]`` over color edges leaving the slab (``i`` inside)."""
    vec = [0] * lattice.dim
    for e, inside, outside in slab_boundary(cx, coloring, color, slab):
        for v, sign in ((outside, 1), (inside, -1)):
            start, _ = lattice.offsets[v]
            for t, x in enumerate(components[v].curves[e]):
                vec[start + t] += sign * x
    if not lattice.contains(vec):
        raise LatticeError(f"slab class of {sorted(slab)[:3]}... (color {color!r}) is not numerically Cartier")
    return SlabClass(color, frozenset(slab), tuple(vec))


def all_slab_classes(
    cx: PolysimplicialComplex,
    coloring: Coloring,
    components: Mapping[str, ComponentLattice],
    lattice: CartierLattice,
) -> list[SlabClass]:
    return [
        slab_class(cx, coloring, components, lattice, s, g)
        for s in coloring.colors
        for g in slabs(cx, coloring, s).slabs
    ]


@dataclass(frozen=True)
class PeriodHom:
    """Exponent vectors in ℤ^P for each basis vector of the Cartier lattice.

    ``matrix[k]`` is the image of basis vector ``k``; a class has trivial
    period exactly when its image vector is zero.
    """

    matrix: tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in self.matrix))
        if len({len(r) for r in self.matrix}) > 1:
            raise LatticeError("period matrix rows have different lengths")

    @property
    def n_params(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def exponent(self, coords: Sequence[int]) -> Vector:
        if len(coords) != len(self.matrix):
            raise LatticeError(f"period matrix has {len(self.matrix)} rows, lattice rank is {len(coords)}")
        out = [0] * self.n_params
        for c, row in zip(coords, self.matrix):
            if c:
                for t, x in enumerate(row):
                    out[t] += c * x
        return tuple(out)

    @classmethod
    def zero(cls, rank: int, n_params: int = 1) -> "PeriodHom":
        return cls(tuple((0,) * n_params for _ in range(rank)))


@dataclass(frozen=True)
class DSSVerdict:
    color: str
    slab: frozenset[str]
    coordinates: tuple[int, ...]
    exponent: Vector
    ok: bool


def check_d_semistable(
    period: PeriodHom, lattice: CartierLattice, slab_classes: Iterable[SlabClass]
) -> list[DSSVerdict]:
    if len(period.matrix) != lattice.rank:
        raise LatticeError(f"period matrix has {len(period.matrix)} rows, lattice rank is {lattice.rank}")
    out = []
    for sc in slab_classes:
        coords = tuple(lattice.coordinates(sc.vector))
        exp = period.exponent(coords)
        out.append(DSSVerdict(sc.color, sc.slab, coords, exp, not any(exp)))
    return out
