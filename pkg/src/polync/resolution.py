"""Subdividing squares into triangles, with the matching corner blow-ups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from polync.complex import Polysimplex, PolysimplicialComplex, cell_name, natural_key, sort_ids
from polync.geometry import EdgeLabeling
from polync.lattice import ComponentLattice, blow_up_corner


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class Subdivision:
    complex: PolysimplicialComplex
    labels: EdgeLabeling | None
    components: Mapping[str, ComponentLattice] | None = None


def diagonals(square: Polysimplex) -> tuple[tuple[str, str], tuple[str, str]]:
    a, b, c, d = square.boundary_cycle()
    return (a, c), (b, d)


def default_diagonal(square: Polysimplex) -> tuple[str, str]:
    """The diagonal whose sorted endpoint pair is least in natural id order."""
    pairs = [tuple(sort_ids(p)) for p in diagonals(square)]
    return min(pairs, key=lambda p: (natural_key(p[0]), natural_key(p[1])))


def subdivide_square(
    cx: PolysimplicialComplex,
    labels: EdgeLabeling | None,
    square: str,
    diagonal: Sequence[str] | None = None,
    components: Mapping[str, ComponentLattice] | None = None,
) -> Subdivision:
    """Cut ``square`` along a diagonal ``a c`` into triangles ``abc`` and ``acd``.

    The new edge gets label -1 at both ends, and at each of ``a`` and ``c`` the
    two old square edges lose 1 on that side (the corner blow-up).
    """
    sq = cx.cells.get(square)
    if sq is None or not sq.is_square:
        raise ResolutionError(f"{square!r} is not a square of the complex")
    if diagonal is None:
        diagonal = default_diagonal(sq)
    cyc = list(sq.boundary_cycle())
    if set(diagonal) == set(diagonals(sq)[1]):
        cyc = cyc[1:] + cyc[:1]
    elif set(diagonal) != set(diagonals(sq)[0]) or len(set(diagonal)) != 2:
        raise ResolutionError(f"{list(diagonal)} are not opposite corners of {square!r}")
    a, b, c, d = cyc
    if frozenset((a, c)) in cx.edge_by_endpoints:
        raise ResolutionError(f"diagonal {a}-{c} is already an edge; the result would not be embedded")

    new_edge = Polysimplex(cell_name([a, c]), (1,), (a, c))
    tri1 = Polysimplex(cell_name([a, b, c]), (2,), (a, b, c))
    tri2 = Polysimplex(cell_name([a, c, d]), (2,), (a, c, d))
    taken = {cell.vertex_set for cell in cx.cells.values()}
    for t in (tri1, tri2):
        if t.vertex_set in taken:
            raise ResolutionError(f"triangle on {sort_ids(t.vertices)} already exists")

    ab, bc, cd, da = (cx.edge_between(x, y) for x, y in ((a, b), (b, c), (c, d), (d, a)))
    rotation = None
    if cx.rotation is not None:
        rotation = dict(cx.rotation)
        for corner, e1, e2 in ((a, ab, da), (c, bc, cd)):
            rotation[corner] = _insert_between(rotation[corner], e1, e2, new_edge.id)
    out = cx.with_cells([square], [new_edge, tri1, tri2], rotation)

    new_labels = None
    if labels is not None:
        changes = {
            (ab, a): labels.d(ab, a) - 1,
            (da, a): labels.d(da, a) - 1,
            (bc, c): labels.d(bc, c) - 1,
            (cd, c): labels.d(cd, c) - 1,
            (new_edge.id, a): -1,
            (new_edge.id, c): -1,
        }
        new_labels = labels.updated(changes)

    new_components = None
    if components is not None:
        new_components = dict(components)
        new_components[a] = blow_up_corner(components[a], ab, da, new_edge.id)
        new_components[c] = blow_up_corner(components[c], bc, cd, new_edge.id)
    return Subdivision(out, new_labels, new_components)


def _insert_between(order: Sequence[str], e1: str, e2: str, new: str) -> tuple[str, ...]:
    order = list(order)
    k = len(order)
    i, j = order.index(e1), order.index(e2)
    if (i + 1) % k == j:
        order.insert(i + 1, new)
    elif (j + 1) % k == i:
        order.insert(j + 1, new)
    else:
        raise ResolutionError(f"edges {e1!r} and {e2!r} are not consecutive in the rotation")
    return tuple(order)


Strategy = Union[str, Mapping[str, Sequence[str]], Callable[[Polysimplex], Sequence[str]]]


def snc_resolution(
    cx: PolysimplicialComplex,
    labels: EdgeLabeling | None,
    strategy: Strategy = "lex",
    components: Mapping[str, ComponentLattice] | None = None,
    squares: Sequence[str] | None = None,
) -> Subdivision:
    """Subdivide every square (or just ``squares``), one at a time in id order.

    ``strategy`` is ``"lex"`` (least diagonal), ``"other"`` (the remaining
    diagonal), a mapping ``square -> diagonal`` or a callable on the square.
    """
    targets = sort_ids(squares if squares is not None else [s.id for s in cx.squares])
    cur = Subdivision(cx, labels, components)
    for sid in targets:
        sq = cx.cells[sid]
        if strategy == "lex":
            diag = default_diagonal(sq)
        elif strategy == "other":
            lex = set(default_diagonal(sq))
            diag = next(p for p in diagonals(sq) if set(p) != lex)
        elif callable(strategy):
            diag = strategy(sq)
        elif isinstance(strategy, Mapping):
            diag = strategy.get(sid) or default_diagonal(sq)
        else:
            raise ResolutionError(f"unknown strategy {strategy!r}")
        cur = subdivide_square(cur.complex, cur.labels, sid, diag, cur.components)
    return cur
