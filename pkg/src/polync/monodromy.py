"""Gram matrix of the monodromy cone from triangle and square color counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from polync.coloring import (
    Coloring,
    ColoringError,
    FactorSlot,
    check_coloring,
    square_colors,
    triangle_color,
)
from polync.complex import PolysimplicialComplex
from polync.linalg import bareiss_determinant, is_symmetric, signature
from polync.resolution import snc_resolution


class MonodromyError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonodromyGram:
    colors: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def determinant(self) -> int:
        return exact_determinant(self.matrix)

    @property
    def signature(self) -> tuple[int, int, int]:
        return exact_signature(self.matrix)

    @property
    def rank(self) -> int:
        pos, neg, _ = self.signature
        return pos + neg

    def entry(self, s: str, t: str) -> int:
        return self.matrix[self.colors.index(s)][self.colors.index(t)]


def gram_matrix(cx: PolysimplicialComplex, coloring: Coloring) -> MonodromyGram:
    """Diagonal: triangles of each color.  Off-diagonal: squares using both colors."""
    idx = {s: i for i, s in enumerate(coloring.colors)}
    n = len(idx)
    g = [[0] * n for _ in range(n)]
    for t in cx.triangles:
        i = idx[triangle_color(coloring, t.id)]
        g[i][i] += 1
    for q in cx.squares:
        s, t = square_colors(coloring, q.id)
        i, j = idx[s], idx[t]
        if i == j:
            raise ColoringError(f"square {q.id!r} uses the color {s!r} twice")
        g[i][j] += 1
        g[j][i] += 1
    return MonodromyGram(tuple(coloring.colors), tuple(tuple(r) for r in g))


def exact_determinant(g: Sequence[Sequence[int]]) -> int:
    return bareiss_determinant(g)


def exact_signature(g: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    return signature(g)


def matrix_from_sequence(rows: Sequence[Sequence[int]], colors: Sequence[str] | None = None) -> MonodromyGram:
    """Wrap a user-supplied symmetric integer matrix."""
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if not is_symmetric(m):
        raise ValueError("Gram matrix must be square and symmetric")
    if colors is None:
        colors = [str(i + 1) for i in range(len(m))]
    if len(colors) != len(m):
        raise ValueError("color list length does not match the matrix")
    return MonodromyGram(tuple(colors), m)


def basechange_triangle_count(cx: PolysimplicialComplex, coloring: Coloring, s: str, t: str) -> int:
    """``n_{△,s} + n_{△,t} + 2 n_{□,s,t}``, cross-checked by actually subdividing.

    The squares colored ``{s, t}`` are cut into triangles, ``t`` is merged into
    ``s``, and the triangles of the merged color are counted directly.
    """
    if s == t:
        raise ValueError("basechange needs two distinct colors")
    gram = gram_matrix(cx, coloring)
    predicted = gram.entry(s, s) + gram.entry(t, t) + 2 * gram.entry(s, t)

    chosen = [q.id for q in cx.squares if set(square_colors(coloring, q.id)) == {s, t}]
    resolved = snc_resolution(cx, None, squares=chosen).complex
    merged = coloring.merge(s, t)
    assignment = dict(merged.assignment)
    for key in list(assignment):
        if key.cell not in resolved.cells:
            del assignment[key]
    for cell in resolved.cells.values():
        if cell.dim >= 1 and cell.id not in cx.cells:
            for k in range(len(cell.factors)):
                assignment[FactorSlot(cell.id, k)] = s
    merged = Coloring(merged.colors, assignment)
    if not check_coloring(resolved, merged):
        raise MonodromyError("merged coloring is invalid on the partial resolution")
    observed = sum(1 for tri in resolved.triangles if triangle_color(merged, tri.id) == s)
    if observed != predicted:
        raise MonodromyError(f"basechange count mismatch: formula {predicted}, resolution {observed}")
    return predicted
