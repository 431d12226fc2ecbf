"""Independent reference implementations used only by the tests.

Each oracle recomputes a library result by a different route: exhaustive
search instead of union-find, cofactor expansion instead of Bareiss, and so on.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from polync.coloring import FactorSlot, all_slots
from polync.complex import PolysimplicialComplex


# -- colorability -----------------------------------------------------------


def _slot_constraints(cx: PolysimplicialComplex):
    slots = all_slots(cx)
    index = {s: i for i, s in enumerate(slots)}
    equal = [
        (index[FactorSlot(inc.face, k)], index[FactorSlot(inc.coface, t)])
        for inc in cx.incidences
        for k, t in enumerate(inc.slot_map)
    ]
    distinct = []
    for cell in cx.cells.values():
        own = [index[FactorSlot(cell.id, k)] for k in range(len(cell.factors))]
        distinct.extend(itertools.combinations(own, 2))
    return slots, equal, distinct


def set_partitions(n: int):
    """All restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            prefix.append(c)
            yield from rec(prefix, max(top, c))
            prefix.pop()

    yield from rec([], -1)


def exhaustive_colorable(cx: PolysimplicialComplex) -> bool:
    """Try every partition of the slots (no pruning); only for tiny complexes."""
    slots, equal, distinct = _slot_constraints(cx)
    for p in set_partitions(len(slots)):
        if all(p[a] == p[b] for a, b in equal) and all(p[a] != p[b] for a, b in distinct):
            return True
    return False


def search_coloring(cx: PolysimplicialComplex) -> dict | None:
    """Backtracking over restricted growth strings, checking constraints as slots are fixed.

    Returns a slot -> class index map for some valid coloring, or None.
    """
    slots, equal, distinct = _slot_constraints(cx)
    n = len(slots)
    by_last: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]
    for a, b in equal:
        by_last[max(a, b)].append((a, b, True))
    for a, b in distinct:
        by_last[max(a, b)].append((a, b, False))
    assign = [0] * n

    def rec(i, top):
        if i == n:
            return True
        for c in range(top + 2):
            assign[i] = c
            if all((assign[a] == assign[b]) == same for a, b, same in by_last[i]):
                if rec(i + 1, max(top, c)):
                    return True
        return False

    if rec(0, -1):
        return {slots[i]: assign[i] for i in range(n)}
    return None


# -- determinants and signatures --------------------------------------------


def cofactor_determinant(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in (list(r) for r in m[1:])]
            total += (-1) ** j * m[0][j] * cofactor_determinant(minor)
    return total


def descartes_signature(m: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Exact inertia from the characteristic polynomial.

    A real symmetric matrix has only real eigenvalues, so Descartes' rule of
    signs counts positive roots exactly.
    """
    n = len(m)
    if n == 0:
        return (0, 0, 0)
    lam = sympy.Symbol("lam")
    coeffs = sympy.Matrix(m).charpoly(lam).all_coeffs()  # leading first
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs):
        signs = [c > 0 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(coeffs)
    deg = len(coeffs) - 1
    neg = changes([c * (-1) ** (deg - i) for i, c in enumerate(coeffs)])
    return (pos, neg, zero)


def eigen_signature(m: Sequence[Sequence[int]], tol: float = 1e-9) -> tuple[int, int, int]:
    if not len(m):
        return (0, 0, 0)
    ev = np.linalg.eigvalsh(np.array(m, dtype=float))
    return (int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum()))


# -- lattices ---------------------------------------------------------------


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    return sympy.Matrix(rows).rank() if rows else 0


def coordinates_by_least_squares(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> list[int]:
    """Coordinates of ``vec`` in ``basis`` through floating point, rounded and verified."""
    a = np.array(basis, dtype=float).T
    sol, *_ = np.linalg.lstsq(a, np.array(vec, dtype=float), rcond=None)
    coords = [int(round(x)) for x in sol]
    back = [sum(c * b[i] for c, b in zip(coords, basis)) for i in range(len(vec))]
    assert back == list(vec), "vector is not an integral combination of the basis"
    return coords


def exact_fraction_solve(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> list[Fraction]:
    sol = sympy.Matrix(basis).T.gauss_jordan_solve(sympy.Matrix(vec))[0]
    return [Fraction(int(x.p), int(x.q)) for x in sol]
