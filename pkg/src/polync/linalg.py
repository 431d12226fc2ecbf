"""Exact integer and rational linear algebra on lists of Python ints.

Nothing here touches floating point.  Long-running routines accept a
``cancel`` event and check it once per pivot step.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


class Cancelled(RuntimeError):
    pass


def _check(cancel: threading.Event | None) -> None:
    if cancel is not None and cancel.is_set():
        raise Cancelled("computation cancelled")


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in rows]


def is_symmetric(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(m[i][j] == m[j][i] for i in range(n) for j in range(i))


def bareiss_determinant(m: Sequence[Sequence[int]], cancel: threading.Event | None = None) -> int:
    """Determinant by fraction-free Gaussian elimination.

    Every intermediate entry is a minor of the input, so all divisions are exact.
    """
    a = as_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        _check(cancel)
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def congruence_diagonal(m: Sequence[Sequence[int]], cancel: threading.Event | None = None) -> list[Fraction]:
    """Diagonal of a symmetric LDLᵀ factorization with symmetric pivoting.

    At each step the remaining diagonal entry of largest absolute value is
    moved to the front (ties: lowest index).  When every remaining diagonal
    entry is zero but an off-diagonal one is not, row and column ``i`` are
    replaced by their sum with row and column ``j``, which creates the nonzero
    diagonal entry ``2 a_ij`` without changing the congruence class.
    """
    if not is_symmetric(m):
        raise ValueError("signature needs a symmetric matrix")
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    out: list[Fraction] = []
    active = list(range(n))
    while active:
        _check(cancel)
        piv = max(active, key=lambda i: (abs(a[i][i]), -i))
        if a[piv][piv] == 0:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                out.extend(Fraction(0) for _ in active)
                break
            i, j = pair
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        p = a[piv][piv]
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for j in active:
                    a[i][j] -= f * a[piv][j]
        out.append(p)
    return out


def signature(m: Sequence[Sequence[int]], cancel: threading.Event | None = None) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` of a symmetric integer matrix."""
    diag = congruence_diagonal(m, cancel)
    return (
        sum(1 for d in diag if d > 0),
        sum(1 for d in diag if d < 0),
        sum(1 for d in diag if d == 0),
    )


def rank(m: Sequence[Sequence[int]], cancel: threading.Event | None = None) -> int:
    """Rank over the rationals by fraction-free row reduction."""
    a = as_matrix(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        _check(cancel)
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows: Sequence[Sequence[int]], cancel: threading.Event | None = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped.  Pivots are positive, strictly increasing in column,
    and entries above each pivot are reduced into ``[0, pivot)``.  The result
    depends only on the lattice, not on the generating set.
    """
    a = [list(r) for r in as_matrix(rows) if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out_rows = 0
    for c in range(ncols):
        _check(cancel)
        live = [i for i in range(out_rows, len(a)) if a[i][c] != 0]
        if not live:
            continue
        p = live[0]
        for i in live[1:]:
            g, x, y = _ext_gcd(a[p][c], a[i][c])
            u, v = a[p][c] // g, a[i][c] // g
            rp = [x * s + y * t for s, t in zip(a[p], a[i])]
            ri = [u * t - v * s for s, t in zip(a[p], a[i])]
            a[p], a[i] = rp, ri
        if a[p][c] < 0:
            a[p] = [-x for x in a[p]]
        a[out_rows], a[p] = a[p], a[out_rows]
        piv = a[out_rows][c]
        for i in range(out_rows):
            q = a[i][c] // piv
            if q:
                a[i] = [s - q * t for s, t in zip(a[i], a[out_rows])]
        out_rows += 1
    return [r for r in a[:out_rows]]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None, cancel: threading.Event | None = None) -> Matrix:
    """A ℤ-basis (as rows, in Hermite normal form) of ``{x ∈ ℤⁿ : M x = 0}``.

    Column operations with a unimodular transform ``U`` bring ``M`` to column
    echelon form ``M U = [H | 0]``; the columns of ``U`` under the zero block
    span the full integer kernel, which is therefore saturated.
    """
    a = as_matrix(m)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if a and any(len(r) != n for r in a):
        raise ValueError("ragged matrix")
    # work on columns: store M^T rows augmented with the identity
    cols = [[a[i][j] for i in range(len(a))] + [int(j == k) for k in range(n)] for j in range(n)]
    nrows = len(a)
    p = 0
    for r in range(nrows):
        _check(cancel)
        live = [j for j in range(p, n) if cols[j][r] != 0]
        if not live:
            continue
        q = live[0]
        for j in live[1:]:
            g, x, y = _ext_gcd(cols[q][r], cols[j][r])
            u, v = cols[q][r] // g, cols[j][r] // g
            cq = [x * s + y * t for s, t in zip(cols[q], cols[j])]
            cj = [u * t - v * s for s, t in zip(cols[q], cols[j])]
            cols[q], cols[j] = cq, cj
        cols[p], cols[q] = cols[q], cols[p]
        p += 1
    basis = [c[nrows:] for c in cols[p:]]
    return hermite_normal_form(basis, cancel) if basis else []


def solve_in_basis(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> list[int]:
    """Integer coordinates of ``vector`` in a row-HNF ``basis``.

    Raises ValueError when the vector is not in the ℤ-span.
    """
    coords: list[int] = []
    residual = [int(x) for x in vector]
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(residual[c], row[c])
        if rem:
            raise ValueError("vector is not an integral combination of the basis")
        coords.append(q)
        if q:
            residual = [s - q * t for s, t in zip(residual, row)]
    if any(residual):
        raise ValueError("vector is not in the span of the basis")
    return coords


def invariant_factors(m: Sequence[Sequence[int]], cancel: threading.Event | None = None) -> list[int]:
    """Nonzero Smith invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    a = as_matrix(m)
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        _check(cancel)
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
