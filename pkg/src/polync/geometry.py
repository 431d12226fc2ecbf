"""Double-curve self-intersection labels, the triple point check, and charges.

A label ``d`` sits on an ``(edge, vertex)`` pair: it is the self-intersection
of the double curve of that edge inside the component of that vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from polync.complex import PolysimplicialComplex, rotation_at, sort_ids

TOTAL_CHARGE = 24

# expected D_ij^2 + D_ji^2 keyed by the number of squares on the edge
TP_EXPECTED = {0: -2, 1: -1, 2: 0}


class LabelError(ValueError):
    pass


class EdgeLabeling:
    """Integer labels keyed by ``(edge, endpoint)``."""

    def __init__(self, values: Mapping[tuple[str, str], int]):
        self._values = {(str(e), str(v)): int(d) for (e, v), d in values.items()}

    def d(self, edge: str, vertex: str) -> int:
        try:
            return self._values[(edge, vertex)]
        except KeyError:
            raise LabelError(f"missing label for edge {edge!r} at vertex {vertex!r}") from None

    def get(self, edge: str, vertex: str, default: int | None = None) -> int | None:
        return self._values.get((edge, vertex), default)

    def items(self):
        return self._values.items()

    def __contains__(self, key) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeLabeling) and self._values == other._values

    def updated(self, changes: Mapping[tuple[str, str], int], drop: Iterable[tuple[str, str]] = ()) -> "EdgeLabeling":
        values = dict(self._values)
        for key in drop:
            values.pop(key, None)
        values.update(changes)
        return EdgeLabeling(values)

    @classmethod
    def constant(cls, cx: PolysimplicialComplex, d: int) -> "EdgeLabeling":
        return cls({(e.id, v): d for e in cx.edges for v in e.vertices})


def check_labels(cx: PolysimplicialComplex, labels: EdgeLabeling) -> None:
    """Every edge must carry exactly one label per endpoint and nothing else."""
    expected = {(e.id, v) for e in cx.edges for v in e.vertices}
    present = {k for k, _ in labels.items()}
    missing = expected - present
    if missing:
        e, v = sorted(missing)[0]
        raise LabelError(f"missing label for edge {e!r} at vertex {v!r} ({len(missing)} missing)")
    extra = present - expected
    if extra:
        e, v = sorted(extra)[0]
        raise LabelError(f"label for unknown edge/endpoint ({e!r}, {v!r})")


@dataclass(frozen=True)
class TPViolation:
    edge: str
    total: int
    expected: int
    n_squares: int


def edge_square_count(cx: PolysimplicialComplex, edge: str) -> int:
    return sum(1 for f in cx.faces_at_edge(edge) if cx.cells[f].is_square)


def tp_sums(cx: PolysimplicialComplex, labels: EdgeLabeling) -> dict[str, tuple[int, int]]:
    """``edge -> (D_ij^2 + D_ji^2, expected value)``."""
    out = {}
    for e in cx.edges:
        faces = cx.faces_at_edge(e.id)
        if len(faces) != 2 or not all(cx.cells[f].is_triangle or cx.cells[f].is_square for f in faces):
            raise LabelError(f"edge {e.id!r} does not lie on exactly two triangles/squares")
        a, b = e.vertices
        out[e.id] = (labels.d(e.id, a) + labels.d(e.id, b), TP_EXPECTED[edge_square_count(cx, e.id)])
    return out


def check_triple_point_formula(cx: PolysimplicialComplex, labels: EdgeLabeling) -> list[TPViolation]:
    return [
        TPViolation(e, total, expected, edge_square_count(cx, e))
        for e, (total, expected) in tp_sums(cx, labels).items()
        if total != expected
    ]


def charge_from_cycle(self_intersections: Iterable[int]) -> int:
    """Charge of a log Calabi-Yau pair whose boundary is a cycle of k >= 2 curves."""
    ds = list(self_intersections)
    k = len(ds)
    if k < 2:
        raise LabelError("charge is only defined here for cycles of at least two curves")
    return 12 - 3 * k - sum(ds)


def charge_by_euler_characteristics(self_intersections: Iterable[int]) -> int:
    """Same charge, as χ(V) − χ(D) with Noether's formula for χ(V).

    For a rational surface χ(V) = 12 − K², and K² = D² = Σ d_j + 2k for an
    anticanonical cycle of k rational curves; the cycle itself has χ(D) = k.
    """
    ds = list(self_intersections)
    k = len(ds)
    if k < 2:
        raise LabelError("charge is only defined here for cycles of at least two curves")
    k_squared = sum(ds) + 2 * k
    chi_v = 12 - k_squared
    chi_d = 2 * k - k
    return chi_v - chi_d


@dataclass(frozen=True)
class ComponentProfile:
    vertex: str
    cycle: tuple[tuple[str, int], ...]
    k: int
    charge: int


def component_profile(cx: PolysimplicialComplex, labels: EdgeLabeling, vertex: str) -> ComponentProfile:
    order = rotation_at(cx, vertex)
    cycle = tuple((e, labels.d(e, vertex)) for e in order)
    return ComponentProfile(vertex, cycle, len(cycle), charge_from_cycle(d for _, d in cycle))


def component_charge(cx: PolysimplicialComplex, labels: EdgeLabeling, vertex: str) -> int:
    edges = cx.edges_at(vertex)
    if len(edges) < 2:
        raise LabelError(f"vertex {vertex!r} has degree {len(edges)}; charge needs k >= 2")
    return charge_from_cycle(labels.d(e, vertex) for e in edges)


def charges(cx: PolysimplicialComplex, labels: EdgeLabeling) -> dict[str, int]:
    return {v: component_charge(cx, labels, v) for v in sort_ids(cx.vertices)}


def total_charge_check(cx: PolysimplicialComplex, labels: EdgeLabeling) -> tuple[int, bool]:
    total = sum(charges(cx, labels).values())
    return total, total == TOTAL_CHARGE
