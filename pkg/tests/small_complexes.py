"""A catalogue of small complexes for exhaustive comparisons."""

from __future__ import annotations

import random

from polync.complex import PolysimplicialComplex, validate

TRI, SQ, EDGE = (2,), (1, 1), (1,)

HANDMADE = {
    "point": [((), ["a"])],
    "edge": [(EDGE, ["a", "b"])],
    "path": [(EDGE, ["a", "b"]), (EDGE, ["b", "c"]), (EDGE, ["c", "d"])],
    "triangle-graph": [(EDGE, ["a", "b"]), (EDGE, ["b", "c"]), (EDGE, ["a", "c"])],
    "star": [(EDGE, ["o", x]) for x in "abcd"],
    "triangle": [(TRI, ["a", "b", "c"])],
    "square": [(SQ, ["a", "b", "c", "d"])],
    "two-triangles": [(TRI, ["a", "b", "c"]), (TRI, ["b", "c", "d"])],
    "triangle-square": [(TRI, ["a", "b", "x"]), (SQ, ["a", "b", "c", "d"])],
    "two-squares": [(SQ, ["a", "b", "d", "e"]), (SQ, ["b", "c", "e", "f"])],
    "square-with-opposite-triangles": [(SQ, ["a", "b", "c", "d"]), (TRI, ["a", "b", "x"]), (TRI, ["c", "d", "y"])],
    "square-with-adjacent-triangles": [(SQ, ["a", "b", "c", "d"]), (TRI, ["a", "b", "x"]), (TRI, ["a", "c", "y"])],
    "square-and-diagonal-triangle": [(SQ, ["a", "b", "c", "d"]), (TRI, ["a", "b", "d"])],
    "triangle-fan": [(TRI, ["o", "a", "b"]), (TRI, ["o", "b", "c"]), (TRI, ["o", "c", "a"])],
    "tetrahedron-solid": [((3,), ["a", "b", "c", "d"])],
    "edge-times-edge-and-tail": [(SQ, ["a", "b", "c", "d"]), (EDGE, ["d", "e"])],
}


def _build(tops):
    cx = PolysimplicialComplex.from_maximal(tops)
    return cx if validate(cx).ok else None


def small_complexes(n_random: int = 60, seed: int = 5) -> dict[str, PolysimplicialComplex]:
    out = {}
    for name, tops in HANDMADE.items():
        cx = _build(tops)
        assert cx is not None, name
        out[name] = cx
    rng = random.Random(seed)
    verts = ["a", "b", "c", "d", "e", "f"]
    tries = 0
    while sum(1 for k in out if k.startswith("random")) < n_random and tries < 10_000:
        tries += 1
        tops = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.choice([TRI, SQ, SQ, EDGE])
            size = {TRI: 3, SQ: 4, EDGE: 2}[kind]
            tops.append((kind, rng.sample(verts, size)))
        try:
            cx = _build(tops)
        except (ValueError, KeyError):
            continue
        if cx is None:
            continue
        out[f"random-{tries}"] = cx
    return out
