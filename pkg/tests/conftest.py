from __future__ import annotations

import json
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polync.complex import Polysimplex, PolysimplicialComplex  # noqa: E402
from polync.coloring import coloring_from_edge_colors  # noqa: E402
from polync.generators import generate  # noqa: E402
from polync.geometry import EdgeLabeling  # noqa: E402
from polync.lattice import ComponentLattice  # noqa: E402

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@lru_cache(maxsize=None)
def example(name: str):
    return generate(name)


@pytest.fixture(scope="session")
def rhombi():
    return example("rhombicuboctahedron")


@pytest.fixture(scope="session")
def cube():
    return example("cube")


@pytest.fixture(scope="session")
def octa():
    return example("octahedron")


@pytest.fixture(scope="session")
def table1():
    doc = json.loads((DATA / "table1.json").read_text())
    return doc["matrix"], doc["colors"]


def two_component_toy():
    """Two toric squares glued along one double curve, each seen through that curve's fiber class."""
    cx = PolysimplicialComplex.from_cells(
        [Polysimplex("a", (), ("a",)), Polysimplex("b", (), ("b",)), Polysimplex("a-b", (1,), ("a", "b"))]
    )
    labels = EdgeLabeling({("a-b", "a"): 0, ("a-b", "b"): 0})
    coloring = coloring_from_edge_colors(cx, {"a-b": "s"}, ["s"])
    gram = ((0, 1), (1, 0))
    comps = {
        v: ComponentLattice(gram, ((1, 0),), ("F1", "F2")).attach(v, ["a-b"]) for v in ("a", "b")
    }
    return cx, labels, coloring, comps


def single_cell(factors, vertices):
    return PolysimplicialComplex.from_maximal([(factors, vertices)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
