from __future__ import annotations

import pytest

from conftest import example
from polync.coloring import check_coloring
from polync.complex import SurfaceType, classify, euler_characteristic, euler_relations_hold, is_orientable, validate
from polync.generators import GENERATORS, SPHERES, GeneratorError, generate, rainbow_schedule, strip_heights
from polync.geometry import check_triple_point_formula, total_charge_check

COUNTS = {
    "tetrahedron": (4, 6, 4, 0),
    "octahedron": (6, 12, 8, 0),
    "icosahedron": (12, 30, 20, 0),
    "cube": (8, 12, 0, 6),
    "rhombicuboctahedron": (24, 48, 8, 18),
    "torus-grid": (9, 18, 0, 9),
    "rainbow": (572, 1185, 90, 525),
}


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_counts(name):
    c = example(name).complex.counts()
    assert (c["v"], c["e"], c["n_triangles"], c["n_squares"]) == COUNTS[name]


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_every_default_example_is_valid(name):
    if name == "strip-glued":
        ex = generate(name, bottom_segments=2, height=1)
    else:
        ex = example(name)
    assert validate(ex.complex).ok
    if ex.coloring is not None:
        assert check_coloring(ex.complex, ex.coloring)


@pytest.mark.parametrize("name", SPHERES)
def test_spheres_satisfy_euler_relations(name):
    c = example(name).complex.counts()
    assert classify(example(name).complex) is SurfaceType.SPHERE
    assert euler_relations_hold(c["v"], c["e"], c["n_triangles"], c["n_squares"])


@pytest.mark.parametrize("name", [n for n in SPHERES if n != "rainbow"] + ["torus-grid"])
def test_labeled_examples_pass_tp_and_charge(name):
    ex = example(name)
    assert check_triple_point_formula(ex.complex, ex.labels) == []
    total, ok = total_charge_check(ex.complex, ex.labels)
    assert ok == (name != "torus-grid")


def test_rainbow_schedule_and_heights():
    sched = rainbow_schedule()
    assert sched == [10 - n for n in range(1, 20)]
    ys = strip_heights(sched, 0)
    assert ys[0] == ys[-1] == 0 and min(ys) == 0 and max(ys) == 45


def test_free_strip_is_a_disk():
    cx = generate("strip-glued", bottom_segments=3, height=2).complex
    assert classify(cx) is SurfaceType.OTHER
    assert euler_characteristic(cx) == 1


def test_band_without_top_gluing_is_an_annulus():
    cx = generate("strip-glued", bottom_segments=3, height=2, band=True).complex
    assert euler_characteristic(cx) == 0 and classify(cx) is SurfaceType.OTHER


def test_top_to_bottom_gluing_gives_a_cylinder():
    cx = generate("strip-glued", bottom_segments=3, shear_schedule=[0, 0, 0], height=3).complex
    assert euler_characteristic(cx) == 0 and classify(cx) is SurfaceType.OTHER


@pytest.mark.parametrize("offset", [0, 1, 2])
def test_band_with_top_gluing_is_a_torus(offset):
    cx = generate("strip-glued", bottom_segments=3, shear_schedule=[0, 0, 0], height=3, band=True, offset=offset).complex
    assert classify(cx) is SurfaceType.TORUS


def test_sheared_band_is_a_torus_with_triangles():
    ex = generate("strip-glued", bottom_segments=4, shear_schedule=[1, 0, -1, 0], height=3, band=True)
    assert classify(ex.complex) is SurfaceType.TORUS
    assert len(ex.complex.triangles) == 2


def test_flipped_gluing_is_non_orientable():
    cx = generate("strip-glued", bottom_segments=3, shear_schedule=[0, 0, 0], height=3, band=True, flip=True).complex
    assert euler_characteristic(cx) == 0
    assert not is_orientable(cx)
    assert classify(cx) is SurfaceType.OTHER


def test_rainbow_strip_closes_to_the_sphere():
    cx = generate("strip-glued", bottom_segments=19, shear_schedule=rainbow_schedule()).complex
    assert classify(cx) is SurfaceType.SPHERE
    assert cx.counts()["v"] == 572


@pytest.mark.parametrize(
    "params",
    [
        dict(bottom_segments=0),
        dict(bottom_segments=2, shear_schedule=[0]),
        dict(bottom_segments=2, shear_schedule=[-1, 1]),
        dict(bottom_segments=2, shear_schedule=[1, 0], band=True),
        dict(bottom_segments=3, height=2, offset=1),
        dict(bottom_segments=3, height=2, flip=True),
        dict(bottom_segments=3, shear_schedule=[0, 0, 0], height=2, band=True, flip=True),
    ],
)
def test_bad_strips_are_rejected(params):
    with pytest.raises(GeneratorError):
        generate("strip-glued", **params)


def test_small_torus_grid_is_rejected():
    with pytest.raises(GeneratorError):
        generate("torus-grid", n=2, m=3)


def test_unknown_name_and_bad_params():
    with pytest.raises(GeneratorError, match="unknown example"):
        generate("dodecahedron")
    with pytest.raises(GeneratorError, match="bad parameters"):
        generate("cube", size=2)
    with pytest.raises(GeneratorError, match="bad parameters"):
        generate("strip-glued")


def test_examples_without_models_have_no_components():
    with pytest.raises(GeneratorError):
        example("rainbow").components()
