import dataclasses

import pytest

from spinlocal.blowup import (
    ALL_LABELS,
    CASES,
    REPRESENTATIVES,
    SYMMETRIES,
    Y22_COVER,
    base_chart_ideal_check,
    build_chart,
    chart_compatibility,
    chart_representative,
    is_irreducible_low_degree,
    isomorphism_off_center,
    orthogonal_chart_check,
    saturation_cross_check,
    semistability_check,
    spin_component_det,
    symmetry_check,
    verify_case_simplification,
    y22_cover_check,
)
from spinlocal.chartideals import naive_generators, x_ring
from spinlocal.exactpoly import QQ, PolyRing
from spinlocal.spinalg import spin_ideal_generators

SIGNS = ["plus", "minus"]


def test_chart_ring_layout():
    chart = build_chart("y11")
    assert chart.pivot == "x11"
    assert "y11" not in chart.ring.names and "alpha" in chart.ring.names
    alpha = build_chart("alpha")
    assert alpha.pivot == "pi" and "y11" in alpha.ring.names


@pytest.mark.parametrize("sign", SIGNS)
def test_base_chart_contains_quadric(sign):
    assert base_chart_ideal_check(sign)


def test_strict_transform_divides_by_pivot_square():
    chart = build_chart("y11")
    x = chart.ring["x11"]
    src = x_ring(1, QQ)
    for g in naive_generators(1, src) + spin_ideal_generators(1, "plus", src):
        assert chart.total_transform(g) == chart.strict_transform(g) * x ** 2


@pytest.mark.parametrize("sign", SIGNS)
@pytest.mark.parametrize("key", list(CASES))
def test_case_simplification(key, sign):
    report = verify_case_simplification(key, sign)
    assert report.ok, report.offending


@pytest.mark.parametrize("sign", SIGNS)
def test_flipped_case_two_target_is_rejected(sign):
    fam = CASES["y12"]
    flipped = dataclasses.replace(
        fam,
        target=lambda R, s: [R["x12"] * (R["y13"] * R["y22"] - R["y23"]) + R["pi"] * R["y13"] * s,
                             R["y13"] * R["w13"] - 1],
    )
    report = verify_case_simplification("y12", sign, family=flipped)
    assert report.eliminations_hold and not report.ok


@pytest.mark.parametrize("sign", SIGNS)
@pytest.mark.parametrize("key", list(CASES))
def test_semistability(key, sign):
    report = semistability_check(key, sign)
    assert report.ok, report
    assert report.smooth_samples == (100, 100)


@pytest.mark.parametrize("sign", SIGNS)
def test_orthogonal_chart(sign):
    report = orthogonal_chart_check(sign)
    assert report.ok, report
    assert report.jacobian_rank_identity == 6
    assert spin_component_det(sign) in (1, -1)


def test_orthogonal_chart_components_are_distinct():
    assert spin_component_det("plus") == -spin_component_det("minus")


@pytest.mark.parametrize("sign", SIGNS)
@pytest.mark.parametrize("name", list(SYMMETRIES))
def test_symmetries(name, sign):
    assert symmetry_check(name, sign)


def test_every_label_has_a_representative():
    for label in ALL_LABELS:
        if label == "alpha":
            continue
        rep, word, factor = chart_representative(label)
        assert rep in REPRESENTATIVES
        assert factor in (1, -1)
        assert (rep == label) == (not word)
    assert chart_representative("y13") == ("y11", ["reverse_cols"], -1)
    assert chart_representative("y21") == ("y12", ["transpose"], 1)


@pytest.mark.parametrize("sign", [None, "plus", "minus"])
def test_y22_cover(sign):
    assert y22_cover_check(sign)
    assert not y22_cover_check(sign, ("y11",))
    assert not y22_cover_check(sign, ("y13",))
    assert Y22_COVER == ("y11", "y13")


@pytest.mark.parametrize("sign", SIGNS)
def test_compatibility_and_off_center(sign):
    assert chart_compatibility(sign)
    assert isomorphism_off_center(sign)


@pytest.mark.parametrize("sign", SIGNS)
@pytest.mark.parametrize("label", ["y11", "alpha"])
def test_saturation_matches_strict_transform(label, sign):
    assert saturation_cross_check(label, sign)


def test_quadric_irreducibility():
    R = PolyRing(["a", "b", "c", "d"], QQ)
    a, b, c, d = R.gens()
    assert is_irreducible_low_degree(a * b - c)
    assert is_irreducible_low_degree(a * b - c * d)
    assert not is_irreducible_low_degree(a * b)
    assert not is_irreducible_low_degree(a ** 2 - b ** 2)
    with pytest.raises(ValueError):
        is_irreducible_low_degree(a ** 3 - b)
