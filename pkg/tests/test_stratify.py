from fractions import Fraction as F

import pytest

from subcart import poly
from subcart.errors import NonMemberError
from subcart.space import Sampler, SpacePresentation, sample
from subcart.stratify import (
    PointRecord,
    classify,
    default_adjacency_radius,
    stratify,
    structural_dim,
    sup_distance,
    verify_dense,
    verify_open,
    verify_usc,
)
from subcart.tangent import tangent_space


def record(point, dim, label="regular"):
    return PointRecord(tuple(F(c) for c in point), dim, label)


# -- structural dimension -------------------------------------------------------


def test_structural_dim_examples(cone, sphere):
    assert structural_dim(cone, (F(0), F(0), F(0))) == 3
    assert structural_dim(cone, (F(1), F(0), F(1))) == 2
    assert structural_dim(sphere, (F(1), F(0), F(0))) == 2


def test_structural_dim_requires_membership(cone):
    with pytest.raises(NonMemberError):
        structural_dim(cone, (F(1), F(0), F(0)))


def test_dim_is_ambient_for_unconstrained_spaces():
    line = SpacePresentation(
        name="line", ambient_dim=1, sample_points=tuple((F(k),) for k in range(-2, 3))
    )
    for point in sample(line):
        assert structural_dim(line, point) == 1


def test_dim_matches_tangent_basis_count(cone, cross, umbrella):
    for space in (cone, cross, umbrella):
        for point in sample(space):
            assert structural_dim(space, point) == tangent_space(space, point).dimension


# -- classification -----------------------------------------------------------------


def test_classify_cone_apex_singular(cone):
    neighbors = [(F(1), F(0), F(1)), (F(-1), F(0), F(1)), (F(1), F(0), F(-1))]
    assert classify(cone, (F(0), F(0), F(0)), neighbors) == "singular"


def test_classify_smooth_cone_point_regular(cone):
    neighbors = [(F(-1), F(0), F(1)), (F(0), F(1), F(1)), (F(3), F(4), F(5))]
    assert classify(cone, (F(1), F(0), F(1)), neighbors) == "regular"


def test_classify_empty_neighbors_is_unknown(cone):
    assert classify(cone, (F(1), F(0), F(1)), []) == "unknown"
    assert classify(cone, (F(0), F(0), F(0)), []) == "unknown"


def test_higher_dimensional_neighbors_do_not_make_a_point_singular(cone):
    # the apex lies within sampling radius of nearby smooth points; they
    # stay regular because no lower-dimensional evidence exists
    neighbors = [(F(0), F(0), F(0)), (F(-1), F(0), F(1))]
    assert classify(cone, (F(1), F(0), F(1)), neighbors) == "regular"


# -- defaults -----------------------------------------------------------------------


def test_default_radius_is_max_nearest_neighbor_gap(cone):
    points = sample(cone)
    radius = default_adjacency_radius(points)
    assert radius == 2
    # every point then has at least one neighbor within the radius
    for i, p in enumerate(points):
        assert any(
            sup_distance(p, q) <= radius for j, q in enumerate(points) if j != i
        )


def test_default_radius_degenerates_to_zero():
    assert default_adjacency_radius([(F(0),)]) == 0
    assert default_adjacency_radius([]) == 0


# -- full pipeline ----------------------------------------------------------------


def test_stratify_cone(cone):
    report = stratify(cone)
    assert len(report.records) == 41
    assert report.radius == 2 and report.epsilon == 2
    singular = [r for r in report.records if r.label == "singular"]
    assert [r.point for r in singular] == [(F(0), F(0), F(0))]
    assert all(r.dim == 2 for r in report.records if r.label == "regular")
    assert singular[0].dim == 3
    assert report.all_pass()


def test_stratify_unconstrained_line():
    line = SpacePresentation(
        name="line", ambient_dim=1, sample_points=tuple((F(k),) for k in range(-2, 3))
    )
    report = stratify(line)
    assert all(r.dim == 1 and r.label == "regular" for r in report.records)
    assert report.all_pass()


def test_strata_are_nested_and_consistent(cone, cross, umbrella, single_point):
    for space in (cone, cross, umbrella, single_point):
        report = stratify(space)
        for i in range(len(report.strata) - 1):
            assert set(report.strata[i]) <= set(report.strata[i + 1])
        for idx, r in enumerate(report.records):
            assert r.dim <= space.ambient_dim
            for level, members in enumerate(report.strata):
                assert (idx in members) == (r.dim <= level)


def test_single_point_space_is_regular(single_point):
    report = stratify(single_point)
    assert [r.label for r in report.records] == ["regular"]
    assert report.records[0].dim == 0
    assert report.verdict("dense").passed
    assert report.all_pass()


def test_umbrella_singular_set_is_the_pinch_axis(umbrella):
    report = stratify(umbrella)
    singular = {r.point for r in report.records if r.label == "singular"}
    axis = {r.point for r in report.records if r.point[0] == 0 and r.point[1] == 0}
    assert singular == axis and len(axis) == 3
    assert all(r.dim == 3 for r in report.records if r.point in axis)
    assert report.all_pass()


def test_non_reduced_generator_sets_caveat():
    doubled = SpacePresentation(
        name="doubled",
        ambient_dim=1,
        equations=(poly.parse("x1^2", 1),),
        sample_points=((F(0),),),
    )
    report = stratify(doubled)
    assert report.caveats and "equations[0]" in report.caveats[0]


# -- verifiers ------------------------------------------------------------------------


def test_usc_passes_on_cone_and_sphere(cone, sphere):
    assert stratify(cone).verdict("usc").passed
    assert stratify(sphere).verdict("usc").passed


def test_usc_fails_on_isolated_low_dimensional_point():
    # a dim-1 point whose only neighbor within the radius has dim 2
    records = [record((1, 0), 1), record((0, 0), 2)]
    verdict = verify_usc(records, F(1))
    assert not verdict.passed
    assert "(1, 0)" in verdict.detail


def test_usc_vacuous_for_isolated_points():
    records = [record((0, 0), 1), record((10, 0), 2)]
    assert verify_usc(records, F(1)).passed


def test_open_passes_on_cone_and_sphere(cone, sphere):
    assert stratify(cone).verdict("open").passed
    assert stratify(sphere).verdict("open").passed


def test_open_fails_on_regular_point_with_singular_peer():
    # hand-built labels: a regular point whose only neighbor is singular
    # at the same dimension
    records = [record((0,), 1, "regular"), record((1,), 1, "singular")]
    verdict = verify_open(records, F(1))
    assert not verdict.passed


def test_open_allows_higher_dimensional_singular_boundary():
    records = [
        record((1, 0), 1, "regular"),
        record((0, 0), 2, "singular"),
        record((2, 0), 1, "regular"),
    ]
    assert verify_open(records, F(1)).passed


def test_dense_examples(cone, cross):
    cone_report = stratify(cone)
    assert verify_dense(cone_report.records, F(1, 4)).passed
    cross_report = stratify(cross, epsilon=F(1, 4))
    assert cross_report.verdict("dense").passed


def test_dense_with_coarse_cross_and_unit_epsilon():
    cross3 = SpacePresentation(
        name="cross3",
        ambient_dim=2,
        equations=(poly.parse("x1*x2", 2),),
        samplers=(
            Sampler(
                param_dim=1,
                numerators=(poly.parse("x1", 1), poly.parse("0", 1)),
                denominator=poly.parse("1", 1),
                param_box=((F(-1), F(1)),),
                param_resolution=3,
            ),
            Sampler(
                param_dim=1,
                numerators=(poly.parse("0", 1), poly.parse("x1", 1)),
                denominator=poly.parse("1", 1),
                param_box=((F(-1), F(1)),),
                param_resolution=3,
            ),
        ),
    )
    report = stratify(cross3, epsilon=F(1))
    assert report.verdict("dense").passed


def test_dense_fails_without_nearby_regular_points():
    records = [record((0,), 2, "singular"), record((5,), 1, "regular")]
    assert not verify_dense(records, F(1)).passed


def test_verifiers_reject_empty_records():
    for verifier in (verify_usc, verify_open, verify_dense):
        with pytest.raises(ValueError):
            verifier([], F(1))


# -- report serialization ----------------------------------------------------------


def test_report_json_shape(cone):
    data = stratify(cone).to_json()
    assert set(data) == {"space", "records", "strata", "verdicts", "params", "caveats"}
    assert data["space"] == "cone"
    assert data["strata"] == {"0": 0, "1": 0, "2": 40, "3": 41}
    assert data["params"] == {"radius": "2", "epsilon": "2"}
    assert all(v["pass"] for v in data["verdicts"].values())
    first = data["records"][0]
    assert set(first) == {"point", "dim", "label"}
    assert all(isinstance(c, str) for c in first["point"])


def test_report_is_deterministic(cone):
    assert stratify(cone).to_json_text() == stratify(cone).to_json_text()
