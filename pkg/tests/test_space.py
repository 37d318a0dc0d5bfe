import json
from fractions import Fraction as F

import pytest

from subcart import poly
from subcart.errors import (
    DimensionMismatchError,
    NoSampleSourceError,
    SamplerInvariantError,
    SpaceFormatError,
)
from subcart.space import (
    IdealWitness,
    RingElement,
    Sampler,
    SpacePresentation,
    compose_cleared,
    is_member,
    load_space,
    repeated_factor_caveats,
    representatives_agree,
    sample,
    space_from_dict,
    validate_sampler,
)

from oracles import grid_points


def line_sampler(numerators, lo, hi, resolution):
    return Sampler(
        param_dim=1,
        numerators=tuple(poly.parse(t, 1) for t in numerators),
        denominator=poly.parse("1", 1),
        param_box=((F(lo), F(hi)),),
        param_resolution=resolution,
    )


@pytest.fixture
def plane():
    return SpacePresentation(name="plane", ambient_dim=2)


# -- membership ---------------------------------------------------------------


def test_cone_membership(cone):
    assert is_member(cone, (F(3), F(4), F(5)))
    assert not is_member(cone, (F(1), F(1), F(1)))


def test_unconstrained_space_accepts_everything(plane):
    assert is_member(plane, (F(12, 7), F(-3)))


def test_membership_dimension_mismatch(cone):
    with pytest.raises(DimensionMismatchError):
        is_member(cone, (F(1), F(2)))


def test_inequality_membership(half_line):
    assert is_member(half_line, (F(0),))
    assert is_member(half_line, (F(5),))
    assert not is_member(half_line, (F(-1, 4),))


def test_strict_inequality():
    open_ray = SpacePresentation(
        name="open_ray",
        ambient_dim=1,
        inequalities=((poly.parse("x1", 1), True),),
        sample_points=((F(1),),),
    )
    assert not is_member(open_ray, (F(0),))
    assert is_member(open_ray, (F(1, 100),))


# -- sampling ------------------------------------------------------------------


def test_cone_resolution_5_sampling():
    # oracle: evaluate the parameterization on the 5x5 grid independently
    # and deduplicate; antipodal parameters collide, leaving 13 points
    images = []
    for u, v in grid_points([(F(-2), F(2)), (F(-2), F(2))], 5):
        p = (u * u - v * v, 2 * u * v, u * u + v * v)
        if p not in images:
            images.append(p)
    assert len(images) == 13
    assert (F(0), F(0), F(0)) in images

    cone5 = SpacePresentation(
        name="cone5",
        ambient_dim=3,
        equations=(poly.parse("x1^2 + x2^2 - x3^2", 3),),
        samplers=(
            Sampler(
                param_dim=2,
                numerators=(
                    poly.parse("x1^2 - x2^2", 2),
                    poly.parse("2*x1*x2", 2),
                    poly.parse("x1^2 + x2^2", 2),
                ),
                denominator=poly.parse("1", 2),
                param_box=((F(-2), F(2)), (F(-2), F(2))),
                param_resolution=5,
            ),
        ),
    )
    points = sample(cone5)
    assert points == images
    assert all(is_member(cone5, p) for p in points)


def test_explicit_points_pass_through():
    space = SpacePresentation(
        name="dot", ambient_dim=2, sample_points=((F(1), F(0)),)
    )
    assert sample(space) == [(F(1), F(0))]


def test_cross_sampler_dedups_origin():
    space = SpacePresentation(
        name="cross3",
        ambient_dim=2,
        equations=(poly.parse("x1*x2", 2),),
        samplers=(
            line_sampler(["x1", "0"], -1, 1, 3),
            line_sampler(["0", "x1"], -1, 1, 3),
        ),
    )
    points = sample(space)
    assert set(points) == {
        (F(-1), F(0)),
        (F(0), F(0)),
        (F(1), F(0)),
        (F(0), F(-1)),
        (F(0), F(1)),
    }
    assert len(points) == 5
    # deterministic order: first sampler grid, then second, first occurrence kept
    assert points[0] == (F(-1), F(0))
    assert points[1] == (F(0), F(0))


def test_sample_requires_a_source(plane):
    with pytest.raises(NoSampleSourceError):
        sample(plane)


def test_sampled_points_are_members(cone, sphere, cross, umbrella, half_line):
    for space in (cone, sphere, cross, umbrella, half_line):
        for point in sample(space):
            assert is_member(space, point)


def test_sampler_inequality_violation_raises():
    space = SpacePresentation(
        name="bad_half_line",
        ambient_dim=1,
        inequalities=((poly.parse("x1", 1), False),),
        samplers=(line_sampler(["x1"], -1, 1, 3),),
    )
    with pytest.raises(SamplerInvariantError):
        sample(space)


# -- sampler validation -----------------------------------------------------------


def test_validate_cone_sampler(cone):
    assert validate_sampler(cone, cone.samplers[0])


def test_validate_stereographic_sphere_sampler(sphere):
    assert validate_sampler(sphere, sphere.samplers[0])


def test_validate_rejects_off_variety_sampler(cone):
    bad = Sampler(
        param_dim=2,
        numerators=(
            poly.parse("x1", 2),
            poly.parse("x2", 2),
            poly.parse("0", 2),
        ),
        denominator=poly.parse("1", 2),
        param_box=((F(-1), F(1)), (F(-1), F(1))),
        param_resolution=3,
    )
    assert not validate_sampler(cone, bad)


def test_compose_cleared_matches_direct_substitution(sphere):
    # den^deg(g) * g(nums/den) must agree with direct evaluation at params
    s = sphere.samplers[0]
    g = sphere.equations[0]
    cleared = compose_cleared(g, s.numerators, s.denominator)
    assert cleared.is_zero()
    h = poly.parse("x1 + x3", 3)  # not an equation of the sphere
    cleared_h = compose_cleared(h, s.numerators, s.denominator)
    params = (F(1, 3), F(-2, 5))
    den = s.denominator.evaluate(params)
    assert cleared_h.evaluate(params) == den ** h.total_degree() * h.evaluate(
        s.image(params)
    )


# -- representative equality -----------------------------------------------------


def test_cone_representatives_agree(cone):
    f = RingElement(cone, poly.parse("x3^2", 3))
    g = RingElement(cone, poly.parse("x1^2 + x2^2", 3))
    witness = IdealWitness((poly.parse("-1", 3),))
    assert representatives_agree(f, g, witness)
    # restriction to S is then well-defined on every sampled point
    for point in sample(cone):
        assert f.representative.evaluate(point) == g.representative.evaluate(point)


def test_identical_representatives_with_zero_witness(cone):
    f = RingElement(cone, poly.parse("x1*x2 - 1/3", 3))
    witness = IdealWitness((poly.parse("0", 3),))
    assert representatives_agree(f, f, witness)


def test_disagreeing_representatives(cone):
    f = RingElement(cone, poly.parse("x1", 3))
    g = RingElement(cone, poly.parse("x2", 3))
    witness = IdealWitness((poly.parse("0", 3),))
    assert not representatives_agree(f, g, witness)


def test_witness_length_mismatch(cone):
    f = RingElement(cone, poly.parse("x1", 3))
    with pytest.raises(DimensionMismatchError):
        representatives_agree(f, f, IdealWitness(()))


# -- caveat heuristic ---------------------------------------------------------------


def test_repeated_factor_caveat():
    doubled = SpacePresentation(
        name="doubled_line",
        ambient_dim=2,
        equations=(poly.parse("x1^2", 2),),
    )
    caveats = repeated_factor_caveats(doubled)
    assert len(caveats) == 1 and "equations[0]" in caveats[0]


def test_reduced_generators_get_no_caveat(cone, umbrella):
    assert repeated_factor_caveats(cone) == []
    assert repeated_factor_caveats(umbrella) == []


# -- space file format ----------------------------------------------------------------


def test_load_shipped_fixture_round_trip(cone):
    assert cone.name == "cone"
    assert len(cone.equations) == 1
    assert len(cone.samplers) == 1


def test_out_of_range_variable_names_field(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps({"name": "bad", "ambient_dim": 3, "equations": ["x4"]}),
        encoding="utf-8",
    )
    with pytest.raises(SpaceFormatError, match=r"equations\[0\]"):
        load_space(bad)


def test_failing_sampler_identity_names_sampler_and_equation(tmp_path):
    bad = tmp_path / "bad_sampler.json"
    bad.write_text(
        json.dumps(
            {
                "name": "bad",
                "ambient_dim": 3,
                "equations": ["x1^2 + x2^2 - x3^2"],
                "samplers": [
                    {
                        "param_dim": 2,
                        "numerators": ["x1", "x2", "0"],
                        "denominator": "1",
                        "box": [["-1", "1"], ["-1", "1"]],
                        "resolution": 3,
                    }
                ],
            }
        ),
        encoding="utf-8",
    )
    with pytest.raises(SpaceFormatError, match=r"samplers\[0\].*equations\[0\]"):
        load_space(bad)


def test_non_member_sample_point_rejected_at_load():
    with pytest.raises(SpaceFormatError, match=r"sample_points\[0\]"):
        space_from_dict(
            {
                "name": "bad",
                "ambient_dim": 2,
                "equations": ["x1*x2"],
                "sample_points": [["1", "1"]],
            }
        )


def test_missing_fields_and_bad_rationals():
    with pytest.raises(SpaceFormatError, match=r"\$\.name"):
        space_from_dict({"ambient_dim": 2})
    with pytest.raises(SpaceFormatError, match=r"\$\.ambient_dim"):
        space_from_dict({"name": "x", "ambient_dim": "huge"})
    with pytest.raises(SpaceFormatError, match=r"sample_points\[0\]\[0\]"):
        space_from_dict(
            {
                "name": "x",
                "ambient_dim": 1,
                "sample_points": [["one"]],
            }
        )


def test_unreadable_file_reports_input_error(tmp_path):
    with pytest.raises(SpaceFormatError):
        load_space(tmp_path / "missing.json")
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json", encoding="utf-8")
    with pytest.raises(SpaceFormatError, match="invalid JSON"):
        load_space(garbled)
