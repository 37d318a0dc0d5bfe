"""Presentations of differential subspaces S of R^n.

A space is presented by a finite list of polynomial equations (generators
of the ideal of functions vanishing on S), optional semialgebraic
inequality constraints, and exact sample sources.  Grid points of R^n
rarely lie on a variety exactly, so sampling goes through rational
parameterizations (samplers) whose images are on S by polynomial identity,
plus optional explicit rational points.

Equality of two polynomial representatives as functions on S is certified
by caller-supplied witnesses: F and G agree on S when F - G is an explicit
combination sum(a_i * g_i) of the presented generators.  No general ideal
membership is attempted.

Caveat: when the presented generators generate a strictly smaller ideal
than the full vanishing ideal of S (for example a generator with a
repeated factor, like x1^2), tangent spaces computed downstream
over-approximate the true ones.  See ``repeated_factor_caveats``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import poly
from .errors import (
    DimensionMismatchError,
    NoSampleSourceError,
    SamplerInvariantError,
    SpaceFormatError,
    SubcartError,
)
from .poly import Point, Polynomial, format_point

Inequality = tuple[Polynomial, bool]  # (polynomial, strict?)


@dataclass(frozen=True)
class Sampler:
    """Rational parameterization whose image lies exactly on the space.

    Maps an axis-aligned rational grid in parameter space through
    numerators/denominator; ``param_box`` holds one (lo, hi) pair per
    parameter and ``param_resolution`` grid values are taken per axis,
    endpoints included.
    """

    param_dim: int
    numerators: tuple[Polynomial, ...]
    denominator: Polynomial
    param_box: tuple[tuple[Fraction, Fraction], ...]
    param_resolution: int

    def __post_init__(self):
        if len(self.param_box) != self.param_dim:
            raise DimensionMismatchError(
                f"param_box has {len(self.param_box)} entries, expected {self.param_dim}"
            )
        for p in (*self.numerators, self.denominator):
            if p.ambient_dim != self.param_dim:
                raise DimensionMismatchError(
                    "sampler polynomials must live in the parameter ring"
                )
        if self.param_resolution < 1:
            raise ValueError("param_resolution must be >= 1")

    def axis_values(self, axis: int) -> list[Fraction]:
        lo, hi = self.param_box[axis]
        if self.param_resolution == 1:
            return [lo]
        step = (hi - lo) / (self.param_resolution - 1)
        return [lo + step * k for k in range(self.param_resolution)]

    def grid(self) -> list[Point]:
        """All grid parameter points, first axis slowest (row-major)."""
        axes = [self.axis_values(a) for a in range(self.param_dim)]
        return [tuple(p) for p in itertools.product(*axes)]

    def image(self, params: Sequence[Fraction]) -> Point:
        """Exact image of one parameter point; denominator must not vanish."""
        den = self.denominator.evaluate(params)
        if den == 0:
            raise SamplerInvariantError(
                f"sampler denominator vanishes at parameters {format_point(params)}"
            )
        return tuple(num.evaluate(params) / den for num in self.numerators)


@dataclass(frozen=True)
class SpacePresentation:
    """A subspace of R^n presented by generators and constraints."""

    name: str
    ambient_dim: int
    equations: tuple[Polynomial, ...] = ()
    inequalities: tuple[Inequality, ...] = ()
    samplers: tuple[Sampler, ...] = ()
    sample_points: tuple[Point, ...] = ()

    def __post_init__(self):
        for g in self.equations:
            if g.ambient_dim != self.ambient_dim:
                raise DimensionMismatchError(
                    f"equation {g} has ambient_dim {g.ambient_dim}, "
                    f"expected {self.ambient_dim}"
                )
        for h, _ in self.inequalities:
            if h.ambient_dim != self.ambient_dim:
                raise DimensionMismatchError(
                    f"inequality {h} has ambient_dim {h.ambient_dim}, "
                    f"expected {self.ambient_dim}"
                )
        for s in self.samplers:
            if len(s.numerators) != self.ambient_dim:
                raise DimensionMismatchError(
                    f"sampler has {len(s.numerators)} numerators, "
                    f"expected {self.ambient_dim}"
                )
        for p in self.sample_points:
            if len(p) != self.ambient_dim:
                raise DimensionMismatchError(
                    f"sample point {p} has length {len(p)}, expected {self.ambient_dim}"
                )


@dataclass(frozen=True)
class RingElement:
    """A function on S given by a polynomial representative."""

    space: SpacePresentation
    representative: Polynomial

    def __post_init__(self):
        if self.representative.ambient_dim != self.space.ambient_dim:
            raise DimensionMismatchError(
                "representative must live in the space's ambient ring"
            )


@dataclass(frozen=True)
class IdealWitness:
    """Coefficients a_1..a_k certifying F - G = sum(a_i * g_i)."""

    coefficients: tuple[Polynomial, ...]


def is_member(space: SpacePresentation, point: Sequence[Fraction]) -> bool:
    """Exact membership: all equations vanish and all inequalities hold."""
    if len(point) != space.ambient_dim:
        raise DimensionMismatchError(
            f"point has length {len(point)}, expected {space.ambient_dim}"
        )
    for g in space.equations:
        if g.evaluate(point) != 0:
            return False
    for h, strict in space.inequalities:
        value = h.evaluate(point)
        if strict and not value > 0:
            return False
        if not strict and not value >= 0:
            return False
    return True


def compose_cleared(
    equation: Polynomial, numerators: Sequence[Polynomial], denominator: Polynomial
) -> Polynomial:
    """denominator^deg(g) * g(numerators / denominator), exactly.

    Clearing denominators keeps the composition polynomial: each monomial
    c * x^e of total degree |e| becomes c * prod(num_i^e_i) * den^(d - |e|)
    where d is the total degree of g.
    """
    d = equation.total_degree()
    param_dim = denominator.ambient_dim
    result = poly.zero(param_dim)
    for exponent, coeff in equation.terms.items():
        term = poly.constant(coeff, param_dim)
        for num, e in zip(numerators, exponent):
            term = term * num**e
        term = term * denominator ** (d - sum(exponent))
        result = result + term
    return result


def validate_sampler(space: SpacePresentation, sampler: Sampler) -> bool:
    """True iff the sampler's image provably lies on the space.

    Checks the polynomial identity den^deg(g) * g(nums/den) == 0 for every
    equation g, and that the denominator is nonzero at every grid
    parameter point.
    """
    if len(sampler.numerators) != space.ambient_dim:
        raise DimensionMismatchError(
            f"sampler has {len(sampler.numerators)} numerators, "
            f"expected {space.ambient_dim}"
        )
    for g in space.equations:
        if not compose_cleared(g, sampler.numerators, sampler.denominator).is_zero():
            return False
    for params in sampler.grid():
        if sampler.denominator.evaluate(params) == 0:
            return False
    return True


def sample(space: SpacePresentation) -> list[Point]:
    """Deterministic exact sample points: sampler grids in order, then
    explicit points, deduplicated keeping first occurrences.

    Every returned point is verified to be a member; a sampler image that
    is not (an inequality violation, since equation vanishing is
    identical) raises SamplerInvariantError.
    """
    if not space.samplers and not space.sample_points:
        raise NoSampleSourceError(
            f"space {space.name!r} has no samplers and no explicit sample points"
        )
    seen: dict[Point, None] = {}
    for si, sampler in enumerate(space.samplers):
        if not validate_sampler(space, sampler):
            raise SamplerInvariantError(
                f"sampler {si} of space {space.name!r} violates its identity invariant"
            )
        for params in sampler.grid():
            point = sampler.image(params)
            if not is_member(space, point):
                raise SamplerInvariantError(
                    f"sampler {si} image {format_point(point)} violates the inequality constraints"
                )
            seen.setdefault(point, None)
    for point in space.sample_points:
        if not is_member(space, point):
            raise SamplerInvariantError(
                f"explicit sample point {format_point(point)} is not a member of {space.name!r}"
            )
        seen.setdefault(point, None)
    return list(seen)


def representatives_agree(
    f: RingElement, g: RingElement, witness: IdealWitness
) -> bool:
    """True iff F - G = sum(a_i * g_i) holds as an exact polynomial identity."""
    if f.space != g.space:
        raise DimensionMismatchError("ring elements live on different spaces")
    equations = f.space.equations
    if len(witness.coefficients) != len(equations):
        raise DimensionMismatchError(
            f"witness has {len(witness.coefficients)} coefficients, "
            f"expected {len(equations)}"
        )
    difference = f.representative - g.representative
    combo = poly.zero(f.space.ambient_dim)
    for a, gen in zip(witness.coefficients, equations):
        combo = combo + a * gen
    return difference == combo


def repeated_factor_caveats(space: SpacePresentation) -> list[str]:
    """Cheap syntactic screen for non-reduced generators.

    Flags any equation divisible by the square of a variable (every term
    has exponent >= 2 in that variable), in which case computed tangent
    dimensions may exceed the true structural dimensions.
    """
    caveats = []
    for idx, g in enumerate(space.equations):
        terms = g.terms
        if not terms:
            continue
        for var in range(space.ambient_dim):
            if all(exponent[var] >= 2 for exponent in terms):
                caveats.append(
                    f"equations[{idx}] is divisible by x{var + 1}^2; computed "
                    "dimensions may exceed true structural dimensions"
                )
                break
    return caveats


# -- space file format ---------------------------------------------------------


def _want(obj: dict, field_name: str, kind, path: str):
    if field_name not in obj:
        raise SpaceFormatError(f"{path}.{field_name}", "missing required field")
    value = obj[field_name]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise SpaceFormatError(
            f"{path}.{field_name}", f"expected {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _parse_poly(text, ambient_dim: int, path: str) -> Polynomial:
    if not isinstance(text, str):
        raise SpaceFormatError(path, "expected a polynomial string")
    try:
        return poly.parse(text, ambient_dim)
    except SubcartError as exc:
        raise SpaceFormatError(path, str(exc)) from None


def _parse_rational(text, path: str) -> Fraction:
    if not isinstance(text, str):
        raise SpaceFormatError(path, "expected a rational string")
    try:
        return poly.parse_rational(text)
    except SubcartError as exc:
        raise SpaceFormatError(path, str(exc)) from None


def space_from_dict(data: dict) -> SpacePresentation:
    """Build and fully validate a presentation from the JSON schema."""
    if not isinstance(data, dict):
        raise SpaceFormatError("$", "expected a JSON object")
    name = _want(data, "name", str, "$")
    ambient_dim = _want(data, "ambient_dim", int, "$")
    if ambient_dim < 1:
        raise SpaceFormatError("$.ambient_dim", "must be a positive integer")

    equations = tuple(
        _parse_poly(text, ambient_dim, f"equations[{i}]")
        for i, text in enumerate(data.get("equations", []))
    )

    inequalities = []
    for i, entry in enumerate(data.get("inequalities", [])):
        if not isinstance(entry, dict):
            raise SpaceFormatError(f"inequalities[{i}]", "expected an object")
        h = _parse_poly(entry.get("poly"), ambient_dim, f"inequalities[{i}].poly")
        strict = entry.get("strict", False)
        if not isinstance(strict, bool):
            raise SpaceFormatError(f"inequalities[{i}].strict", "expected a boolean")
        inequalities.append((h, strict))

    samplers = []
    for i, entry in enumerate(data.get("samplers", [])):
        path = f"samplers[{i}]"
        if not isinstance(entry, dict):
            raise SpaceFormatError(path, "expected an object")
        param_dim = _want(entry, "param_dim", int, path)
        numerators = entry.get("numerators", [])
        if len(numerators) != ambient_dim:
            raise SpaceFormatError(
                f"{path}.numerators",
                f"expected {ambient_dim} entries, got {len(numerators)}",
            )
        nums = tuple(
            _parse_poly(text, param_dim, f"{path}.numerators[{j}]")
            for j, text in enumerate(numerators)
        )
        den = _parse_poly(entry.get("denominator", "1"), param_dim, f"{path}.denominator")
        box_entries = _want(entry, "box", list, path)
        if len(box_entries) != param_dim:
            raise SpaceFormatError(
                f"{path}.box", f"expected {param_dim} entries, got {len(box_entries)}"
            )
        box = []
        for j, pair in enumerate(box_entries):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SpaceFormatError(f"{path}.box[{j}]", "expected [lo, hi]")
            lo = _parse_rational(pair[0], f"{path}.box[{j}][0]")
            hi = _parse_rational(pair[1], f"{path}.box[{j}][1]")
            if lo > hi:
                raise SpaceFormatError(f"{path}.box[{j}]", "lo must be <= hi")
            box.append((lo, hi))
        resolution = _want(entry, "resolution", int, path)
        if resolution < 1:
            raise SpaceFormatError(f"{path}.resolution", "must be >= 1")
        samplers.append(
            Sampler(
                param_dim=param_dim,
                numerators=nums,
                denominator=den,
                param_box=tuple(box),
                param_resolution=resolution,
            )
        )

    points = []
    for i, coords in enumerate(data.get("sample_points", [])):
        path = f"sample_points[{i}]"
        if not isinstance(coords, list) or len(coords) != ambient_dim:
            raise SpaceFormatError(path, f"expected {ambient_dim} rational strings")
        points.append(
            tuple(_parse_rational(c, f"{path}[{j}]") for j, c in enumerate(coords))
        )

    space = SpacePresentation(
        name=name,
        ambient_dim=ambient_dim,
        equations=equations,
        inequalities=tuple(inequalities),
        samplers=tuple(samplers),
        sample_points=tuple(points),
    )

    # load-time invariants: sampler identities and membership of all points
    for i, sampler in enumerate(space.samplers):
        for gi, g in enumerate(space.equations):
            if not compose_cleared(g, sampler.numerators, sampler.denominator).is_zero():
                raise SpaceFormatError(
                    f"samplers[{i}]",
                    f"composition with equations[{gi}] is not identically zero",
                )
        for params in sampler.grid():
            if sampler.denominator.evaluate(params) == 0:
                raise SpaceFormatError(
                    f"samplers[{i}].denominator", f"vanishes at grid parameters {format_point(params)}"
                )
            if not is_member(space, sampler.image(params)):
                raise SpaceFormatError(
                    f"samplers[{i}]",
                    f"grid image at parameters {format_point(params)} violates the constraints",
                )
    for i, point in enumerate(space.sample_points):
        if not is_member(space, point):
            raise SpaceFormatError(f"sample_points[{i}]", "point is not a member")
    return space


def load_space(path: str | Path) -> SpacePresentation:
    """Load and validate a space presentation from a JSON file."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpaceFormatError("$", f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SpaceFormatError("$", f"invalid JSON: {exc}") from None
    return space_from_dict(data)
