"""Tangent spaces as derivation kernels.

A derivation at a member point x is identified with its component vector
(v1..vn); it descends to the presented function ring exactly when it
annihilates every generator, i.e. when J(x) v = 0 for the generator
Jacobian J.  Only generator rows enter J: for any combination
h = sum(a_i g_i), dh at a member point equals sum(a_i(x) dg_i) because the
g_i vanish there, so the generator kernel already is the presented-ideal
kernel.

Kernel bases are pivot-normalized from the exact reduced row echelon form
(leftmost pivots, deterministic), which makes results canonical and feeds
the frame construction directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DimensionMismatchError, NonMemberError
from .poly import Point, Polynomial, format_point
from .space import RingElement, SpacePresentation, is_member

Matrix = tuple[tuple[Fraction, ...], ...]


def _require_member(space: SpacePresentation, point: Sequence[Fraction]) -> Point:
    point = tuple(Fraction(x) for x in point)
    if not is_member(space, point):
        raise NonMemberError(
            f"point {format_point(point)} is not a member of {space.name!r}"
        )
    return point


def jacobian(space: SpacePresentation, point: Sequence[Fraction]) -> Matrix:
    """Exact generator Jacobian at a member point: row j is the gradient
    of equation j."""
    point = _require_member(space, point)
    return tuple(
        tuple(g.partial(i + 1).evaluate(point) for i in range(space.ambient_dim))
        for g in space.equations
    )


@dataclass(frozen=True)
class TangentVector:
    """A derivation at ``base``, identified with its component vector."""

    space: SpacePresentation
    base: Point
    components: tuple[Fraction, ...]

    def __post_init__(self):
        base = _require_member(self.space, self.base)
        object.__setattr__(self, "base", base)
        components = tuple(Fraction(x) for x in self.components)
        object.__setattr__(self, "components", components)
        if len(components) != self.space.ambient_dim:
            raise DimensionMismatchError(
                f"components have length {len(components)}, "
                f"expected {self.space.ambient_dim}"
            )
        J = jacobian(self.space, base)
        if any(x != 0 for x in linalg.matrix_vector(J, components)):
            raise ValueError(
                f"components {components} do not annihilate the generators at {base}"
            )


@dataclass(frozen=True)
class TangentBasis:
    """Pivot-normalized basis of the tangent space at ``base``."""

    space: SpacePresentation
    base: Point
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[TangentVector]:
        return [TangentVector(self.space, self.base, v) for v in self.basis]


def tangent_space(space: SpacePresentation, point: Sequence[Fraction]) -> TangentBasis:
    """Tangent space at a member point as the exact kernel of the Jacobian."""
    point = _require_member(space, point)
    J = jacobian(space, point)
    basis = linalg.kernel_basis(J, space.ambient_dim)
    return TangentBasis(space=space, base=point, basis=tuple(basis))


def is_tangent(
    space: SpacePresentation, point: Sequence[Fraction], components: Sequence[Fraction]
) -> bool:
    """True iff the component vector annihilates every generator at the point."""
    point = _require_member(space, point)
    if len(components) != space.ambient_dim:
        raise DimensionMismatchError(
            f"components have length {len(components)}, expected {space.ambient_dim}"
        )
    J = jacobian(space, point)
    return all(x == 0 for x in linalg.matrix_vector(J, components))


def apply_derivation(v: TangentVector, f: RingElement) -> Fraction:
    """Apply the derivation: sum_i v_i * (d_i F)(x) for the representative F.

    Independent of the choice of representative whenever the
    representatives agree on the space (witnessed equality).
    """
    if v.space != f.space:
        raise DimensionMismatchError("tangent vector and function live on different spaces")
    F = f.representative
    return sum(
        (
            c * F.partial(i + 1).evaluate(v.base)
            for i, c in enumerate(v.components)
        ),
        Fraction(0),
    )


def differential(f: RingElement, v: TangentVector) -> Fraction:
    """The differential df evaluated on a tangent vector: df(v) = v . f."""
    return apply_derivation(v, f)


@dataclass(frozen=True)
class BundlePoint:
    """A point of the tangent bundle inside R^(2n): base on S, fiber in
    the kernel at the base."""

    base: Point
    fiber: tuple[Fraction, ...]


def bundle_member(
    space: SpacePresentation, base: Sequence[Fraction], fiber: Sequence[Fraction]
) -> bool:
    """True iff base is on S and fiber is tangent at base."""
    base = tuple(Fraction(x) for x in base)
    fiber = tuple(Fraction(x) for x in fiber)
    if len(base) != space.ambient_dim or len(fiber) != space.ambient_dim:
        raise DimensionMismatchError(
            f"base and fiber must each have length {space.ambient_dim}"
        )
    if not is_member(space, base):
        return False
    return is_tangent(space, base, fiber)


def eval_bundle_function(
    space: SpacePresentation, H: Polynomial, point: BundlePoint
) -> Fraction:
    """Evaluate a polynomial in 2n variables (x1..xn, v1..vn) at a bundle
    point; this realizes functions of the base coordinates and the
    coordinate differentials."""
    n = space.ambient_dim
    if H.ambient_dim != 2 * n:
        raise DimensionMismatchError(
            f"bundle function must have ambient_dim {2 * n}, got {H.ambient_dim}"
        )
    if not bundle_member(space, point.base, point.fiber):
        raise NonMemberError(
            f"({point.base}, {point.fiber}) is not a point of the tangent bundle"
        )
    return H.evaluate(tuple(point.base) + tuple(point.fiber))
