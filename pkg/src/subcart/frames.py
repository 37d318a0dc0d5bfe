"""Smooth local frames on rank-constant neighborhoods and the local
triviality verifier.

A frame anchored at a regular point freezes the pivot columns of the
Jacobian's reduced row echelon form there.  Evaluating the frame at
another member point solves the same pivot subsystem exactly, producing a
kernel basis whose free-column submatrix is the identity: composing the
free coordinate differentials with the frame sections gives exactly the
Kronecker delta pattern.  A rank change or pivot-pattern breakdown during
evaluation is an error, never a silent re-pivot: re-pivoting would
destroy smoothness of the sections and mask the rank boundary that local
triviality is local with respect to.

The bump function is the single non-rational evaluation in the package
(the standard exp(-1/t) smooth step on the sup-norm radial variable) and
is quarantined here; gluing multiplies by the exact dyadic value of the
computed float, so glued sections remain exact rationals, equal to the
raw frame on the inner plateau and identically zero outside the outer
radius.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DimensionMismatchError, FrameEvaluationError
from .poly import Point, format_point
from .space import Sampler, SpacePresentation
from .stratify import StratificationReport, Verdict, sup_distance
from .tangent import _require_member, jacobian

Basis = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class FrameSection:
    """Pivot-normalized kernel frame anchored at a regular member point."""

    space: SpacePresentation
    anchor: Point
    pivot_columns: tuple[int, ...]  # 0-based, ascending
    free_columns: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.free_columns)

    def pivot_valid_at(self, point: Sequence[Fraction]) -> bool:
        """True iff the frozen pivot pattern is usable at this member point:
        rank is unchanged and the pivot submatrix has full rank."""
        J = jacobian(self.space, point)
        if linalg.rank(J) != len(self.pivot_columns):
            return False
        if not self.pivot_columns:
            return True
        return (
            linalg.rank(linalg.submatrix_columns(J, self.pivot_columns))
            == len(self.pivot_columns)
        )

    def evaluate(self, point: Sequence[Fraction]) -> Basis:
        """Exact frame vectors at a member point, identity on free columns.

        Raises FrameEvaluationError when the rank or the frozen pivot
        pattern differs from the anchor: the point lies outside the
        rank-constant neighborhood this frame trivializes.
        """
        point = _require_member(self.space, point)
        J = jacobian(self.space, point)
        basis = linalg.solve_with_pivots(
            J, self.space.ambient_dim, self.pivot_columns
        )
        if basis is None:
            raise FrameEvaluationError(
                f"rank or pivot pattern at {format_point(point)} differs from the "
                f"anchor {format_point(self.anchor)} (pivot columns "
                f"{[c + 1 for c in self.pivot_columns]})"
            )
        return tuple(basis)


def frame_at(space: SpacePresentation, point: Sequence[Fraction]) -> FrameSection:
    """Build the frame at a member point (caller asserts regularity).

    Pivot columns come from the exact RREF of the Jacobian with the
    leftmost-pivot rule, so the construction is deterministic.
    """
    point = _require_member(space, point)
    _, pivots = linalg.rref(jacobian(space, point))
    free = tuple(c for c in range(space.ambient_dim) if c not in pivots)
    return FrameSection(
        space=space,
        anchor=point,
        pivot_columns=tuple(pivots),
        free_columns=free,
    )


def common_pivot_exists(
    space: SpacePresentation, a: Sequence[Fraction], b: Sequence[Fraction]
) -> bool:
    """True iff some single pivot-column set is valid at both points.

    This is the pairwise sampled form of local triviality: the kernels at
    two nearby equal-rank points admit a shared normalization exactly when
    one frame chart covers both.  Across the branches of the coordinate
    cross no shared chart exists; across the pivot-chart boundary of the
    cone one always does.
    """
    Ja, Jb = jacobian(space, a), jacobian(space, b)
    r = linalg.rank(Ja)
    if linalg.rank(Jb) != r:
        return False
    if r == 0:
        return True
    for columns in itertools.combinations(range(space.ambient_dim), r):
        if (
            linalg.rank(linalg.submatrix_columns(Ja, columns)) == r
            and linalg.rank(linalg.submatrix_columns(Jb, columns)) == r
        ):
            return True
    return False


# -- bump functions -----------------------------------------------------------


@dataclass(frozen=True)
class BumpFunction:
    """Smooth cutoff: 1 on the closed inner sup-norm ball, 0 outside the
    open outer ball, strictly between on the shell."""

    center: Point
    r_inner: Fraction
    r_outer: Fraction

    def __post_init__(self):
        if not self.r_inner < self.r_outer:
            raise ValueError("bump radii must satisfy r_inner < r_outer")
        if self.r_inner < 0:
            raise ValueError("bump radii must be nonnegative")


def _smooth_step(t: float) -> float:
    # s(t) = phi(t) / (phi(t) + phi(1-t)) with phi(t) = exp(-1/t) for t > 0
    def phi(u: float) -> float:
        return math.exp(-1.0 / u) if u > 0.0 else 0.0

    return phi(t) / (phi(t) + phi(1.0 - t))


def bump(b: BumpFunction, point: Sequence[Fraction]) -> float:
    """Approximate real bump value; every other operation stays exact.

    Exactly 1.0 on the plateau and exactly 0.0 at or beyond the outer
    radius, since those branches never touch the transcendental step.
    """
    if len(point) != len(b.center):
        raise DimensionMismatchError(
            f"point has length {len(point)}, expected {len(b.center)}"
        )
    distance = sup_distance(point, b.center)
    if distance <= b.r_inner:
        return 1.0
    if distance >= b.r_outer:
        return 0.0
    t = (distance - b.r_inner) / (b.r_outer - b.r_inner)
    return _smooth_step(1.0 - float(t))


def glued_section(
    frame: FrameSection, b: BumpFunction, point: Sequence[Fraction]
) -> Basis:
    """Frame vectors cut off by the bump: exact zero vectors at or beyond
    the outer radius, the raw frame exactly on the plateau, and the frame
    scaled by the exact dyadic value of the bump on the shell.

    An evaluation failure strictly inside the outer radius propagates: it
    means the bump radii cross the frame's rank boundary.
    """
    n = frame.space.ambient_dim
    distance = sup_distance(point, b.center)
    if distance >= b.r_outer:
        zero = tuple(Fraction(0) for _ in range(n))
        return tuple(zero for _ in range(frame.dimension))
    vectors = frame.evaluate(point)
    factor = Fraction(bump(b, point))  # floats are dyadic: exact conversion
    return tuple(tuple(c * factor for c in v) for v in vectors)


# -- smoothness ----------------------------------------------------------------


def frame_smoothness_check(
    frame: FrameSection,
    sampler: Sampler,
    params: Sequence[Fraction],
    step: Fraction,
    tol: Fraction = Fraction(1, 2),
) -> Verdict:
    """Certify smoothness of the frame components along every sampler
    parameter direction by finite-difference convergence order.

    For each component, the symmetric second difference at steps h and h/2
    must either vanish exactly at both (polynomial of degree <= 1 along
    the probe: exactly smooth) or contract by a factor within tol of 4,
    the signature of order-h^2 convergence of a smooth non-linear
    function.  All probe evaluations are exact rationals; only the final
    ratio is compared against the [4 - tol, 4 + tol] window.
    """
    params = tuple(Fraction(x) for x in params)
    if len(params) != sampler.param_dim:
        raise DimensionMismatchError(
            f"expected {sampler.param_dim} parameters, got {len(params)}"
        )
    lo, hi = 4 - Fraction(tol), 4 + Fraction(tol)

    def components_at(shift: Sequence[Fraction]) -> list[Fraction]:
        point = sampler.image([p + s for p, s in zip(params, shift)])
        return [c for vector in frame.evaluate(point) for c in vector]

    for direction in range(sampler.param_dim):
        def second_difference(h: Fraction) -> list[Fraction]:
            offset = [Fraction(0)] * sampler.param_dim
            offset[direction] = h
            plus = components_at(offset)
            mid = components_at([Fraction(0)] * sampler.param_dim)
            minus = components_at([-x for x in offset])
            return [a - 2 * m + b for a, m, b in zip(plus, mid, minus)]

        coarse = second_difference(Fraction(step))
        fine = second_difference(Fraction(step) / 2)
        for index, (a, b) in enumerate(zip(coarse, fine)):
            if a == 0 and b == 0:
                continue
            if b == 0 or not lo <= abs(a / b) <= hi:
                ratio = "undefined" if b == 0 else str(abs(a / b))
                return Verdict(
                    "smoothness",
                    False,
                    f"component {index} along parameter {direction + 1}: "
                    f"second-difference ratio {ratio} outside [{lo}, {hi}]",
                )
    return Verdict("smoothness", True)


# -- local triviality ----------------------------------------------------------


def triviality_targets(
    report: StratificationReport, anchor_index: int
) -> list[int]:
    """Indices of regular records of the same dimension strictly within
    the report's adjacency radius of the given regular record.

    Strict comparison realizes neighborhoods whose closure stays inside
    the trivializing patch; at the default radius the closest cross-branch
    pairs of the coordinate cross sit exactly at the radius and are
    thereby excluded.
    """
    anchor = report.records[anchor_index]
    return [
        j
        for j, r in enumerate(report.records)
        if j != anchor_index
        and r.label == "regular"
        and r.dim == anchor.dim
        and sup_distance(r.point, anchor.point) < report.radius
    ]


def verify_local_triviality(
    space: SpacePresentation, report: StratificationReport
) -> Verdict:
    """Sampled local triviality of the tangent bundle over the regular part.

    For every regular record: the anchored frame must build; wherever its
    frozen pivot pattern is valid at a same-stratum neighbor, the exact
    evaluation must return dimension-many vectors that annihilate the
    Jacobian with the identity pattern on free columns (checked, not
    assumed); and every same-stratum neighbor pair must admit at least one
    common pivot chart, the pairwise witness that one trivialization
    covers both points.  The coordinate-cross branches fail the last check
    when sampled across the removed origin.
    """
    checked = 0
    for i, record in enumerate(report.records):
        if record.label != "regular":
            continue
        frame = frame_at(space, record.point)
        if frame.dimension != record.dim:
            return Verdict(
                "local_triviality",
                False,
                f"frame at {format_point(record.point)} has dimension "
                f"{frame.dimension}, record says {record.dim}",
            )
        for j in triviality_targets(report, i):
            other = report.records[j]
            if not common_pivot_exists(space, record.point, other.point):
                return Verdict(
                    "local_triviality",
                    False,
                    f"no common pivot chart covers {format_point(record.point)} "
                    f"and {format_point(other.point)}: the bundle is not "
                    f"trivializable over this neighborhood",
                )
            if not frame.pivot_valid_at(other.point):
                continue  # covered by another chart; the pair check passed
            vectors = frame.evaluate(other.point)
            checked += 1
            if len(vectors) != record.dim:
                return Verdict(
                    "local_triviality",
                    False,
                    f"frame anchored at {format_point(record.point)} returned "
                    f"{len(vectors)} vectors at {format_point(other.point)}, "
                    f"expected {record.dim}",
                )
            J = jacobian(space, other.point)
            for v in vectors:
                if any(x != 0 for x in linalg.matrix_vector(J, v)):
                    return Verdict(
                        "local_triviality",
                        False,
                        f"frame vector {v} fails annihilation at "
                        f"{format_point(other.point)}",
                    )
            for k, f in enumerate(frame.free_columns):
                for l, v in enumerate(vectors):
                    if v[f] != (1 if k == l else 0):
                        return Verdict(
                            "local_triviality",
                            False,
                            f"free-column submatrix is not the identity at "
                            f"{format_point(other.point)}",
                        )
    return Verdict(
        "local_triviality", True, f"{checked} frame evaluations verified exactly"
    )
