"""Command-line interface.

Commands::

    subcart classify  FILE --point CSV [--radius R]
    subcart stratify  FILE [--radius R] [--epsilon E] [--out PATH]
    subcart frame     FILE --point CSV [--radius R] [--out PATH]
    subcart verify    FILE [--radius R] [--epsilon E] [--out PATH]

Exit codes: 0 when every verdict passes, 1 when any verdict fails, 2 on
input errors (unreadable or malformed files, non-member points, frame
evaluation outside its rank-constant neighborhood).

Reports are JSON with rational-string coordinates and are byte-identical
across runs on identical inputs: term order, grid order, and pivot choice
are all deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import frames
from .errors import SubcartError
from .poly import parse_rational
from .space import SpacePresentation, load_space, sample
from .stratify import (
    PointRecord,
    classify,
    default_adjacency_radius,
    structural_dim,
    stratify,
    sup_distance,
)
from .tangent import _require_member

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2


def _parse_point(text: str, ambient_dim: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != ambient_dim:
        raise SubcartError(
            f"--point has {len(parts)} coordinates, expected {ambient_dim}"
        )
    return tuple(parse_rational(p) for p in parts)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _radius_arg(value: str | None, points) -> Fraction:
    if value is not None:
        return parse_rational(value)
    return default_adjacency_radius(points)


def _cmd_classify(args) -> int:
    space = load_space(args.file)
    point = _parse_point(args.point, space.ambient_dim)
    _require_member(space, point)
    points = sample(space)
    radius = _radius_arg(args.radius, points)
    neighbors = [q for q in points if sup_distance(point, q) <= radius]
    label = classify(space, point, neighbors)
    record = PointRecord(point, structural_dim(space, point), label)
    _emit(record.to_json(), args.out)
    return EXIT_PASS


def _cmd_stratify(args) -> int:
    space = load_space(args.file)
    report = _build_report(space, args)
    _emit(report.to_json(), args.out)
    _summary(report)
    return EXIT_PASS if report.all_pass() else EXIT_FAIL


def _cmd_verify(args) -> int:
    space = load_space(args.file)
    report = _build_report(space, args)
    triviality = frames.verify_local_triviality(space, report)
    payload = {
        "space": report.space_name,
        "verdicts": {
            **{v.name: v.to_json() for v in report.verdicts},
            triviality.name: triviality.to_json(),
        },
        "params": {"radius": str(report.radius), "epsilon": str(report.epsilon)},
        "counts": {
            "records": len(report.records),
            "regular": sum(1 for r in report.records if r.label == "regular"),
            "singular": sum(1 for r in report.records if r.label == "singular"),
        },
        "caveats": list(report.caveats),
    }
    _emit(payload, args.out)
    _summary(report, triviality)
    return EXIT_PASS if report.all_pass() and triviality.passed else EXIT_FAIL


def _cmd_frame(args) -> int:
    space = load_space(args.file)
    anchor = _parse_point(args.point, space.ambient_dim)
    _require_member(space, anchor)
    report = _build_report(space, args)
    records = report.records
    anchor_record = next(
        (i for i, r in enumerate(records) if r.point == anchor), None
    )
    anchor_dim = structural_dim(space, anchor)
    neighbors = [
        q
        for q in (r.point for r in records if r.label == "regular")
        if q != anchor
        and sup_distance(q, anchor) < report.radius
        and structural_dim(space, q) == anchor_dim
    ]
    if anchor_record is not None and records[anchor_record].label == "singular":
        raise SubcartError(
            f"cannot anchor a frame at the singular point {args.point!r}"
        )
    frame = frames.frame_at(space, anchor)
    evaluations = []
    for q in neighbors:
        if not frames.common_pivot_exists(space, anchor, q):
            raise SubcartError(
                f"tangent bundle is not trivializable between the anchor and "
                f"{[str(c) for c in q]}: no common pivot chart exists"
            )
        if not frame.pivot_valid_at(q):
            continue
        basis = frame.evaluate(q)
        evaluations.append(
            {
                "point": [str(c) for c in q],
                "basis": [[str(c) for c in v] for v in basis],
            }
        )
    payload = {
        "anchor": [str(c) for c in frame.anchor],
        "pivots": [c + 1 for c in frame.pivot_columns],
        "free": [c + 1 for c in frame.free_columns],
        "evaluations": evaluations,
    }
    _emit(payload, args.out)
    return EXIT_PASS


def _build_report(space: SpacePresentation, args):
    radius = parse_rational(args.radius) if args.radius else None
    epsilon = (
        parse_rational(args.epsilon)
        if getattr(args, "epsilon", None)
        else None
    )
    return stratify(space, radius=radius, epsilon=epsilon)


def _summary(report, *extra) -> None:
    verdicts = list(report.verdicts) + list(extra)
    counts = (
        f"records: {len(report.records)} "
        f"(regular {sum(1 for r in report.records if r.label == 'regular')}, "
        f"singular {sum(1 for r in report.records if r.label == 'singular')})"
    )
    lines = [counts] + [
        f"{v.name}: {'pass' if v.passed else 'FAIL'}" for v in verdicts
    ]
    print("\n".join(lines), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subcart",
        description="Exact tangent-space and regular/singular analysis of "
        "finitely presented subspaces of R^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, needs_point, needs_epsilon in (
        ("classify", _cmd_classify, True, False),
        ("stratify", _cmd_stratify, False, True),
        ("frame", _cmd_frame, True, False),
        ("verify", _cmd_verify, False, True),
    ):
        p = sub.add_parser(name)
        p.add_argument("file", help="space presentation JSON file")
        if needs_point:
            p.add_argument(
                "--point",
                required=True,
                help="comma-separated rational coordinates, e.g. '1/2,0,1'",
            )
        p.add_argument("--radius", help="adjacency radius (rational string)")
        if needs_epsilon:
            p.add_argument("--epsilon", help="density radius (rational string)")
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument(
            "--seed",
            type=int,
            default=0,
            help="reserved for randomized sampling extensions; "
            "current pipelines are deterministic",
        )
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SubcartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
