"""Shipped space presentations covering singular, smooth, reducible,
non-normal, boundary, and zero-dimensional cases, plus three constructed
counterexamples for the verifiers."""

from importlib import resources
from pathlib import Path

NAMES = (
    "cone",
    "sphere",
    "coordinate_cross",
    "whitney_umbrella",
    "half_line",
    "single_point",
    "usc_violation",
    "openness_violation",
    "discontinuous_section",
)


def fixture_path(name: str) -> Path:
    """Filesystem path of a shipped fixture, e.g. fixture_path('cone')."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return Path(resources.files(__package__) / f"{name}.json")
