"""Exception types shared across the package."""


class SubcartError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SubcartError):
    """Polynomial text does not conform to the expression grammar."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} (at position {position} in {text!r})")
        self.text = text
        self.position = position


class DimensionMismatchError(SubcartError):
    """Operands disagree on ambient dimension, length, or index range."""


class NonMemberError(SubcartError):
    """A point required to lie on the presented space does not."""


class SpaceFormatError(SubcartError):
    """A space file violates the schema; message names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class SamplerInvariantError(SubcartError):
    """A sampler fails its identity, denominator, or constraint invariant."""


class NoSampleSourceError(SubcartError):
    """The presentation has neither samplers nor explicit sample points."""


class FrameEvaluationError(SubcartError):
    """Rank or pivot pattern changed: the point is outside the frame's
    rank-constant neighborhood."""
