"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in n variables x1..xn is stored as a map from exponent
vectors (length-n tuples of nonnegative ints) to nonzero Fraction
coefficients.  The zero polynomial has an empty term map.  All values are
immutable after construction and every operation is pure, so instances
are safe to share freely.

Printing uses a fixed graded-lexicographic term order, which makes the
text form canonical: ``parse(str(p), p.ambient_dim) == p`` always holds.

Grammar accepted by :func:`parse` (whitespace insignificant)::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := 'x' uint | rational | '(' expr ')'
    rational := int ('/' uint)?

Implicit multiplication is not allowed, and exponents are nonnegative
integers only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import DimensionMismatchError, ParseError

Exponent = tuple[int, ...]
Point = tuple[Fraction, ...]


def format_point(point: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(c) for c in point) + ")"


def _grlex_key(exponent: Exponent) -> tuple:
    # graded lexicographic: compare total degree, then the tuple itself
    return (sum(exponent), exponent)


class Polynomial:
    """Immutable exact polynomial in variables x1..x{ambient_dim}."""

    __slots__ = ("ambient_dim", "_terms")

    def __init__(self, ambient_dim: int, terms: Mapping[Exponent, Fraction]):
        if ambient_dim < 1:
            raise DimensionMismatchError("ambient_dim must be >= 1")
        cleaned: dict[Exponent, Fraction] = {}
        for exponent, coeff in terms.items():
            exponent = tuple(exponent)
            if len(exponent) != ambient_dim:
                raise DimensionMismatchError(
                    f"exponent vector {exponent} has length {len(exponent)}, "
                    f"expected {ambient_dim}"
                )
            if any(e < 0 for e in exponent):
                raise ValueError(f"negative exponent in {exponent}")
            coeff = Fraction(coeff)
            if coeff != 0:
                cleaned[exponent] = coeff
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """Copy of the term map (exponent vector -> nonzero coefficient)."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention."""
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(self.sorted_terms())))

    # -- ring operations ---------------------------------------------------

    def _check_same_dim(self, other: "Polynomial") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_dim(other)
        out = dict(self._terms)
        for exponent, coeff in other._terms.items():
            out[exponent] = out.get(exponent, Fraction(0)) + coeff
        return Polynomial(self.ambient_dim, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ambient_dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_dim(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exponent = tuple(a + b for a, b in zip(ea, eb))
                out[exponent] = out.get(exponent, Fraction(0)) + ca * cb
        return Polynomial(self.ambient_dim, out)

    def scale(self, factor: Fraction | int) -> "Polynomial":
        factor = Fraction(factor)
        return Polynomial(
            self.ambient_dim, {e: c * factor for e, c in self._terms.items()}
        )

    def __pow__(self, power: int) -> "Polynomial":
        if power < 0:
            raise ValueError("negative powers are not polynomial")
        result = constant(1, self.ambient_dim)
        for _ in range(power):
            result = result * self
        return result

    # -- calculus / evaluation ---------------------------------------------

    def partial(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to x{index} (1-based)."""
        if not 1 <= index <= self.ambient_dim:
            raise DimensionMismatchError(
                f"variable index {index} out of range 1..{self.ambient_dim}"
            )
        i = index - 1
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self._terms.items():
            e = exponent[i]
            if e == 0:
                continue
            lowered = exponent[:i] + (e - 1,) + exponent[i + 1 :]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        return Polynomial(self.ambient_dim, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Exact value at a rational point of matching length."""
        if len(point) != self.ambient_dim:
            raise DimensionMismatchError(
                f"point has length {len(point)}, expected {self.ambient_dim}"
            )
        values = [Fraction(x) for x in point]
        total = Fraction(0)
        for exponent, coeff in self._terms.items():
            term = coeff
            for e, v in zip(exponent, values):
                if e:
                    term *= v**e
            total += term
        return total

    def compose(self, substitutions: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute a polynomial for each variable (all in one shared ring)."""
        if len(substitutions) != self.ambient_dim:
            raise DimensionMismatchError(
                f"expected {self.ambient_dim} substitutions, got {len(substitutions)}"
            )
        target_dim = substitutions[0].ambient_dim
        result = zero(target_dim)
        for exponent, coeff in self._terms.items():
            term = constant(coeff, target_dim)
            for sub, e in zip(substitutions, exponent):
                term = term * sub**e
            result = result + term
        return result

    # -- printing ------------------------------------------------------------

    def _monomial_str(self, exponent: Exponent) -> str:
        parts = []
        for i, e in enumerate(exponent):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for position, (exponent, coeff) in enumerate(self.sorted_terms()):
            monomial = self._monomial_str(exponent)
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if position == 0:
                # a leading negative coefficient prints as a rational literal
                if coeff < 0:
                    body = f"-{magnitude}*{monomial}" if monomial else str(coeff)
                pieces.append(body)
            else:
                pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self.ambient_dim}, {str(self)!r})"


# -- constructors ------------------------------------------------------------


def zero(ambient_dim: int) -> Polynomial:
    return Polynomial(ambient_dim, {})


def constant(value: Fraction | int, ambient_dim: int) -> Polynomial:
    return Polynomial(ambient_dim, {(0,) * ambient_dim: Fraction(value)})


def variable(index: int, ambient_dim: int) -> Polynomial:
    """The coordinate polynomial x{index}, 1-based."""
    if not 1 <= index <= ambient_dim:
        raise DimensionMismatchError(
            f"variable index {index} out of range 1..{ambient_dim}"
        )
    exponent = tuple(1 if i == index - 1 else 0 for i in range(ambient_dim))
    return Polynomial(ambient_dim, {exponent: Fraction(1)})


# -- parser ------------------------------------------------------------------

_TOKEN_KINDS = ("var", "int", "op", "end")


class _Token:
    __slots__ = ("kind", "value", "position")

    def __init__(self, kind: str, value, position: int):
        self.kind = kind
        self.value = value
        self.position = position


def _tokenize(text: str) -> Iterator[_Token]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            yield _Token("op", ch, i)
            i += 1
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected variable index after 'x'", text, i)
            yield _Token("var", int(text[i + 1 : j]), i)
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield _Token("int", int(text[i:j]), i)
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    yield _Token("end", None, n)


class _Parser:
    """Recursive-descent parser for the expression grammar."""

    def __init__(self, text: str, ambient_dim: int):
        self.text = text
        self.ambient_dim = ambient_dim
        self.tokens = list(_tokenize(text))
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, message: str, token: _Token):
        raise ParseError(message, self.text, token.position)

    def parse(self) -> Polynomial:
        result = self.expr()
        trailing = self.peek()
        if trailing.kind != "end":
            self.fail("unexpected trailing input", trailing)
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.advance().value
            right = self.term()
            result = result + right if op == "+" else result - right
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek().kind == "op" and self.peek().value == "*":
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek().kind == "op" and self.peek().value == "^":
            caret = self.advance()
            exponent = self.peek()
            if exponent.kind != "int":
                self.fail("expected nonnegative integer exponent after '^'", caret)
            self.advance()
            return base ** exponent.value
        return base

    def base(self) -> Polynomial:
        token = self.advance()
        if token.kind == "var":
            if not 1 <= token.value <= self.ambient_dim:
                self.fail(
                    f"variable index {token.value} out of range 1..{self.ambient_dim}",
                    token,
                )
            return variable(token.value, self.ambient_dim)
        if token.kind == "op" and token.value == "(":
            inner = self.expr()
            closing = self.advance()
            if not (closing.kind == "op" and closing.value == ")"):
                self.fail("expected ')'", closing)
            return inner
        # rational := int ('/' uint)?, with an optional leading '-'
        sign = 1
        if token.kind == "op" and token.value == "-":
            sign = -1
            token = self.advance()
        if token.kind != "int":
            self.fail("expected variable, rational, or '('", token)
        numerator = sign * token.value
        denominator = 1
        if self.peek().kind == "op" and self.peek().value == "/":
            slash = self.advance()
            denominator_token = self.peek()
            if denominator_token.kind != "int":
                self.fail("expected integer denominator after '/'", slash)
            self.advance()
            denominator = denominator_token.value
            if denominator == 0:
                self.fail("zero denominator", denominator_token)
        return constant(Fraction(numerator, denominator), self.ambient_dim)


def parse(text: str, ambient_dim: int) -> Polynomial:
    """Parse an expression into its canonical expanded polynomial."""
    return _Parser(text, ambient_dim).parse()


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal such as '3/2' or '-1' exactly."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational literal: {exc}", text, 0) from None
    return value
