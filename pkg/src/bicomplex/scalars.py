"""Exact Gaussian-rational scalars.

The whole engine computes over Q(i): complex numbers whose real and
imaginary parts are rational.  Every operation is exact; there is no
floating point anywhere downstream of this module.
"""

from __future__ import annotations

import re as _regex
from dataclasses import dataclass
from fractions import Fraction

_RAT = r"-?\d+(?:/\d+)?"
_RE_REAL = _regex.compile(rf"^({_RAT})$")
_RE_IMAG = _regex.compile(r"^(-?)(\d+(?:/\d+)?)?i$")
_RE_FULL = _regex.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)?i$")


@dataclass(frozen=True, slots=True)
class Scalar:
    """An element of Q(i), stored as reduced real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __add__(self, other: Scalar) -> Scalar:
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: Scalar) -> Scalar:
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> Scalar:
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: Scalar) -> Scalar:
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: Scalar) -> Scalar:
        return self * other.inverse()

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        n = self.re * self.re + self.im * self.im
        return Scalar(self.re / n, -self.im / n)

    def conjugate(self) -> Scalar:
        return Scalar(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Scalar({format_scalar(self)!r})"


def sc(re: object, im: object = 0) -> Scalar:
    """Build a Scalar from ints, Fractions or strings like '1/2'."""
    return Scalar(Fraction(re), Fraction(im))


ZERO = sc(0)
ONE = sc(1)
MINUS_ONE = sc(-1)
I = sc(0, 1)


def _format_rat(f: Fraction) -> str:
    return str(f)


def format_scalar(s: Scalar) -> str:
    """Canonical literal: `rat`, `rat i`, `rat + rat i`, `rat - rat i`.

    Examples: ``3/2``, ``-i``, ``2-1/3i``.  The output is whitespace-free
    so it can be used as a single token in the file formats, and parses
    back to the identical scalar.
    """
    re_, im_ = s.re, s.im
    if not im_:
        return _format_rat(re_)
    if im_ == 1:
        imag = "i"
    elif im_ == -1:
        imag = "-i"
    else:
        imag = f"{_format_rat(im_)}i"
    if not re_:
        return imag
    if im_ > 0:
        return f"{_format_rat(re_)}+{imag}"
    # imag already starts with '-'
    return f"{_format_rat(re_)}{imag}"


def parse_scalar(text: str) -> Scalar:
    """Parse a scalar literal.  Raises ValueError on malformed input."""
    t = text.strip().replace(" ", "")
    m = _RE_REAL.match(t)
    if m:
        return Scalar(Fraction(m.group(1)), Fraction(0))
    m = _RE_IMAG.match(t)
    if m:
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            mag = -mag
        return Scalar(Fraction(0), mag)
    m = _RE_FULL.match(t)
    if m:
        re_ = Fraction(m.group(1))
        mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            mag = -mag
        return Scalar(re_, mag)
    raise ValueError(f"malformed scalar literal: {text!r}")
