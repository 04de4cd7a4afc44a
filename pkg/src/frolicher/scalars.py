"""Exact coefficient fields: the rationals and the Gaussian rationals Q(i).

Rational values are plain :class:`fractions.Fraction` objects.  A
:class:`GaussianRational` is only ever produced when the imaginary part is
nonzero; arithmetic that cancels the imaginary part hands back a Fraction, so
rational models never pay for the complex field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ParseError

__all__ = ["GaussianRational", "Scalar", "I", "make", "conj", "parse_scalar", "format_scalar"]


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)


def make(re, im=0) -> Scalar:
    """Build a field element, demoting to Fraction when the imaginary part vanishes."""
    im = Fraction(im)
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


def conj(x) -> Scalar:
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def is_gaussian(x) -> bool:
    return isinstance(x, GaussianRational)


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?"
    rf"|(?P<imonly>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*i)\s*$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"a/b"``, ``"a/b+c/d i"``, ``"c/d i"`` or ``"-i"`` into an exact scalar.

    Decimal points are rejected: model files carry exact fractions only.
    """
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        raise ParseError(f"coefficient must be a fraction string, got {text!r}")
    m = _SCALAR_RE.match(text)
    if not m:
        raise ParseError(f"malformed exact scalar {text!r}")
    try:
        if m.group("re") is not None:
            re_part = Fraction(m.group("re"))
            if m.group("sign") is None:
                return re_part
            mag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
            return make(re_part, mag if m.group("sign") == "+" else -mag)
        im_txt = m.group("imonly")
        if im_txt in ("", "+"):
            im_part = Fraction(1)
        elif im_txt == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(im_txt)
        return make(0, im_part)
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar` (canonical form)."""
    if isinstance(x, GaussianRational):
        if x.re == 0:
            return f"{x.im}i" if x.im not in (1, -1) else ("i" if x.im == 1 else "-i")
        sign = "+" if x.im > 0 else "-"
        mag = abs(x.im)
        return f"{x.re}{sign}{mag if mag != 1 else ''}i"
    return str(Fraction(x))
