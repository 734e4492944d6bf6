"""Exact scalars: rationals (``fractions.Fraction``) and complex rationals.

Real scalars are plain :class:`~fractions.Fraction` values.  Complex scalars
are :class:`QComplex`, an immutable pair of fractions.  Both support the field
operations used by the elimination routines in :mod:`tvlab.core.linalg`.
"""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Union


class Field(str, Enum):
    R = "R"
    C = "C"

    @property
    def real_dim(self) -> int:
        """Real dimension of the field: 1 for R, 2 for C."""
        return 1 if self is Field.R else 2


class QComplex:
    """A complex number whose real and imaginary parts are exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QComplex):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QComplex is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QComplex):
            return other
        if isinstance(other, (int, Rational)):
            return QComplex(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("QComplex division by zero")
        return QComplex((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QComplex({format_scalar(self.re)}, {format_scalar(self.im)})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QComplex]

I = QComplex(0, 1)


def to_field(x, field: Field) -> Scalar:
    """Coerce ``x`` into the scalar type used for ``field``."""
    if field is Field.R:
        if isinstance(x, QComplex):
            if x.im != 0:
                raise ValueError(f"non-real value {x} in a real field")
            return x.re
        return Fraction(x)
    return x if isinstance(x, QComplex) else QComplex(x)


def re_im(x: Scalar) -> tuple[Fraction, Fraction]:
    if isinstance(x, QComplex):
        return x.re, x.im
    return Fraction(x), Fraction(0)


def conj(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, QComplex) else x


def format_scalar(x) -> str:
    """Render ``x`` as ``"p/q"`` (or ``"a+bi"`` for non-real complex values)."""
    if isinstance(x, QComplex):
        if x.im == 0:
            return format_scalar(x.re)
        im = format_scalar(x.im)
        if x.re == 0:
            return f"{im}i"
        sign = "" if im.startswith("-") else "+"
        return f"{format_scalar(x.re)}{sign}{im}i"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(rf"^(?P<re>{_RAT})?(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$")


def parse_scalar(text, field: Field = Field.R) -> Scalar:
    """Parse ``"p/q"`` or ``"a+bi"``; also accepts ints and ``[re, im]`` pairs.

    Floats are rejected so that nothing inexact leaks into the exact layer.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise TypeError(f"refusing inexact scalar {text!r}")
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise ValueError(f"complex pair must have two entries: {text!r}")
        return to_field(QComplex(parse_scalar(text[0]), parse_scalar(text[1])), field)
    if isinstance(text, (int, Fraction, QComplex)):
        return to_field(text, field)
    s = str(text).strip().replace(" ", "")
    if s.endswith("i"):
        m = _COMPLEX_RE.match(s)
        if not m:
            raise ValueError(f"cannot parse complex scalar {text!r}")
        im = m.group("im")
        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"
        value = QComplex(Fraction(m.group("re") or 0), Fraction(im))
        return to_field(value, field)
    if not re.fullmatch(_RAT, s):
        raise ValueError(f"cannot parse rational {text!r}")
    return to_field(Fraction(s), field)
