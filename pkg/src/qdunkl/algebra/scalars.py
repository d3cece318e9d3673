"""Exact scalars: rationals, the quadratic field Q(sqrt5) and complex pairs.

Rationals are plain ``int`` or ``fractions.Fraction`` values so that the
common (purely rational) path stays on Python's native number types.
:class:`Quad` and :class:`Cplx` mix with them through the usual operators and
demote themselves back to the simpler type whenever the extra component
vanishes, which keeps equality and hashing consistent across the tower.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


def _q(x):
    """Normalise a rational to ``int`` when integral."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _rat(x):
    if type(x) is int:
        return x
    if type(x) is Fraction:
        return x.numerator if x.denominator == 1 else x
    return _q(Fraction(x))


def rdiv(a, b):
    """Exact quotient of two scalars, staying in ``int`` when possible."""
    if isinstance(a, int) and isinstance(b, int):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return _q(Fraction(a) / b)
    return a / b


class Quad:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __new__(cls, a=0, b=0):
        a, b = _rat(a), _rat(b)
        if b == 0:
            return a
        self = object.__new__(cls)
        self.a = a
        self.b = b
        return self

    # the golden ratio and its inverse show up in H3 / I2(5) coordinates
    @staticmethod
    def phi():
        return Quad(Fraction(1, 2), Fraction(1, 2))

    def _coerce(self, other):
        if isinstance(other, Quad):
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return other, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quad(self.a + o[0], self.b + o[1])

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quad(self.a - o[0], self.b - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quad(o[0] - self.a, o[1] - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        return Quad(self.a * c + 5 * self.b * d, self.a * d + self.b * c)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self):
        n = Fraction(self.norm())
        return Quad(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[1] == 0:
            if o[0] == 0:
                raise ZeroDivisionError("division by zero")
            return Quad(Fraction(self.a) / o[0], Fraction(self.b) / o[0])
        return self * Quad(*o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.inverse() * o[0]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o[0] and self.b == o[1]

    def __hash__(self):
        return hash(("Quad", self.a, self.b))

    def __bool__(self):
        return True  # b != 0 by construction

    def sign(self):
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with 5 b^2
        return sa if self.a * self.a > 5 * self.b * self.b else sb

    def __lt__(self, other):
        return sign(self - other) < 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def conjugate(self):
        return self

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __repr__(self):
        return f"Quad({self.a!s}, {self.b!s})"

    def __str__(self):
        return f"({self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt5)"


class Cplx:
    """A complex scalar ``re + i*im`` whose parts are rational or :class:`Quad`."""

    __slots__ = ("re", "im")

    def __new__(cls, re=0, im=0):
        if isinstance(re, Cplx) or isinstance(im, Cplx):
            raise TypeError("complex scalars do not nest")
        if im == 0:
            return re
        self = object.__new__(cls)
        self.re = re
        self.im = im
        return self

    @staticmethod
    def _parts(other):
        if isinstance(other, Cplx):
            return other.re, other.im
        if isinstance(other, (int, Fraction, Quad)):
            return other, 0
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Cplx(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __neg__(self):
        return Cplx(-self.re, -self.im)

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Cplx(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Cplx(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        c, d = o
        if d == 0:
            return Cplx(self.re * c, self.im * c)
        return Cplx(self.re * c - self.im * d, self.re * d + self.im * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        c, d = o
        n = c * c + d * d
        return Cplx(rdiv(self.re * c + self.im * d, n), rdiv(self.im * c - self.re * d, n))

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return Cplx(*o) / self if o[1] != 0 else _inv_cplx(self) * o[0]

    def conjugate(self):
        return Cplx(self.re, -self.im)

    def __eq__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        return hash(("Cplx", self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Cplx({self.re!r}, {self.im!r})"

    def __str__(self):
        return f"({self.re}+{self.im}*I)"


def _inv_cplx(z):
    n = z.re * z.re + z.im * z.im
    return Cplx(rdiv(z.re, n), rdiv(-z.im, n))


I = Cplx(0, 1)
SQRT5 = Quad(0, 1)

Scalar = Union[int, Fraction, Quad, Cplx]


def conj(x):
    """Complex conjugate; real scalars are returned unchanged."""
    return x.conjugate() if isinstance(x, Cplx) else x


def sign(x) -> int:
    """Sign of a real scalar (rational or in Q(sqrt5))."""
    if isinstance(x, Quad):
        return x.sign()
    if isinstance(x, Cplx):
        raise TypeError("complex scalars are not ordered")
    return (x > 0) - (x < 0)


def is_rational(x) -> bool:
    return isinstance(x, (int, Rational))


def parse_scalar(text: str):
    """Parse ``"3/4"``, ``"-2"`` or ``"a+b*sqrt5"``-free rationals from the CLI."""
    return _q(Fraction(text.strip()))


def scalar_str(x) -> str:
    """Canonical text rendering used in reports."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)
