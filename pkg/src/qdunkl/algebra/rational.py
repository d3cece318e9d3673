"""Rational functions over :class:`Polynomial` or :class:`LaurentPolynomial`.

The denominator is stored as a product of normalised (monic) factors with
multiplicities.  Every denominator that occurs in this package is a product of
linear forms or of binomials ``T^a - 1``, so keeping the factorisation that the
callers hand in makes least common multiples trivial and lets additions cancel
by trial division.  Correctness never depends on that cancellation: equality
is decided by cross multiplication.
"""

from __future__ import annotations

from .polynomial import LaurentPolynomial, Polynomial, _Sparse
from .scalars import rdiv


def _inverse_unit(unit):
    if isinstance(unit, _Sparse):
        return unit.unit_inverse()
    return rdiv(1, unit)


class RationalFunction:
    """``num / prod(f**m for f, m in factors)``."""

    __slots__ = ("num", "factors", "_den")

    def __init__(self, num, den=None):
        self._den = None
        if den is None:
            self.num = num
            self.factors = {}
            return
        if not isinstance(den, _Sparse):
            self.num = num.scale(rdiv(1, den))
            self.factors = {}
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.factors = {}
        self._absorb(den, 1)
        self._cancel()

    @classmethod
    def _raw(cls, num, factors):
        self = object.__new__(cls)
        self.num = num
        self.factors = factors
        self._den = None
        return self

    @classmethod
    def from_factors(cls, num, factors):
        """Build from an iterable of ``(factor, multiplicity)`` pairs."""
        self = cls._raw(num, {})
        for f, m in factors:
            self._absorb(f, m)
        self._cancel()
        return self

    @classmethod
    def constant(cls, c, nvars, ring=Polynomial):
        return cls._raw(ring.constant(c, nvars), {})

    def _absorb(self, factor, m):
        if m == 0:
            return
        unit, monic = factor.normalize_factor()
        inv = _inverse_unit(unit)
        for _ in range(m):
            self.num = self.num * inv
        if monic.is_constant():
            return
        self.factors[monic] = self.factors.get(monic, 0) + m

    def _cancel(self):
        if self.num.is_zero():
            self.factors = {}
            return
        for f in list(self.factors):
            m = self.factors[f]
            while m:
                q = self.num.try_divide(f)
                if q is None:
                    break
                self.num = q
                m -= 1
            if m:
                self.factors[f] = m
            else:
                del self.factors[f]

    @property
    def nvars(self):
        return self.num.nvars

    @property
    def ring(self):
        return type(self.num)

    @property
    def den(self):
        if self._den is None:
            d = self.ring.constant(1, self.nvars)
            for f, m in self.factors.items():
                d = d * f ** m
            self._den = d
        return self._den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return not self.factors

    def as_polynomial(self):
        if self.factors:
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    # arithmetic

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, _Sparse):
            return RationalFunction._raw(other, {})
        return RationalFunction._raw(self.ring.constant(other, self.nvars), {})

    def __add__(self, other):
        other = self._lift(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if not self.factors and not other.factors:
            return RationalFunction._raw(self.num + other.num, {})
        fa, fb = self.factors, other.factors
        na, nb = self.num, other.num
        merged = dict(fa)
        for f, m in fb.items():
            ma = fa.get(f, 0)
            if m > ma:
                merged[f] = m
                na = na * f ** (m - ma)
        for f, m in fa.items():
            mb = fb.get(f, 0)
            if m > mb:
                nb = nb * f ** (m - mb)
        out = RationalFunction._raw(na + nb, merged)
        out._cancel()
        return out

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, dict(self.factors))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (RationalFunction, _Sparse)):
            if other == 0:
                return RationalFunction._raw(self.num.scale(0), {})
            return RationalFunction._raw(self.num.scale(other), dict(self.factors))
        other = self._lift(other)
        num = self.num * other.num
        if num.is_zero():
            return RationalFunction._raw(num, {})
        factors = dict(self.factors)
        for f, m in other.factors.items():
            factors[f] = factors.get(f, 0) + m
        out = RationalFunction._raw(num, factors)
        if self.factors or other.factors:
            out._cancel()
        return out

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        out = RationalFunction._raw(self.den, {})
        out._absorb(self.num, 1)
        out._cancel()
        return out

    def __truediv__(self, other):
        if isinstance(other, (RationalFunction, _Sparse)):
            return self * self._lift(other).inverse()
        return RationalFunction._raw(self.num.scale(rdiv(1, other)), dict(self.factors))

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        out = RationalFunction._raw(self.ring.constant(1, self.nvars), {})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, _Sparse, int)) and not hasattr(other, "conjugate"):
            return NotImplemented
        other = self._lift(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable: equality is cross-multiplied")

    # calculus and group action

    def derivative(self, k):
        """Quotient rule, using the stored factorisation of the denominator."""
        dn = self.num.derivative(k)
        if not self.factors:
            return RationalFunction._raw(dn, {})
        fs = list(self.factors.items())
        prod_all = self.ring.constant(1, self.nvars)
        for f, _ in fs:
            prod_all = prod_all * f
        num = dn * prod_all
        for i, (f, m) in enumerate(fs):
            df = f.derivative(k)
            if df.is_zero():
                continue
            others = self.ring.constant(m, self.nvars)
            for j, (g, _) in enumerate(fs):
                if j != i:
                    others = others * g
            num = num - self.num * df * others
        out = RationalFunction._raw(num, {f: m + 1 for f, m in fs})
        out._cancel()
        return out

    def substitute_linear(self, matrix):
        out = RationalFunction._raw(self.num.substitute_linear(matrix), {})
        for f, m in self.factors.items():
            out._absorb(f.substitute_linear(matrix), m)
        return out

    def conjugate(self):
        out = RationalFunction._raw(self.num.conjugate(), {})
        for f, m in self.factors.items():
            out._absorb(f.conjugate(), m)
        return out

    def map_numerator(self, fn):
        return RationalFunction._raw(fn(self.num), dict(self.factors))

    def is_constant(self):
        """True when the function equals a scalar; returns that scalar via :meth:`constant_value`."""
        return self.constant_value() is not None

    def constant_value(self):
        if self.num.is_zero():
            return 0
        e, c = self.num.leading_term()
        de, dc = self.den.leading_term()
        ratio = c / dc if not isinstance(c, int) or not isinstance(dc, int) else rdiv(c, dc)
        if self.num == self.den * ratio:
            return ratio
        return None

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def format(self, names=None):
        if not self.factors:
            return self.num.format(names)
        den = " * ".join(
            f"({f.format(names)})" + (f"^{m}" if m > 1 else "") for f, m in self.factors.items()
        )
        return f"({self.num.format(names)}) / {den}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"


def laurent_coth_half(alpha, nvars=None):
    """``(T^alpha + 1) / (T^alpha - 1)``, i.e. ``coth(<x, alpha>/2)`` with ``t = e^x``."""
    if any(int(a) != a for a in alpha):
        raise ValueError(f"coth profile needs integer root coordinates, got {alpha}")
    alpha = tuple(int(a) for a in alpha)
    if not any(alpha):
        raise ValueError("T^alpha - 1 vanishes for alpha = 0")
    nvars = len(alpha) if nvars is None else nvars
    e = alpha + (0,) * (nvars - len(alpha))
    t = LaurentPolynomial(nvars, {e: 1})
    return RationalFunction(t + 1, t - 1)
