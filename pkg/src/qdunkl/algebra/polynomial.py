"""Sparse multivariate polynomials and Laurent polynomials with exact coefficients.

A polynomial is a mapping from exponent tuples to nonzero scalars.  Terms are
kept in a plain dict; canonical order (graded lexicographic) is applied only
when a deterministic rendering or a leading term is needed.

Extra variables beyond the spatial ones are allowed: symbolic multiplicities
are adjoined as trailing variables, and the geometric operations
(:meth:`Polynomial.substitute_linear`, :meth:`Polynomial.derivative`) only
ever touch the leading ``n`` variables they are asked about.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .scalars import Cplx, Quad, conj, rdiv, scalar_str


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, remainder, message="polynomial is not exactly divisible"):
        super().__init__(f"{message}; remainder = {remainder}")
        self.remainder = remainder


def grlex_key(e):
    return (sum(e), e)


def _neg_key(e):
    return (-sum(e), tuple(-x for x in e))


class _Sparse:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None, *, _trusted=False):
        self.nvars = nvars
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                self._check_exponent(e)
                if c != 0:
                    clean[e] = clean.get(e, 0) + c
                    if clean[e] == 0:
                        del clean[e]
            self.terms = clean

    @staticmethod
    def _check_exponent(e):
        pass

    # construction helpers

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars):
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c}, _trusted=True)

    @classmethod
    def monomial(cls, exponent, nvars=None, coeff=1):
        exponent = tuple(exponent)
        nvars = len(exponent) if nvars is None else nvars
        return cls(nvars, {exponent: coeff})

    @classmethod
    def var(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, _trusted=True)

    @classmethod
    def linear_form(cls, coeffs, nvars=None):
        """``sum_k coeffs[k] * x_k``."""
        nvars = len(coeffs) if nvars is None else nvars
        terms = {}
        for k, c in enumerate(coeffs):
            if c != 0:
                e = [0] * nvars
                e[k] = 1
                terms[tuple(e)] = c
        return cls(nvars, terms, _trusted=True)

    def _new(self, terms):
        return type(self)(self.nvars, terms, _trusted=True)

    def _lift(self, other):
        if isinstance(other, _Sparse):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            if type(other) is not type(self):
                if isinstance(self, LaurentPolynomial):
                    return LaurentPolynomial(other.nvars, other.terms, _trusted=True)
                return NotImplemented
            return other
        return type(self).constant(other, self.nvars)

    # queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), 0)

    # arithmetic

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other if type(other) is type(self) else self._new(dict(other.terms))
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                v = v + c
                if v == 0:
                    del terms[e]
                else:
                    terms[e] = v
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if c == 0:
            return self._new({})
        if c == 1:
            return self
        return self._new({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _Sparse):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self._new({})
        if len(a) < len(b):
            a, b = b, a
        terms = {}
        get = terms.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = get(e)
                terms[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in terms.items() if c != 0})

    def __rmul__(self, other):
        if isinstance(other, _Sparse):
            return self.__mul__(other)
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = type(self).constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, _Sparse):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Quad, Cplx)):
            return self.terms == type(self).constant(other, self.nvars).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def conjugate(self):
        return self._new({e: conj(c) for e, c in self.terms.items()})

    def map_coefficients(self, fn):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v != 0:
                out[e] = v
        return self._new(out)

    def extend(self, nvars):
        """Embed into a ring with more (trailing) variables."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink variable count")
        pad = (0,) * (nvars - self.nvars)
        return type(self)(nvars, {e + pad: c for e, c in self.terms.items()}, _trusted=True)

    def evaluate(self, point):
        """Evaluate at a full point (one scalar per variable)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * (x ** k if k > 0 else rdiv(1, x) ** (-k))
            total = total + v
        return total

    def normalize_factor(self):
        """Split into ``(unit, monic)`` so that ``self == unit * monic``."""
        _, lc = self.leading_term()
        return lc, self.scale(rdiv(1, lc)) if lc != 1 else self

    # rendering

    def to_json(self):
        """Canonical graded-lex term list ``[[exponents, coeff], ...]``."""
        return [[list(e), scalar_str(c)] for e, c in self.sorted_terms()]

    def format(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            cs = scalar_str(c)
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"{type(self).__name__}({self.format()!r})"


class Polynomial(_Sparse):
    """Multivariate polynomial with exact scalar coefficients."""

    __slots__ = ()

    @staticmethod
    def _check_exponent(e):
        if any(k < 0 for k in e):
            raise ValueError(f"negative exponent {e} in a polynomial")

    def derivative(self, k):
        out = {}
        for e, c in self.terms.items():
            p = e[k]
            if p:
                e2 = list(e)
                e2[k] = p - 1
                out[tuple(e2)] = c * p
        return self._new(out)

    def substitute_linear(self, matrix):
        """Return ``f(x M)`` for an ``n x n`` matrix acting on the first ``n`` variables.

        Row-vector convention: the new ``x_k`` is ``sum_j x_j M[j][k]``.
        """
        n = len(matrix)
        if n > self.nvars or any(len(row) != n for row in matrix):
            raise ValueError(f"matrix of size {n} does not fit {self.nvars} variables")
        perm = _signed_permutation(matrix)
        if perm is not None:
            out = {}
            for e, c in self.terms.items():
                e2 = list(e)
                s = 1
                for k in range(n):
                    j, sg = perm[k]
                    e2[j] = e[k]
                    if sg < 0 and e[k] & 1:
                        s = -s
                out[tuple(e2)] = c if s > 0 else -c
            return self._new(out)
        images = [
            Polynomial.linear_form([matrix[j][k] for j in range(n)], self.nvars) for k in range(n)
        ]
        powers = [[Polynomial.constant(1, self.nvars)] for _ in range(n)]
        result = {}
        for e, c in self.terms.items():
            term = None
            for k in range(n):
                p = e[k]
                if p:
                    pw = powers[k]
                    while len(pw) <= p:
                        pw.append(pw[-1] * images[k])
                    term = pw[p] if term is None else term * pw[p]
            rest = (0,) * n + e[n:]
            if term is None:
                term = Polynomial(self.nvars, {rest: c}, _trusted=True)
            else:
                term = term * Polynomial(self.nvars, {rest: c}, _trusted=True)
            for e2, v in term.terms.items():
                w = result.get(e2)
                result[e2] = v if w is None else w + v
        return self._new({e: c for e, c in result.items() if c != 0})

    def substitute(self, k, poly):
        """Replace variable ``k`` by a polynomial."""
        out = Polynomial(self.nvars)
        cache = [Polynomial.constant(1, self.nvars)]
        for e, c in self.terms.items():
            p = e[k]
            while len(cache) <= p:
                cache.append(cache[-1] * poly)
            e2 = list(e)
            e2[k] = 0
            out = out + cache[p] * Polynomial(self.nvars, {tuple(e2): c}, _trusted=True)
        return out

    def try_divide(self, d):
        """Exact quotient ``self / d`` or ``None`` when ``d`` does not divide."""
        q, r = self._divide(d, early_exit=True)
        return q if r is None else None

    def divmod(self, d):
        """Single-divisor graded-lex division: ``self == q*d + r``."""
        q, r = self._divide(d, early_exit=False)
        return q, r

    def _divide(self, d, early_exit):
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if d.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        ed, cd = d.leading_term()
        dterms = list(d.terms.items())
        rem = dict(self.terms)
        heap = [_neg_key(e) for e in rem]
        heapq.heapify(heap)
        q, r = {}, {}
        while heap:
            key = heapq.heappop(heap)
            e = tuple(-x for x in key[1])
            c = rem.pop(e, None)
            if c is None:
                continue
            while heap and heap[0] == key:
                heapq.heappop(heap)
            shift = tuple(a - b for a, b in zip(e, ed))
            if any(s < 0 for s in shift):
                if early_exit:
                    return None, Polynomial(self.nvars, {e: c}, _trusted=True)
                r[e] = c
                continue
            f = rdiv(c, cd)
            q[shift] = f
            for e2, c2 in dterms:
                if e2 == ed:
                    continue
                t = tuple(a + b for a, b in zip(e2, shift))
                v = rem.get(t, 0) - f * c2
                if v == 0:
                    rem.pop(t, None)
                else:
                    if t not in rem:
                        heapq.heappush(heap, _neg_key(t))
                    rem[t] = v
        quotient = self._new(q)
        if early_exit:
            return quotient, None
        return quotient, self._new(r)


def _signed_permutation(matrix):
    n = len(matrix)
    perm = []
    used = set()
    for k in range(n):
        nz = [(j, matrix[j][k]) for j in range(n) if matrix[j][k] != 0]
        if len(nz) != 1 or nz[0][1] not in (1, -1) or nz[0][0] in used:
            return None
        used.add(nz[0][0])
        perm.append((nz[0][0], nz[0][1]))
    return perm


def poly_divide_exact(f: Polynomial, d: Polynomial) -> Polynomial:
    """Return ``q`` with ``f == q*d``; raise :class:`NotDivisible` otherwise."""
    q, r = f.divmod(d)
    if not r.is_zero():
        raise NotDivisible(r)
    return q


def poly_substitute_linear(f: Polynomial, matrix) -> Polynomial:
    return f.substitute_linear(matrix)


class LaurentPolynomial(_Sparse):
    """Polynomial in ``t_1^{+-1}, ..., t_n^{+-1}``.

    Used with the substitution ``t_i = exp(x_i)``: the derivative along ``x_k``
    is the Euler operator ``t_k d/dt_k`` and the pullback along ``x -> x g``
    maps the exponent vector ``e`` to ``e g^T``.
    """

    __slots__ = ()

    def derivative(self, k):
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                out[e] = c * e[k]
        return self._new(out)

    def substitute_linear(self, matrix):
        n = len(matrix)
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for j in range(n):
                v = 0
                for k in range(n):
                    if e[k]:
                        v = v + e[k] * matrix[j][k]
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = v.numerator
                if not isinstance(v, int):
                    raise ValueError(f"exponent {e} leaves the integer lattice under {matrix}")
                e2[j] = v
            e2 = tuple(e2)
            w = out.get(e2)
            out[e2] = c if w is None else w + c
        return self._new({e: c for e, c in out.items() if c != 0})

    def split(self):
        """Return ``(shift, P)`` with ``self == t^shift * P`` and ``P`` a plain
        polynomial not divisible by any ``t_i``."""
        if not self.terms:
            return (0,) * self.nvars, Polynomial(self.nvars)
        shift = tuple(min(e[i] for e in self.terms) for i in range(self.nvars))
        return shift, Polynomial(
            self.nvars,
            {tuple(a - b for a, b in zip(e, shift)): c for e, c in self.terms.items()},
            _trusted=True,
        )

    @classmethod
    def from_split(cls, shift, poly):
        return cls(
            poly.nvars,
            {tuple(a + b for a, b in zip(e, shift)): c for e, c in poly.terms.items()},
            _trusted=True,
        )

    def normalize_factor(self):
        """Divide by the graded-lex trailing term.

        The result has only exponent differences of ``self``, so a factor whose
        exponents lie in a sublattice (e.g. a root lattice) stays in it.
        """
        e0 = min(self.terms, key=grlex_key)
        c0 = self.terms[e0]
        unit = LaurentPolynomial(self.nvars, {e0: c0}, _trusted=True)
        inv = rdiv(1, c0)
        normed = {tuple(a - b for a, b in zip(e, e0)): c * inv for e, c in self.terms.items()}
        return unit, self._new(normed)

    def unit_inverse(self):
        """Inverse of a single-term Laurent polynomial."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are units")
        (e, c), = self.terms.items()
        return self._new({tuple(-x for x in e): rdiv(1, c)})

    def try_divide(self, d):
        sa, pa = self.split()
        sd, pd = d.split()
        q = pa.try_divide(pd)
        if q is None:
            return None
        return LaurentPolynomial.from_split(tuple(a - b for a, b in zip(sa, sd)), q)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def format(self, names=None):
        names = names or [f"t{i + 1}" for i in range(self.nvars)]
        return super().format(names)

