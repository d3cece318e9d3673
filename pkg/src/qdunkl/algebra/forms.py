"""Horizontal forms: the exterior algebra on ``theta_1 .. theta_n`` over rational functions.

Basis monomials are strictly increasing index tuples (0-based).  Coefficients
are :class:`RationalFunction` values over either ordinary polynomials or
Laurent polynomials; mixing the two in one expression raises ``TypeError``.
"""

from __future__ import annotations

from itertools import combinations

from .polynomial import Polynomial, _Sparse
from .rational import RationalFunction


def _merge_sign(a, b):
    """Sign and index tuple of ``theta_a theta_b``; ``(0, None)`` if they overlap."""
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


def _as_rf(c, nvars, ring):
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, _Sparse):
        return RationalFunction(c)
    return RationalFunction.constant(c, nvars, ring)


class HorizontalForm:
    """Element of the graded algebra of horizontal forms on ``P``."""

    __slots__ = ("dim", "nvars", "ring", "components")

    def __init__(self, dim, components=None, *, nvars=None, ring=Polynomial):
        self.dim = dim
        self.nvars = dim if nvars is None else nvars
        self.ring = ring
        self.components = {}
        for idx, c in (components or {}).items():
            idx = tuple(idx)
            if list(idx) != sorted(set(idx)) or any(i < 0 or i >= dim for i in idx):
                raise ValueError(f"basis index {idx} is not strictly increasing within 0..{dim - 1}")
            c = _as_rf(c, self.nvars, ring)
            if c.ring is not ring:
                raise TypeError("coefficient ring does not match the form's ring")
            if not c.is_zero():
                self.components[idx] = c

    @classmethod
    def _raw(cls, like, components):
        self = object.__new__(cls)
        self.dim = like.dim
        self.nvars = like.nvars
        self.ring = like.ring
        self.components = components
        return self

    @classmethod
    def function(cls, f, dim, *, nvars=None, ring=None):
        """Degree-0 form carrying a polynomial or rational function."""
        if ring is None:
            ring = f.ring if isinstance(f, RationalFunction) else type(f) if isinstance(f, _Sparse) else Polynomial
        nvars = nvars if nvars is not None else getattr(f, "nvars", dim)
        return cls(dim, {(): f}, nvars=nvars, ring=ring)

    @classmethod
    def theta(cls, k, dim, *, nvars=None, ring=Polynomial):
        nvars = dim if nvars is None else nvars
        return cls(dim, {(k,): RationalFunction.constant(1, nvars, ring)}, nvars=nvars, ring=ring)

    @classmethod
    def one_form(cls, coeffs, dim, *, scale=None, nvars=None, ring=Polynomial):
        """``scale * sum_k coeffs[k] theta_k`` for constant ``coeffs``."""
        nvars = dim if nvars is None else nvars
        scale = RationalFunction.constant(1, nvars, ring) if scale is None else _as_rf(scale, nvars, ring)
        return cls(dim, {(k,): scale * c for k, c in enumerate(coeffs) if c != 0}, nvars=nvars, ring=ring)

    @classmethod
    def zero(cls, dim, *, nvars=None, ring=Polynomial):
        return cls(dim, nvars=nvars, ring=ring)

    def _check(self, other):
        if not isinstance(other, HorizontalForm):
            raise TypeError(f"expected a HorizontalForm, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.ring is not self.ring:
            raise TypeError("cannot mix polynomial and Laurent coefficient modes")

    # structure

    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def degrees(self):
        return sorted({len(i) for i in self.components})

    def degree(self):
        """Degree of a homogeneous form (0 for the zero form)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"form is not homogeneous: degrees {ds}")
        return ds[0] if ds else 0

    def homogeneous_part(self, m):
        return HorizontalForm._raw(self, {i: c for i, c in self.components.items() if len(i) == m})

    def coefficient(self, idx):
        return self.components.get(tuple(idx), RationalFunction.constant(0, self.nvars, self.ring))

    # algebra

    def __add__(self, other):
        self._check(other)
        comps = dict(self.components)
        for i, c in other.components.items():
            if i in comps:
                v = comps[i] + c
                if v.is_zero():
                    del comps[i]
                else:
                    comps[i] = v
            else:
                comps[i] = c
        return HorizontalForm._raw(self, comps)

    def __neg__(self):
        return HorizontalForm._raw(self, {i: -c for i, c in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        """Multiply by a degree-0 coefficient (scalar, polynomial or rational function)."""
        if not isinstance(f, (RationalFunction, _Sparse)):
            if f == 0:
                return HorizontalForm._raw(self, {})
            return HorizontalForm._raw(self, {i: c * f for i, c in self.components.items()})
        f = _as_rf(f, self.nvars, self.ring)
        if f.ring is not self.ring:
            raise TypeError("cannot mix polynomial and Laurent coefficient modes")
        out = {}
        for i, c in self.components.items():
            v = c * f
            if not v.is_zero():
                out[i] = v
        return HorizontalForm._raw(self, out)

    def wedge(self, other):
        self._check(other)
        out = {}
        for i, a in self.components.items():
            for j, b in other.components.items():
                s, k = _merge_sign(i, j)
                if not s:
                    continue
                v = a * b
                if s < 0:
                    v = -v
                out[k] = out[k] + v if k in out else v
        return HorizontalForm._raw(self, {k: v for k, v in out.items() if not v.is_zero()})

    def __mul__(self, other):
        if isinstance(other, HorizontalForm):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HorizontalForm):
            return NotImplemented
        if other.dim != self.dim:
            return False
        keys = set(self.components) | set(other.components)
        zero = RationalFunction.constant(0, self.nvars, self.ring)
        return all(self.components.get(k, zero) == other.components.get(k, zero) for k in keys)

    __hash__ = None

    def conjugate(self):
        return HorizontalForm._raw(self, {i: c.conjugate() for i, c in self.components.items()})

    # calculus

    def de_rham(self):
        """Classical exterior derivative ``D``."""
        out = {}
        for i, c in self.components.items():
            for k in range(self.dim):
                if k in i:
                    continue
                dc = c.derivative(k)
                if dc.is_zero():
                    continue
                s, idx = _merge_sign((k,), i)
                v = dc if s > 0 else -dc
                out[idx] = out[idx] + v if idx in out else v
        return HorizontalForm._raw(self, {k: v for k, v in out.items() if not v.is_zero()})

    def act(self, matrix):
        """Pullback along ``x -> x g`` (the right ``G``-action ``phi -> phi_g``)."""
        n = self.dim
        if len(matrix) != n:
            raise ValueError("matrix size does not match the form dimension")
        theta_images = [
            {(j,): matrix[j][k] for j in range(n) if matrix[j][k] != 0} for k in range(n)
        ]
        cache = {(): {(): 1}}

        def image(idx):
            if idx in cache:
                return cache[idx]
            head = image(idx[:-1])
            last = theta_images[idx[-1]]
            res = {}
            for a, ca in head.items():
                for b, cb in last.items():
                    s, k = _merge_sign(a, b)
                    if s:
                        res[k] = res.get(k, 0) + s * ca * cb
            cache[idx] = {k: v for k, v in res.items() if v != 0}
            return cache[idx]

        out = {}
        for i, c in self.components.items():
            cg = c.substitute_linear(matrix)
            for k, coef in image(i).items():
                v = cg * coef
                out[k] = out[k] + v if k in out else v
        return HorizontalForm._raw(self, {k: v for k, v in out.items() if not v.is_zero()})

    # rendering

    def to_json(self):
        return [
            {"basis": [i + 1 for i in idx], "coefficient": c.to_json()}
            for idx, c in sorted(self.components.items())
        ]

    def format(self, names=None):
        if not self.components:
            return "0"
        parts = []
        for idx, c in sorted(self.components.items()):
            basis = "".join(f"θ{i + 1}" for i in idx)
            parts.append(f"[{c.format(names)}]{basis}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HorizontalForm({self.format()})"


def wedge(phi: HorizontalForm, psi: HorizontalForm) -> HorizontalForm:
    return phi.wedge(psi)


def de_rham(phi: HorizontalForm) -> HorizontalForm:
    return phi.de_rham()


def basis_monomials(dim, degree):
    return list(combinations(range(dim), degree))
