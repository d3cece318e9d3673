"""Dunkl operators on polynomials and their verification helpers.

Operators act on :class:`Polynomial` values whose first ``dim`` variables are
spatial and whose trailing variables are the symbolic multiplicities.  Since
the operator is linear over those trailing variables, images of pure spatial
monomials are cached per operator instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .algebra.polynomial import Polynomial, poly_divide_exact
from .algebra.rational import RationalFunction
from .algebra.scalars import I, rdiv
from .linalg import dot
from .rootsystem import positive_subsystem


class ProfileNotOdd(ValueError):
    pass


@dataclass(frozen=True)
class Profile:
    """How ``h_alpha`` depends on ``r = <x, alpha>``.

    ``standard``: ``kappa_alpha / r``.  ``polynomial``: ``kappa_alpha * p_o(r)``
    with one univariate polynomial per orbit (``polys``, or a single shared
    one).  ``trivial``: ``h = 0``.
    """

    kind: str
    polys: tuple = ()

    def poly_for(self, orbit):
        return self.polys[orbit] if len(self.polys) > 1 else self.polys[0]

    def label(self):
        if self.kind == "polynomial":
            return "poly:" + ",".join(p.format(["r"]) for p in self.polys)
        return self.kind


STANDARD = Profile("standard")
TRIVIAL = Profile("trivial")


def _univariate(p):
    if isinstance(p, Polynomial):
        if p.nvars != 1:
            raise ValueError("profile polynomials are univariate in r")
        return p
    if isinstance(p, (list, tuple)):
        return Polynomial(1, {(k,): c for k, c in enumerate(p) if c != 0})
    raise TypeError("profile must be a univariate Polynomial or a coefficient list")


def polynomial_profile(polys):
    """Profile ``h_alpha = kappa_alpha p(<x, alpha>)``; each ``p`` must be odd."""
    if isinstance(polys, Polynomial) or (
        isinstance(polys, (list, tuple)) and polys and not isinstance(polys[0], (Polynomial, list, tuple))
    ):
        polys = [polys]
    ps = tuple(_univariate(p) for p in polys)
    for p in ps:
        if any(e[0] % 2 == 0 for e in p.terms):
            raise ProfileNotOdd(f"profile {p.format(['r'])} is not odd in r")
    return Profile("polynomial", ps)


def _compose_linear(p, form):
    """``p(form)`` for a univariate ``p`` and a polynomial ``form``."""
    out = Polynomial(form.nvars)
    power = Polynomial.constant(1, form.nvars)
    for k in range(p.degree() + 1):
        c = p.coefficient((k,))
        if c != 0:
            out = out + power.scale(c)
        power = power * form
    return out


def h_function(profile, kappa, root_index, root=None):
    """``h_alpha`` as a rational function in ``kappa.nvars`` variables."""
    rs = kappa.rootsystem
    alpha = rs.roots[root_index] if root is None else root
    nv = kappa.nvars
    k = kappa.poly(root_index)
    lin = Polynomial.linear_form(alpha, nv)
    if profile.kind == "standard":
        return RationalFunction(k, lin)
    if profile.kind == "polynomial":
        return RationalFunction(k * _compose_linear(profile.poly_for(kappa.orbit_of[root_index]), lin))
    return RationalFunction.constant(0, nv)


class DunklOperator:
    """``T_xi f = d_xi f + sum_{alpha in R+} kappa_alpha <alpha, xi> Delta_alpha f``.

    ``Delta_alpha f`` is ``(f - f sigma_alpha) / <alpha, x>`` for the standard
    profile and ``p(<alpha, x>) (f - f sigma_alpha)`` for a polynomial profile.
    With ``imaginary=True`` the reflection part is multiplied by ``i``, which is
    the covariant partial derivative of the associated Dunkl connection.
    """

    def __init__(self, xi, positives, kappa, profile=STANDARD, imaginary=False):
        rs = positives.parent
        if len(xi) != rs.dim:
            raise ValueError(f"direction has length {len(xi)}, expected {rs.dim}")
        self.xi = tuple(xi)
        self.positives = positives
        self.kappa = kappa
        self.profile = profile
        self.imaginary = imaginary
        self.dim = rs.dim
        self.nvars = kappa.nvars
        self._cache = {}
        self._terms = []
        if profile.kind == "trivial" or kappa.is_zero():
            return
        for i in positives.positives:
            alpha = rs.roots[i]
            a_xi = dot(alpha, xi)
            if a_xi == 0:
                continue
            weight = kappa.value(i)
            if not isinstance(weight, Polynomial) and weight == 0:
                continue
            lin = Polynomial.linear_form(alpha, self.dim)
            if profile.kind == "standard":
                factor = None
            else:
                factor = _compose_linear(profile.poly_for(kappa.orbit_of[i]), lin)
            w = weight * a_xi if not isinstance(weight, Polynomial) else weight.scale(a_xi)
            if imaginary:
                w = w * I if not isinstance(w, Polynomial) else w.scale(I)
            self._terms.append((rs.reflection(i), lin, factor, w))

    def _monomial_image(self, e):
        img = self._cache.get(e)
        if img is not None:
            return img
        n, nv = self.dim, self.nvars
        f = Polynomial(n, {e: 1}, _trusted=True)
        d = Polynomial(n)
        for k, c in enumerate(self.xi):
            if c != 0 and e[k]:
                d = d + f.derivative(k).scale(c)
        total = d.extend(nv)
        for matrix, lin, factor, w in self._terms:
            diff = f - f.substitute_linear(matrix)
            if diff.is_zero():
                continue
            part = poly_divide_exact(diff, lin) if factor is None else factor * diff
            part = part.extend(nv)
            total = total + (part * w if isinstance(w, Polynomial) else part.scale(w))
        self._cache[e] = total
        return total

    def __call__(self, f):
        if f.nvars < self.nvars:
            f = f.extend(self.nvars)
        elif f.nvars > self.nvars:
            raise ValueError("polynomial has more variables than the multiplicity ring")
        n = self.dim
        out = {}
        for e, c in f.terms.items():
            sp, rest = e[:n], e[n:]
            img = self._monomial_image(sp)
            for e2, c2 in img.terms.items():
                if any(rest):
                    e2 = e2[:n] + tuple(a + b for a, b in zip(e2[n:], rest))
                v = out.get(e2)
                out[e2] = c * c2 if v is None else v + c * c2
        return Polynomial(self.nvars, {e: c for e, c in out.items() if c != 0}, _trusted=True)


def apply_dunkl(T, f):
    return T(f)


def dunkl_operator(xi, kappa, w=None, profile=STANDARD, imaginary=False):
    """Convenience constructor using the positive system selected by ``w``."""
    return DunklOperator(xi, positive_subsystem(kappa.rootsystem, w), kappa, profile, imaginary)


def apply_dunkl_full_sum(xi, kappa, f):
    """Standard operator in the ``1/2 sum over all of R`` form (no positive system)."""
    rs = kappa.rootsystem
    nv = kappa.nvars
    f = f.extend(nv) if f.nvars < nv else f
    out = Polynomial(nv)
    for k, c in enumerate(xi):
        if c != 0:
            out = out + f.derivative(k).scale(c)
    for i, alpha in enumerate(rs.roots):
        a_xi = dot(alpha, xi)
        if a_xi == 0:
            continue
        diff = f - f.substitute_linear(rs.reflection(i))
        q = poly_divide_exact(diff, Polynomial.linear_form(alpha, nv))
        out = out + q * kappa.poly(i).scale(rdiv(a_xi, 2))
    return out


def covariant_partial(k, b, conn):
    """``d^k b + i sum_{alpha in R+} h_alpha (b - b sigma_alpha) alpha_k`` for a Dunkl connection."""
    e = [0] * conn.rootsystem.dim
    e[k] = 1
    T = DunklOperator(e, conn.positives, conn.kappa, conn.profile, imaginary=True)
    return T(b)


def monomials(dim, degree_cap):
    """Exponent tuples of all monomials in ``dim`` variables of total degree ``<= degree_cap``."""
    out = []
    for d in range(degree_cap + 1):
        for combo in combinations_with_replacement(range(dim), d):
            e = [0] * dim
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def commutator_residual(xi, eta, kappa, degree_cap, w=None, profile=STANDARD):
    """``[T_xi, T_eta] m`` for every monomial ``m`` of degree ``<= degree_cap``."""
    ps = positive_subsystem(kappa.rootsystem, w)
    Tx = DunklOperator(xi, ps, kappa, profile)
    Ty = DunklOperator(eta, ps, kappa, profile)
    n, nv = kappa.dim, kappa.nvars
    out = []
    for e in monomials(n, degree_cap):
        m = Polynomial(nv, {e + (0,) * (nv - n): 1}, _trusted=True)
        out.append(Tx(Ty(m)) - Ty(Tx(m)))
    return out


def deformed_leibniz_residual(f, g, xi, kappa, w=None):
    """``T(fg) - T(f) g - f T(g) + sum kappa <alpha,xi> (f - f s)(g - g s) / <alpha, x>``."""
    ps = positive_subsystem(kappa.rootsystem, w)
    T = DunklOperator(xi, ps, kappa)
    rs, nv = kappa.rootsystem, kappa.nvars
    f = f.extend(nv) if f.nvars < nv else f
    g = g.extend(nv) if g.nvars < nv else g
    res = T(f * g) - T(f) * g - f * T(g)
    for i in ps.positives:
        alpha = rs.roots[i]
        a_xi = dot(alpha, xi)
        if a_xi == 0:
            continue
        m = rs.reflection(i)
        prod = (f - f.substitute_linear(m)) * (g - g.substitute_linear(m))
        if prod.is_zero():
            continue
        q = poly_divide_exact(prod, Polynomial.linear_form(alpha, nv))
        res = res + q * kappa.poly(i).scale(a_xi)
    return res


def order_independence_check(kappa, w1, w2, samples, directions=None):
    """Operators built from ``R+(w1)`` and ``R+(w2)`` agree on every sample."""
    rs = kappa.rootsystem
    p1, p2 = positive_subsystem(rs, w1), positive_subsystem(rs, w2)
    if directions is None:
        directions = [tuple(1 if j == k else 0 for j in range(rs.dim)) for k in range(rs.dim)]
    for xi in directions:
        T1, T2 = DunklOperator(xi, p1, kappa), DunklOperator(xi, p2, kappa)
        for f in samples:
            if T1(f) != T2(f):
                return False
    return True


def invariant_average(group, f):
    """Reynolds average ``|G|^-1 sum_g f(xg)``; the result is G-invariant."""
    total = None
    for m in group.elements:
        img = f.substitute_linear(m)
        total = img if total is None else total + img
    return total.scale(rdiv(1, group.order))


def invariant_leibniz_residual(f, g, xi, kappa, w=None):
    """``T(fg) - T(f) g - f d_xi(g)``; zero whenever ``g`` is G-invariant."""
    T = DunklOperator(xi, positive_subsystem(kappa.rootsystem, w), kappa)
    nv = kappa.nvars
    f = f.extend(nv) if f.nvars < nv else f
    g = g.extend(nv) if g.nvars < nv else g
    dg = None
    for k, c in enumerate(xi):
        if c != 0:
            term = g.derivative(k).scale(c)
            dg = term if dg is None else dg + term
    res = T(f * g) - T(f) * g
    return res if dg is None else res - f * dg
