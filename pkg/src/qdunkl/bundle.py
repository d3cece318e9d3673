"""Connections on the reflection bundle and their curvature.

A connection is the canonical flat connection plus a displacement: one
horizontal 1-form ``lambda[s]`` per reflection ``s``.  The covariant derivative
of a horizontal form of degree ``p`` is

    D_w(phi) = D(phi) + sum_s lambda[s] (phi - phi_s)
             = D(phi) + (-1)^p sum_s (phi - phi_s) lambda[s],

and the curvature on ``g`` is ``r(g) = sum_{s t = g} lambda[s] lambda[t]``.
``phi_g`` is the pullback along ``x -> x g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.forms import HorizontalForm
from .algebra.polynomial import LaurentPolynomial, Polynomial
from .algebra.rational import RationalFunction, laurent_coth_half
from .algebra.scalars import I, rdiv
from .coxeter import oriented_decompositions, two_rotations
from .dunkl import STANDARD, Profile, ProfileNotOdd, h_function, polynomial_profile  # noqa: F401
from .linalg import vecmat
from .qcalc import quadratic_relations
from .rootsystem import InvalidMultiplicity, positive_subsystem


class NonIntegerRoots(ValueError):
    pass


class ProfileNotEven(ValueError):
    pass


class NonConstant(ArithmeticError):
    def __init__(self, rotation, terms):
        super().__init__(f"curvature on rotation {rotation} is not constant: {terms}")
        self.rotation = rotation
        self.terms = terms


class UnrepresentableRotation(ValueError):
    pass


@dataclass
class Connection:
    """``omega = varpi + lambda`` with ``lambda`` given on the reflections."""

    group: object
    kappa: object
    kind: str
    displacement: dict  # s -> degree-1 HorizontalForm
    profile: Profile | None = None
    ring: type = Polynomial
    positives: object = None
    h: dict = field(default_factory=dict)  # s -> h_alpha for the canonical root (Dunkl kinds)

    @property
    def rootsystem(self):
        return self.group.rootsystem

    @property
    def dim(self):
        return self.rootsystem.dim

    @property
    def nvars(self):
        return self.kappa.nvars

    def lam(self, s):
        return self.displacement[s]

    def zero_form(self):
        return HorizontalForm.zero(self.dim, nvars=self.nvars, ring=self.ring)

    def function(self, f):
        """Embed a polynomial or rational function as a degree-0 form of this connection."""
        if isinstance(f, Polynomial) and self.ring is LaurentPolynomial:
            f = LaurentPolynomial(f.nvars, f.terms, _trusted=True)
        if not isinstance(f, RationalFunction) and f.nvars < self.nvars:
            f = f.extend(self.nvars)
        return HorizontalForm.function(f, self.dim, nvars=self.nvars, ring=self.ring)


def _root_form(alpha, coeff, dim, nvars, ring):
    """``i * coeff * alpha`` as a 1-form."""
    return HorizontalForm.one_form(alpha, dim, scale=coeff * I, nvars=nvars, ring=ring)


def _require_invariant(group, kappa):
    if kappa.per_root is not None and not kappa.is_invariant(group):
        raise InvalidMultiplicity("multiplicity function is not G-invariant")


def make_flat(group, kappa, ring=Polynomial):
    zero = HorizontalForm.zero(group.rootsystem.dim, nvars=kappa.nvars, ring=ring)
    return Connection(group, kappa, "flat", {s: zero for s in group.reflections}, ring=ring,
                      positives=positive_subsystem(group.rootsystem))


def _make_dunkl(group, kappa, profile, kind):
    _require_invariant(group, kappa)
    rs = group.rootsystem
    disp, hs = {}, {}
    for s in group.reflections:
        alpha = group.root_of(s)
        h = h_function(profile, kappa, rs.index(alpha))
        hs[s] = h
        disp[s] = _root_form(alpha, h, rs.dim, kappa.nvars, Polynomial)
    return Connection(group, kappa, kind, disp, profile=profile, positives=positive_subsystem(rs), h=hs)


def make_standard_dunkl(group, kappa):
    """``lambda[sigma_alpha] = i kappa_alpha / <x, alpha> alpha``."""
    return _make_dunkl(group, kappa, STANDARD, "standard")


def make_profile_dunkl(group, kappa, polys):
    """``lambda[sigma_alpha] = i kappa_alpha p(<x, alpha>) alpha`` for odd ``p``."""
    profile = polys if isinstance(polys, Profile) else polynomial_profile(polys)
    return _make_dunkl(group, kappa, profile, "polynomial")


def make_radial(group, kappa, poly):
    """``lambda[sigma_alpha] = i kappa_alpha p(<x, alpha>) zeta`` with ``zeta = sum x_k theta_k``.

    ``p`` must be even so that the value does not depend on the sign of ``alpha``.
    """
    from .dunkl import _compose_linear, _univariate

    _require_invariant(group, kappa)
    p = _univariate(poly)
    if any(e[0] % 2 for e in p.terms):
        raise ProfileNotEven(f"radial profile {p.format(['r'])} is not even in r")
    rs = group.rootsystem
    n, nv = rs.dim, kappa.nvars
    zeta = HorizontalForm(n, {(k,): Polynomial.var(k, nv) for k in range(n)}, nvars=nv)
    disp, hs = {}, {}
    for s in group.reflections:
        alpha = group.root_of(s)
        i = rs.index(alpha)
        h = RationalFunction(kappa.poly(i) * _compose_linear(p, Polynomial.linear_form(alpha, nv)))
        hs[s] = h
        disp[s] = zeta.scale(h * I)
    return Connection(group, kappa, "radial", disp, positives=positive_subsystem(rs), h=hs)


def make_coth(group, kappa):
    """``lambda[sigma_alpha] = i kappa_alpha (T^alpha + 1)/(T^alpha - 1) alpha`` (Laurent mode)."""
    _require_invariant(group, kappa)
    rs = group.rootsystem
    if not rs.is_integral():
        raise NonIntegerRoots(f"{rs.name} has non-integer root coordinates")
    n, nv = rs.dim, kappa.nvars
    disp, hs = {}, {}
    for s in group.reflections:
        alpha = group.root_of(s)
        k = kappa.poly(rs.index(alpha))
        k = LaurentPolynomial(nv, k.terms, _trusted=True)
        h = laurent_coth_half(alpha, nv) * k
        hs[s] = h
        disp[s] = _root_form(alpha, h, n, nv, LaurentPolynomial)
    return Connection(group, kappa, "coth", disp, ring=LaurentPolynomial,
                      positives=positive_subsystem(rs), h=hs)


def make_custom(group, kappa, displacement, ring=Polynomial):
    """Wrap a hand-built displacement (used for negative controls)."""
    return Connection(group, kappa, "custom", dict(displacement), ring=ring,
                      positives=positive_subsystem(group.rootsystem))


# group action and validation


def form_group_action(phi, group, g):
    return phi.act(group.elements[g])


@dataclass
class ValidationReport:
    covariance_failures: list  # (g, s, residual form)
    reality_failures: list  # (s, residual form)
    closed: dict  # s -> bool
    differentials: dict  # s -> D lambda[s]

    @property
    def covariant(self):
        return not self.covariance_failures

    @property
    def real(self):
        return not self.reality_failures

    @property
    def is_closed(self):
        return all(self.closed.values())

    @property
    def ok(self):
        return self.covariant and self.real

    def witness(self):
        if self.covariance_failures:
            g, s, r = self.covariance_failures[0]
            return f"covariance fails for g={g}, s={s}: {r.format()}"
        if self.reality_failures:
            s, r = self.reality_failures[0]
            return f"reality fails for s={s}: {r.format()}"
        return None


def validate_displacement(conn, check_closed=True):
    """Covariance ``lambda[s]_g = lambda[g s g^-1]``, reality and closedness."""
    group = conn.group
    cov, real, closed, diffs = [], [], {}, {}
    for s in group.reflections:
        lam = conn.lam(s)
        for g in range(group.order):
            lhs = lam.act(group.elements[g])
            rhs = conn.lam(group.conj(g, s))
            if lhs != rhs:
                cov.append((g, s, lhs - rhs))
        r = lam.conjugate() + conn.lam(group.inverse[s])
        if not r.is_zero():
            real.append((s, r))
        if check_closed:
            d = lam.de_rham()
            diffs[s] = d
            closed[s] = d.is_zero()
    return ValidationReport(cov, real, closed, diffs)


def dunkl_function_checks(conn):
    """Sign consistency ``h_{-alpha}(-alpha) = h_alpha alpha`` and ``h_{alpha g}(x) = h_alpha(x g^-1)``.

    Both are checked on the full root list using the connection's profile, so
    the odd-profile requirement shows up as ``h_{-alpha} = -h_alpha``.
    """
    group, kappa = conn.group, conn.kappa
    rs = group.rootsystem
    if conn.profile is None:
        raise ValueError("function checks apply to Dunkl connections")
    hs = [h_function(conn.profile, kappa, i) for i in range(len(rs.roots))]
    failures = []
    for i, alpha in enumerate(rs.roots):
        j = rs.negative_index(i)
        if hs[j] != -hs[i]:
            failures.append(("sign", i))
        for g in range(group.order):
            m = group.elements[g]
            gi = group.elements[group.inverse[g]]
            k = rs.index(vecmat(alpha, m))
            if hs[k] != hs[i].substitute_linear(gi):
                failures.append(("covariance", i, g))
    return failures


# covariant derivative


def _homogeneous_parts(phi):
    return [(p, phi.homogeneous_part(p)) for p in phi.degrees()]


def covariant_derivative(phi, conn):
    if phi.ring is not conn.ring:
        raise TypeError("form and connection use different coefficient modes")
    out = phi.de_rham()
    group = conn.group
    for s in group.reflections:
        lam = conn.lam(s)
        if lam.is_zero():
            continue
        diff = phi - phi.act(group.elements[s])
        if not diff.is_zero():
            out = out + lam.wedge(diff)
    return out


def regularity_deviation(s, phi, conn):
    """``l([s], phi) = lambda[s] (phi - phi_s)``."""
    return conn.lam(s).wedge(phi - phi.act(conn.group.elements[s]))


def twisted_commutator(s, phi, conn):
    """``lambda[s] phi - (-1)^p phi_s lambda[s]`` summed over homogeneous parts of ``phi``.

    A second route to ``l([s], phi)`` that never forms ``phi - phi_s``.
    """
    lam = conn.lam(s)
    m = conn.group.elements[s]
    out = conn.zero_form()
    for p, part in _homogeneous_parts(phi):
        right = part.act(m).wedge(lam)
        out = out + lam.wedge(part) - (right if p % 2 == 0 else -right)
    return out


def leibniz_residual(phi, psi, conn):
    """``D(phi psi) - D(phi) psi - (-1)^p phi D(psi) + sum_s lambda[s](phi - phi_s)(psi - psi_s)``."""
    group = conn.group
    res = covariant_derivative(phi.wedge(psi), conn)
    res = res - covariant_derivative(phi, conn).wedge(psi)
    dpsi = covariant_derivative(psi, conn)
    for p, part in _homogeneous_parts(phi):
        term = part.wedge(dpsi)
        res = res - term if p % 2 == 0 else res + term
    for s in group.reflections:
        m = group.elements[s]
        dphi = phi - phi.act(m)
        if dphi.is_zero():
            continue
        dpsi_s = psi - psi.act(m)
        if dpsi_s.is_zero():
            continue
        res = res + conn.lam(s).wedge(dphi).wedge(dpsi_s)
    return res


# curvature


@dataclass
class CurvatureTensor:
    rotations: list  # TwoRotation records, proper and improper
    values: dict  # rho index -> 2-form
    dim: int

    def proper(self):
        return [r for r in self.rotations if r.proper]

    def value(self, rho):
        return self.values[rho]

    def component(self, rho, k, l):
        """``r^{kl}(rho)`` for the convention ``r = 1/2 sum r^{kl} theta_k theta_l``."""
        form = self.values[rho]
        if k == l:
            return form.coefficient(()) * 0
        if k < l:
            return form.coefficient((k, l))
        return -form.coefficient((l, k))

    def components(self, rho):
        n = self.dim
        return {(k, l): self.component(rho, k, l) for k in range(n) for l in range(k + 1, n)}

    def is_zero(self):
        return all(v.is_zero() for v in self.values.values())


def curvature_on(conn, g):
    """``r(g) = sum_{s t = g} lambda[s] lambda[t]`` for any group element."""
    group = conn.group
    out = conn.zero_form()
    for s in group.reflections:
        t = group.table[group.inverse[s]][g]
        if t in group.reflection_root:
            out = out + conn.lam(s).wedge(conn.lam(t))
    return out


def curvature_tensor(conn):
    rots = two_rotations(conn.group)
    values = {}
    for rot in rots:
        val = conn.zero_form()
        for s, t in rot.decompositions:
            val = val + conn.lam(s).wedge(conn.lam(t))
        values[rot.index] = val
    return CurvatureTensor(rots, values, conn.dim)


def orientation_form(rot, dim, nvars, ring=Polynomial):
    return HorizontalForm(dim, dict(rot.orientation), nvars=nvars, ring=ring)


def dunkl_curvature_sum(conn, rot):
    """``sum* h_alpha h_beta`` over decompositions, each weighted so that ``alpha ^ beta = w_rho``."""
    total = None
    for s, t, _a, _b, mu in oriented_decompositions(conn.group, rot):
        term = conn.h[s] * conn.h[t] * mu
        total = term if total is None else total + term
    return total


def dunkl_curvature(conn, rot):
    """``-w_rho sum* h_alpha h_beta`` (second route to the curvature of a Dunkl connection)."""
    w = orientation_form(rot, conn.dim, conn.nvars, conn.ring)
    return w.scale(-dunkl_curvature_sum(conn, rot))


def covariant_square_expected(phi, conn, curvature=None):
    """``sum_s D(lambda[s]) (phi - phi_s) - sum_rho phi_rho r(rho)``, the value of ``D_w(D_w(phi))``.

    The first sum vanishes for closed displacements.
    """
    group = conn.group
    curvature = curvature or curvature_tensor(conn)
    out = conn.zero_form()
    for rot in curvature.rotations:
        val = curvature.values[rot.index]
        if not val.is_zero():
            out = out - phi.act(group.elements[rot.index]).wedge(val)
    for s in group.reflections:
        d = conn.lam(s).de_rham()
        if not d.is_zero():
            out = out + d.wedge(phi - phi.act(group.elements[s]))
    return out


def multiplicativity_check(conn):
    """Every quadratic relation ``sum_{g q = h} [g](x)[q]`` is annihilated by ``lambda (x) lambda``."""
    for _h, rel in quadratic_relations(conn.group):
        val = conn.zero_form()
        for (g, q), c in rel.items():
            val = val + conn.lam(g).wedge(conn.lam(q)).scale(c)
        if not val.is_zero():
            return False
    return True


# constant curvature (Laurent mode)


def _spatial_constant(rf, dim):
    q = rf.num.try_divide(rf.den)
    if q is None:
        return None, rf
    bad = {e: c for e, c in q.terms.items() if any(e[:dim])}
    if bad:
        return None, LaurentPolynomial(q.nvars, bad, _trusted=True)
    return q, None


def constant_curvature_check(conn):
    """``c_rho`` with ``r(rho) = -c_rho w_rho`` for every proper rotation.

    Values are Laurent polynomials in the symbolic multiplicities only (or
    scalars when ``kappa`` is numeric).  Raises :class:`NonConstant` otherwise.
    """
    out = {}
    names = conn.kappa.variable_names()
    if conn.ring is LaurentPolynomial:
        names = [f"t{i + 1}" for i in range(conn.dim)] + names[conn.dim:]
    for rot in two_rotations(conn.group):
        if not rot.proper:
            continue
        if conn.h:
            total = dunkl_curvature_sum(conn, rot)
        else:
            # no h table: read c off r(rho) = -c w_rho directly
            w = orientation_form(rot, conn.dim, conn.nvars, conn.ring)
            val = curvature_on(conn, rot.index)
            key = next(iter(rot.orientation))
            total = val.coefficient(key) * rdiv(-1, rot.orientation[key])
            if val != w.scale(-total):
                raise NonConstant(rot.index, "curvature is not proportional to w_rho")
        c, bad = _spatial_constant(total, conn.dim)
        if c is None:
            raise NonConstant(rot.index, bad.format(names) if hasattr(bad, "format") else str(bad))
        out[rot.index] = c.constant_term() if c.is_constant() else c
    return out


def coth_sum_check(vectors, nvars=None):
    """``sum_{j<=k} c(v_j) c(v_{j+1}) == c(v_0) c(v_{k+1}) + k`` with ``c(v) = coth(<x, v>/2)``."""
    vs = [tuple(v) for v in vectors]
    if len(vs) < 3:
        raise ValueError("need at least three vectors")
    nv = len(vs[0]) if nvars is None else nvars
    c = [laurent_coth_half(v, nv) for v in vs]
    k = len(vs) - 2
    lhs = c[0] * c[1]
    for j in range(1, k + 1):
        lhs = lhs + c[j] * c[j + 1]
    return lhs == c[0] * c[-1] + k


# the vxrho identity


def vxrho_sequence_check(vectors):
    """``sum_{j=0}^{m-2} 1/(<x,v_j><x,v_{j+1}>) == 1/(<x,v_{m-1}><x,v_0>)`` after clearing denominators."""
    vs = [tuple(v) for v in vectors]
    n = len(vs[0])
    lin = [Polynomial.linear_form(v, n) for v in vs]
    one = Polynomial.constant(1, n)
    lhs = RationalFunction.constant(0, n)
    for j in range(len(vs) - 1):
        lhs = lhs + RationalFunction(one, lin[j] * lin[j + 1])
    return lhs == RationalFunction(one, lin[-1] * lin[0])


def plane_rotation(m):
    """An exact rotation of order ``2m`` (``rho^m = -1`` on its plane) with a starting vector.

    Returns ``(v, matrix)``; raises :class:`UnrepresentableRotation` when no
    exact matrix exists over the supported scalars.
    """
    from .coxeter import generate_group, two_rotations as _rots
    from .rootsystem import build_standard

    if m == 2:
        return (1, 0), ((0, 1), (-1, 0))
    if m == 3:
        return (1, -1, 0), ((0, -1, 0), (0, 0, -1), (-1, 0, 0))
    if m == 5:
        rs = build_standard("I2(5)")
        g = generate_group(rs)
        rho = next(r for r in _rots(g) if r.order == 5)
        from .linalg import matmul

        m3 = matmul(matmul(g.elements[rho.index], g.elements[rho.index]), g.elements[rho.index])
        return rs.roots[0], tuple(tuple(-c for c in row) for row in m3)
    raise UnrepresentableRotation(
        f"a rotation of order {2 * m} has irrational trace and no exact matrix over the supported scalars"
    )


def rotation_sequence(v, matrix, m):
    """``v, v rho, ..., v rho^{m-1}`` after checking ``v rho^m = -v`` on the plane."""
    seq = [tuple(v)]
    for _ in range(m - 1):
        seq.append(vecmat(seq[-1], matrix))
    for u in seq[:2]:
        w = u
        for _ in range(m):
            w = vecmat(w, matrix)
        if w != tuple(-c for c in u):
            raise ValueError(f"rotation does not satisfy rho^{m} = -1 on the plane of {v}")
    return seq


# Root rays at 45 and 30 degree steps.  Dividing every other vector by a common
# length turns these into orbits of an exact rotation; each term of the
# identity contains exactly one such vector, so the identity is unchanged.
_RAYS = {
    4: [(1, 0), (1, 1), (0, 1), (-1, 1)],
    6: [(1, -1, 0), (2, -1, -1), (1, 0, -1), (1, 1, -2), (0, 1, -1), (-1, 2, -1)],
}


def vxrho_identity_check(m):
    """The identity for a rotation of order ``2m``, ``m`` in ``2..6``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    try:
        v, rho = plane_rotation(m)
        return vxrho_sequence_check(rotation_sequence(v, rho, m))
    except UnrepresentableRotation:
        if m not in _RAYS:
            raise
        return vxrho_sequence_check(_RAYS[m])
