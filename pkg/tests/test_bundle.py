import random

import mpmath as mp
import pytest

from qdunkl.algebra import I, HorizontalForm, LaurentPolynomial, Polynomial, RationalFunction, laurent_coth_half
from qdunkl.bundle import (
    NonConstant,
    NonIntegerRoots,
    ProfileNotEven,
    UnrepresentableRotation,
    constant_curvature_check,
    coth_sum_check,
    covariant_derivative,
    covariant_square_expected,
    curvature_on,
    curvature_tensor,
    dunkl_curvature,
    dunkl_function_checks,
    form_group_action,
    leibniz_residual,
    make_coth,
    make_custom,
    make_flat,
    make_profile_dunkl,
    make_radial,
    multiplicativity_check,
    plane_rotation,
    regularity_deviation,
    validate_displacement,
    vxrho_identity_check,
    vxrho_sequence_check,
)
from qdunkl.rootsystem import InvalidMultiplicity, per_root_multiplicity
from qdunkl.suite import random_form, random_polynomial

from .conftest import refl


def pvar(i, n):
    return Polynomial.var(i, n)


# displacements


def test_a1_displacement(ctx):
    c = ctx("A1")
    s = c.group.reflections[0]
    x, k = pvar(0, 2), pvar(1, 2)
    expected = HorizontalForm(1, {(0,): RationalFunction(k.scale(I), x)}, nvars=2)
    assert c.standard.lam(s) == expected


def test_a1_regularity_deviation(ctx):
    c = ctx("A1")
    conn = c.standard
    s = c.group.reflections[0]
    x, k = pvar(0, 2), pvar(1, 2)
    got = regularity_deviation(s, conn.function(x), conn)
    assert got == HorizontalForm(1, {(0,): k.scale(2 * I)}, nvars=2)


def test_regularity_deviation_vanishes_on_invariants(ctx):
    c = ctx("B2")
    conn = c.standard
    r2 = conn.function(pvar(0, 4) ** 2 + pvar(1, 4) ** 2)
    assert all(regularity_deviation(s, r2, conn).is_zero() for s in c.group.reflections)


@pytest.mark.parametrize("kind", ["standard", "linear_profile", "radial", "coth"])
def test_b2_displacements_are_covariant_and_imaginary(ctx, kind):
    conn = getattr(ctx("B2"), kind)
    rep = validate_displacement(conn, check_closed=False)
    assert rep.covariant and rep.real, rep.witness()
    for s in ctx("B2").group.reflections:
        assert conn.lam(s).conjugate() == -conn.lam(s)


def test_closedness(ctx):
    c = ctx("B2")
    assert validate_displacement(c.standard).is_closed
    assert validate_displacement(c.linear_profile).is_closed
    assert not validate_displacement(c.radial).is_closed


def test_coth_a2_covariance(ctx):
    assert validate_displacement(ctx("A2").coth, check_closed=False).ok


def test_coth_coefficient(ctx):
    c = ctx("B2")
    s = refl(c.group, (1, 0))
    coeff = c.coth.lam(s).coefficient((0,))
    k1 = LaurentPolynomial(4, {(0, 0, 1, 0): 1})
    assert coeff == laurent_coth_half((1, 0), 4) * RationalFunction(k1.scale(I))
    assert c.coth.lam(s).coefficient((1,)).is_zero()


def test_zeta_is_invariant(ctx):
    c = ctx("B2")
    zeta = HorizontalForm(2, {(0,): pvar(0, 2), (1,): pvar(1, 2)})
    assert all(form_group_action(zeta, c.group, g) == zeta for g in range(c.group.order))


def test_invariant_form_is_fixed(ctx):
    c = ctx("B2")
    phi = HorizontalForm.function(pvar(0, 2) ** 2 + pvar(1, 2) ** 2, 2)
    assert all(form_group_action(phi, c.group, g) == phi for g in range(c.group.order))
    assert form_group_action(phi, c.group, 0) == phi


def test_coordinate_functions_transform_linearly(ctx):
    c = ctx("B2")
    G = c.group
    for g in range(G.order):
        m = G.elements[g]
        img = form_group_action(HorizontalForm.function(pvar(0, 2), 2), G, g)
        # (x g)_1 = sum_j x_j m[j][0]
        assert img == HorizontalForm.function(Polynomial.linear_form([m[0][0], m[1][0]], 2), 2)


def test_covariance_formula_calibration(ctx):
    # (lambda[sigma_alpha])_g (x) = i h_alpha(x g) * (alpha g^-1) as a form
    c = ctx("B2")
    G, conn = c.group, c.standard
    for s in G.reflections:
        alpha = G.root_of(s)
        h = conn.h[s]
        for g in range(G.order):
            m, gi = G.elements[g], G.elements[G.inverse[g]]
            ag = [sum(alpha[j] * gi[j][k] for j in range(2)) for k in range(2)]
            expected = HorizontalForm.one_form(ag, 2, scale=h.substitute_linear(m) * I, nvars=4)
            assert form_group_action(conn.lam(s), G, g) == expected


def test_non_covariant_displacement_is_caught(ctx):
    c = ctx("B2")
    theta = HorizontalForm.one_form((1, 0), 2, scale=I, nvars=4)
    bad = make_custom(c.group, c.kappa, {s: theta for s in c.group.reflections})
    rep = validate_displacement(bad)
    assert not rep.covariant
    g, s, residual = rep.covariance_failures[0]
    assert not residual.is_zero()
    assert "covariance fails" in rep.witness()


def test_dunkl_functions_are_odd_and_covariant(ctx):
    assert dunkl_function_checks(ctx("G2").standard) == []


def test_non_invariant_kappa_refused(ctx):
    c = ctx("B2")
    bad = per_root_multiplicity(c.rs, c.group, lambda i, r: 1 if r[1] == 0 else 2 if r[0] == 0 else 3)
    with pytest.raises(InvalidMultiplicity):
        make_profile_dunkl(c.group, bad, [0, 1])


def test_mode_guards(ctx):
    with pytest.raises(NonIntegerRoots):
        make_coth(ctx("I2(5)").group, ctx("I2(5)").kappa)
    with pytest.raises(ProfileNotEven):
        make_radial(ctx("B2").group, ctx("B2").kappa, [0, 1])


# covariant derivative


def test_theta_is_parallel(ctx):
    for name in ("B2", "G2"):
        conn = ctx(name).standard
        for k in range(conn.dim):
            assert covariant_derivative(HorizontalForm.theta(k, conn.dim, nvars=conn.nvars), conn).is_zero()


def test_theta_factors_out(ctx):
    conn = ctx("B2").standard
    rng = random.Random(3)
    th = HorizontalForm.theta(1, 2, nvars=4)
    for _ in range(3):
        phi = random_form(rng, conn, 1, 2, 2)
        assert covariant_derivative(phi.wedge(th), conn) == covariant_derivative(phi, conn).wedge(th)


def test_flat_connection_is_de_rham(ctx):
    c = ctx("B2")
    flat = make_flat(c.group, c.kappa)
    phi = random_form(random.Random(1), flat, 1)
    assert covariant_derivative(phi, flat) == phi.de_rham()
    assert multiplicativity_check(flat)
    assert curvature_tensor(flat).is_zero()


def test_derivative_is_equivariant(ctx):
    c = ctx("B2")
    conn = c.linear_profile
    rng = random.Random(6)
    phi = random_form(rng, conn, 1, 2, 2)
    for g in range(c.group.order):
        lhs = covariant_derivative(form_group_action(phi, c.group, g), conn)
        assert lhs == form_group_action(covariant_derivative(phi, conn), c.group, g)


@pytest.mark.parametrize("kind", ["standard", "linear_profile"])
def test_form_leibniz_b2(ctx, kind):
    conn = getattr(ctx("B2"), kind)
    rng = random.Random(10)
    for p, q in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2)]:
        phi = random_form(rng, conn, p, 3, 2)
        psi = random_form(rng, conn, q, 3, 2)
        assert leibniz_residual(phi, psi, conn).is_zero()


def test_classical_leibniz_on_invariant_factor(ctx):
    conn = ctx("B2").standard
    rng = random.Random(12)
    r2 = pvar(0, 4) ** 2 + pvar(1, 4) ** 2
    psi = conn.function(r2).wedge(HorizontalForm.theta(0, 2, nvars=4))
    for p in (0, 1):
        phi = random_form(rng, conn, p, 3, 2)
        lhs = covariant_derivative(phi.wedge(psi), conn)
        rhs = covariant_derivative(phi, conn).wedge(psi)
        term = phi.wedge(covariant_derivative(psi, conn))
        rhs = rhs + term if p == 0 else rhs - term
        assert lhs == rhs


def test_covariant_square(ctx):
    for name, kind in [("B2", "standard"), ("B2", "linear_profile"), ("A2", "radial"), ("B2", "radial")]:
        conn = getattr(ctx(name), kind)
        rng = random.Random(5)
        for p in (0, 1):
            phi = random_form(rng, conn, p, 2, 2)
            assert covariant_derivative(covariant_derivative(phi, conn), conn) == covariant_square_expected(phi, conn)


def test_standard_square_vanishes(ctx):
    conn = ctx("A2").standard
    phi = random_form(random.Random(0), conn, 1, 2, 2)
    assert covariant_derivative(covariant_derivative(phi, conn), conn).is_zero()


# curvature


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_standard_curvature_vanishes(ctx, name):
    conn = ctx(name).standard
    C = curvature_tensor(conn)
    assert C.is_zero()
    assert multiplicativity_check(conn)
    assert constant_curvature_check(conn) == {r.index: 0 for r in C.proper()}


def test_linear_profile_curvature(ctx):
    c = ctx("B2")
    conn = c.linear_profile
    C = curvature_tensor(conn)
    assert not C.is_zero()
    assert not multiplicativity_check(conn)
    k1, k2 = pvar(2, 4), pvar(3, 4)
    r2 = pvar(0, 4) ** 2 + pvar(1, 4) ** 2
    for rot in C.proper():
        assert C.values[rot.index] == dunkl_curvature(conn, rot)
        comp = C.component(rot.index, 0, 1)
        assert comp == RationalFunction((r2 * k1 * k2).scale(2)) or comp == RationalFunction((r2 * k1 * k2).scale(-2))
        assert C.component(rot.index, 1, 0) == -comp
    for rot in C.rotations:
        if not rot.proper:
            assert C.values[rot.index].is_zero()
    with pytest.raises(NonConstant):
        constant_curvature_check(conn)


def test_curvature_vanishes_off_rotations(ctx):
    c = ctx("B2")
    conn = c.linear_profile
    rot_idx = {r.index for r in curvature_tensor(conn).rotations}
    for g in range(c.group.order):
        if g not in rot_idx:
            assert curvature_on(conn, g).is_zero()
    assert curvature_on(conn, 0).is_zero()


def test_curvature_transforms_by_conjugation(ctx):
    c = ctx("B2")
    conn = c.linear_profile
    G = c.group
    C = curvature_tensor(conn)
    for rot in C.rotations:
        for g in range(G.order):
            moved = G.conj(g, rot.index)
            assert form_group_action(C.values[rot.index], G, g) == C.values[moved]


# constant coth curvature

COTH = {
    # system -> rotation order -> c_rho as {(k1 exponent, k2 exponent): coefficient}
    "A2": {3: {(2,): 1}},
    "B2": {4: {(1, 1): 2}},
    "G2": {3: {(2, 0): 1, (0, 2): 3}, 6: {(1, 1): 4}},
}


def _expected_laurent(conn, terms):
    n = conn.dim
    return LaurentPolynomial(conn.nvars, {(0,) * n + e: c for e, c in terms.items()})


@pytest.mark.parametrize("name", list(COTH))
def test_coth_constants(ctx, name):
    c = ctx(name)
    got = constant_curvature_check(c.coth)
    orders = {r.index: r.order for r in c.rotations}
    assert got
    for rho, val in got.items():
        assert val == _expected_laurent(c.coth, COTH[name][orders[rho]])


def _oracle_constants(roots, kappa_of, points):
    """Recompute c_rho in floating point from scratch: own reflections, products and orientation."""
    mp.mp.dps = 30
    dim = len(roots[0])

    def lexpos(v):
        return next(c for c in v if c != 0) > 0

    pos = [r for r in roots if lexpos(r)]

    def refl_matrix(a):
        aa = sum(c * c for c in a)
        return [[(1 if i == j else 0) - mp.mpf(2) * a[i] * a[j] / aa for j in range(dim)] for i in range(dim)]

    def mul(a, b):
        return [[mp.fsum(a[i][k] * b[k][j] for k in range(dim)) for j in range(dim)] for i in range(dim)]

    def key(m):
        return tuple(int(mp.nint(m[i][j] * 6)) for i in range(dim) for j in range(dim))

    def wedge(u, v):
        return {(k, l): u[k] * v[l] - u[l] * v[k] for k in range(dim) for l in range(k + 1, dim)}

    mats = {a: refl_matrix(a) for a in pos}
    rotations = {}
    for a in pos:
        for b in pos:
            if a != b:
                m = mul(mats[a], mats[b])
                rotations.setdefault(key(m), (m, []))[1].append((a, b))
    results = []
    for m, pairs in rotations.values():
        power, order = m, 1
        while key(power) != key([[1 if i == j else 0 for j in range(dim)] for i in range(dim)]):
            power, order = mul(power, m), order + 1
        if order <= 2:
            continue
        a, b = min(pairs)
        am = [mp.fsum(a[j] * m[j][k] for j in range(dim)) for k in range(dim)]
        w, turn = wedge(a, b), wedge(a, am)
        k0 = next(k for k, v in turn.items() if abs(v) > 1e-12)
        if w[k0] * turn[k0] < 0:
            w = {k: -v for k, v in w.items()}
        kw = next(k for k, v in w.items() if v != 0)
        values = []
        for x in points:
            total = 0
            for s, t in pairs:
                cs = mp.coth(mp.fsum(x[i] * s[i] for i in range(dim)) / 2)
                ct = mp.coth(mp.fsum(x[i] * t[i] for i in range(dim)) / 2)
                total -= kappa_of(s) * kappa_of(t) * cs * ct * wedge(s, t)[kw]
            values.append(-total / w[kw])
        results.append((order, values))
    return results


@pytest.mark.parametrize("name", list(COTH))
def test_coth_constants_against_float_oracle(ctx, name):
    rs = ctx(name).rs
    lengths = sorted({sum(c * c for c in r) for r in rs.roots})
    ks, kl = mp.mpf(1) / 3, mp.mpf(7) / 5

    def kappa_of(r):
        return ks if sum(c * c for c in r) == lengths[0] else kl

    rng = random.Random(99)
    points = [[mp.mpf(rng.uniform(-2, 2)) for _ in range(rs.dim)] for _ in range(3)]
    results = _oracle_constants(rs.roots, kappa_of, points)
    assert results
    for order, values in results:
        terms = COTH[name][order]
        expected = mp.fsum(
            c * (ks ** e[0]) * ((kl ** e[1]) if len(e) > 1 else 1) for e, c in terms.items()
        )
        for v in values:
            assert abs(v - expected) < mp.mpf(10) ** -20


def test_coth_sum_lemma():
    assert coth_sum_check([(1, 0), (1, 1), (0, 1)])
    assert coth_sum_check([(1, 0), (1, 1), (0, 1), (-1, 1)])
    assert coth_sum_check([(1, 0), (2, 1), (1, 1), (0, 1), (-1, 1)])
    assert not coth_sum_check([(1, 0), (1, 2), (0, 1)])
    with pytest.raises(ValueError):
        coth_sum_check([(1, 0), (0, 1)])


# the vxrho identity


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_vxrho(m):
    assert vxrho_identity_check(m)


def test_rotation_matrices():
    for m in (2, 3, 5):
        v, rho = plane_rotation(m)
        assert v
    with pytest.raises(UnrepresentableRotation):
        plane_rotation(4)


def test_vxrho_rejects_generic_vectors():
    assert not vxrho_sequence_check([(1, 0), (2, 3), (5, -1)])


def test_three_vector_form():
    # 1/(ab) + 1/(bc) = <x, a + c>/(abc), which is 1/(ac) when b = a + c
    a, c = (1, 0, 0), (0, 1, 0)
    b = tuple(x + y for x, y in zip(a, c))
    assert vxrho_sequence_check([a, b, c])
    assert not vxrho_sequence_check([a, (1, 2, 0), c])


def test_random_forms_have_requested_degree(ctx):
    conn = ctx("B3").standard
    rng = random.Random(0)
    for p in range(4):
        phi = random_form(rng, conn, p, 2, 2)
        assert phi.is_zero() or phi.degrees() == [p]
    assert random_polynomial(rng, 4, 3, 2).nvars == 4
