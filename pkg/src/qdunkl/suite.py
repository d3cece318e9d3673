"""Verification cases shared by the CLI and the test suite."""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from . import __version__
from .algebra.forms import HorizontalForm
from .algebra.polynomial import Polynomial
from .algebra.rational import RationalFunction
from .bundle import (
    NonConstant,
    coth_sum_check,
    covariant_derivative,
    covariant_square_expected,
    constant_curvature_check,
    curvature_on,
    curvature_tensor,
    dunkl_curvature,
    form_group_action,
    leibniz_residual,
    make_coth,
    make_profile_dunkl,
    make_radial,
    make_standard_dunkl,
    multiplicativity_check,
    validate_displacement,
    vxrho_identity_check,
)
from .coxeter import generate_group, two_rotations
from .dunkl import (
    DunklOperator,
    apply_dunkl_full_sum,
    commutator_residual,
    covariant_partial,
    deformed_leibniz_residual,
    monomials,
    order_independence_check,
)
from .linalg import matmul, vecmat
from .qcalc import (
    antipode_holds,
    braid,
    braid_orbits,
    coassociativity_holds,
    counit_holds,
    delta_classified,
    delta_map,
    is_symmetric,
    quadratic_relations,
)
from .rootsystem import (
    DegenerateOrderVector,
    build_standard,
    orbits_and_multiplicity,
    positive_subsystem,
    reflect,
)

DEFAULT_SYSTEMS = ("A1", "A2", "A3", "B2", "B3", "G2", "I2(5)")


# sampling


def random_polynomial(rng, nvars, nspatial, degree, terms=4, coeffs=3):
    out = {}
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(nspatial)] += 1
        c = rng.randint(-coeffs, coeffs)
        if c:
            out[tuple(e)] = out.get(tuple(e), 0) + c
    return Polynomial(nvars, out)


def random_form(rng, conn, degree, poly_degree=3, terms=3):
    n = conn.dim
    comps = {
        idx: random_polynomial(rng, conn.nvars, n, poly_degree, terms)
        for idx in combinations(range(n), degree)
    }
    return HorizontalForm(n, comps, nvars=conn.nvars)


def generic_order_vector(rs, seed=0):
    """A deterministic order vector with ``<alpha, w> != 0`` that differs from the lexicographic one."""
    rng = random.Random(seed)
    lex = positive_subsystem(rs)
    for _ in range(200):
        w = tuple(rng.randint(-9, 9) for _ in range(rs.dim))
        try:
            ps = positive_subsystem(rs, w)
        except DegenerateOrderVector:
            continue
        if ps.positives != lex.positives:
            return w
    raise RuntimeError("no generic order vector found")


def two_directions(rs):
    """Two independent directions taken from the root list (or the axes in rank one)."""
    ps = positive_subsystem(rs)
    roots = ps.roots()
    if not roots:
        e = tuple(1 if i == 0 else 0 for i in range(rs.dim))
        return e, e
    xi = roots[0]
    for r in roots[1:]:
        if any(xi[i] * r[j] != xi[j] * r[i] for i in range(rs.dim) for j in range(i + 1, rs.dim)):
            return xi, r
    return xi, tuple(2 * c for c in xi)


# system context


class SystemContext:
    def __init__(self, name, order_cap=10_000, kappa="symbolic"):
        self.name = name
        self.rs = build_standard(name)
        self.group = generate_group(self.rs, order_cap=order_cap)
        self.kappa = orbits_and_multiplicity(self.rs, self.group, kappa)

    @cached_property
    def rotations(self):
        return two_rotations(self.group)

    @cached_property
    def standard(self):
        return make_standard_dunkl(self.group, self.kappa)

    @cached_property
    def linear_profile(self):
        return make_profile_dunkl(self.group, self.kappa, [0, 1])

    @cached_property
    def radial(self):
        return make_radial(self.group, self.kappa, [1, 0, 1])

    @cached_property
    def coth(self):
        return make_coth(self.group, self.kappa)


def _fmt_poly(p, ctx):
    return p.format(ctx.kappa.variable_names()) if hasattr(p, "format") else str(p)


# case functions return (passed, witness)


def case_root_axioms(ctx):
    rs = ctx.rs
    for a in rs.roots:
        for b in rs.roots:
            if reflect(b, a) not in rs:
                return False, f"{b} reflected in {a} leaves R"
    ps = positive_subsystem(rs)
    if 2 * len(ps.positives) != len(rs.roots):
        return False, f"|R+| = {len(ps.positives)}"
    if rs.roots:
        w = generic_order_vector(rs)
        pos = set(positive_subsystem(rs, w).positives)
        neg = set(positive_subsystem(rs, tuple(-c for c in w)).positives)
        if {rs.negative_index(i) for i in pos} != neg:
            return False, f"w -> -w does not negate R+ for w={w}"
    return True, None


def case_group_structure(ctx):
    G = ctx.group
    n = G.order
    for row in G.table:
        if sorted(row) != list(range(n)):
            return False, "table row is not a permutation"
    for j in range(n):
        if sorted(G.table[i][j] for i in range(n)) != list(range(n)):
            return False, "table column is not a permutation"
    if any(G.table[0][g] != g or G.table[g][0] != g for g in range(n)):
        return False, "index 0 is not the identity"
    if any(G.table[g][G.inverse[g]] != 0 for g in range(n)):
        return False, "inverse table is wrong"
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (rng.randrange(n) for _ in range(3))
        if G.table[G.table[a][b]][c] != G.table[a][G.table[b][c]]:
            return False, f"associativity fails on ({a}, {b}, {c})"
        if matmul(G.elements[a], G.elements[b]) != G.elements[G.table[a][b]]:
            return False, f"table disagrees with matrix product on ({a}, {b})"
    rs = ctx.rs
    for i, alpha in enumerate(rs.roots):
        s = G.reflection_for_root(i)
        for g in range(n):
            ag = vecmat(alpha, G.elements[g])
            if G.table[G.table[G.inverse[g]][s]][g] != G.reflection_for_root(rs.index(ag)):
                return False, f"g^-1 s_alpha g != s_(alpha g) for g={g}, alpha={alpha}"
    refl = [g for g in range(n) if G.is_reflection_matrix(g)]
    if refl != G.reflections:
        return False, "reflections of G differ from the root reflections"
    if len(G.reflections) * 2 != len(rs.roots):
        return False, "|S| != |R|/2"
    for s in G.reflections:
        if G.inverse[s] != s or any(G.conj(h, s) not in G.reflection_root for h in range(n)):
            return False, f"S is not inverse-closed and ad-invariant at {s}"
    return True, None


def case_commutativity(ctx, degree=6):
    xi, eta = two_directions(ctx.rs)
    res = commutator_residual(xi, eta, ctx.kappa, degree)
    for e, r in zip(monomials(ctx.rs.dim, degree), res):
        if not r.is_zero():
            return False, f"monomial {e}: {_fmt_poly(r, ctx)}"
    return True, None


def case_order_independence(ctx, degree=5):
    if not ctx.rs.roots:
        return True, None
    w = generic_order_vector(ctx.rs)
    nv, n = ctx.kappa.nvars, ctx.rs.dim
    samples = [Polynomial(nv, {e + (0,) * (nv - n): 1}) for e in monomials(n, degree)]
    ok = order_independence_check(ctx.kappa, None, w, samples)
    return ok, None if ok else f"operators differ between lexicographic order and w={w}"


def case_full_sum_form(ctx, samples=5, seed=3):
    rng = random.Random(seed)
    xi, _ = two_directions(ctx.rs)
    T = DunklOperator(xi, positive_subsystem(ctx.rs), ctx.kappa)
    for _ in range(samples):
        f = random_polynomial(rng, ctx.kappa.nvars, ctx.rs.dim, 4)
        if T(f) != apply_dunkl_full_sum(xi, ctx.kappa, f):
            return False, f"R+ and full-sum forms differ on {_fmt_poly(f, ctx)}"
    return True, None


def case_dunkl_leibniz(ctx, samples=5, degree=3, seed=11):
    rng = random.Random(seed)
    xi, _ = two_directions(ctx.rs)
    for _ in range(samples):
        f = random_polynomial(rng, ctx.kappa.nvars, ctx.rs.dim, degree)
        g = random_polynomial(rng, ctx.kappa.nvars, ctx.rs.dim, degree)
        r = deformed_leibniz_residual(f, g, xi, ctx.kappa)
        if not r.is_zero():
            return False, f"f={_fmt_poly(f, ctx)}, g={_fmt_poly(g, ctx)}: {_fmt_poly(r, ctx)}"
    return True, None


def case_zero_curvature(ctx):
    conn = ctx.standard
    C = curvature_tensor(conn)
    for rot in C.rotations:
        if not C.values[rot.index].is_zero():
            return False, f"r({rot.index}) = {C.values[rot.index].format()}"
        if rot.proper and not dunkl_curvature(conn, rot).is_zero():
            return False, f"-w sum* h h nonzero on {rot.index}"
    if not multiplicativity_check(conn):
        return False, "a quadratic relation is not annihilated"
    return True, None


def case_curvature_support(ctx):
    conn = ctx.linear_profile
    proper = {r.index for r in ctx.rotations if r.proper}
    for g in range(ctx.group.order):
        if g in proper:
            continue
        r = curvature_on(conn, g)
        if not r.is_zero():
            return False, f"curvature nonzero on non-proper element {g}"
    C = curvature_tensor(conn)
    for rot in C.rotations:
        if rot.proper and C.values[rot.index] != dunkl_curvature(conn, rot):
            return False, f"direct and -w sum* h h curvature differ on {rot.index}"
    if multiplicativity_check(conn) != C.is_zero():
        return False, "multiplicativity disagrees with curvature vanishing"
    return True, None


def _validate(conn, closed):
    rep = validate_displacement(conn, check_closed=closed)
    if not rep.ok:
        return False, f"{conn.kind}: {rep.witness()}"
    if closed and not rep.is_closed:
        s = next(s for s, v in rep.closed.items() if not v)
        return False, f"{conn.kind}: D lambda[{s}] = {rep.differentials[s].format()}"
    return True, None


def case_displacements(ctx):
    checks = [(ctx.standard, True), (ctx.linear_profile, True), (ctx.radial, False)]
    if ctx.rs.is_integral():
        checks.append((ctx.coth, False))
    for conn, closed in checks:
        ok, w = _validate(conn, closed)
        if not ok:
            return ok, w
    return True, None


def case_constant_curvature(ctx):
    if not ctx.rs.is_integral():
        return True, None
    try:
        constant_curvature_check(ctx.coth)
    except NonConstant as exc:
        return False, str(exc)
    return True, None


def case_form_leibniz(ctx, samples=3, seed=5):
    rng = random.Random(seed)
    for conn in (ctx.standard, ctx.linear_profile):
        for _ in range(samples):
            phi = random_form(rng, conn, rng.randint(0, min(2, conn.dim)), 2, 2)
            psi = random_form(rng, conn, rng.randint(0, min(1, conn.dim)), 2, 2)
            if not leibniz_residual(phi, psi, conn).is_zero():
                return False, f"{conn.kind}: phi={phi.format()}, psi={psi.format()}"
            sq = covariant_derivative(covariant_derivative(phi, conn), conn)
            if sq != covariant_square_expected(phi, conn):
                return False, f"{conn.kind}: D_w^2 formula fails on {phi.format()}"
    return True, None


def case_rcomm(ctx, samples=3, seed=9):
    if ctx.rs.dim < 2:
        return True, None
    rng = random.Random(seed)
    for conn in (ctx.standard, ctx.linear_profile):
        C = curvature_tensor(conn)
        for _ in range(samples):
            b = random_polynomial(rng, conn.nvars, conn.dim, 3)
            bf = conn.function(b)
            D = covariant_derivative(bf, conn)
            for k in range(conn.dim):
                if D.coefficient((k,)) != RationalFunction(covariant_partial(k, b, conn)):
                    return False, f"{conn.kind}: coordinate {k} of D_w(b) differs from the covariant partial"
            for k in range(conn.dim):
                for l in range(k + 1, conn.dim):
                    lhs = covariant_partial(k, covariant_partial(l, b, conn), conn) - covariant_partial(
                        l, covariant_partial(k, b, conn), conn
                    )
                    total = RationalFunction(lhs)
                    for rot in C.rotations:
                        bg = form_group_action(bf, ctx.group, rot.index).coefficient(())
                        total = total + C.component(rot.index, k, l) * bg
                    if not total.is_zero():
                        return False, f"{conn.kind}: r-comm fails at (k, l) = ({k}, {l})"
    return True, None


def case_hopf(ctx):
    G = ctx.group
    for g in range(G.order):
        if not (coassociativity_holds(G, g) and counit_holds(G, g) and antipode_holds(G, g)):
            return False, f"Hopf axiom fails on basis element {g}"
    return True, None


def case_delta(ctx):
    G = ctx.group
    rot = {r.index: r for r in ctx.rotations}
    S = set(G.reflections)
    for g in range(G.order):
        d = delta_map(G, g)
        if d != delta_classified(G, g):
            return False, f"delta({g}) disagrees with the classification"
        if g != 0 and g not in S and g not in rot and d:
            return False, f"delta({g}) should vanish"
        symmetric_expected = g == 0 or g in S or (g in rot and not rot[g].proper)
        if symmetric_expected and not is_symmetric(d):
            return False, f"delta({g}) is not symmetric"
    return True, None


def case_braid(ctx):
    G = ctx.group
    S = G.reflections
    orbits = braid_orbits(G)
    flat = sorted(x for o in orbits for x in o)
    if flat != sorted((h, g) for h in S for g in S):
        return False, "braid orbits do not partition S x S"
    for orbit in orbits:
        h, g = orbit[0]
        if h != g and len(orbit) != G.element_order(G.table[h][g]):
            return False, f"orbit of ({h}, {g}) has size {len(orbit)}"
        if G.table[h][g] == G.table[g][h] and braid(G, h, g) != (g, h):
            return False, f"commuting pair ({h}, {g}) is not flipped"
    return True, None


def case_relations(ctx):
    G = ctx.group
    rels = quadratic_relations(G)
    hs = {r.index for r in ctx.rotations}
    if {h for h, _ in rels} != hs:
        return False, "relations are not indexed by the 2-rotations"
    return True, None


SYSTEM_CASES = [
    ("rootsystem.axioms", case_root_axioms),
    ("coxeter.structure", case_group_structure),
    ("dunkl.commutativity", case_commutativity),
    ("dunkl.order_independence", case_order_independence),
    ("dunkl.full_sum_form", case_full_sum_form),
    ("dunkl.leibniz", case_dunkl_leibniz),
    ("bundle.zero_curvature", case_zero_curvature),
    ("bundle.curvature_support", case_curvature_support),
    ("bundle.displacements", case_displacements),
    ("bundle.constant_curvature", case_constant_curvature),
    ("bundle.form_leibniz", case_form_leibniz),
    ("bundle.r_comm", case_rcomm),
    ("qcalc.hopf", case_hopf),
    ("qcalc.delta", case_delta),
    ("qcalc.braid", case_braid),
    ("qcalc.relations", case_relations),
]


def global_cases():
    cases = []
    for m in (2, 3, 4, 5, 6):
        cases.append((f"vxrho.m{m}", lambda m=m: (vxrho_identity_check(m), None)))
    seqs = {
        1: [(1, 0), (1, 1), (0, 1)],
        2: [(1, 0), (1, 1), (0, 1), (-1, 1)],
        3: [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 1)],
    }
    for k, seq in seqs.items():
        cases.append((f"coth_sum.k{k}", lambda seq=seq: (coth_sum_check(seq), None)))
    return cases


@dataclass
class CaseResult:
    id: str
    status: str
    witness: str | None
    seconds: float


def _run_one(case_id, fn):
    t = time.perf_counter()
    try:
        ok, witness = fn()
    except Exception as exc:  # a crash is a failure with the exception as witness
        ok, witness = False, f"{type(exc).__name__}: {exc}"
    if not ok and not witness:
        witness = "check returned false"
    return CaseResult(case_id, "pass" if ok else "fail", None if ok else witness, time.perf_counter() - t)


def run_suite(systems=DEFAULT_SYSTEMS, degree=6, threads=1, order_cap=10_000, kappa="symbolic"):
    """Run every case; returns a report dict with deterministic ordering."""
    jobs = [(cid, fn) for cid, fn in global_cases()]
    contexts = {}
    for name in systems:
        ctx = SystemContext(name, order_cap=order_cap, kappa=kappa)
        contexts[name] = ctx
        for cid, fn in SYSTEM_CASES:
            if cid == "dunkl.commutativity":
                jobs.append((f"{name}/{cid}", lambda fn=fn, ctx=ctx: fn(ctx, degree)))
            elif cid == "dunkl.order_independence":
                jobs.append((f"{name}/{cid}", lambda fn=fn, ctx=ctx: fn(ctx, min(degree, 5))))
            else:
                jobs.append((f"{name}/{cid}", lambda fn=fn, ctx=ctx: fn(ctx)))
    # warm shared lazy attributes so workers only read
    for ctx in contexts.values():
        ctx.rotations
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: _run_one(*j), jobs))
    else:
        results = [_run_one(*j) for j in jobs]
    return build_report("all", ",".join(systems), results)


def build_report(suite, system, results):
    return {
        "tool_version": __version__,
        "system": system,
        "suite": suite,
        "cases": [{"id": r.id, "status": r.status, "witness": r.witness} for r in results],
        "passed": all(r.status == "pass" for r in results),
        "timings": {r.id: round(r.seconds, 4) for r in results},
    }

