"""Command-line entry point: ``qdunkl <command> <subcommand> [flags]``.

Every command emits one JSON document.  Exit status is 0 when all checks
pass, 1 on a verification failure and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import time
from collections import Counter

from . import __version__
from .algebra.polynomial import LaurentPolynomial
from .algebra.scalars import parse_scalar, scalar_str
from .bundle import (
    NonConstant,
    NonIntegerRoots,
    constant_curvature_check,
    curvature_tensor,
    dunkl_curvature,
    make_coth,
    make_profile_dunkl,
    make_standard_dunkl,
)
from .coxeter import OrderCapExceeded, generate_group, two_rotations
from .dunkl import (
    ProfileNotOdd,
    commutator_residual,
    deformed_leibniz_residual,
    invariant_average,
    invariant_leibniz_residual,
    monomials,
)
from .qcalc import delta_classified, delta_map, is_symmetric, tensor_to_json
from .rootsystem import (
    InvalidMultiplicity,
    InvalidRootSystem,
    UnknownSystem,
    build_standard,
    orbits_and_multiplicity,
    positive_subsystem,
)
from .suite import DEFAULT_SYSTEMS, random_polynomial, run_suite, two_directions


class UsageError(Exception):
    pass


# argument helpers


def parse_kappa(text):
    """``"k1=1/2,k2=3"`` -> ``{"k1": 1/2, "k2": 3}``; ``None`` means symbolic."""
    if not text:
        return "symbolic"
    out = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"bad --kappa entry {part!r}; expected name=value")
        try:
            out[key.strip()] = parse_scalar(val)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --kappa value {val!r}") from exc
    return out


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(r(?:\^(\d+))?)?")


def parse_profile(text):
    """Univariate polynomial in ``r`` such as ``r``, ``2r^3`` or ``r + r^3/1`` -> coefficient list."""
    src = text.replace(" ", "")
    if not src:
        raise UsageError("empty profile polynomial")
    coeffs = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise UsageError(f"cannot parse profile {text!r}")
        c = parse_scalar(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        k = 0 if m.group(3) is None else int(m.group(4) or 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return [coeffs.get(k, 0) for k in range(deg + 1)]


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("DUNKL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"DUNKL_THREADS must be an integer, got {env!r}") from exc
    return 1


def _system(args):
    if not args.system:
        raise UsageError("--system is required")
    return build_standard(args.system)


def _group(args, rs):
    return generate_group(rs, order_cap=args.order_cap)


def _kappa(args, rs, group):
    return orbits_and_multiplicity(rs, group, parse_kappa(args.kappa))


def _rf_strings(rf, names):
    den = rf.den
    return {"numerator": rf.num.format(names), "denominator": den.format(names)}


# commands; each returns (report, passed)


def cmd_group_info(args):
    rs = _system(args)
    G = _group(args, rs)
    rots = two_rotations(G)
    census = Counter(r.order for r in rots if r.proper)
    report = {
        "system": rs.name,
        "order": G.order,
        "reflections": len(G.reflections),
        "class_sizes": sorted(len(c) for c in G.classes),
        "proper_rotations": {
            "count": sum(census.values()),
            "by_order": {str(k): census[k] for k in sorted(census)},
        },
        "improper_rotations": sum(1 for r in rots if not r.proper),
    }
    return report, True


def cmd_rootsys_validate(args):
    try:
        rs = _system(args)
    except InvalidRootSystem as exc:
        return {"system": args.system, "valid": False, "axiom": exc.axiom, "witness": str(exc)}, False
    ps = positive_subsystem(rs)
    report = {
        "system": rs.name,
        "valid": True,
        "dim": rs.dim,
        "roots": len(rs.roots),
        "positive_roots": len(ps.positives),
        "normalized": rs.is_normalized(),
        "integral": rs.is_integral(),
    }
    return report, True


def cmd_verify_commutativity(args):
    rs = _system(args)
    G = _group(args, rs)
    kappa = _kappa(args, rs, G)
    degree = 6 if args.degree is None else args.degree
    xi, eta = two_directions(rs)
    t = time.perf_counter()
    res = commutator_residual(xi, eta, kappa, degree)
    elapsed = time.perf_counter() - t
    bad = [(e, r) for e, r in zip(monomials(rs.dim, degree), res) if not r.is_zero()]
    report = {
        "system": rs.name,
        "degree": degree,
        "kappa": "symbolic" if args.kappa is None else args.kappa,
        "directions": [[scalar_str(c) for c in xi], [scalar_str(c) for c in eta]],
        "monomials_checked": len(res),
        "residuals_zero": not bad,
    }
    if bad:
        e, r = bad[0]
        report["witness"] = {"monomial": list(e), "residual": r.format(kappa.variable_names())}
    report["elapsed"] = round(elapsed, 4)
    return report, not bad


def cmd_verify_leibniz(args, samples=50, seed=2024):
    rs = _system(args)
    G = _group(args, rs)
    kappa = _kappa(args, rs, G)
    degree = 4 if args.degree is None else args.degree
    rng = random.Random(seed)
    xi, _ = two_directions(rs)
    names = kappa.variable_names()
    t = time.perf_counter()
    witness = None
    for _ in range(samples):
        f = random_polynomial(rng, kappa.nvars, rs.dim, degree)
        g = random_polynomial(rng, kappa.nvars, rs.dim, degree)
        if witness is None and not deformed_leibniz_residual(f, g, xi, kappa).is_zero():
            witness = {"f": f.format(names), "g": g.format(names)}
    n_inv = max(1, samples // 10)
    inv_witness = None
    for _ in range(n_inv):
        f = random_polynomial(rng, kappa.nvars, rs.dim, degree)
        g = invariant_average(G, random_polynomial(rng, kappa.nvars, rs.dim, degree))
        if inv_witness is None and not invariant_leibniz_residual(f, g, xi, kappa).is_zero():
            inv_witness = {"f": f.format(names), "invariant_g": g.format(names)}
    report = {
        "system": rs.name,
        "degree": degree,
        "pairs_checked": samples,
        "residuals_zero": witness is None,
        "invariant_pairs_checked": n_inv,
        "invariant_residuals_zero": inv_witness is None,
    }
    if witness or inv_witness:
        report["witness"] = witness or inv_witness
    report["elapsed"] = round(time.perf_counter() - t, 4)
    return report, witness is None and inv_witness is None


def _connection(args, G, kappa):
    choice = args.connection or "standard"
    if choice == "standard":
        return make_standard_dunkl(G, kappa)
    if choice == "coth":
        return make_coth(G, kappa)
    if choice.startswith("poly:"):
        return make_profile_dunkl(G, kappa, parse_profile(choice[5:]))
    raise UsageError(f"unknown connection {choice!r}; use standard, coth or poly:<p(r)>")


def cmd_curvature(args):
    rs = _system(args)
    G = _group(args, rs)
    kappa = _kappa(args, rs, G)
    conn = _connection(args, G, kappa)
    names = kappa.variable_names()
    if conn.ring is LaurentPolynomial:
        names = [f"t{i + 1}" for i in range(rs.dim)] + names[rs.dim:]
    C = curvature_tensor(conn)
    rows = []
    for rot in C.rotations:
        comps = [
            {"k": k, "l": l, **_rf_strings(v, names)}
            for (k, l), v in C.components(rot.index).items()
            if not v.is_zero()
        ]
        rows.append({"element": rot.index, "order": rot.order, "proper": rot.proper, "components": comps})
    zero = C.is_zero()
    report = {"system": rs.name, "connection": args.connection or "standard", "rotations": rows, "zero": zero}
    ok = True
    if conn.kind == "coth":
        try:
            consts = constant_curvature_check(conn)
            report["constant"] = True
            report["constants"] = {
                str(rho): (c.format(names) if hasattr(c, "format") else scalar_str(c)) for rho, c in consts.items()
            }
        except NonConstant as exc:
            report["constant"] = False
            report["witness"] = str(exc)
            ok = False
    else:
        agree = all(C.values[r.index] == dunkl_curvature(conn, r) for r in C.rotations if r.proper)
        improper_zero = all(C.values[r.index].is_zero() for r in C.rotations if not r.proper)
        report["matches_orientation_sum"] = agree and improper_zero
        ok = agree and improper_zero and (zero or conn.kind != "standard")
    return report, ok


def cmd_qcalc_delta(args):
    rs = _system(args)
    G = _group(args, rs)
    if args.element is None:
        raise UsageError("--element is required")
    if not 0 <= args.element < G.order:
        raise UsageError(f"--element must lie in [0, {G.order})")
    g = args.element
    rots = {r.index: r for r in two_rotations(G)}
    if g == 0:
        kind = "identity"
    elif g in G.reflection_root:
        kind = "reflection"
    elif g in rots:
        kind = "proper_rotation" if rots[g].proper else "involutive_rotation"
    else:
        kind = "other"
    d = delta_map(G, g)
    match = d == delta_classified(G, g)
    report = {
        "system": rs.name,
        "element": g,
        "kind": kind,
        "reflections": list(G.reflections),
        "tensor": tensor_to_json(d),
        "symmetric": is_symmetric(d),
        "matches_classification": match,
    }
    return report, match


def cmd_suite_all(args):
    systems = tuple(s.strip() for s in args.system.split(",")) if args.system else DEFAULT_SYSTEMS
    for s in systems:
        build_standard(s)  # fail fast on unknown names
    report = run_suite(
        systems,
        degree=6 if args.degree is None else args.degree,
        threads=_threads(args),
        order_cap=args.order_cap,
        kappa=parse_kappa(args.kappa),
    )
    return report, report["passed"]


COMMANDS = {
    "group": {"info": cmd_group_info},
    "rootsys": {"validate": cmd_rootsys_validate},
    "verify": {"commutativity": cmd_verify_commutativity, "leibniz": cmd_verify_leibniz},
    "curvature": {None: cmd_curvature},
    "qcalc": {"delta": cmd_qcalc_delta},
    "suite": {"all": cmd_suite_all},
}


def _add_common(p):
    p.add_argument("--system", help="catalog name (A2, B3, G2, I2(5), H3, ...) or a JSON file of root vectors")
    p.add_argument("--degree", type=int)
    p.add_argument("--kappa", help="numeric multiplicities, e.g. k1=1/2,k2=3 (default symbolic)")
    p.add_argument("--symbolic-kappa", action="store_true", help="symbolic multiplicities (the default)")
    p.add_argument("--connection", help="standard, coth or poly:<p(r)>")
    p.add_argument("--element", type=int)
    p.add_argument("--json", nargs="?", const="-", default="-", metavar="PATH", help="output path, '-' for stdout")
    p.add_argument("--threads", type=int)
    p.add_argument("--order-cap", type=int, default=10_000)


def build_parser():
    parser = argparse.ArgumentParser(prog="qdunkl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qdunkl {__version__}")
    top = parser.add_subparsers(dest="command", required=True)
    for name, subs in COMMANDS.items():
        p = top.add_parser(name)
        if None in subs:
            _add_common(p)
            continue
        inner = p.add_subparsers(dest="subcommand", required=True)
        for sub in subs:
            _add_common(inner.add_parser(sub))
    return parser


def _emit(report, target):
    text = json.dumps(report, indent=2) + "\n"
    if target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = COMMANDS[args.command][getattr(args, "subcommand", None)]
    if args.symbolic_kappa and args.kappa:
        parser.error("--symbolic-kappa and --kappa are mutually exclusive")
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be positive")
    try:
        report, ok = fn(args)
    except (UsageError, UnknownSystem, InvalidMultiplicity, ProfileNotOdd, NonIntegerRoots) as exc:
        print(f"qdunkl: error: {exc}", file=sys.stderr)
        return 2
    except InvalidRootSystem as exc:
        print(f"qdunkl: invalid root system: {exc}", file=sys.stderr)
        return 1
    except OrderCapExceeded as exc:
        print(f"qdunkl: error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.json)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
