"""Function Hopf algebra of a finite group and its first-order calculus.

Group functions are dicts ``{element index: scalar}`` in the Kronecker basis
(``g`` is the function that is 1 at ``g`` and 0 elsewhere).  Tensors of rank
two or three are dicts keyed by index tuples.  Germ elements are dicts over
the calculus set ``S`` with ``[eps]`` always expanded as ``-sum_s [s]``.
"""

from __future__ import annotations


def _clean(d):
    return {k: v for k, v in d.items() if v != 0}


def _acc(d, k, v):
    d[k] = d.get(k, 0) + v


def basis(g):
    return {g: 1}


def one(group):
    """The constant function 1 as ``sum_g g``."""
    return {g: 1 for g in range(group.order)}


# Hopf structure


def coproduct(group, f):
    """``phi(g) = sum_h h (x) h^-1 g``, extended linearly."""
    out = {}
    inv, table = group.inverse, group.table
    for g, c in f.items():
        for h in range(group.order):
            _acc(out, (h, table[inv[h]][g]), c)
    return _clean(out)


def counit(f):
    return f.get(0, 0)


def antipode(group, f):
    return {group.inverse[g]: c for g, c in f.items()}


def multiply(f1, f2):
    """Pointwise product in the Kronecker basis."""
    return _clean({g: c * f2[g] for g, c in f1.items() if g in f2})


def coassociativity_holds(group, g):
    left, right = {}, {}
    for (a, b), c in coproduct(group, basis(g)).items():
        for (a1, a2), c1 in coproduct(group, basis(a)).items():
            _acc(left, (a1, a2, b), c * c1)
        for (b1, b2), c2 in coproduct(group, basis(b)).items():
            _acc(right, (a, b1, b2), c * c2)
    return _clean(left) == _clean(right)


def counit_holds(group, g):
    cp = coproduct(group, basis(g))
    left, right = {}, {}
    for (a, b), c in cp.items():
        if a == 0:
            _acc(left, b, c)
        if b == 0:
            _acc(right, a, c)
    return _clean(left) == basis(g) == _clean(right)


def antipode_holds(group, g):
    """``m(S (x) id) phi(g) = eps(g) 1`` and ``m(id (x) S) phi(g) = eps(g) 1``."""
    cp = coproduct(group, basis(g))
    expected = one(group) if g == 0 else {}
    left, right = {}, {}
    for (a, b), c in cp.items():
        for k, v in multiply(antipode(group, basis(a)), basis(b)).items():
            _acc(left, k, c * v)
        for k, v in multiply(basis(a), antipode(group, basis(b))).items():
            _acc(right, k, c * v)
    return _clean(left) == expected == _clean(right)


def adjoint_action(group, g):
    """``ad(g) = sum_h (h g h^-1) (x) h``."""
    out = {}
    for h in range(group.order):
        _acc(out, (group.conj(h, g), h), 1)
    return _clean(out)


# germs


def calculus_set(group, S=None):
    """The set ``S`` of the calculus; all reflections by default."""
    S = tuple(sorted(group.reflections if S is None else S))
    if 0 in S:
        raise ValueError("the identity cannot belong to the calculus set")
    for s in S:
        if group.inverse[s] not in S:
            raise ValueError(f"calculus set is not closed under inversion (element {s})")
        for h in range(group.order):
            if group.conj(h, s) not in S:
                raise ValueError(f"calculus set is not ad-invariant (element {s})")
    return S


def germ_project(group, f, S=None):
    """``pi(s) = [s]``, ``pi(eps) = -sum [s]``, ``pi(g) = 0`` otherwise."""
    S = calculus_set(group, S)
    Sset = set(S)
    out = {}
    for g, c in f.items():
        if g in Sset:
            _acc(out, g, c)
        elif g == 0:
            for s in S:
                _acc(out, s, -c)
    return _clean(out)


def delta_map(group, g, S=None):
    """``delta(g) = (pi (x) pi) phi(g)`` expanded in the ``[s] (x) [t]`` basis."""
    S = calculus_set(group, S)
    out = {}
    for (a, b), c in coproduct(group, basis(g)).items():
        pa = germ_project(group, basis(a), S)
        if not pa:
            continue
        pb = germ_project(group, basis(b), S)
        for s, cs in pa.items():
            for t, ct in pb.items():
                _acc(out, (s, t), c * cs * ct)
    return _clean(out)


def delta_classified(group, g, S=None):
    """``delta(g)`` from the closed-form list: identity, reflections, 2-rotations, else 0."""
    S = calculus_set(group, S)
    eps = {s: -1 for s in S}

    def tensor(x, y):
        return {(s, t): cs * ct for s, cs in x.items() for t, ct in y.items()}

    out = {}
    if g == 0:
        for k, v in tensor(eps, eps).items():
            _acc(out, k, v)
        for s in S:
            _acc(out, (s, s), 1)
    elif g in S:
        for k, v in tensor(eps, {g: 1}).items():
            _acc(out, k, v)
        for k, v in tensor({g: 1}, eps).items():
            _acc(out, k, v)
    else:
        for s in S:
            t = group.table[group.inverse[s]][g]
            if t in S:
                _acc(out, (s, t), 1)
    return _clean(out)


def is_symmetric(t):
    return all(t.get((b, a), 0) == v for (a, b), v in t.items())


def pair(t1, t2):
    """Coordinate pairing ``sum_k t1[k] t2[k]``."""
    return sum((v * t2[k] for k, v in t1.items() if k in t2), 0)


# module structures and braiding


def module_circ(germ, f):
    """``[s] o f = f(s) [s]``."""
    return _clean({s: c * f.get(s, 0) for s, c in germ.items()})


def right_module(group, element, f):
    """Right action on ``Gamma = A (x) Gamma_inv``: ``a [g] . h = a (h g^-1) [g]``.

    ``element`` is a dict ``{(a, s): c}`` meaning ``sum c a [s]``.
    """
    out = {}
    for (a, s), c in element.items():
        for h, v in f.items():
            b = group.table[h][group.inverse[s]]
            if b == a:
                _acc(out, (a, s), c * v)
    return _clean(out)


def braid(group, h, g):
    """``sigma([h] (x) [g]) = [h g h^-1] (x) [h]``."""
    return (group.conj(h, g), h)


def braid_tensor(group, t):
    out = {}
    for (h, g), c in t.items():
        _acc(out, braid(group, h, g), c)
    return _clean(out)


def braid_orbits(group, S=None):
    S = calculus_set(group, S)
    seen = set()
    orbits = []
    for h in S:
        for g in S:
            if (h, g) in seen:
                continue
            orb = []
            x = (h, g)
            while x not in seen:
                seen.add(x)
                orb.append(x)
                x = braid(group, *x)
            orbits.append(orb)
    return orbits


def quadratic_relations(group, S=None):
    """``(h, sum_{g q = h} [g] (x) [q])`` for every ``h`` outside ``{eps} u S`` reachable as ``g q``."""
    S = calculus_set(group, S)
    Sset = set(S)
    rel = {}
    for g in S:
        for q in S:
            h = group.table[g][q]
            if h == 0 or h in Sset:
                continue
            rel.setdefault(h, {})[(g, q)] = 1
    return [(h, rel[h]) for h in sorted(rel)]


def tensor_to_json(t):
    return [{"left": a, "right": b, "coefficient": str(c)} for (a, b), c in sorted(t.items())]
