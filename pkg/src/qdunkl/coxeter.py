"""Finite Coxeter groups generated by root reflections.

Elements are stored both as matrices (row-vector convention, ``x -> x M``)
and as permutations of the root list.  A group element is determined by its
action on the roots, so products, inverses and the multiplication table are
computed on permutations; matrices are only multiplied once per element.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key

from .algebra.scalars import rdiv, sign
from .linalg import det, identity, matmul, rank, vecmat, vsub, vadd, wedge2
from .rootsystem import canonical_root


class OrderCapExceeded(RuntimeError):
    def __init__(self, cap):
        super().__init__(f"group order exceeds the cap of {cap} elements")
        self.cap = cap


def _compose(p, q):
    # (gh) acts as "first g, then h" on row vectors
    return tuple(q[i] for i in p)


class CoxeterGroup:
    def __init__(self, rootsystem, elements, perms, generators):
        self.rootsystem = rootsystem
        self.elements = elements
        self.perms = perms
        self._index = {p: i for i, p in enumerate(perms)}
        n = len(perms)
        self.table = [[self._index[_compose(perms[i], perms[j])] for j in range(n)] for i in range(n)]
        ident = 0
        self.inverse = [row.index(ident) for row in self.table]
        self.reflection_root = {}
        for root_idx, g in generators:
            self.reflection_root.setdefault(g, root_idx)
        self.reflections = sorted(self.reflection_root)
        self._orders = None
        self._classes = None

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index_of_matrix(self, m):
        rs = self.rootsystem
        p = tuple(rs.index(vecmat(r, m)) for r in rs.roots)
        return self._index[p]

    def mul(self, i, j):
        return self.table[i][j]

    def conj(self, g, s):
        """Index of ``g s g^-1``."""
        return self.table[self.table[g][s]][self.inverse[g]]

    def element_order(self, i):
        if self._orders is None:
            orders = []
            for g in range(len(self.elements)):
                k, x = 1, g
                while x != 0:
                    x = self.table[x][g]
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders[i]

    @property
    def classes(self):
        if self._classes is None:
            seen = set()
            out = []
            for g in range(len(self.elements)):
                if g in seen:
                    continue
                cls = sorted({self.conj(h, g) for h in range(len(self.elements))})
                seen.update(cls)
                out.append(cls)
            self._classes = out
        return self._classes

    def reflection_for_root(self, root_idx):
        """Element index of ``sigma_alpha`` for root index ``root_idx``."""
        rs = self.rootsystem
        return self.index_of_matrix(rs.reflection(root_idx))

    def root_of(self, s):
        """Canonical (lexicographically positive) root of the reflection ``s``."""
        return canonical_root(self.rootsystem, self.reflection_root[s])

    def is_reflection_matrix(self, i):
        m = self.elements[i]
        n = len(m)
        if i == 0 or self.table[i][i] != 0 or det(m) != -1:
            return False
        fixed = [tuple(m[r][c] - (1 if r == c else 0) for c in range(n)) for r in range(n)]
        return rank(fixed) == 1


def generate_group(rs, order_cap=10_000):
    """Close the reflections of ``rs`` under multiplication (breadth first)."""
    n = rs.dim
    nroots = len(rs.roots)
    ident_perm = tuple(range(nroots))
    gens = []
    seen_gen = {}
    for i in range(nroots):
        m = rs.reflection(i)
        p = tuple(rs.index(vecmat(r, m)) for r in rs.roots)
        if p not in seen_gen:
            seen_gen[p] = (i, m)
        gens.append((i, p))
    gen_list = [(p, m) for p, (_, m) in seen_gen.items()]
    elements = [identity(n)]
    perms = [ident_perm]
    index = {ident_perm: 0}
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for p, m in gen_list:
            q = _compose(perms[g], p)
            if q in index:
                continue
            if len(perms) >= order_cap:
                raise OrderCapExceeded(order_cap)
            index[q] = len(perms)
            perms.append(q)
            elements.append(matmul(elements[g], m))
            queue.append(index[q])
    generators = [(i, index[p]) for i, p in gens if canonical_root(rs, i) == rs.roots[i]]
    return CoxeterGroup(rs, elements, perms, generators)


# 2-rotations


@dataclass(frozen=True)
class TwoRotation:
    index: int
    order: int
    proper: bool
    decompositions: tuple  # ordered (s, t) element-index pairs with s t = rho
    orientation: dict  # w_rho components {(k, l): value}, k < l
    pair: tuple  # (alpha, beta) root vectors with alpha ^ beta = w_rho


def _form_ratio_sign(a, b):
    """Sign of ``a / b`` for two proportional 2-forms given as component dicts."""
    for k, v in b.items():
        if v != 0:
            return sign(a.get(k, 0)) * sign(v)
    return 0


def _oriented_pair(group, rho, s, t):
    rs = group.rootsystem
    alpha = group.root_of(s)
    beta = group.root_of(t)
    w = wedge2(alpha, beta)
    turn = wedge2(alpha, vecmat(alpha, group.elements[rho]))
    if turn and _form_ratio_sign(w, turn) < 0:
        beta = tuple(-c for c in beta)
        w = {k: -v for k, v in w.items()}
    return alpha, beta, w


def two_rotations(group):
    """All non-identity products ``s t`` of two reflections, with full decomposition lists."""
    decomps = {}
    for s in group.reflections:
        for t in group.reflections:
            if s == t:
                continue
            decomps.setdefault(group.table[s][t], []).append((s, t))
    out = []
    for rho in sorted(decomps):
        pairs = tuple(sorted(decomps[rho]))
        order = group.element_order(rho)
        s0 = min((p for p in pairs), key=lambda p: group.root_of(p[0]))
        alpha, beta, w = _oriented_pair(group, rho, *s0)
        out.append(TwoRotation(rho, order, order > 2, pairs, w, (alpha, beta)))
    return out


def oriented_decompositions(group, rot):
    """Per decomposition ``(s, t, alpha, beta, mu)`` with ``alpha ^ beta = mu * w_rho``.

    ``alpha`` and ``beta`` are the canonical roots of ``s`` and ``t``.
    """
    out = []
    w = rot.orientation
    key = next(iter(w))
    for s, t in rot.decompositions:
        a, b = group.root_of(s), group.root_of(t)
        ab = wedge2(a, b)
        mu = rdiv(ab.get(key, 0), w[key])
        out.append((s, t, a, b, mu))
    return out


# rank-2 classification


@dataclass(frozen=True)
class Rank2Class:
    kind: str  # hexagonal | octagonal | dodecagonal | orthogonal | other(m)
    plane_roots: int
    arithmetic_half: tuple | None


def plane_roots(group, rot):
    alpha, beta = rot.pair
    return [r for r in group.rootsystem.roots if rank([alpha, beta, r]) == 2]


def _plane_coords(alpha, beta, v):
    # solve v = a alpha + b beta using two independent coordinates
    n = len(alpha)
    for i in range(n):
        for j in range(i + 1, n):
            d = alpha[i] * beta[j] - alpha[j] * beta[i]
            if d != 0:
                a = rdiv(v[i] * beta[j] - v[j] * beta[i], d)
                b = rdiv(alpha[i] * v[j] - alpha[j] * v[i], d)
                return a, b
    raise ValueError("vectors do not span a plane")


def angular_order(alpha, beta, vectors):
    """Sort plane vectors counter-clockwise in the oriented basis ``(alpha, beta)``."""
    coords = {tuple(v): _plane_coords(alpha, beta, v) for v in vectors}

    def half(c):
        a, b = c
        return 0 if sign(b) > 0 or (b == 0 and sign(a) > 0) else 1

    def cmp(u, v):
        cu, cv = coords[u], coords[v]
        hu, hv = half(cu), half(cv)
        if hu != hv:
            return hu - hv
        return -sign(cu[0] * cv[1] - cu[1] * cv[0])

    return sorted((tuple(v) for v in vectors), key=cmp_to_key(cmp))


def _is_arithmetic(vs):
    v = vs[0]
    return all(vsub(vs[k], vs[k + 1]) == v for k in range(1, len(vs) - 1))


def arithmetic_type_check(vectors):
    """Whether ``vectors`` is an arithmetic sequence with neighbour sums inserted.

    Interior entries equal to the sum of their neighbours are removed (in any
    order) until a sequence with ``v_k - v_{k+1} = v_0`` for all ``k >= 1`` remains.
    """
    vs = tuple(tuple(v) for v in vectors)
    if len(vs) < 3:
        raise ValueError("an arithmetic-type check needs at least three vectors")
    memo = {}

    def search(seq):
        if seq in memo:
            return memo[seq]
        ok = _is_arithmetic(seq)
        if not ok:
            for i in range(1, len(seq) - 1):
                if vadd(seq[i - 1], seq[i + 1]) == seq[i] and search(seq[:i] + seq[i + 1:]):
                    ok = True
                    break
        memo[seq] = ok
        return ok

    return search(vs)


def arithmetic_halves(group, rot):
    """Every half-turn window of the plane roots (in rotation order) of arithmetic type."""
    alpha, beta = rot.pair
    roots = angular_order(alpha, beta, plane_roots(group, rot))
    k = len(roots) // 2
    out = []
    for start in range(len(roots)):
        window = tuple(roots[(start + j) % len(roots)] for j in range(k))
        if len(window) >= 3 and arithmetic_type_check(window):
            out.append(window)
    return out


def classify_rank2(group, rot):
    n = len(plane_roots(group, rot))
    if not rot.proper:
        kind = "orthogonal"
    else:
        kind = {6: "hexagonal", 8: "octagonal", 12: "dodecagonal"}.get(n, f"other({n // 2})")
    halves = arithmetic_halves(group, rot) if rot.proper else []
    return Rank2Class(kind, n, halves[0] if halves else None)
