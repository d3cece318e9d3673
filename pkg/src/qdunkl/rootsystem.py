"""Root systems, reflections, positive subsystems and multiplicity functions."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra.polynomial import Polynomial
from .algebra.scalars import Quad, rdiv, sign
from .linalg import dot, vecmat


class InvalidRootSystem(ValueError):
    """A root-system axiom failed; ``axiom`` names it and ``witness`` is an offending root."""

    def __init__(self, axiom, witness=None, detail=""):
        msg = f"root system axiom violated: {axiom}"
        if witness is not None:
            msg += f" (witness {_vec_str(witness)})"
        if detail:
            msg += f"; {detail}"
        super().__init__(msg)
        self.axiom = axiom
        self.witness = witness


class DegenerateOrderVector(ValueError):
    def __init__(self, witness):
        super().__init__(f"order vector is orthogonal to root {_vec_str(witness)}")
        self.witness = witness


class InvalidMultiplicity(ValueError):
    pass


class UnknownSystem(ValueError):
    pass


def _vec_str(v):
    return "(" + ", ".join(str(c) for c in v) + ")"


def _norm_vec(v):
    out = []
    for c in v:
        if isinstance(c, float):
            raise TypeError("root coordinates must be exact")
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out.append(c)
    return tuple(out)


def reflect(beta, alpha):
    """``beta sigma_alpha = beta - 2 <alpha, beta> / <alpha, alpha> alpha``."""
    f = rdiv(2 * dot(alpha, beta), dot(alpha, alpha))
    if f == 0:
        return tuple(beta)
    return tuple(b - f * a for a, b in zip(alpha, beta))


def reflection_matrix(alpha):
    """Matrix ``M`` with ``x M = x sigma_alpha`` (row vectors)."""
    alpha = _norm_vec(alpha)
    nn = dot(alpha, alpha)
    if nn == 0:
        raise ValueError("cannot reflect in the zero vector")
    n = len(alpha)
    return tuple(
        tuple((1 if j == k else 0) - rdiv(2 * alpha[j] * alpha[k], nn) for k in range(n))
        for j in range(n)
    )


def _parallel(a, b):
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


class RootSystem:
    """A validated finite root system in ``R^dim``."""

    def __init__(self, roots, dim=None, name="custom"):
        roots = [_norm_vec(r) for r in roots]
        if dim is None:
            if not roots:
                raise InvalidRootSystem("dimension", detail="empty system needs an explicit dim")
            dim = len(roots[0])
        self.dim = dim
        self.name = name
        self.roots = roots
        self._index = {}
        _validate(self)
        for i, r in enumerate(roots):
            self._index[r] = i
        self._reflections = {}

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def index(self, root):
        return self._index[_norm_vec(root)]

    def __contains__(self, root):
        return _norm_vec(root) in self._index

    def reflection(self, i):
        if i not in self._reflections:
            self._reflections[i] = reflection_matrix(self.roots[i])
        return self._reflections[i]

    def negative_index(self, i):
        return self._index[tuple(-c for c in self.roots[i])]

    def is_normalized(self):
        """Whether every root has squared length 2 (reported, not required)."""
        return all(dot(r, r) == 2 for r in self.roots)

    def is_integral(self):
        return all(isinstance(c, int) for r in self.roots for c in r)

    def __repr__(self):
        return f"RootSystem({self.name}, dim={self.dim}, |R|={len(self.roots)})"


def _validate(rs):
    seen = set()
    for r in rs.roots:
        if len(r) != rs.dim:
            raise InvalidRootSystem("dimension", r, f"expected length {rs.dim}")
        if all(c == 0 for c in r):
            raise InvalidRootSystem("nonzero roots", r)
        if r in seen:
            raise InvalidRootSystem("no duplicate roots", r)
        seen.add(r)
    for r in rs.roots:
        if tuple(-c for c in r) not in seen:
            raise InvalidRootSystem("alpha in R implies -alpha in R", r)
    for i, a in enumerate(rs.roots):
        for b in rs.roots[i + 1:]:
            if _parallel(a, b) and b != tuple(-c for c in a):
                raise InvalidRootSystem("r alpha in R implies r = +-1", b)
    for a in rs.roots:
        for b in rs.roots:
            if reflect(b, a) not in seen:
                raise InvalidRootSystem("R sigma_alpha = R", b, f"not closed under sigma_{_vec_str(a)}")


def closure(generators):
    """Smallest reflection-closed set containing ``generators`` (insertion ordered)."""
    roots = [_norm_vec(g) for g in generators]
    seen = set(roots)
    i = 0
    while i < len(roots):
        a = roots[i]
        for b in list(roots):
            for c in (reflect(b, a), reflect(a, b)):
                if c not in seen:
                    seen.add(c)
                    roots.append(c)
        i += 1
    return roots


# catalog


def _e(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


def _type_a(n):
    d = n + 1
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            v = [0] * d
            v[i], v[j] = 1, -1
            out += [tuple(v), tuple(-c for c in v)]
    return out, d


def _pm_pairs(n):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    out.append(tuple(v))
    return out


def _type_b(n):
    short = [tuple(_e(n, i, s)) for i in range(n) for s in (1, -1)]
    return short + _pm_pairs(n), n


def _type_c(n):
    long_ = [tuple(_e(n, i, 2 * s)) for i in range(n) for s in (1, -1)]
    return long_ + _pm_pairs(n), n


def _type_d(n):
    return _pm_pairs(n), n


def _g2():
    short = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
    long_ = [(2, -1, -1), (-1, 2, -1), (-1, -1, 2)]
    out = []
    for v in short + long_:
        out += [v, tuple(-c for c in v)]
    return out, 3


def _h_generators():
    phi = Quad.phi()
    inv = phi - 1
    half = Fraction(1, 2)
    a = (1, 0, 0)
    b = (-phi * half, half, inv * half)
    c = (0, -1, 0)
    return a, b, c


def _i2_5():
    a, b, _ = _h_generators()
    return closure([a, b]), 3


def _h3():
    return closure(list(_h_generators())), 3


_NAME = re.compile(r"^([A-Za-z])_?(\d+)(?:\((\d+)\))?$")


def build_standard(name, dim=None):
    """Catalog lookup: ``A_n B_n C_n D_n G2 I2(m) H3``, ``empty`` or a JSON file of vectors."""
    text = name.strip()
    if text.lower().endswith(".json") or Path(text).is_file():
        return load_custom(text)
    if text.lower() == "empty":
        return RootSystem([], dim=dim or 1, name="empty")
    m = _NAME.match(text.replace(" ", ""))
    if not m:
        raise UnknownSystem(f"unknown root system {name!r}")
    letter, n, extra = m.group(1).upper(), int(m.group(2)), m.group(3)
    if letter == "I":
        if n != 2 or extra is None:
            raise UnknownSystem(f"dihedral systems are written I2(m), got {name!r}")
        mm = int(extra)
        builders = {3: lambda: _type_a(2), 4: lambda: _type_b(2), 5: _i2_5, 6: _g2}
        if mm not in builders:
            raise UnknownSystem(f"I2({mm}) is not exactly representable; supported m: 3, 4, 5, 6")
        roots, d = builders[mm]()
        return RootSystem(roots, d, name=f"I2({mm})")
    if extra is not None:
        raise UnknownSystem(f"unknown root system {name!r}")
    if n < 1:
        raise UnknownSystem("rank must be at least 1")
    if letter == "A" and n == 1:
        roots, d = [(1,), (-1,)], 1
    elif letter == "A":
        roots, d = _type_a(n)
    elif letter == "B":
        roots, d = _type_b(n)
    elif letter == "C":
        roots, d = _type_c(n)
    elif letter == "D" and n >= 2:
        roots, d = _type_d(n)
    elif letter == "G" and n == 2:
        roots, d = _g2()
    elif letter == "H" and n == 3:
        roots, d = _h3()
    else:
        raise UnknownSystem(f"unknown root system {name!r}")
    return RootSystem(roots, d, name=f"{letter}{n}")


def load_custom(path):
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        roots, dim = data.get("roots", []), data.get("dim")
    else:
        roots, dim = data, None
    if not isinstance(roots, list) or any(not isinstance(r, list) for r in roots):
        raise InvalidRootSystem("format", detail="expected a JSON list of vectors")
    vecs = [tuple(Fraction(str(c)) for c in r) for r in roots]
    return RootSystem(vecs, dim, name=Path(path).stem)


# positive subsystems


def _lex_sign(v):
    for c in v:
        s = sign(c)
        if s:
            return s
    return 0


@dataclass(frozen=True)
class PositiveSystem:
    parent: RootSystem
    order_vector: tuple | None
    positives: tuple  # root indices

    def roots(self):
        return [self.parent.roots[i] for i in self.positives]

    def __contains__(self, root):
        return self.parent.index(root) in self.positives


def positive_subsystem(rs, w=None):
    """Roots with ``<alpha, w> > 0``; ``w=None`` means lexicographic order."""
    pos = []
    for i, r in enumerate(rs.roots):
        s = _lex_sign(r) if w is None else sign(dot(r, w))
        if s == 0:
            raise DegenerateOrderVector(r)
        if s > 0:
            pos.append(i)
    return PositiveSystem(rs, None if w is None else tuple(w), tuple(pos))


def canonical_root(rs, i):
    """The lexicographically positive member of ``{alpha, -alpha}``."""
    r = rs.roots[i]
    return r if _lex_sign(r) > 0 else tuple(-c for c in r)


# multiplicities


@dataclass
class MultiplicityFunction:
    """``kappa`` on ``R`` as polynomials in the trailing symbolic variables.

    ``values[o]`` is the numeric value of orbit ``o`` or ``None`` when that orbit
    carries an indeterminate.  ``nvars`` is ``dim`` plus the number of
    indeterminates, i.e. the variable count of every coefficient ring built from
    this multiplicity.
    """

    rootsystem: RootSystem
    orbits: list
    values: list
    per_root: dict | None = None
    names: list = field(default_factory=list)

    def __post_init__(self):
        self.orbit_of = {}
        for o, orb in enumerate(self.orbits):
            for i in orb:
                self.orbit_of[i] = o
        self.symbol_index = {}
        for o, v in enumerate(self.values):
            if v is None:
                self.symbol_index[o] = len(self.symbol_index)
        if not self.names:
            self.names = [f"k{o + 1}" for o in range(len(self.orbits))]

    @property
    def dim(self):
        return self.rootsystem.dim

    @property
    def nsym(self):
        return len(self.symbol_index)

    @property
    def nvars(self):
        return self.dim + self.nsym

    def variable_names(self):
        syms = [self.names[o] for o in sorted(self.symbol_index, key=self.symbol_index.get)]
        return [f"x{i + 1}" for i in range(self.dim)] + syms

    def value(self, i):
        """Scalar or :class:`Polynomial` multiplicity of root ``i``."""
        if self.per_root is not None:
            return self.per_root[i]
        o = self.orbit_of[i]
        v = self.values[o]
        if v is None:
            return Polynomial.var(self.dim + self.symbol_index[o], self.nvars)
        return v

    def poly(self, i):
        v = self.value(i)
        return v if isinstance(v, Polynomial) else Polynomial.constant(v, self.nvars)

    def is_zero(self):
        return self.per_root is None and all(v is not None and v == 0 for v in self.values)

    def is_invariant(self, group):
        """G-invariance and evenness, checked root by root."""
        rs = self.rootsystem
        for i, r in enumerate(rs.roots):
            if self.poly(i) != self.poly(rs.negative_index(i)):
                return False
            for g in group.elements:
                if self.poly(i) != self.poly(rs.index(vecmat(r, g))):
                    return False
        return True

    def num_orbits(self):
        return len(self.orbits)


def root_orbits(rs, group):
    """Orbits of ``R`` under ``G`` in order of first appearance."""
    mats = group.elements if hasattr(group, "elements") else list(group)
    orbit_of = {}
    orbits = []
    for i, r in enumerate(rs.roots):
        if i in orbit_of:
            continue
        o = len(orbits)
        members = sorted({rs.index(vecmat(r, g)) for g in mats})
        for j in members:
            orbit_of[j] = o
        orbits.append(members)
    return orbits


def orbits_and_multiplicity(rs, group, values="symbolic"):
    """Attach one multiplicity per ``G``-orbit.

    ``values`` may be ``"symbolic"`` (every orbit gets an indeterminate), a list
    with one entry per orbit (``None`` entries are symbolic) or a dict keyed by
    orbit name ``k1, k2, ...`` or by 0-based orbit index; missing keys are symbolic.
    """
    orbits = root_orbits(rs, group)
    n = len(orbits)
    names = [f"k{o + 1}" for o in range(n)]
    if values == "symbolic" or values is None:
        vals = [None] * n
    elif isinstance(values, dict):
        vals = [None] * n
        for key, v in values.items():
            o = names.index(key) if key in names else key
            if not isinstance(o, int) or not 0 <= o < n:
                raise InvalidMultiplicity(f"unknown orbit {key!r}; orbits are {names}")
            vals[o] = v
    else:
        vals = list(values)
        if len(vals) != n:
            raise InvalidMultiplicity(f"expected {n} orbit values, got {len(vals)}")
    return MultiplicityFunction(rs, orbits, vals, names=names)


def per_root_multiplicity(rs, group, values):
    """Multiplicity given root by root; not necessarily ``G``-invariant (for negative controls)."""
    orbits = root_orbits(rs, group)
    vals = {}
    for i in range(len(rs.roots)):
        vals[i] = values[i] if isinstance(values, (list, tuple)) else values(i, rs.roots[i])
    return MultiplicityFunction(rs, orbits, [0] * len(orbits), per_root=vals)
