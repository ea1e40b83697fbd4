"""Cartan data, root closure, Weyl orbits, and exact integer pairings.

Weights are plain tuples of integers holding fundamental-weight
coordinates: entry i of a weight w is <w, alpha_i_check>.  Simple root
alpha_j is then column j of the Cartan matrix.  Roots additionally carry
their simple-root coordinates and their coroot, so every pairing in the
package reduces to an integer dot product.

Type B is labelled with its short simple root first (alpha_1 short,
double bond towards alpha_2), matching the weight coordinates used by
the bundled Sp4 fixtures; type C keeps the long root last.  For rank 2
the two labellings coincide.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import InvalidType, MismatchedSystem, NotDominant

_FAMILY_RANKS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class CartanType:
    """A product of irreducible Cartan types, e.g. B2 or A1xA1."""

    components: tuple[tuple[str, int], ...]

    @staticmethod
    def parse(name: str) -> "CartanType":
        parts = name.strip().split("x")
        comps = []
        for part in parts:
            m = re.fullmatch(r"([A-G])\s*([0-9]+)", part.strip())
            if not m:
                raise InvalidType("cannot parse Cartan type %r" % part)
            family, rank = m.group(1), int(m.group(2))
            lo, hi = _FAMILY_RANKS[family]
            if rank < lo or (hi is not None and rank > hi):
                raise InvalidType("rank %d out of range for family %s" % (rank, family))
            comps.append((family, rank))
        if not comps:
            raise InvalidType("empty Cartan type")
        return CartanType(tuple(comps))

    @property
    def name(self) -> str:
        return "x".join("%s%d" % (f, r) for f, r in self.components)

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1


def _chain(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = -1
            m[i + 1][i] = -1
    return m


def _cartan_block(family: str, rank: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix a[i][j] = <alpha_j, alpha_i_check> and symmetrizer d."""
    if family == "A":
        return _chain(rank), [1] * rank
    if family == "B":
        m = _chain(rank)
        m[0][1] = -2
        return m, [1] + [2] * (rank - 1)
    if family == "C":
        m = _chain(rank)
        m[rank - 2][rank - 1] = -2
        return m, [1] * (rank - 1) + [2]
    if family == "D":
        m = _chain(rank)
        # detach the last node from the chain and hook it onto node rank-3
        m[rank - 2][rank - 1] = m[rank - 1][rank - 2] = 0
        m[rank - 3][rank - 1] = m[rank - 1][rank - 3] = -1
        return m, [1] * rank
    if family == "E":
        m = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            m[i][i] = 2
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
        for i, j in edges:
            m[i][j] = m[j][i] = -1
        return m, [1] * rank
    if family == "F":
        m = _chain(4)
        m[2][1] = -2
        m[1][2] = -1
        return m, [2, 2, 1, 1]
    if family == "G":
        return [[2, -3], [-1, 2]], [1, 3]
    raise InvalidType("unknown family %r" % family)


class Coroot:
    """A coroot beta_check as integer coordinates in the simple coroots."""

    __slots__ = ("system_key", "coords", "height")

    def __init__(self, system_key, coords):
        self.system_key = system_key
        self.coords = tuple(coords)
        self.height = sum(self.coords)

    def __repr__(self):
        return "Coroot(%s)" % (self.coords,)

    def __eq__(self, other):
        return isinstance(other, Coroot) and self.coords == other.coords \
            and self.system_key == other.system_key

    def __hash__(self):
        return hash((self.system_key, self.coords))


class Root:
    """A root with simple-root coordinates and fundamental-weight coordinates."""

    __slots__ = ("coords", "fund", "d", "coroot", "height")

    def __init__(self, coords, fund, d, coroot):
        self.coords = coords      # beta = sum coords[i] * alpha_i
        self.fund = fund          # fund[i] = <beta, alpha_i_check>
        self.d = d                # (beta, beta) / 2, short roots normalized to 1
        self.coroot = coroot
        self.height = sum(coords)

    def __repr__(self):
        return "Root(%s)" % (self.coords,)


@dataclass(frozen=True)
class Component:
    """One irreducible factor of a root system."""

    name: str
    indices: tuple[int, ...]
    coxeter: int
    alpha0: Root          # highest short root of the component
    n_positive: int


class WeylElement:
    """A Weyl group element stored as a word in simple reflections.

    ``apply`` performs the reflections in word order, so the element is
    the composite of the reflections with the last letter acting first
    on paper; only the operational behaviour matters here.
    """

    __slots__ = ("system", "word")

    def __init__(self, system, word):
        self.system = system
        self.word = tuple(word)

    def apply(self, weight):
        w = tuple(weight)
        for i in self.word:
            w = self.system.reflect(i, w)
        return w

    def __call__(self, weight):
        return self.apply(weight)

    @property
    def det(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def inverse(self) -> "WeylElement":
        return WeylElement(self.system, tuple(reversed(self.word)))

    def __repr__(self):
        return "WeylElement(%s)" % (list(self.word),)


class RootSystem:
    """Immutable Cartan datum; safe to share between threads after build."""

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.key = cartan_type.name
        self.rank = cartan_type.rank

        cartan: list[list[int]] = [[0] * self.rank for _ in range(self.rank)]
        d: list[int] = [0] * self.rank
        offsets = []
        pos = 0
        for family, rank in cartan_type.components:
            block, dblock = _cartan_block(family, rank)
            for i in range(rank):
                d[pos + i] = dblock[i]
                for j in range(rank):
                    cartan[pos + i][pos + j] = block[i][j]
            offsets.append((family, rank, pos))
            pos += rank
        self.cartan = tuple(tuple(row) for row in cartan)
        self.d = tuple(d)
        self.rho = (1,) * self.rank
        self.zero = (0,) * self.rank

        self.positive_roots = self._close_roots()
        self._roots_by_coords = {r.coords: r for r in self.positive_roots}
        self.simple_roots = [self._roots_by_coords[tuple(1 if j == i else 0 for j in range(self.rank))]
                             for i in range(self.rank)]

        self._init_inverse()
        self.components = tuple(self._build_component(f, r, off) for f, r, off in offsets)
        self._weyl_cache: dict = {}
        self._orbit_cache: dict = {}
        self._w0 = None

    # ------------------------------------------------------------------
    # construction helpers

    def _close_roots(self):
        rank = self.rank
        cartan = self.cartan

        def pairing(coords, i):
            return sum(c * cartan[i][j] for j, c in enumerate(coords) if c)

        simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        known = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(rank):
                    if c == simple[i]:
                        continue
                    down = 0
                    probe = list(c)
                    while True:
                        probe[i] -= 1
                        if probe[i] < 0 or tuple(probe) not in known:
                            break
                        down += 1
                    if down - pairing(c, i) > 0:
                        up = tuple(v + 1 if j == i else v for j, v in enumerate(c))
                        if up not in known:
                            known.add(up)
                            nxt.append(up)
            frontier = nxt

        roots = []
        for coords in sorted(known, key=lambda c: (sum(c), c)):
            fund = tuple(pairing(coords, i) for i in range(rank))
            norm2 = sum(ci * di * fi for ci, di, fi in zip(coords, self.d, fund))
            if norm2 <= 0 or norm2 % 2:
                raise AssertionError("root closure produced a bad norm")
            dbeta = norm2 // 2
            cocoords = []
            for ci, di in zip(coords, self.d):
                num = ci * di
                if num % dbeta:
                    raise AssertionError("coroot coordinates not integral")
                cocoords.append(num // dbeta)
            roots.append(Root(coords, fund, dbeta, Coroot(self.key, cocoords)))
        return tuple(roots)

    def _init_inverse(self):
        n = self.rank
        aug = [[Fraction(self.cartan[i][j]) for j in range(n)] +
               [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        inv_frac = [row[n:] for row in aug]
        den = lcm(*[x.denominator for row in inv_frac for x in row]) if n else 1
        self._inv_den = den
        self._inv_int = tuple(tuple(int(x * den) for x in row) for row in inv_frac)
        # scaled column sums: height of w in the simple-root basis times _inv_den
        self._htvec = tuple(sum(self._inv_int[i][j] for i in range(n)) for j in range(n))

    def _build_component(self, family, rank, offset):
        idx = tuple(range(offset, offset + rank))
        comp_roots = [r for r in self.positive_roots
                      if all(r.coords[j] == 0 for j in range(self.rank) if j not in idx)]
        dmin = min(r.d for r in comp_roots)
        dominant_short = [r for r in comp_roots
                          if r.d == dmin and all(f >= 0 for f in r.fund)]
        if len(dominant_short) != 1:
            raise AssertionError("highest short root is not unique")
        alpha0 = dominant_short[0]
        h = alpha0.coroot.height + 1
        if 2 * len(comp_roots) != h * rank:
            raise AssertionError("Coxeter number check failed for %s%d" % (family, rank))
        return Component("%s%d" % (family, rank), idx, h, alpha0, len(comp_roots))

    # ------------------------------------------------------------------
    # basic queries

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def coxeter_number(self) -> int:
        if not self.is_irreducible:
            raise InvalidType("coxeter_number is per component; system %s is reducible" % self.key)
        return self.components[0].coxeter

    @property
    def alpha0(self) -> Root:
        if not self.is_irreducible:
            raise InvalidType("alpha0 is per component; system %s is reducible" % self.key)
        return self.components[0].alpha0

    def check_weight(self, w):
        if len(w) != self.rank:
            raise MismatchedSystem("weight %s does not fit system %s" % (w, self.key))
        return tuple(w)

    def is_dominant(self, w) -> bool:
        return all(x >= 0 for x in self.check_weight(w))

    def pair(self, w, coroot) -> int:
        """Exact pairing <w, beta_check>."""
        w = self.check_weight(w)
        if isinstance(coroot, Root):
            coroot = coroot.coroot
        if isinstance(coroot, Coroot):
            if coroot.system_key != self.key:
                raise MismatchedSystem("coroot from %s used in %s" % (coroot.system_key, self.key))
            coords = coroot.coords
        else:
            coords = tuple(coroot)
            if len(coords) != self.rank:
                raise MismatchedSystem("coroot %s does not fit system %s" % (coords, self.key))
        return sum(c * x for c, x in zip(coords, w))

    def reflect(self, i: int, w):
        wi = w[i]
        if wi == 0:
            return tuple(w)
        return tuple(w[j] - wi * self.cartan[j][i] for j in range(self.rank))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    # ------------------------------------------------------------------
    # orders and coordinates

    def height(self, w) -> int:
        """Sum of simple-root coordinates of w, scaled to an integer."""
        return sum(h * x for h, x in zip(self._htvec, w))

    def canonical_key(self, w):
        """Sort key: decreasing height, ties by lexicographic coordinates."""
        return (-self.height(w), w)

    def root_coords(self, w):
        """Integer simple-root coordinates of w, or None if w is not in ZR."""
        out = []
        for k in range(self.rank):
            s = sum(self._inv_int[k][j] * w[j] for j in range(self.rank))
            if s % self._inv_den:
                return None
            out.append(s // self._inv_den)
        return tuple(out)

    def dominates(self, hi, lo) -> bool:
        """True iff hi - lo is a nonnegative integer sum of positive roots."""
        diff = self.sub(hi, lo)
        coords = self.root_coords(diff)
        return coords is not None and all(c >= 0 for c in coords)

    # ------------------------------------------------------------------
    # Weyl group

    def dominant_representative(self, w):
        """The dominant weight in the orbit of w and a witness mapping w to it."""
        w = self.check_weight(w)
        word = []
        cur = w
        while True:
            i = next((k for k, x in enumerate(cur) if x < 0), None)
            if i is None:
                return cur, WeylElement(self, word)
            cur = self.reflect(i, cur)
            word.append(i)

    def weyl_orbit(self, w):
        w = self.check_weight(w)
        seen = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    u = self.reflect(i, v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return seen

    def longest_element(self) -> WeylElement:
        if self._w0 is None:
            neg_rho = tuple(-1 for _ in range(self.rank))
            dom, wrec = self.dominant_representative(neg_rho)
            if dom != self.rho:
                raise AssertionError("dominantization of -rho must give rho")
            self._w0 = WeylElement(self, tuple(reversed(wrec.word)))
        return self._w0

    # ------------------------------------------------------------------
    # Dynkin subdiagrams

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] != 0

    def connected_subsets(self, indices):
        """All nonempty connected subsets of the given simple-root indices."""
        idx = sorted(set(indices))
        out = []
        for mask in range(1, 1 << len(idx)):
            subset = [idx[k] for k in range(len(idx)) if mask >> k & 1]
            seen = {subset[0]}
            frontier = [subset[0]]
            while frontier:
                v = frontier.pop()
                for u in subset:
                    if u not in seen and self.adjacent(u, v):
                        seen.add(u)
                        frontier.append(u)
            if len(seen) == len(subset):
                out.append(frozenset(subset))
        return out

    def highest_short_root(self, subset) -> Root:
        """Highest short root of the subsystem spanned by the given simple roots."""
        sub = frozenset(subset)
        if not sub:
            raise InvalidType("subsystem of an empty set of simple roots")
        roots = [r for r in self.positive_roots
                 if all(r.coords[j] == 0 for j in range(self.rank) if j not in sub)]
        dmin = min(r.d for r in roots)
        best = max((r for r in roots if r.d == dmin), key=lambda r: (r.height, r.coords))
        if any(best.fund[j] < 0 for j in sub):
            raise AssertionError("highest short root of subsystem is not dominant there")
        return best


@lru_cache(maxsize=None)
def root_system(name: str) -> RootSystem:
    """Build (and cache) the root system for a Cartan type name like 'B2'."""
    return RootSystem(CartanType.parse(name))


def build(cartan_type) -> RootSystem:
    """Construct a RootSystem from a CartanType or a type name."""
    if isinstance(cartan_type, CartanType):
        return root_system(cartan_type.name)
    return root_system(str(cartan_type))


def require_dominant(system: RootSystem, w):
    if not system.is_dominant(w):
        raise NotDominant("weight %s is not dominant in %s" % (tuple(w), system.key))
    return tuple(w)
