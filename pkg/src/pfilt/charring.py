"""Formal character ring over the weight lattice, all arithmetic exact.

A character is a finite map weight -> nonzero integer.  Products are
convolutions, Frobenius twists scale the support, and Weyl characters
are computed with Freudenthal's recursion on the dominant slice of the
hull.  Division by a character with a unique highest weight proceeds by
highest-weight elimination in the Weyl-character basis and either
terminates with an exact quotient or raises NotDivisible.
"""

from __future__ import annotations

import json

from .errors import MismatchedSystem, NotDivisible, SchemaError
from .rootsys import RootSystem, require_dominant, root_system
from .weights import dot_dominantize


class FormalCharacter:
    """Finite Z-valued weight function attached to a root system."""

    __slots__ = ("system", "_m")

    def __init__(self, system: RootSystem, data=None):
        self.system = system
        m = {}
        if data:
            for w, c in (data.items() if isinstance(data, dict) else data):
                if c:
                    w = tuple(w)
                    c0 = m.get(w, 0) + c
                    if c0:
                        m[w] = c0
                    elif w in m:
                        del m[w]
        self._m = m

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, system):
        return cls(system)

    @classmethod
    def unit(cls, system, weight=None):
        """The character e^weight of a one dimensional T-module."""
        w = system.zero if weight is None else system.check_weight(weight)
        return cls(system, {w: 1})

    # -- container behaviour --------------------------------------------

    def coeff(self, w) -> int:
        return self._m.get(tuple(w), 0)

    def support(self):
        return self._m.keys()

    def items(self):
        return self._m.items()

    def items_canonical(self):
        key = self.system.canonical_key
        return sorted(self._m.items(), key=lambda kv: key(kv[0]))

    def __bool__(self):
        return bool(self._m)

    def __len__(self):
        return len(self._m)

    def __eq__(self, other):
        return (isinstance(other, FormalCharacter)
                and self.system.key == other.system.key
                and self._m == other._m)

    def __hash__(self):
        return hash((self.system.key, frozenset(self._m.items())))

    def __repr__(self):
        parts = ["%+d*e%s" % (c, (w,) if isinstance(w, int) else w)
                 for w, c in self.items_canonical()[:6]]
        if len(self._m) > 6:
            parts.append("...")
        return "FormalCharacter(%s; %s)" % (self.system.key, " ".join(parts) or "0")

    # -- ring operations -------------------------------------------------

    def _check(self, other):
        if self.system.key != other.system.key:
            raise MismatchedSystem("characters over %s and %s"
                                   % (self.system.key, other.system.key))

    def __add__(self, other):
        self._check(other)
        m = dict(self._m)
        for w, c in other._m.items():
            c0 = m.get(w, 0) + c
            if c0:
                m[w] = c0
            elif w in m:
                del m[w]
        out = FormalCharacter(self.system)
        out._m = m
        return out

    def __neg__(self):
        out = FormalCharacter(self.system)
        out._m = {w: -c for w, c in self._m.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        if k == 0:
            return FormalCharacter(self.system)
        out = FormalCharacter(self.system)
        out._m = {w: k * c for w, c in self._m.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self._m, other._m
        if len(a) > len(b):
            a, b = b, a
        m = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                w = tuple(x + y for x, y in zip(wa, wb))
                c0 = m.get(w, 0) + ca * cb
                if c0:
                    m[w] = c0
                elif w in m:
                    del m[w]
        out = FormalCharacter(self.system)
        out._m = m
        return out

    __rmul__ = __mul__

    def shift(self, weight):
        """Multiply by e^weight."""
        v = self.system.check_weight(weight)
        out = FormalCharacter(self.system)
        out._m = {tuple(x + y for x, y in zip(w, v)): c for w, c in self._m.items()}
        return out

    def twist(self, factor: int):
        """Scale every support weight by an integer factor."""
        if factor == 1:
            return self
        out = FormalCharacter(self.system)
        out._m = {tuple(factor * x for x in w): c for w, c in self._m.items()}
        return out

    # -- structure queries -------------------------------------------------

    def dimension(self) -> int:
        return sum(self._m.values())

    def max_weight(self):
        """Support weight with maximal height, ties broken lexicographically.

        For a nonzero W-symmetric character this weight is dominant and
        is the head of the canonical elimination order.
        """
        if not self._m:
            return None
        return min(self._m, key=self.system.canonical_key)

    def is_symmetric(self) -> bool:
        """Invariance under every simple reflection (hence under W)."""
        for i in range(self.system.rank):
            for w, c in self._m.items():
                if self._m.get(self.system.reflect(i, w), 0) != c:
                    return False
        return True

    # -- serialization ------------------------------------------------------

    def to_json_dict(self):
        return {"system": self.system.key,
                "entries": [{"wt": list(w), "mult": c} for w, c in self.items_canonical()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, doc, system=None):
        try:
            sys_name = doc["system"]
            entries = doc["entries"]
        except (KeyError, TypeError) as exc:
            raise SchemaError("character document missing %s" % exc)
        system = system or root_system(sys_name)
        if system.key != sys_name:
            raise MismatchedSystem("document for %s read into %s" % (sys_name, system.key))
        data = {}
        for ent in entries:
            try:
                w = tuple(int(x) for x in ent["wt"])
                c = int(ent["mult"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaError("bad character entry %r: %s" % (ent, exc))
            system.check_weight(w)
            data[w] = data.get(w, 0) + c
        return cls(system, data)

    @classmethod
    def loads(cls, text: str, system=None):
        return cls.from_json_dict(json.loads(text), system=system)


# ---------------------------------------------------------------------------
# Weyl characters


def _dominant_slice(system: RootSystem, lam):
    """All dominant weights mu <= lam, via saturation of the weight diagram."""
    seen = {lam}
    frontier = [lam]
    dominant = []
    simple_cols = [tuple(system.cartan[j][i] for j in range(system.rank))
                   for i in range(system.rank)]
    while frontier:
        nxt = []
        for w in frontier:
            if all(x >= 0 for x in w):
                dominant.append(w)
            for col in simple_cols:
                v = tuple(x - y for x, y in zip(w, col))
                if v in seen:
                    continue
                rep, _ = system.dominant_representative(v)
                if system.dominates(lam, rep):
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return dominant


def _freudenthal(system: RootSystem, lam):
    """Dominant weight multiplicities of the Weyl character of lam."""
    doms = sorted(_dominant_slice(system, lam), key=system.canonical_key)
    mult = {lam: 1}
    for mu in doms:
        if mu == lam:
            continue
        total = 0
        for beta in system.positive_roots:
            pair_mu = system.pair(mu, beta.coroot)
            k = 1
            while True:
                nu = tuple(x + k * f for x, f in zip(mu, beta.fund))
                rep, _ = system.dominant_representative(nu)
                m = mult.get(rep)
                if m is None:
                    break
                total += m * beta.d * (pair_mu + 2 * k)
                k += 1
        diff = system.root_coords(system.sub(lam, mu))
        lam_mu_2rho = tuple(a + b + 2 for a, b in zip(lam, mu))
        denom = sum(c * d * x for c, d, x in zip(diff, system.d, lam_mu_2rho))
        if denom <= 0 or (2 * total) % denom:
            raise AssertionError("Freudenthal recursion failed at %s" % (mu,))
        mult[mu] = (2 * total) // denom
    return mult


def weyl_character(system: RootSystem, lam) -> FormalCharacter:
    """Character of the irreducible highest-weight module in characteristic zero.

    Dominant multiplicities come from Freudenthal's recursion; the full
    support is filled in along Weyl orbits.  Results are cached on the
    root system.
    """
    lam = require_dominant(system, lam)
    cached = system._weyl_cache.get(lam)
    if cached is not None:
        return cached
    data = {}
    for mu, m in _freudenthal(system, lam).items():
        for w in system.weyl_orbit(mu):
            data[w] = m
    out = FormalCharacter(system, data)
    system._weyl_cache[lam] = out
    return out


def weyl_dimension(system: RootSystem, lam) -> int:
    """Weyl dimension formula, evaluated as an exact integer."""
    lam = require_dominant(system, lam)
    shifted = tuple(x + 1 for x in lam)
    num = den = 1
    for beta in system.positive_roots:
        num *= system.pair(shifted, beta.coroot)
        den *= beta.coroot.height
    if num % den:
        raise AssertionError("Weyl dimension is not integral")
    return num // den


def euler_character(system: RootSystem, mu) -> FormalCharacter:
    """Signed Weyl character of the dot-normal form; zero when singular."""
    sign, dom = dot_dominantize(system, mu)
    if sign == 0:
        return FormalCharacter(system)
    return weyl_character(system, dom).scale(sign)


def frobenius_twist(c: FormalCharacter, p: int, n: int) -> FormalCharacter:
    """Scale every support weight by p^n; the dimension is unchanged."""
    return c.twist(p ** n)


def steinberg_character(system: RootSystem, p: int, n: int = 1) -> FormalCharacter:
    """Character of the n-th Steinberg module, the Weyl character of (p^n-1)rho."""
    if n < 0:
        raise ValueError("Steinberg level must be nonnegative")
    return weyl_character(system, tuple((p ** n - 1) for _ in range(system.rank)))


# ---------------------------------------------------------------------------
# division and basis change


def _check_unique_top(d: FormalCharacter):
    delta = d.max_weight()
    if delta is None:
        raise NotDivisible("division by the zero character")
    system = d.system
    if not system.is_dominant(delta):
        raise NotDivisible("divisor has a non-dominant highest weight")
    if d.coeff(delta) != 1:
        raise NotDivisible("divisor highest weight has multiplicity != 1")
    for w in d.support():
        if w != delta and not system.dominates(delta, w):
            raise NotDivisible("divisor support is not below its highest weight")
    return delta


def divide_by(c: FormalCharacter, d: FormalCharacter) -> FormalCharacter:
    """Exact quotient q with q*d = c, by highest-weight elimination.

    Both characters must be W-symmetric and d must have a unique dominant
    highest weight of multiplicity one.  Raises NotDivisible if any
    elimination step leaves a remainder outside the dominant cone.
    """
    c._check(d)
    system = c.system
    delta = _check_unique_top(d)
    quotient = FormalCharacter(system)
    rem = c
    while rem:
        nu = rem.max_weight()
        if not system.is_dominant(nu):
            raise NotDivisible("remainder head %s is not dominant" % (nu,))
        sigma = system.sub(nu, delta)
        if not system.is_dominant(sigma):
            raise NotDivisible("head %s is not above the divisor top %s" % (nu, delta))
        a = rem.coeff(nu)
        piece = weyl_character(system, sigma).scale(a)
        quotient = quotient + piece
        rem = rem - piece * d
    return quotient


def chi_expand(c: FormalCharacter) -> dict:
    """Coefficients of a W-symmetric character in the Weyl-character basis."""
    system = c.system
    out = {}
    rem = c
    while rem:
        nu = rem.max_weight()
        if not system.is_dominant(nu):
            raise NotDivisible("character head %s is not dominant; not W-symmetric?" % (nu,))
        a = rem.coeff(nu)
        out[nu] = a
        rem = rem - weyl_character(system, nu).scale(a)
    return out
