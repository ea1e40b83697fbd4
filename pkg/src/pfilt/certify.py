"""Filtration criteria and character-level certificates.

A certificate for (lambda, p, n) is a nonnegative combination of
characters ch L(mu0) * chi(mu1)^(n-th twist) summing to chi(lambda).
It is the character shadow of a layer-by-layer filtration: necessary
for one to exist, never sufficient.  Statuses:

  GUARANTEED       one of the region criteria fired (flag records which)
  CHAR_CONSISTENT  no criterion fired but the combination is nonnegative
  FAILED           some accumulated multiplicity is negative
  UNKNOWN          a needed simple character is unavailable
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .charring import (FormalCharacter, chi_expand, divide_by,
                       steinberg_character, weyl_character)
from .errors import NotDivisible, SchemaError, SimpleCharUnavailable
from .g1b import critical_height_bound, critical_simples, decompose
from .rootsys import RootSystem, require_dominant, root_system
from .simples import SimpleCharacters, default_resolver
from .weights import dot_dominantize, in_one_wall_region, split

GUARANTEED = "GUARANTEED"
CHAR_CONSISTENT = "CHAR_CONSISTENT"
UNKNOWN = "UNKNOWN"
FAILED = "FAILED"

FLAG_PRIORITY = ("small", "large", "one_wall", "main_bound", "global_bound")

_STATUS_RANK = {FAILED: 0, UNKNOWN: 1, CHAR_CONSISTENT: 2, GUARANTEED: 3}


@dataclass
class CriteriaReport:
    lam: tuple
    p: int
    flags: dict
    data: dict

    @property
    def fired(self):
        """The highest-priority flag that is set, or None."""
        for name in FLAG_PRIORITY:
            if self.flags.get(name):
                return name
        return None

    def to_json_dict(self):
        data = dict(self.data)
        if data.get("critical_simples") is not None:
            data["critical_simples"] = sorted(data["critical_simples"])
        return {"lambda": list(self.lam), "p": self.p,
                "flags": dict(self.flags), "data": data}


@dataclass
class Certificate:
    system: RootSystem
    lam: tuple
    p: int
    n: int
    status: str
    flag: str | None
    lines: tuple  # ((mu0, mu1, mult), ...)

    @property
    def status_label(self) -> str:
        if self.status == GUARANTEED and self.flag:
            return "%s:%s" % (self.status, self.flag)
        return self.status

    def to_json_dict(self):
        return {
            "system": self.system.key,
            "lambda": list(self.lam),
            "p": self.p,
            "n": self.n,
            "status": self.status_label,
            "lines": [{"mu0": list(a), "mu1": list(b), "mult": m}
                      for a, b, m in self.lines],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, doc):
        try:
            system = root_system(doc["system"])
            lam = tuple(int(x) for x in doc["lambda"])
            p, n = int(doc["p"]), int(doc["n"])
            label = doc["status"]
            lines = tuple((tuple(int(x) for x in ln["mu0"]),
                           tuple(int(x) for x in ln["mu1"]),
                           int(ln["mult"])) for ln in doc["lines"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError("certificate document malformed: %s" % exc)
        status, _, flag = label.partition(":")
        return cls(system, lam, p, n, status, flag or None, lines)


def _sort_lines(system, p, n, lines):
    q = p ** n

    def combined(line):
        mu0, mu1, _ = line
        return tuple(a + q * b for a, b in zip(mu0, mu1))

    return tuple(sorted(lines, key=lambda ln: system.canonical_key(combined(ln))))


# ---------------------------------------------------------------------------
# region criteria


def criteria(system: RootSystem, lam, p: int,
             resolver: SimpleCharacters | None = None,
             factors=None) -> CriteriaReport:
    """Evaluate every filtration criterion for a dominant weight.

    All flags are sharp inequalities evaluated per irreducible component.
    The main bound needs the induced-character factor list; when simple
    characters are unavailable that flag is left False and the derived
    data is None.
    """
    lam = require_dominant(system, lam)
    lam1 = split(system, lam, p).lambda1

    small = all(system.pair(lam1, comp.alpha0.coroot) <= p - 2 * comp.coxeter + 3
                for comp in system.components)
    large = all(lam[i] >= p * (comp.coxeter - 2)
                for comp in system.components for i in comp.indices)
    one_wall = in_one_wall_region(system, lam, p) and all(
        p >= 2 * (comp.coxeter - 2) for comp in system.components)
    global_bound = all(p >= (comp.coxeter - 2) * comp.coxeter
                       for comp in system.components)

    crit = bound = None
    main_bound = False
    try:
        if factors is None:
            factors = decompose(system, lam, p, resolver).factors
        crit = critical_simples(system, factors)
        bound = critical_height_bound(system, crit)
        main_bound = all(
            p >= (comp.coxeter - 2) * critical_height_bound(
                system, crit & frozenset(comp.indices))
            for comp in system.components)
    except SimpleCharUnavailable:
        pass

    flags = {"small": small, "large": large, "one_wall": one_wall,
             "main_bound": main_bound, "global_bound": global_bound}
    data = {"critical_simples": crit, "height_bound": bound,
            "coxeter": tuple(comp.coxeter for comp in system.components)}
    return CriteriaReport(lam, p, flags, data)


# ---------------------------------------------------------------------------
# certificates


def good_filtration_certificate(system: RootSystem, lam, p: int) -> Certificate:
    """The trivial level-0 certificate: the module is its own layer."""
    lam = require_dominant(system, lam)
    return Certificate(system, lam, p, 0, GUARANTEED, "good_filtration",
                       ((system.zero, lam, 1),))


def certify(system: RootSystem, lam, p: int, n: int = 1,
            resolver: SimpleCharacters | None = None) -> Certificate:
    """Build a certificate for (lambda, p, n).

    Level 1 accumulates the dot-normalized factor digits of the induced
    character; higher levels refine the level-1 result.  Singular digits
    contribute nothing and are dropped.
    """
    lam = require_dominant(system, lam)
    if n < 0:
        raise ValueError("filtration level must be nonnegative")
    if n == 0:
        return good_filtration_certificate(system, lam, p)
    if resolver is None:
        resolver = default_resolver(system, p)

    try:
        factors = decompose(system, lam, p, resolver).factors
    except SimpleCharUnavailable:
        return Certificate(system, lam, p, n, UNKNOWN, None, ())

    acc: dict = {}
    for f in factors:
        sign, dom = dot_dominantize(system, f.mu1)
        if sign == 0:
            continue
        key = (f.mu0, dom)
        acc[key] = acc.get(key, 0) + sign * f.mult
    lines = tuple((mu0, mu1, m) for (mu0, mu1), m in acc.items() if m)

    report = criteria(system, lam, p, resolver, factors=factors)
    fired = report.fired
    negative = any(m < 0 for _, _, m in lines)
    if negative and fired:
        raise AssertionError(
            "negative certificate line inside a guaranteed region at %s (p=%d)"
            % (lam, p))
    if negative:
        status, flag = FAILED, None
    elif fired:
        status, flag = GUARANTEED, fired
    else:
        status, flag = CHAR_CONSISTENT, None

    cert = Certificate(system, lam, p, 1, status, flag,
                       _sort_lines(system, p, 1, lines))
    if n > 1 and status not in (FAILED, UNKNOWN):
        cert = refine(cert, n, resolver)
    return cert


def refine(cert: Certificate, target_n: int,
           resolver: SimpleCharacters | None = None) -> Certificate:
    """Deepen a certificate one digit at a time up to the target level.

    Every line (mu0, mu1, m) is replaced by the level-1 certificate of
    mu1, twisted up: new lines (mu0 + p^n nu0, nu1, m * m').  The result
    carries the weakest status seen along the way.
    """
    if cert.status in (FAILED, UNKNOWN):
        raise ValueError("cannot refine a %s certificate" % cert.status)
    if target_n < cert.n:
        raise ValueError("target level %d below certificate level %d"
                         % (target_n, cert.n))
    system, p = cert.system, cert.p
    if resolver is None:
        resolver = default_resolver(system, p)

    current = cert
    while current.n < target_n:
        q = p ** current.n
        acc: dict = {}
        worst = _STATUS_RANK[current.status]
        flag = current.flag
        for mu0, mu1, m in current.lines:
            sub = certify(system, mu1, p, 1, resolver)
            worst = min(worst, _STATUS_RANK[sub.status])
            if sub.status == UNKNOWN:
                return Certificate(system, cert.lam, p, target_n, UNKNOWN, None, ())
            for nu0, nu1, m2 in sub.lines:
                key = (tuple(a + q * b for a, b in zip(mu0, nu0)), nu1)
                acc[key] = acc.get(key, 0) + m * m2
        lines = tuple((a, b, m) for (a, b), m in acc.items() if m)
        status = next(s for s, r in _STATUS_RANK.items() if r == worst)
        if status != GUARANTEED:
            flag = None
        current = Certificate(system, cert.lam, p, current.n + 1, status, flag,
                              _sort_lines(system, p, current.n + 1, lines))
    return current


def certificate_character(cert: Certificate,
                          resolver: SimpleCharacters | None = None) -> FormalCharacter:
    """Evaluate the certificate's combination of characters."""
    system, p = cert.system, cert.p
    if resolver is None:
        resolver = default_resolver(system, p)
    q = p ** cert.n
    total = FormalCharacter(system)
    for mu0, mu1, m in cert.lines:
        total = total + (resolver.character(mu0)
                         * weyl_character(system, mu1).twist(q)).scale(m)
    return total


def euler_identity_holds(cert: Certificate,
                         resolver: SimpleCharacters | None = None) -> bool:
    """Check that the certificate lines reassemble the Weyl character."""
    return certificate_character(cert, resolver) == weyl_character(cert.system, cert.lam)


# ---------------------------------------------------------------------------
# Steinberg divisibility


@dataclass
class DivisibilityReport:
    level: int
    divisible: bool
    quotient: FormalCharacter | None
    summand_ok: bool


def divisibility_report(c: FormalCharacter, p: int, n: int) -> DivisibilityReport:
    """Test character divisibility by the n-th Steinberg character.

    Also runs the summand sanity check: the cube of the Steinberg
    character minus the character itself must expand nonnegatively in
    the Weyl-character basis.
    """
    system = c.system
    st = steinberg_character(system, p, n)
    try:
        quotient = divide_by(c, st)
        divisible = True
    except NotDivisible:
        quotient = None
        divisible = False
    cube = st * st * st
    expansion = chi_expand(cube - st)
    summand_ok = all(v >= 0 for v in expansion.values())
    return DivisibilityReport(n, divisible, quotient, summand_ok)


def steinberg_component_identity(system: RootSystem, lam, p: int, m: int, n: int,
                                 resolver: SimpleCharacters | None = None) -> bool:
    """Character identity moving a Steinberg tensor factor across a twist.

    Splitting lam = lam0 + p^m lam1, the twisted product
    (ch L(lam0) * chi(lam1)^(m))^(n) * ch St_n must equal
    ch L((p^n - 1)rho + p^n lam0) * chi(lam1)^(n + m).
    """
    lam = require_dominant(system, lam)
    if resolver is None:
        resolver = default_resolver(system, p)
    parts = split(system, lam, p, m) if m > 0 else None
    lam0 = parts.lambda0 if parts else system.zero
    lam1 = parts.lambda1 if parts else lam

    inner = resolver.character(lam0) * weyl_character(system, lam1).twist(p ** m)
    lhs = inner.twist(p ** n) * steinberg_character(system, p, n)

    big = tuple((p ** n - 1) + (p ** n) * x for x in lam0)
    rhs = resolver.character(big) * weyl_character(system, lam1).twist(p ** (n + m))
    return lhs == rhs
