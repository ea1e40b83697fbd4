"""Frobenius-kernel composition data for induced characters.

The character of the module induced to the group scheme G_1 B from a
one dimensional B-module is the Steinberg character shifted by
lambda - (p-1)rho.  Decomposing it against the simple characters
L(mu0) x p*mu1 yields the factor lists everything downstream consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charring import FormalCharacter, steinberg_character
from .errors import NegativeRemainder
from .rootsys import RootSystem
from .simples import SimpleCharacters, default_resolver
from .weights import split


@dataclass(frozen=True)
class Factor:
    """One composition factor: highest weight mu0 + p*mu1 with multiplicity."""

    mu0: tuple
    mu1: tuple
    mult: int

    def weight(self, p: int):
        return tuple(a + p * b for a, b in zip(self.mu0, self.mu1))


@dataclass
class G1BFactorList:
    system: RootSystem
    lam: tuple
    p: int
    factors: tuple[Factor, ...]

    def to_json_dict(self):
        return {
            "system": self.system.key,
            "lambda": list(self.lam),
            "p": self.p,
            "factors": [{"weight": list(f.weight(self.p)),
                         "mu0": list(f.mu0),
                         "mu1": list(f.mu1),
                         "mult": f.mult} for f in self.factors],
        }


def baby_verma_character(system: RootSystem, lam, p: int) -> FormalCharacter:
    """T-character of the G_1 B module induced from the weight lam."""
    lam = system.check_weight(lam)
    shift = tuple(x - (p - 1) for x in lam)
    return steinberg_character(system, p).shift(shift)


def decompose(system: RootSystem, lam, p: int,
              resolver: SimpleCharacters | None = None) -> G1BFactorList:
    """Composition factors of the induced character, by greedy elimination.

    Repeatedly strips the maximal remaining weight nu = mu0 + p*mu1 and
    subtracts mult * ch L(mu0) * e^(p*mu1).  A negative head multiplicity
    can only come from wrong simple characters and is fatal.
    """
    lam = system.check_weight(lam)
    if resolver is None:
        resolver = default_resolver(system, p)
    rem = baby_verma_character(system, lam, p)
    factors = []
    while rem:
        nu = rem.max_weight()
        mult = rem.coeff(nu)
        if mult < 0:
            raise NegativeRemainder(
                "weight %s has multiplicity %d while decomposing %s (p=%d)"
                % (nu, mult, lam, p))
        parts = split(system, nu, p)
        chl = resolver.character(parts.lambda0)
        rem = rem - chl.shift(tuple(p * b for b in parts.lambda1)).scale(mult)
        factors.append(Factor(parts.lambda0, parts.lambda1, mult))
    factors.sort(key=lambda f: system.canonical_key(f.weight(p)))
    return G1BFactorList(system, lam, p, tuple(factors))


def critical_simples(system: RootSystem, factors) -> frozenset:
    """Indices of simple roots where some factor digit mu1 drops below -1."""
    out = set()
    for f in factors:
        for i, x in enumerate(f.mu1):
            if x < -1:
                out.add(i)
    return frozenset(out)


def critical_height_bound(system: RootSystem, simples) -> int:
    """One plus the largest subsystem coroot height over connected subsets.

    The empty set contributes nothing, so its bound is 1; a set of
    pairwise disconnected simple roots gives 2.
    """
    simples = frozenset(simples)
    if not simples:
        return 1
    best = 0
    for subset in system.connected_subsets(simples):
        h_j = system.highest_short_root(subset).coroot.height
        best = max(best, h_j)
    return best + 1


def check_weight_estimates(system: RootSystem, lam, factors, p: int) -> list[str]:
    """Verify the two-sided digit bounds for every factor and positive root.

    Also sweeps the Steinberg character and checks every weight pairs
    within (p-1)(h-1) of zero against every positive coroot.  Returns a
    list of violation descriptions; an empty list means all bounds hold.
    """
    lam = system.check_weight(lam)
    lam1 = split(system, lam, p).lambda1
    violations = []
    for f in factors:
        for beta in system.positive_roots:
            left = system.pair(lam1, beta.coroot) - beta.coroot.height
            mid = system.pair(f.mu1, beta.coroot)
            right = system.pair(lam1, beta.coroot)
            for comp in system.components:
                if any(beta.coords[i] for i in comp.indices):
                    h = comp.coxeter
                    break
            if not (left - h + 2 <= mid <= right + h - 2):
                violations.append(
                    "factor %s digit bound failed at root %s: %d <= %d <= %d"
                    % (f.weight(p), beta.coords, left - h + 2, mid, right + h - 2))

    st = steinberg_character(system, p)
    for comp in system.components:
        bound = (p - 1) * (comp.coxeter - 1)
        for nu in st.support():
            for beta in system.positive_roots:
                if not any(beta.coords[i] for i in comp.indices):
                    continue
                val = system.pair(nu, beta.coroot)
                if abs(val) > bound:
                    violations.append(
                        "Steinberg weight %s pairs to %d > %d at root %s"
                        % (nu, val, bound, beta.coords))
    return violations
