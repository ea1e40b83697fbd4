"""Weight-lattice arithmetic: digits, restricted regions, dot action, alcoves."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotDominant
from .rootsys import RootSystem, require_dominant


@dataclass(frozen=True)
class PAdicSplit:
    """lambda = lambda0 + p^n * lambda1 with 0 <= lambda0 < p^n coordinatewise."""

    lambda0: tuple
    lambda1: tuple
    p: int
    n: int

    def recompose(self):
        q = self.p ** self.n
        return tuple(a + q * b for a, b in zip(self.lambda0, self.lambda1))


def split(system: RootSystem, lam, p: int, n: int = 1) -> PAdicSplit:
    """Digit split of a weight; works for arbitrary (not only dominant) weights."""
    lam = system.check_weight(lam)
    q = p ** n
    lam0 = tuple(x % q for x in lam)
    lam1 = tuple((x - r) // q for x, r in zip(lam, lam0))
    return PAdicSplit(lam0, lam1, p, n)


def is_restricted(system: RootSystem, lam, p: int, n: int = 1) -> bool:
    """Membership in X_n: dominant with all coordinates below p^n."""
    lam = system.check_weight(lam)
    q = p ** n
    return all(0 <= x < q for x in lam)


def dot_dominantize(system: RootSystem, mu):
    """Normal form of mu under the dot action w.mu = w(mu+rho) - rho.

    Returns (0, None) when mu+rho is singular, otherwise (det(w), nu)
    for the unique dominant nu in the dot orbit.
    """
    mu = system.check_weight(mu)
    nu = tuple(x + 1 for x in mu)
    sign = 1
    while True:
        i = next((k for k, x in enumerate(nu) if x < 0), None)
        if i is None:
            break
        nu = system.reflect(i, nu)
        sign = -sign
    if any(x == 0 for x in nu):
        return 0, None
    return sign, tuple(x - 1 for x in nu)


def in_bottom_alcove(system: RootSystem, mu, p: int) -> bool:
    """True iff <mu+rho, alpha0_check> <= p in every irreducible component."""
    mu = require_dominant(system, mu)
    shifted = tuple(x + 1 for x in mu)
    return all(system.pair(shifted, comp.alpha0.coroot) <= p
               for comp in system.components)


def in_one_wall_region(system: RootSystem, lam, p: int) -> bool:
    """True iff at most one simple coordinate of lambda^1 sits below h-2.

    Each simple root is tested against the Coxeter number of its own
    component; the count is over all simple roots of the system.
    """
    lam = require_dominant(system, lam)
    lam1 = split(system, lam, p).lambda1
    low = 0
    for comp in system.components:
        for i in comp.indices:
            if lam1[i] < comp.coxeter - 2:
                low += 1
    return low <= 1
