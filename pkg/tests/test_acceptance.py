"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines on a green run.  All quantities are exact integers, so every
tolerance here is equality; the only stated budgets are wall-clock.
"""

import itertools
import random
import time

import pytest

from pfilt import (FormalCharacter, SimpleCharacters, baby_verma_character,
                   certify, check_weight_estimates, criteria,
                   critical_height_bound, critical_simples, decompose,
                   divide_by, euler_identity_holds, good_filtration_certificate,
                   in_bottom_alcove, refine, root_system, steinberg_character,
                   steinberg_component_identity, weyl_character)

A1 = root_system("A1")
A2 = root_system("A2")
B2 = root_system("B2")

BOXES = [(A1, 2), (A1, 3), (A1, 5), (A2, 2), (A2, 3), (A2, 5),
         (B2, 2), (B2, 3), (B2, 5)]


def _report(tag, detail=""):
    print("%-6s PASS  %s" % (tag, detail))


def _box(system, p):
    return itertools.product(range(2 * p + 1), repeat=system.rank)


def test_ac01_sp4_fixture():
    t0 = time.time()
    result = decompose(B2, (0, 0), 2)
    elapsed = time.time() - t0
    got = {(f.weight(2), f.mult) for f in result.factors}
    expected = {((0, 0), 1), ((-2, 1), 1), ((2, -2), 1), ((0, -1), 1),
                ((-2, 0), 2), ((0, -2), 2), ((-4, 0), 1), ((-2, -2), 1)}
    assert got == expected
    assert len(result.factors) == 8
    assert elapsed < 1.0

    # executable cross-check of the one corrected entry: the induced
    # character has lowest weight -2*rho with multiplicity one, and the
    # sign-flipped variant (-2, 2) is not a weight of it at all.
    z = baby_verma_character(B2, (0, 0), 2)
    assert z.coeff((-2, -2)) == 1
    assert z.coeff((-2, 2)) == 0
    _report("AC-01", "8 factors, multiplicity-2 pair, %.3fs" % elapsed)


@pytest.mark.xfail(reason="the published factor list has a sign typo in its "
                          "last entry: (-2,2) is not a weight of the induced "
                          "character, whose lowest weight is (-2,-2)",
                   strict=True)
def test_ac01_sp4_fixture_as_printed():
    result = decompose(B2, (0, 0), 2)
    got = {(f.weight(2), f.mult) for f in result.factors}
    assert got == {((0, 0), 1), ((-2, 1), 1), ((2, -2), 1), ((0, -1), 1),
                   ((-2, 0), 2), ((0, -2), 2), ((-4, 0), 1), ((-2, 2), 1)}


def test_ac02_dimension_conservation():
    for system, p in BOXES:
        t0 = time.time()
        resolver = SimpleCharacters(system, p)
        npos = len(system.positive_roots)
        for lam in _box(system, p):
            factors = decompose(system, lam, p, resolver).factors
            total = sum(f.mult * resolver.dimension(f.mu0) for f in factors)
            assert total == p ** npos, (system.key, p, lam)
        assert time.time() - t0 < 60.0
    _report("AC-02", "sum of factor dimensions = p^|R+| on all boxes")


def test_ac03_weight_estimates():
    for system, p in BOXES:
        resolver = SimpleCharacters(system, p)
        for lam in _box(system, p):
            factors = decompose(system, lam, p, resolver).factors
            violations = check_weight_estimates(system, lam, factors, p)
            assert violations == [], (system.key, p, lam, violations)
    _report("AC-03", "digit bounds and Steinberg weight bound, zero violations")


def test_ac04_euler_identity():
    for system, p in BOXES:
        resolver = SimpleCharacters(system, p)
        for lam in _box(system, p):
            cert = certify(system, lam, p, 1, resolver)
            if cert.status in ("UNKNOWN", "FAILED"):
                continue
            assert euler_identity_holds(cert, resolver), (system.key, p, lam)
    _report("AC-04", "certificate lines reassemble the Weyl character")


def test_ac05_sl3_region_formula():
    for p in (5, 7):
        resolver = SimpleCharacters(A2, p)
        for lam in itertools.product(range(p * p + 1), repeat=2):
            report = criteria(A2, lam, p, resolver)
            a1, b1 = lam[0] // p, lam[1] // p
            assert report.flags["small"] == (a1 + b1 <= p - 3), (p, lam)
            assert report.flags["large"] == (lam[0] >= p and lam[1] >= p), (p, lam)
    _report("AC-05", "small/large flags match the closed-form region, p=5,7")


def test_ac06_proof_consistency():
    checked = 0
    for system, p in BOXES:
        h = system.coxeter_number
        resolver = SimpleCharacters(system, p)
        for lam in _box(system, p):
            factors = decompose(system, lam, p, resolver).factors
            report = criteria(system, lam, p, resolver, factors=factors)
            cert = certify(system, lam, p, 1, resolver)
            if report.flags["small"]:
                for _, mu1, _ in cert.lines:
                    assert in_bottom_alcove(system, mu1, p), (system.key, p, lam, mu1)
                checked += 1
            if report.flags["large"]:
                for f in factors:
                    assert all(x >= -1 for x in f.mu1), (system.key, p, lam, f)
                checked += 1
            crit = report.data["critical_simples"]
            bound = report.data["height_bound"]
            if crit and p >= (h - 2) * bound:
                for f in factors:
                    if all(f.mu1[i] >= 0 for i in crit):
                        shifted = tuple(x + 1 for x in f.mu1)
                        for subset in system.connected_subsets(crit):
                            alpha_j = system.highest_short_root(subset)
                            assert system.pair(shifted, alpha_j.coroot) <= p, \
                                (system.key, p, lam, f, subset)
                checked += 1
    assert checked > 100
    _report("AC-06", "bottom-alcove, digit, and survivor bounds (%d firings)" % checked)


def test_ac07_refinement():
    for p in (2, 3):
        resolver = SimpleCharacters(A1, p)
        for a in range(21):
            base = good_filtration_certificate(A1, (a,), p)
            c1 = refine(base, 1, resolver)
            c2 = refine(base, 2, resolver)
            for cert in (c1, c2):
                assert cert.status != "FAILED"
                assert all(m >= 0 for *_, m in cert.lines)
                assert euler_identity_holds(cert, resolver), (p, a, cert.n)
            assert set(refine(c1, 2, resolver).lines) == set(c2.lines)
            assert set(refine(c2, 2, resolver).lines) == set(c2.lines)
    _report("AC-07", "refinement to n=1,2 stays nonnegative and exact")


def test_ac08_divisibility_round_trip():
    rng = random.Random(20260809)
    cases = 0
    for system in (A2, B2):
        for p, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
            st = steinberg_character(system, p, n)
            for _ in range(13):
                c = FormalCharacter(system)
                for _ in range(rng.randint(1, 3)):
                    mu = tuple(rng.randint(0, 3) for _ in range(system.rank))
                    c = c + weyl_character(system, mu).scale(rng.choice([-2, -1, 1, 2, 3]))
                assert divide_by(c * st, st) == c, (system.key, p, n)
                cases += 1
    assert cases >= 100
    _report("AC-08", "division by Steinberg characters, %d random round trips" % cases)


def test_ac09_steinberg_identities():
    for system, p, nmax in [(A1, 2, 3), (A1, 3, 2), (A2, 2, 2), (A2, 3, 2), (B2, 2, 2)]:
        npos = len(system.positive_roots)
        for n in range(1, nmax + 1):
            st_n = steinberg_character(system, p, n)
            assert st_n.dimension() == p ** (n * npos)
            assert st_n == steinberg_character(system, p, 1) * \
                steinberg_character(system, p, n - 1).twist(p)
    for system, p, hi in [(A1, 2, 8), (A1, 3, 8), (A2, 2, 4)]:
        resolver = SimpleCharacters(system, p)
        for m in range(3):
            for n in range(3):
                for lam in itertools.product(range(hi + 1), repeat=system.rank):
                    assert steinberg_component_identity(system, lam, p, m, n, resolver), \
                        (system.key, p, m, n, lam)
    _report("AC-09", "tensor factorization, dimensions, component identity")


def test_ac10_structural_constants():
    families = ([("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 9)]
                + [("C", n) for n in range(2, 9)] + [("D", n) for n in range(3, 9)]
                + [("E", n) for n in (6, 7, 8)] + [("F", 4), ("G", 2)])
    for family, rank in families:
        system = root_system("%s%d" % (family, rank))
        comp = system.components[0]
        assert comp.alpha0.coroot.height == comp.coxeter - 1, comp.name

    # any set of pairwise disconnected simple roots gives bound 2
    for system in (root_system("A3"), root_system("B3")):
        singles = [{0}, {1}, {2}, {0, 2}]
        for subset in singles:
            assert critical_height_bound(system, subset) == 2, (system.key, subset)
        assert critical_height_bound(system, frozenset()) == 1
    _report("AC-10", "coroot heights for all rank<=8 types; singleton bound = 2")


def test_ac_factor_sets_feed_criteria():
    # the critical set computed from a decomposition matches a direct rescan
    for system, p in [(B2, 2), (A2, 3)]:
        resolver = SimpleCharacters(system, p)
        for lam in _box(system, p):
            factors = decompose(system, lam, p, resolver).factors
            direct = {i for f in factors for i, x in enumerate(f.mu1) if x < -1}
            assert critical_simples(system, factors) == frozenset(direct)
