import itertools
import json

import pytest

from pfilt import (DecompTable, FormalCharacter, InvariantViolation, SchemaError,
                   SimpleCharUnavailable, SimpleCharacters, bundled_table,
                   export_table, ingest_table, jantzen_solver, jantzen_sum,
                   root_system, steinberg_character, weyl_character)

A1 = root_system("A1")
A2 = root_system("A2")
B2 = root_system("B2")

BUNDLED = [("A2", 2), ("A2", 3), ("A2", 5), ("B2", 2), ("B2", 3), ("B2", 5), ("B2", 7)]


def fresh(system, p):
    return SimpleCharacters(system, p, use_bundled=False)


# -- rank 1 oracle ------------------------------------------------------------


def test_a1_p2_weyl_module_splits():
    # chi(2) = e2 + e0 + e-2 and the simple part drops the middle weight
    r = fresh(A1, 2)
    assert r.character((2,)) == FormalCharacter(A1, {(2,): 1, (-2,): 1})
    assert weyl_character(A1, (2,)) == r.character((2,)) + r.character((0,))
    assert jantzen_sum(A1, (2,), 2) == FormalCharacter(A1, {(0,): 1})


def test_a1_p3_twisted_digit():
    r = fresh(A1, 3)
    assert r.character((3,)) == FormalCharacter(A1, {(3,): 1, (-3,): 1})


def test_a1_closed_form_against_solver():
    # for p = 2 every simple character is a product of twisted 2-dim pieces
    r = fresh(A1, 2)
    for a in range(16):
        ch = r.character((a,))
        expected = FormalCharacter.unit(A1, (0,))
        for k, bit in enumerate(bin(a)[2:][::-1]):
            if bit == "1":
                expected = expected * FormalCharacter(A1, {(2 ** k,): 1, (-2 ** k,): 1})
        assert ch == expected, a


# -- shortcuts and dimensions --------------------------------------------------


def test_bottom_alcove_shortcut():
    r = fresh(A2, 5)
    assert r.character((1, 1)) == weyl_character(A2, (1, 1))
    assert r.character((0, 0)).dimension() == 1


def test_steinberg_is_simple():
    for system, p in [(A2, 2), (B2, 2), (B2, 3)]:
        r = fresh(system, p)
        rho = system.rho
        lam = tuple((p - 1) * x for x in rho)
        assert r.character(lam) == steinberg_character(system, p)
        assert r.dimension(lam) == p ** len(system.positive_roots)


def test_b2_p2_dimensions():
    r = fresh(B2, 2)
    dims = {lam: r.dimension(lam) for lam in itertools.product(range(2), repeat=2)}
    assert dims == {(0, 0): 1, (1, 0): 4, (0, 1): 4, (1, 1): 16}


def test_simple_below_weyl():
    for system, p in [(A2, 3), (B2, 3), (B2, 5)]:
        r = fresh(system, p)
        for lam in itertools.product(range(p), repeat=2):
            chl = r.character(lam)
            chi = weyl_character(system, lam)
            diff = chi - chl
            assert all(m >= 0 for _, m in diff.items()), (system.key, p, lam)
            for w in system.weyl_orbit(lam):
                assert chl.coeff(w) == chi.coeff(w)


def test_steinberg_factorization_consistency():
    r = fresh(A2, 3)
    for lam in itertools.product(range(9), repeat=2):
        parts0 = tuple(x % 3 for x in lam)
        parts1 = tuple(x // 3 for x in lam)
        assert r.character(lam) == r.character(parts0) * r.character(parts1).twist(3)


# -- solver tables -------------------------------------------------------------


def test_solver_rows_unitriangular():
    table = jantzen_solver(B2, 3, 2)
    assert len(table.rows) == 9
    for lam, factors in table.rows.items():
        assert dict(factors)[lam] == 1
        for mu, m in factors:
            assert m >= 0
            assert B2.dominates(lam, mu)


def test_solver_bottom_alcove_rows_trivial():
    table = jantzen_solver(A2, 5, 4)
    assert table.rows[(1, 1)] == (((1, 1), 1),)
    assert table.rows[(0, 0)] == (((0, 0), 1),)


def test_table_inversion_round_trip():
    # expanding chi in the simple basis through the table and resumming
    table = jantzen_solver(B2, 5, 4)
    r = fresh(B2, 5)
    for lam in itertools.product(range(5), repeat=2):
        total = FormalCharacter(B2)
        for mu, m in table.rows[lam]:
            total = total + r.character(mu).scale(m)
        assert total == weyl_character(B2, lam)


@pytest.mark.parametrize("name,p", BUNDLED)
def test_bundled_tables_match_solver(name, p):
    system = root_system(name)
    shipped = bundled_table(system, p)
    assert shipped is not None
    assert len(shipped.rows) == p ** system.rank
    solved = jantzen_solver(system, p, p - 1)
    assert shipped.rows == solved.rows


def test_default_resolver_uses_bundled():
    r = SimpleCharacters(B2, 7)
    assert r.table.get((6, 6)) is not None
    assert r.dimension((6, 6)) == 7 ** 4


# -- ingest / export ------------------------------------------------------------


def test_export_ingest_round_trip(tmp_path):
    table = jantzen_solver(A2, 3, 2)
    path = tmp_path / "a2p3.json"
    export_table(table, path)
    back = ingest_table(path)
    assert back.rows == table.rows
    assert set(back.provenance.values()) == {"INGESTED"}
    # a second export of the ingested table is byte-identical modulo provenance
    doc = json.loads(path.read_text())
    assert doc["system"] == "A2" and doc["p"] == 3


def test_ingest_rejects_negative_multiplicity(tmp_path):
    doc = {"system": "A2", "p": 2,
           "rows": [{"lambda": [1, 1],
                     "factors": [{"mu": [1, 1], "mult": 1}, {"mu": [0, 0], "mult": -1}]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolation):
        ingest_table(path)


def test_ingest_rejects_incomparable_factor(tmp_path):
    # (0,1) is not below (1,0) in the root order
    doc = {"system": "A2", "p": 2,
           "rows": [{"lambda": [1, 0],
                     "factors": [{"mu": [1, 0], "mult": 1}, {"mu": [0, 1], "mult": 1}]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolation):
        ingest_table(path)


def test_ingest_rejects_non_unitriangular(tmp_path):
    doc = {"system": "A2", "p": 2,
           "rows": [{"lambda": [1, 1], "factors": [{"mu": [1, 1], "mult": 2}]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolation):
        ingest_table(path)


def test_ingest_rejects_garbage(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json at all")
    with pytest.raises(SchemaError):
        ingest_table(path)
    path.write_text(json.dumps({"system": "A2"}))
    with pytest.raises(SchemaError):
        ingest_table(path)


def test_merge_prefers_ingested():
    mine = jantzen_solver(A2, 2, 1)
    other = DecompTable(A2, 2)
    # a deliberately different (still valid) row claiming St is not simple
    other.add_row((1, 1), [((1, 1), 1), ((0, 0), 1)], provenance="INGESTED")
    conflicts = mine.merge(other)
    assert conflicts and "INGESTED kept" in conflicts[0]
    assert dict(mine.rows[(1, 1)])[(0, 0)] == 1


def test_unavailable_propagates():
    r = fresh(A2, 2)
    r._ambiguous[(1, 1)] = "forced for the test"
    with pytest.raises(SimpleCharUnavailable):
        r.character((1, 1))
    res = r.result((3, 1))  # needs the (1,1) digit
    assert res.status == "AMBIGUOUS"
    assert res.character is None
