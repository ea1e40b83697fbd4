"""Simple characters ch L(lambda) in characteristic p.

Restricted weights are resolved in three stages: the bottom-alcove
shortcut (the induced module is already simple there), a decomposition
table (bundled or ingested), and finally a Jantzen-sum-formula solver.
Arbitrary dominant weights reduce to restricted digits through the
Steinberg tensor product factorization.

The solver never guesses: when the sum formula plus positivity leaves
more than one candidate multiplicity vector, the row is left AMBIGUOUS
and downstream consumers see SimpleCharUnavailable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .charring import FormalCharacter, euler_character, weyl_character
from .errors import (InvariantViolation, SchemaError, SimpleCharUnavailable)
from .rootsys import RootSystem, require_dominant, root_system
from .weights import in_bottom_alcove, is_restricted, split

COMPUTED = "COMPUTED"
INGESTED = "INGESTED"
EXACT = "EXACT"
AMBIGUOUS = "AMBIGUOUS"


@dataclass
class SimpleCharResult:
    """Outcome of a simple-character request."""

    character: FormalCharacter | None
    status: str
    notes: str = ""


class DecompTable:
    """Rows lambda -> [(mu, [Weyl(lambda) : simple(mu)])] for restricted lambda."""

    def __init__(self, system: RootSystem, p: int):
        self.system = system
        self.p = p
        self.rows: dict[tuple, tuple] = {}
        self.provenance: dict[tuple, str] = {}

    def add_row(self, lam, factors, provenance=COMPUTED):
        lam = tuple(lam)
        factors = tuple(sorted(((tuple(mu), int(m)) for mu, m in factors),
                               key=lambda fm: self.system.canonical_key(fm[0])))
        self._validate_row(lam, factors)
        self.rows[lam] = factors
        self.provenance[lam] = provenance

    def _validate_row(self, lam, factors):
        system = self.system
        if not is_restricted(system, lam, self.p):
            raise InvariantViolation("row weight %s is not restricted for p=%d" % (lam, self.p))
        seen = set()
        diag = 0
        for mu, m in factors:
            system.check_weight(mu)
            if m < 0:
                raise InvariantViolation("negative multiplicity %d at %s" % (m, mu))
            if mu in seen:
                raise InvariantViolation("duplicate factor %s in row %s" % (mu, lam))
            seen.add(mu)
            if not system.is_dominant(mu):
                raise InvariantViolation("factor %s of row %s is not dominant" % (mu, lam))
            if not system.dominates(lam, mu):
                raise InvariantViolation("factor %s is not below %s in the root order" % (mu, lam))
            if mu == lam:
                diag = m
        if diag != 1:
            raise InvariantViolation("row %s is not unitriangular" % (lam,))

    def get(self, lam):
        return self.rows.get(tuple(lam))

    def merge(self, other: "DecompTable"):
        """Fold another table in, preferring INGESTED rows on conflict.

        Returns a list of human-readable conflict notes.
        """
        if other.system.key != self.system.key or other.p != self.p:
            raise InvariantViolation("cannot merge tables for different (system, p)")
        conflicts = []
        for lam, factors in other.rows.items():
            mine = self.rows.get(lam)
            if mine is not None and mine != factors:
                keep_other = other.provenance[lam] == INGESTED
                conflicts.append("row %s: %s kept, %s dropped"
                                 % (lam,
                                    other.provenance[lam] if keep_other else self.provenance[lam],
                                    self.provenance[lam] if keep_other else other.provenance[lam]))
                if not keep_other:
                    continue
            if mine is None or other.provenance[lam] == INGESTED:
                self.rows[lam] = factors
                self.provenance[lam] = other.provenance[lam]
        return conflicts

    # -- serialization ----------------------------------------------------

    def to_json_dict(self):
        key = self.system.canonical_key
        rows = []
        for lam in sorted(self.rows, key=key):
            rows.append({
                "lambda": list(lam),
                "factors": [{"mu": list(mu), "mult": m} for mu, m in self.rows[lam]],
                "provenance": self.provenance[lam],
            })
        return {"system": self.system.key, "p": self.p, "rows": rows}

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, doc, mark_ingested=False):
        try:
            system = root_system(doc["system"])
            p = int(doc["p"])
            rows = doc["rows"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError("decomposition table document malformed: %s" % exc)
        table = cls(system, p)
        for row in rows:
            try:
                lam = tuple(int(x) for x in row["lambda"])
                factors = [(tuple(int(x) for x in f["mu"]), int(f["mult"]))
                           for f in row["factors"]]
                provenance = INGESTED if mark_ingested else row.get("provenance", COMPUTED)
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaError("bad table row %r: %s" % (row, exc))
            table.add_row(lam, factors, provenance)
        return table

    def __eq__(self, other):
        return (isinstance(other, DecompTable)
                and self.system.key == other.system.key
                and self.p == other.p
                and self.rows == other.rows
                and self.provenance == other.provenance)


def export_table(table: DecompTable, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(table.dumps())
        fh.write("\n")


def ingest_table(path) -> DecompTable:
    """Load and validate a table file; rejects the whole file on any violation."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("not valid JSON: %s" % exc)
    return DecompTable.from_json_dict(doc, mark_ingested=True)


# ---------------------------------------------------------------------------
# Jantzen sum formula


def jantzen_sum(system: RootSystem, lam, p: int) -> FormalCharacter:
    """Virtual character of the positive Jantzen layers of the Weyl module."""
    lam = require_dominant(system, lam)
    shifted = tuple(x + 1 for x in lam)
    total = FormalCharacter(system)
    for beta in system.positive_roots:
        bound = system.pair(shifted, beta.coroot)
        mp = p
        while mp < bound:
            val = 0
            m = mp
            while m % p == 0:
                val += 1
                m //= p
            reflected = tuple(x + (mp - bound) * f for x, f in zip(lam, beta.fund))
            total = total + euler_character(system, reflected).scale(val)
            mp += p
    return total


def _bundled_path(system_key: str, p: int):
    from importlib import resources

    name = "decomp_%s_p%d.json" % (system_key, p)
    ref = resources.files(__package__) / "data" / name
    return ref if ref.is_file() else None


def bundled_table(system: RootSystem, p: int) -> DecompTable | None:
    """The decomposition table shipped with the package, if one exists."""
    ref = _bundled_path(system.key, p)
    if ref is None:
        return None
    return DecompTable.from_json_dict(json.loads(ref.read_text(encoding="utf-8")))


class SimpleCharacters:
    """Resolver for ch L(lambda) at a fixed prime, with memoization.

    Restricted weights go through the bottom-alcove shortcut, then any
    table rows, then the sum-formula solver; everything else is a product
    of twisted restricted digits.
    """

    def __init__(self, system: RootSystem, p: int, table: DecompTable | None = None,
                 use_bundled: bool = True):
        if p < 2:
            raise ValueError("p must be a prime, got %d" % p)
        self.system = system
        self.p = p
        self.table = DecompTable(system, p)
        if use_bundled:
            shipped = bundled_table(system, p)
            if shipped is not None:
                self.table.merge(shipped)
        self.conflicts: list[str] = []
        if table is not None:
            self.conflicts = self.table.merge(table)
        self._chl: dict[tuple, FormalCharacter] = {}
        self._ambiguous: dict[tuple, str] = {}
        self._in_progress: set = set()

    # -- public interface -------------------------------------------------

    def character(self, lam) -> FormalCharacter:
        """ch L(lam) for dominant lam; raises SimpleCharUnavailable."""
        lam = require_dominant(self.system, lam)
        cached = self._chl.get(lam)
        if cached is not None:
            return cached
        if lam in self._ambiguous:
            raise SimpleCharUnavailable(lam, self._ambiguous[lam])
        if is_restricted(self.system, lam, self.p):
            out = self._restricted(lam)
        else:
            parts = split(self.system, lam, self.p)
            out = self._restricted(parts.lambda0) * self.character(parts.lambda1).twist(self.p)
        self._chl[lam] = out
        return out

    def result(self, lam) -> SimpleCharResult:
        try:
            return SimpleCharResult(self.character(lam), EXACT)
        except SimpleCharUnavailable as exc:
            return SimpleCharResult(None, AMBIGUOUS, str(exc))

    def dimension(self, lam) -> int:
        return self.character(lam).dimension()

    # -- restricted resolution ----------------------------------------------

    def _restricted(self, lam) -> FormalCharacter:
        cached = self._chl.get(lam)
        if cached is not None:
            return cached
        if lam in self._ambiguous:
            raise SimpleCharUnavailable(lam, self._ambiguous[lam])
        if in_bottom_alcove(self.system, lam, self.p):
            out = weyl_character(self.system, lam)
        else:
            row = self.table.get(lam)
            if row is None:
                row = self._solve_row(lam)
            out = weyl_character(self.system, lam)
            for mu, m in row:
                if mu != lam and m:
                    out = out - self.character(mu).scale(m)
        if out.coeff(lam) != 1:
            raise AssertionError("simple character of %s lost its highest weight" % (lam,))
        self._chl[lam] = out
        return out

    def _solve_row(self, lam):
        if lam in self._in_progress:
            raise AssertionError("cyclic dependency while solving %s" % (lam,))
        self._in_progress.add(lam)
        try:
            row = _solve_jantzen_row(self, lam)
        finally:
            self._in_progress.discard(lam)
        if row is None:
            note = self._ambiguous.get(lam, "sum formula underdetermined at %s" % (lam,))
            self._ambiguous[lam] = note
            raise SimpleCharUnavailable(lam, note)
        self.table.add_row(lam, row, COMPUTED)
        return self.table.get(lam)


def _solve_jantzen_row(resolver: SimpleCharacters, lam):
    """Composition multiplicities of the Weyl module with highest weight lam.

    The sum-formula character is expanded in the basis of lower simple
    characters.  Coefficient 1 pins a multiplicity exactly; larger
    coefficients give a range [1, a] which is resolved only if exactly
    one choice keeps the resulting simple character nonnegative.
    Returns None when genuinely underdetermined.
    """
    system = resolver.system
    js = jantzen_sum(system, lam, resolver.p)
    layer_coeffs = {}
    rem = js
    while rem:
        nu = rem.max_weight()
        if not system.is_dominant(nu):
            resolver._ambiguous[lam] = "sum formula head %s not dominant at %s" % (nu, lam)
            return None
        a = rem.coeff(nu)
        if a < 0:
            resolver._ambiguous[lam] = "negative layer coefficient %d at %s" % (a, nu)
            return None
        layer_coeffs[nu] = a
        rem = rem - resolver.character(nu).scale(a)

    fixed = [(mu, a) for mu, a in layer_coeffs.items() if a == 1]
    open_slots = [(mu, a) for mu, a in layer_coeffs.items() if a >= 2]
    if not open_slots:
        return [(lam, 1)] + fixed

    chi = weyl_character(system, lam)
    base = chi
    for mu, _ in fixed:
        base = base - resolver.character(mu)

    solutions = []
    for combo in itertools.product(*[range(1, a + 1) for _, a in open_slots]):
        cand = base
        for (mu, _), m in zip(open_slots, combo):
            cand = cand - resolver.character(mu).scale(m)
        if all(c >= 0 for c in cand._m.values()) and cand.coeff(lam) == 1:
            solutions.append(combo)
            if len(solutions) > 1:
                break
    if len(solutions) != 1:
        resolver._ambiguous[lam] = ("positivity leaves %d candidates at %s"
                                    % (len(solutions), lam))
        return None
    combo = solutions[0]
    return ([(lam, 1)] + fixed
            + [(mu, m) for (mu, _), m in zip(open_slots, combo)])


def jantzen_solver(system: RootSystem, p: int, box) -> DecompTable:
    """Solve every restricted weight within the coordinate box.

    ``box`` is an integer bound or a tuple of per-coordinate bounds;
    weights with any coordinate above the bound or above p-1 are skipped.
    Underdetermined rows are left out of the table.
    """
    if isinstance(box, int):
        box = (box,) * system.rank
    bounds = [min(b, p - 1) for b in box]
    resolver = SimpleCharacters(system, p, use_bundled=False)
    for lam in itertools.product(*[range(b + 1) for b in bounds]):
        try:
            resolver.character(lam)
        except SimpleCharUnavailable:
            continue
        if resolver.table.get(lam) is None and not in_bottom_alcove(system, lam, p):
            raise AssertionError("solver left no row for %s" % (lam,))
        if resolver.table.get(lam) is None:
            # bottom-alcove rows are trivial but still worth recording
            resolver.table.add_row(lam, [(lam, 1)], COMPUTED)
    return resolver.table


def simple_character(system: RootSystem, lam, p: int,
                     resolver: SimpleCharacters | None = None) -> SimpleCharResult:
    """ch L(lam) as a SimpleCharResult; AMBIGUOUS is a status, not an error."""
    if resolver is None:
        resolver = default_resolver(system, p)
    return resolver.result(lam)


_DEFAULT_RESOLVERS: dict[tuple, SimpleCharacters] = {}


def default_resolver(system: RootSystem, p: int) -> SimpleCharacters:
    """Shared per-(system, p) resolver backed by any bundled table."""
    key = (system.key, p)
    resolver = _DEFAULT_RESOLVERS.get(key)
    if resolver is None:
        resolver = SimpleCharacters(system, p)
        _DEFAULT_RESOLVERS[key] = resolver
    return resolver
