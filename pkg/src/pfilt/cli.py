"""Command-line frontend: per-weight queries, box scans, built-in fixtures."""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

from .certify import CHAR_CONSISTENT, FAILED, GUARANTEED, UNKNOWN, certify, criteria
from .charring import steinberg_character, weyl_character, weyl_dimension
from .errors import PfiltError
from .g1b import decompose
from .rootsys import root_system
from .simples import SimpleCharacters, ingest_table, jantzen_solver, DecompTable

EXIT_OK = 0
EXIT_INVARIANT = 2
EXIT_UNKNOWN = 3


def _parse_lambda(text, rank):
    parts = [p for p in text.replace("(", "").replace(")", "").split(",") if p.strip()]
    lam = tuple(int(p) for p in parts)
    if len(lam) != rank:
        raise PfiltError("expected %d coordinates, got %r" % (rank, text))
    return lam


def _parse_box(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise PfiltError("box must look like lo..hi, got %r" % text)
    lo, hi = int(lo), int(hi)
    if lo < 0 or hi < lo:
        raise PfiltError("box bounds must satisfy 0 <= lo <= hi")
    return lo, hi


# ---------------------------------------------------------------------------
# table cache


def _cache_path(cache_dir, system, p):
    return os.path.join(cache_dir, "table_%s_p%d.json" % (system.key, p))


def _payload_checksum(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def load_cached_table(cache_dir, system, p):
    """Return the cached table or None when absent or corrupt."""
    path = _cache_path(cache_dir, system, p)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("checksum") != _payload_checksum(doc["payload"]):
            return None
        return DecompTable.from_json_dict(doc["payload"])
    except (OSError, ValueError, KeyError, PfiltError):
        return None


def store_cached_table(cache_dir, table):
    os.makedirs(cache_dir, exist_ok=True)
    payload = table.to_json_dict()
    doc = {"checksum": _payload_checksum(payload), "payload": payload}
    path = _cache_path(cache_dir, table.system, table.p)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
    os.replace(tmp, path)


def _resolver_for(args, system, p):
    extra = ingest_table(args.table) if getattr(args, "table", None) else None
    resolver = SimpleCharacters(system, p, table=extra)
    cache_dir = getattr(args, "cache_dir", None) or os.environ.get("PFILT_CACHE")
    if cache_dir:
        table = load_cached_table(cache_dir, system, p)
        if table is None:
            table = jantzen_solver(system, p, p - 1)
            store_cached_table(cache_dir, table)
        resolver.table.merge(table)
    for note in resolver.conflicts:
        print("table conflict: %s" % note, file=sys.stderr)
    return resolver


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args):
    system = root_system(args.type)
    if args.format == "json":
        doc = {
            "system": system.key,
            "rank": system.rank,
            "components": [
                {"name": c.name, "coxeter": c.coxeter, "n_positive": c.n_positive,
                 "alpha0": list(c.alpha0.fund)} for c in system.components],
            "rho": list(system.rho),
            "simple_roots": [list(r.fund) for r in system.simple_roots],
            "n_positive": len(system.positive_roots),
        }
        print(json.dumps(doc, separators=(",", ":")))
        return EXIT_OK
    print("system      %s (rank %d)" % (system.key, system.rank))
    for comp in system.components:
        print("component   %s: h=%d, positive roots=%d, alpha0=%s"
              % (comp.name, comp.coxeter, comp.n_positive, comp.alpha0.fund))
    print("rho         %s" % (system.rho,))
    print("simple      %s" % ", ".join(str(r.fund) for r in system.simple_roots))
    print("positive    %d roots" % len(system.positive_roots))
    return EXIT_OK


def cmd_criteria(args):
    system = root_system(args.type)
    lam = _parse_lambda(args.lam, system.rank)
    resolver = _resolver_for(args, system, args.p)
    report = criteria(system, lam, args.p, resolver)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), separators=(",", ":")))
        return EXIT_OK
    print("lambda %s  p=%d" % (lam, args.p))
    for name, value in report.flags.items():
        print("  %-12s %s" % (name, value))
    fired = report.fired
    if fired:
        print("guaranteed by: %s" % fired)
    else:
        print("no region criterion applies (certificate may still be consistent)")
    crit = report.data.get("critical_simples")
    if crit is not None:
        print("critical simples %s, height bound %d"
              % (sorted(crit), report.data["height_bound"]))
    return EXIT_OK


def _dim_check(cert, resolver):
    if cert.status in (UNKNOWN,):
        return "-"
    system = cert.system
    total = 0
    for mu0, mu1, m in cert.lines:
        total += m * resolver.dimension(mu0) * weyl_dimension(system, mu1)
    return "ok" if total == weyl_dimension(system, cert.lam) else "fail"


def cmd_certify(args):
    system = root_system(args.type)
    lam = _parse_lambda(args.lam, system.rank)
    resolver = _resolver_for(args, system, args.p)
    cert = certify(system, lam, args.p, args.n, resolver)
    if args.strict and cert.status == UNKNOWN:
        print("UNKNOWN certificate for %s" % (lam,), file=sys.stderr)
        return EXIT_UNKNOWN
    if args.format == "json":
        print(cert.dumps())
    else:
        print("lambda %s  p=%d  n=%d  status=%s" % (lam, args.p, args.n, cert.status_label))
        for mu0, mu1, m in cert.lines:
            print("  mu0=%s mu1=%s mult=%d" % (mu0, mu1, m))
        print("dimension check: %s" % _dim_check(cert, resolver))
    if cert.status == FAILED:
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_scan(args):
    system = root_system(args.type)
    lo, hi = _parse_box(args.box)
    resolver = _resolver_for(args, system, args.p)
    lams = list(itertools.product(range(lo, hi + 1), repeat=system.rank))

    def work(lam):
        cert = certify(system, lam, args.p, args.n, resolver)
        return (lam, cert.status, cert.flag or "-", len(cert.lines),
                _dim_check(cert, resolver))

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(work, lams))
    else:
        rows = [work(lam) for lam in lams]

    counts: dict = {}
    for _, status, _, _, _ in rows:
        counts[status] = counts.get(status, 0) + 1

    if args.format == "json":
        doc = {"system": system.key, "p": args.p, "n": args.n,
               "rows": [{"lambda": list(lam), "status": status, "flag": flag,
                         "n_lines": k, "dim_check": dc}
                        for lam, status, flag, k, dc in rows],
               "summary": counts}
        print(json.dumps(doc, separators=(",", ":")))
    elif args.format == "tsv":
        print("lambda\tstatus\tflag\tn_lines\tdim_check")
        for lam, status, flag, k, dc in rows:
            print("%s\t%s\t%s\t%d\t%s" % (",".join(map(str, lam)), status, flag, k, dc))
    else:
        for lam, status, flag, k, dc in rows:
            print("%-16s %-16s %-12s %3d  %s" % (str(lam), status, flag, k, dc))
        print("summary: " + ", ".join("%s=%d" % kv for kv in sorted(counts.items())))

    if any(dc == "fail" for *_, dc in rows):
        return EXIT_INVARIANT
    if args.strict and counts.get(UNKNOWN):
        return EXIT_UNKNOWN
    return EXIT_OK


# ---------------------------------------------------------------------------
# built-in verification fixtures


def _fixture_constants():
    a2, b2 = root_system("A2"), root_system("B2")
    assert a2.coxeter_number == 3, "A2 Coxeter number"
    assert b2.coxeter_number == 4, "B2 Coxeter number"
    assert len(root_system("A1").positive_roots) == 1


def _fixture_sp4_factors():
    system = root_system("B2")
    result = decompose(system, (0, 0), 2)
    got = {(f.weight(2), f.mult) for f in result.factors}
    expected = {((0, 0), 1), ((-2, 1), 1), ((2, -2), 1), ((0, -1), 1),
                ((-2, 0), 2), ((0, -2), 2), ((-4, 0), 1), ((-2, -2), 1)}
    assert got == expected, "Sp4 p=2 factor list mismatch: %s" % (sorted(got),)
    assert len(result.factors) == 8
    # the weighted characters must reassemble the induced character exactly
    from .g1b import baby_verma_character
    from .simples import default_resolver
    resolver = default_resolver(system, 2)
    total = None
    for f in result.factors:
        piece = resolver.character(f.mu0).shift(
            tuple(2 * b for b in f.mu1)).scale(f.mult)
        total = piece if total is None else total + piece
    assert total == baby_verma_character(system, (0, 0), 2), "reassembly failed"


def _fixture_sl3_region():
    system = root_system("A2")
    p = 5
    for a in range(0, p * p + 1, 3):
        for b in range(0, p * p + 1, 3):
            report = criteria(system, (a, b), p)
            a1, b1 = a // p, b // p
            assert report.flags["small"] == (a1 + b1 <= p - 3), (a, b)
            assert report.flags["large"] == (a >= p and b >= p), (a, b)


def _fixture_steinberg():
    for name, p, nmax in (("A1", 2, 3), ("A1", 3, 2), ("B2", 2, 2)):
        system = root_system(name)
        npos = len(system.positive_roots)
        for n in range(1, nmax + 1):
            st_n = steinberg_character(system, p, n)
            assert st_n.dimension() == p ** (n * npos), (name, p, n)
            prev = steinberg_character(system, p, n - 1)
            st_1 = steinberg_character(system, p, 1)
            assert st_n == st_1 * prev.twist(p), (name, p, n)


def _fixture_b2_bounds():
    system = root_system("B2")
    assert criteria(system, (0, 0), 11).flags["global_bound"] is True
    assert criteria(system, (0, 0), 7).flags["global_bound"] is False


FIXTURES = (
    ("structure constants", _fixture_constants),
    ("rank-2 symplectic factor list (p=2)", _fixture_sp4_factors),
    ("rank-2 special linear region formula (p=5)", _fixture_sl3_region),
    ("Steinberg tensor identities", _fixture_steinberg),
    ("rank-2 symplectic global bound", _fixture_b2_bounds),
)


def cmd_verify(args):
    failures = 0
    for name, func in FIXTURES:
        try:
            func()
        except AssertionError as exc:
            failures += 1
            print("FAIL  %-45s %s" % (name, exc))
        else:
            print("PASS  %s" % name)
    if failures:
        print("%d fixture(s) failed" % failures, file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pfilt",
        description="Exact filtration certificates for dual Weyl module characters.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, needs_p=True, needs_lambda=False):
        sp.add_argument("--type", required=True, help="Cartan type, e.g. B2 or A1xA1")
        if needs_p:
            sp.add_argument("--p", type=int, required=True, help="prime characteristic")
        if needs_lambda:
            sp.add_argument("--lambda", dest="lam", required=True,
                            help="weight coordinates, e.g. 3,1")
        sp.add_argument("--format", choices=("pretty", "json", "tsv"), default="pretty")
        sp.add_argument("--strict", action="store_true",
                        help="exit with status 3 when any result is UNKNOWN")
        sp.add_argument("--table", help="decomposition table JSON to ingest")
        sp.add_argument("--cache-dir", dest="cache_dir",
                        help="table cache directory (default: env PFILT_CACHE)")

    sp = sub.add_parser("info", help="print structural constants for a Cartan type")
    sp.add_argument("type", help="Cartan type, e.g. B2")
    sp.add_argument("--format", choices=("pretty", "json"), default="pretty")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("criteria", help="evaluate the filtration criteria at one weight")
    common(sp, needs_lambda=True)
    sp.set_defaults(func=cmd_criteria)

    sp = sub.add_parser("certify", help="build a certificate for one weight")
    common(sp, needs_lambda=True)
    sp.add_argument("--n", type=int, default=1, help="filtration level (default 1)")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("scan", help="certify every weight in a coordinate box")
    common(sp)
    sp.add_argument("--box", required=True, help="coordinate range lo..hi")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1, help="worker threads")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("verify", help="run the built-in verification fixtures")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PfiltError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
