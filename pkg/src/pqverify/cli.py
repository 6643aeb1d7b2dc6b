"""Command-line interface.

Exit codes: 0 verified, eliminated or valid; 10 undecided or survivors remain;
2 input error; 3 internal invariant violation (including failed cross-checks).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .chartables import TableError, load_table_file, validate_table
from .filters import case_sweep, find_pq_constant, make_solver, pq_eliminate
from .graphs import FactError, graph_from_spectrum, graph_from_table, load_facts, reduction_infer
from .help import HelpInputError
from .perm import PermutationError, load_group, parse_generators, spectrum
from .verify import VerificationInputError, VerifyConfig, cross_check, emit_report, fixture_tables, group_config, verify_pq

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_OPEN = 10

log = logging.getLogger("pqverify")


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _load_group(source: str):
    p = Path(source)
    if p.exists():
        return parse_generators(p.read_text(), name=p.stem)
    return load_group(source)


def _tables(args) -> tuple:
    t = load_table_file(args.table)
    extra = tuple(load_table_file(b) for b in getattr(args, "brauer", None) or ())
    return (t,) + extra


def cmd_validate(args) -> int:
    t = load_table_file(args.table)
    rep = validate_table(t)
    _dump({"table": t.name, "ok": rep.ok, "failures": rep.failures, "notices": rep.notices})
    return EXIT_OK if rep.ok else EXIT_INPUT


def cmd_prime_graph(args) -> int:
    if args.group:
        g = graph_from_spectrum(spectrum(_load_group(args.group)))
    else:
        g = graph_from_table(load_table_file(args.table))
    _dump(g.to_json())
    return EXIT_OK


def cmd_help(args) -> int:
    tables = _tables(args)
    solver = make_solver(tables, args.wagner or "off")
    sol = solver.solve(args.order)
    out = sol.to_json()
    out["distinct_unit_vectors"] = [list(v) for v in sol.unit_vectors()]
    _dump(out)
    return EXIT_OPEN if sol.towers else EXIT_OK


def cmd_pq_constant(args) -> int:
    t = load_table_file(args.table)
    found = find_pq_constant(t, args.p, args.q, args.max_terms, args.max_coeff)
    rows = []
    witness = False
    for xi in found:
        row = xi.to_json()
        if args.check:
            v = pq_eliminate(xi)
            row["infeasible"] = v.infeasible
            witness |= v.infeasible
        rows.append(row)
    _dump({"table": t.name, "p": args.p, "q": args.q, "characters": rows})
    if args.check:
        return EXIT_OK if witness else EXIT_OPEN
    return EXIT_OK


def cmd_sweep(args) -> int:
    tables = _tables(args)
    if not args.brauer and not args.no_fixture_brauer:
        try:
            tables = fixture_tables(args.table)
        except FileNotFoundError:
            pass
    res = case_sweep(make_solver(tables, args.wagner), args.order)
    _dump(res.to_json())
    return EXIT_OK if res.eliminated else EXIT_OPEN


def _config(args, slug: str | None) -> VerifyConfig:
    if args.config:
        return VerifyConfig.from_dict(json.loads(Path(args.config).read_text()))
    if slug is not None:
        return group_config(slug)
    return VerifyConfig()


def cmd_verify_pq(args) -> int:
    slug = None if Path(args.table).exists() else args.table
    config = _config(args, slug)
    t = load_table_file(args.table)
    if args.brauer:
        brauer = tuple(load_table_file(b) for b in args.brauer)
    elif slug is not None and config.brauer:
        brauer = fixture_tables(slug)[1:]
    else:
        brauer = ()
    rep = verify_pq(t, config, brauer)
    if args.out:
        Path(args.out).write_text(emit_report(rep, "json", timings=args.timings))
    sys.stdout.write(emit_report(rep, args.format, timings=args.timings))
    return EXIT_OK if rep.final != "undecided" else EXIT_OPEN


def cmd_reduce(args) -> int:
    facts = load_facts(Path(args.facts).read_text())
    _dump([d.to_json() for d in reduction_infer(facts)])
    return EXIT_OK


def cmd_cross_check(args) -> int:
    rep = cross_check(_load_group(args.group), load_table_file(args.table))
    _dump(rep.to_json())
    return EXIT_OK if rep.consistent else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pqverify", description="HeLP-based prime graph verification")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)
    table_help = "table JSON file or fixture name such as L3_3 or L3_3.mod3"

    p = sub.add_parser("validate", help="check a character table")
    p.add_argument("--table", required=True, help=table_help)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("prime-graph", help="prime graph from a table or a permutation group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--table", help=table_help)
    src.add_argument("--group", help="generator file or fixture name")
    p.set_defaults(func=cmd_prime_graph)

    p = sub.add_parser("help", help="admissible partial augmentations for one order")
    p.add_argument("--table", required=True, help=table_help)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--brauer", action="append", help="Brauer table (repeatable)")
    p.add_argument("--wagner", nargs="?", const="prime-power", choices=("off", "prime-power", "all"))
    p.set_defaults(func=cmd_help)

    p = sub.add_parser("pq-constant", help="search (p,q)-constant characters")
    p.add_argument("--table", required=True, help=table_help)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-terms", type=int, default=3)
    p.add_argument("--max-coeff", type=int, default=2)
    p.add_argument("--check", action="store_true", help="also test each character for infeasibility")
    p.set_defaults(func=cmd_pq_constant)

    p = sub.add_parser("sweep", help="case sweep over independent power choices")
    p.add_argument("--table", required=True, help=table_help)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--brauer", action="append", help="Brauer table (repeatable)")
    p.add_argument("--no-fixture-brauer", action="store_true", help="do not add shipped Brauer tables")
    p.add_argument("--wagner", default="prime-power", choices=("off", "prime-power", "all"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-pq", help="decide the prime graph question for a group")
    p.add_argument("--table", required=True, help=table_help)
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--brauer", action="append", help="Brauer table (repeatable)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--format", default="markdown", choices=("markdown", "json"))
    p.add_argument("--timings", action="store_true", help="include wall times in the report")
    p.set_defaults(func=cmd_verify_pq)

    p = sub.add_parser("reduce", help="run the reduction rules on a facts file")
    p.add_argument("--facts", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cross-check", help="compare a permutation group with its table")
    p.add_argument("--table", required=True, help=table_help)
    p.add_argument("--group", required=True, help="generator file or fixture name")
    p.set_defaults(func=cmd_cross_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (FileNotFoundError, TableError, PermutationError, FactError, HelpInputError,
            VerificationInputError, json.JSONDecodeError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except AssertionError as exc:
        log.error("invariant violated: %s", exc)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
