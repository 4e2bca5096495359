"""Command-line front end: gen, rank, compare, verify-golden."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Sequence

from semrank.backlink_ranker import DEFAULT_TOLERANCE, BacklinkMode
from semrank.compare import COMPARE_METHODS, compare, rank_method
from semrank.errors import ConvergenceError, EnumerationCapError, SemrankError
from semrank.generator import GeneratorParams, generate_environment
from semrank.golden import verify_golden
from semrank.graph_model import Environment, Query, dump_environment, load_environment
from semrank.relation_ranker import Method
from semrank.render import DEFAULT_PLACES, render_comparison, render_rank
from semrank.virtual_ranker import VirtualConfig, VirtualMode

EXIT_OK = 0
EXIT_GOLDEN_FAILED = 1
EXIT_VALIDATION = 2
EXIT_CAP = 3
EXIT_EIGEN = 4


def _assoc(text: str) -> tuple[str, int]:
    term, sep, concept = text.rpartition("=")
    if not sep or not term:
        raise argparse.ArgumentTypeError(f"expected term=conceptIndex, got {text!r}")
    try:
        return term, int(concept)
    except ValueError:
        raise argparse.ArgumentTypeError(f"concept index must be an integer in {text!r}") from None


def _format(text: str) -> str:
    fmt = "json" if text == "json-like" else text
    if fmt not in ("table", "csv", "json"):
        raise argparse.ArgumentTypeError(f"unknown format {text!r}")
    return fmt


def _add_scoring_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("environment", help="environment document (JSON)")
    p.add_argument("--virtual-mode", choices=[m.value for m in VirtualMode], default=VirtualMode.CONSTANT_HALF.value)
    p.add_argument("--backlink-mode", choices=[m.value for m in BacklinkMode], default=BacklinkMode.RECIPROCAL.value)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="power iteration tolerance")
    p.add_argument("--assoc", type=_assoc, action="append", metavar="TERM=CONCEPT",
                   help="query term association; repeatable; replaces the query in the file")
    p.add_argument("--format", type=_format, default="table", help="table, csv or json (json-like)")
    p.add_argument("--precision", type=int, default=DEFAULT_PLACES, help="decimal places in table output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semrank", description="semantic-association page ranking")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded random environment")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--concepts", type=int, default=6)
    gen.add_argument("--density", type=float, default=14 / 15, help="fraction of concept pairs related")
    gen.add_argument("--max-multiplicity", type=int, default=5)
    gen.add_argument("--fixed-multiplicity", action="store_true", help="every pair gets max multiplicity")
    gen.add_argument("--pages", type=int, default=10)
    gen.add_argument("--rate", type=float, default=0.2, help="per-relation page sampling rate")
    gen.add_argument("--page-pairs", type=int, default=None, help="sample this many pairs per page instead")
    gen.add_argument("--query-size", type=int, default=None)
    gen.add_argument("-o", "--output", help="write here instead of stdout")

    rank = sub.add_parser("rank", help="rank the pages of an environment")
    _add_scoring_flags(rank)
    rank.add_argument("--method", choices=[m.value for m in COMPARE_METHODS], default=Method.COMBINED.value)

    cmp_ = sub.add_parser("compare", help="run all methods side by side")
    _add_scoring_flags(cmp_)

    golden = sub.add_parser("verify-golden", help="re-run the embedded worked examples")
    golden.add_argument("--quiet", action="store_true", help="only print failures and the summary")
    return parser


def _load(args: argparse.Namespace) -> Environment:
    env = load_environment(args.environment)
    if args.assoc:
        query = Query(tuple(args.assoc))
        query.validate(env.ontology)
        env = env._replace(query=query)
    return env


def cmd_gen(args: argparse.Namespace) -> int:
    params = GeneratorParams(
        seed=args.seed,
        concept_count=args.concepts,
        ontology_pair_density=args.density,
        max_multiplicity=args.max_multiplicity,
        page_count=args.pages,
        page_relation_rate=args.rate,
        fixed_multiplicity=args.fixed_multiplicity,
        query_size=args.query_size,
        page_pairs=args.page_pairs,
    )
    text = dump_environment(generate_environment(params))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    env = _load(args)
    report = rank_method(env, Method(args.method), VirtualConfig(VirtualMode(args.virtual_mode)),
                         BacklinkMode(args.backlink_mode), args.tolerance)
    sys.stdout.write(render_rank(report, args.format, args.precision))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    env = _load(args)
    report = compare(env, VirtualConfig(VirtualMode(args.virtual_mode)),
                     BacklinkMode(args.backlink_mode), args.tolerance)
    sys.stdout.write(render_comparison(report, args.format, args.precision))
    return EXIT_OK


def cmd_verify_golden(args: argparse.Namespace, overrides: dict | None = None) -> int:
    results = verify_golden(overrides)
    failed = [r for r in results if not r.passed]
    for r in results:
        if args.quiet and r.passed:
            continue
        tol = "exact" if r.tolerance is None else f"tol={r.tolerance:g}"
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name}  [{tol}]"
        if not r.passed:
            line += f"  expected={r.expected!r} actual={r.actual!r}"
            if r.error:
                line += f" error={r.error}"
        print(line)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_GOLDEN_FAILED if failed else EXIT_OK


COMMANDS = {"gen": cmd_gen, "rank": cmd_rank, "compare": cmd_compare, "verify-golden": cmd_verify_golden}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except EnumerationCapError as exc:
        print(f"semrank: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConvergenceError as exc:
        print(f"semrank: {exc}", file=sys.stderr)
        return EXIT_EIGEN
    except (SemrankError, OSError) as exc:
        print(f"semrank: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
