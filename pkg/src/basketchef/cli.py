"""Command-line entry point.

Subcommands: validate, analyze-identifiers, analyze-differentiators,
threshold-table, score-curve, replay, serve. All analysis output is CSV on
stdout (golden-file friendly); replay emits a JSON transcript.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
The corpus path falls back to $BASKETCHEF_CORPUS, the serve port to
$BASKETCHEF_PORT.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import socket
import sys

from .corpus import Corpus, CorpusFormatError, load_corpus_path
from .replay import ReplayError, parse_script, run_replay
from .session import SessionConfig, min_items_to_activate, score_increment
from .stats import CorpusStats, differentiators_csv, identifiers_csv

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

CORPUS_ENV = "BASKETCHEF_CORPUS"
PORT_ENV = "BASKETCHEF_PORT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basketchef",
        description="Session-based grocery recommender tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_corpus_flag(p):
        p.add_argument(
            "--corpus",
            default=os.environ.get(CORPUS_ENV),
            help=f"corpus file path (default: ${CORPUS_ENV})",
        )

    def add_config_flags(p):
        p.add_argument("--k", type=int, default=5, help="identifiers per category")
        p.add_argument("--h", type=int, default=1, help="global exclusion count")
        p.add_argument("--q", type=int, default=1, help="identifier hits to activate")
        p.add_argument("--n", type=float, default=3.0, help="score root parameter")
        p.add_argument("--theta", type=float, default=4.0, help="activation threshold")
        p.add_argument("--top-n", type=int, default=5, help="dishes per recommendation")

    p = sub.add_parser("validate", help="load a corpus and report problems")
    add_corpus_flag(p)

    p = sub.add_parser(
        "analyze-identifiers", help="per-category identifier table (CSV)"
    )
    add_corpus_flag(p)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--h", type=int, default=1)

    p = sub.add_parser(
        "analyze-differentiators",
        help="per-subcategory differentiator table for one category (CSV)",
    )
    add_corpus_flag(p)
    p.add_argument("--category", required=True)
    p.add_argument("--top", type=int, default=5)

    p = sub.add_parser(
        "threshold-table",
        help="items needed to reach theta per (n, theta); needs no corpus",
    )
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--theta-min", type=int, default=1)
    p.add_argument("--theta-max", type=int, default=7)

    p = sub.add_parser(
        "score-curve", help="score increment per rank for each n (CSV)"
    )
    p.add_argument("--n", default="1,2,3,4,5", help="comma-separated n values")
    p.add_argument("--max-rank", type=int, default=20)

    p = sub.add_parser("replay", help="run an event script, print the transcript")
    add_corpus_flag(p)
    p.add_argument("--script", required=True, help="event script path")
    add_config_flags(p)

    p = sub.add_parser("serve", help="serve the HTTP JSON API")
    add_corpus_flag(p)
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get(PORT_ENV, "8000")),
        help=f"TCP port (default: ${PORT_ENV} or 8000)",
    )
    p.add_argument("--host", default="127.0.0.1")
    add_config_flags(p)

    return parser


def _load_corpus_arg(args, parser) -> Corpus:
    if not args.corpus:
        parser.error(f"--corpus is required (or set ${CORPUS_ENV})")
    try:
        return load_corpus_path(args.corpus)
    except CorpusFormatError:
        raise
    except OSError as exc:
        raise _IOFailure(f"cannot read corpus: {exc}") from exc


class _IOFailure(Exception):
    pass


def _config_from_args(args) -> SessionConfig:
    return SessionConfig(
        k=args.k, h=args.h, q=args.q, n=args.n, theta=args.theta, top_n=args.top_n
    )


def cmd_validate(args, parser) -> int:
    corpus = _load_corpus_arg(args, parser)
    recipes = sum(1 for _ in corpus.iter_recipes())
    print(
        f"ok: {len(corpus.categories)} categories, "
        f"{sum(len(c.subcategories) for c in corpus.categories)} subcategories, "
        f"{recipes} recipes, {corpus.vocabulary_size} items"
    )
    return EXIT_OK


def cmd_analyze_identifiers(args, parser) -> int:
    corpus = _load_corpus_arg(args, parser)
    stats = CorpusStats.compute(corpus, k=args.k, h=args.h)
    sys.stdout.write(identifiers_csv(stats))
    return EXIT_OK


def cmd_analyze_differentiators(args, parser) -> int:
    corpus = _load_corpus_arg(args, parser)
    try:
        corpus.category_index(args.category)
    except KeyError:
        print(f"error: unknown category {args.category!r}", file=sys.stderr)
        return EXIT_VALIDATION
    stats = CorpusStats.compute(corpus, k=5, h=1)
    sys.stdout.write(differentiators_csv(stats, args.category, top=args.top))
    return EXIT_OK


def cmd_threshold_table(args, parser) -> int:
    if args.n_min < 1 or args.theta_min < 1 or args.n_max < args.n_min \
            or args.theta_max < args.theta_min:
        parser.error("ranges must satisfy 1 <= min <= max")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    ns = list(range(args.n_min, args.n_max + 1))
    writer.writerow(["theta"] + [f"n={n}" for n in ns])
    for theta in range(args.theta_min, args.theta_max + 1):
        writer.writerow([theta] + [min_items_to_activate(n, theta) for n in ns])
    return EXIT_OK


def cmd_score_curve(args, parser) -> int:
    try:
        ns = [int(part) for part in args.n.split(",") if part.strip()]
    except ValueError:
        parser.error("--n must be a comma-separated list of integers")
    if not ns or min(ns) < 1 or args.max_rank < 1:
        parser.error("n values and --max-rank must be >= 1")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["rank"] + [f"n={n}" for n in ns])
    for rank in range(1, args.max_rank + 1):
        writer.writerow([rank] + [repr(score_increment(rank, n)) for n in ns])
    return EXIT_OK


def cmd_replay(args, parser) -> int:
    corpus = _load_corpus_arg(args, parser)
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read script: {exc}") from exc
    config = _config_from_args(args)
    events = parse_script(text, corpus)
    transcript = run_replay(corpus, events, config)
    json.dump(transcript, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_serve(args, parser) -> int:
    corpus = _load_corpus_arg(args, parser)
    config = _config_from_args(args)

    # Fail with a clear diagnostic before uvicorn owns the socket.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        raise _IOFailure(
            f"cannot bind {args.host}:{args.port}: {exc}"
        ) from exc
    finally:
        probe.close()

    from .service import create_app

    import uvicorn

    app = create_app(corpus, defaults=config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "analyze-identifiers": cmd_analyze_identifiers,
    "analyze-differentiators": cmd_analyze_differentiators,
    "threshold-table": cmd_threshold_table,
    "score-curve": cmd_score_curve,
    "replay": cmd_replay,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ReplayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def console_main() -> None:
    sys.exit(main())
