"""Command-line entry points: validate corpora, search offline, trace the
state machine, and launch the HTTP service.

Exit codes: 0 success, 1 domain error (bad corpus content, bad pattern),
2 usage error (unknown flags, unreadable paths).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import FACET_NAMES, Corpus, CorpusLoadError, load_corpus
from .index import UnknownFacetError, UnknownValueError, build_index
from .nfa import compile_nfa, scan_trace
from .patterns import (
    EmptyWordError,
    EmptyWordListError,
    PatternSyntaxError,
    TooManyWordsError,
)
from .search import (
    EmptyPatternError,
    InvalidQueryError,
    SearchQuery,
    build_field_pattern,
    execute_search,
    hit_payload,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

HUMAN_SNIPPET_WIDTH = 60
RECORD_SNIPPET_CONTEXT = 40  # matches the API's snippet clipping


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BrokenPipeError:
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundsearch",
        description="Faceted listing search with a pattern state machine.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    validate = sub.add_parser("validate", help="check a corpus file")
    validate.add_argument("corpus", help="path to a corpus .jsonl file")
    validate.set_defaults(handler=cmd_validate)

    search = sub.add_parser("search", help="run a search offline")
    search.add_argument("corpus", help="path to a corpus .jsonl file")
    search.add_argument(
        "--facet",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="boundary facet, repeatable (one value per facet)",
    )
    search.add_argument("--pattern", default="", help="pattern text")
    search.add_argument(
        "--mode",
        choices=["literal", "regex", "keywords"],
        default="literal",
        help="how to interpret the pattern",
    )
    search.add_argument(
        "--case-sensitive", action="store_true", help="match case exactly"
    )
    search.add_argument("--fields", help="comma-separated field list")
    search.add_argument("--limit", type=int, default=20)
    search.add_argument("--offset", type=int, default=0)
    search.add_argument(
        "--format", choices=["human", "records"], default="human", dest="out_format"
    )
    search.set_defaults(handler=cmd_search)

    trace = sub.add_parser("trace", help="show the state machine scan")
    trace.add_argument("--pattern", required=True)
    trace.add_argument("--input", required=True, dest="input_text")
    trace.add_argument(
        "--mode", choices=["literal", "regex", "keywords"], default="literal"
    )
    trace.set_defaults(handler=cmd_trace)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--corpus", required=True)
    serve.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    serve.add_argument("--allow-reload", action="store_true")
    serve.add_argument("--ui", help="directory with the web client build")
    serve.set_defaults(handler=cmd_serve)

    return parser


def _load_or_exit(path_text: str) -> Corpus | int:
    path = Path(path_text)
    if not path.is_file():
        print(f"boundsearch: cannot read corpus file: {path}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return load_corpus(path)
    except CorpusLoadError as err:
        for problem in err.errors:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_DOMAIN


def cmd_validate(args) -> int:
    loaded = _load_or_exit(args.corpus)
    if isinstance(loaded, int):
        return loaded
    print(f"{len(loaded.listings)} listings, schema OK")
    for facet in FACET_NAMES:
        print(f"{facet}: {', '.join(loaded.schema.allowed(facet))}")
    return EXIT_OK


def cmd_search(args) -> int:
    loaded = _load_or_exit(args.corpus)
    if isinstance(loaded, int):
        return loaded

    boundaries = {}
    for entry in args.facet:
        name, eq, value = entry.partition("=")
        if not eq or not name:
            print(f"boundsearch: --facet expects NAME=VALUE, got {entry!r}", file=sys.stderr)
            return EXIT_USAGE
        boundaries[name] = value

    fields = SearchQuery().fields
    if args.fields:
        fields = tuple(f.strip() for f in args.fields.split(",") if f.strip())

    query = SearchQuery(
        boundaries=boundaries,
        pattern_text=args.pattern,
        mode=args.mode,
        case_sensitive=args.case_sensitive,
        fields=fields,
        limit=args.limit,
        offset=args.offset,
    )
    try:
        page = execute_search(loaded, build_index(loaded), query)
    except PatternSyntaxError as err:
        print(f"error: pattern_syntax: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except TooManyWordsError as err:
        print(f"error: too_many_words: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except (EmptyPatternError, EmptyWordListError, EmptyWordError) as err:
        print(f"error: bad_parameter: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except UnknownFacetError as err:
        print(f"error: unknown_facet: {err.facet}", file=sys.stderr)
        return EXIT_DOMAIN
    except UnknownValueError as err:
        print(f"error: unknown_value: {err.facet}={err.value}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvalidQueryError as err:
        print(f"error: bad_parameter: {err}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.out_format == "records":
        for hit in page.hits:
            print(json.dumps(hit_payload(loaded, hit, RECORD_SNIPPET_CONTEXT)))
        return EXIT_OK

    print(f"{len(page.hits)} of {page.total} hit(s)")
    for rank, hit in enumerate(page.hits, start=1 + query.offset):
        payload = hit_payload(loaded, hit, RECORD_SNIPPET_CONTEXT)
        span = payload["snippet_span"]
        snippet = payload["snippet"]
        marked = (
            snippet[: span["start"]]
            + "["
            + snippet[span["start"] : span["end"]]
            + "]"
            + snippet[span["end"] :]
        )
        if len(marked) > HUMAN_SNIPPET_WIDTH:
            marked = marked[: HUMAN_SNIPPET_WIDTH - 1] + "…"
        print(
            f"{rank:3d}. {payload['id']}  {payload['title']}"
            f"  [{payload['matched_field']}]  {marked}"
        )
    return EXIT_OK


def cmd_trace(args) -> int:
    query = SearchQuery(pattern_text=args.pattern, mode=args.mode, case_sensitive=True)
    try:
        nfa = compile_nfa(build_field_pattern(query))
    except PatternSyntaxError as err:
        print(f"error: pattern_syntax: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except (EmptyPatternError, EmptyWordListError, EmptyWordError, TooManyWordsError) as err:
        print(f"error: bad_parameter: {err}", file=sys.stderr)
        return EXIT_DOMAIN

    print(f"pattern: {args.pattern}")
    print(f"input:   {args.input_text}")
    traces = scan_trace(nfa, args.input_text)
    for trace in traces:
        print(f"start {trace.start}: states {_state_set(trace.initial_states)}")
        for step in trace.steps:
            print(f"  read {step.symbol!r} -> {_state_set(step.states)}")
        if trace.accepted:
            print(f"  verdict: accepted, span [{trace.start},{trace.matched_end})")
        else:
            print("  verdict: non-acceptance")
    if traces and traces[-1].accepted:
        print(f"match: [{traces[-1].start},{traces[-1].matched_end})")
    else:
        print("match: none")
    return EXIT_OK


def _state_set(states: tuple[int, ...]) -> str:
    return "{" + ", ".join(str(s) for s in states) + "}"


def cmd_serve(args) -> int:
    from .service import ServiceConfig, resolve_corpus_path, serve

    config = ServiceConfig(
        corpus_path=Path(args.corpus),
        bind_address=args.bind,
        allow_reload=args.allow_reload,
        ui_path=Path(args.ui) if args.ui else _default_ui_path(),
    )
    host, _, port_text = args.bind.rpartition(":")
    try:
        port = int(port_text)
    except ValueError:
        print(f"boundsearch: invalid bind address {args.bind!r}", file=sys.stderr)
        return EXIT_USAGE

    # preflight the socket so "address in use" fails fast with the address
    import socket

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host or "127.0.0.1", port))
        probe.close()
    except OSError as err:
        print(f"boundsearch: cannot bind {args.bind}: {err}", file=sys.stderr)
        return EXIT_DOMAIN

    try:
        corpus_path = resolve_corpus_path(config)
        print(f"serving corpus {corpus_path} on http://{args.bind}", flush=True)
        serve(config)
    except (OSError, CorpusLoadError) as err:
        print(f"boundsearch: startup failed: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def _default_ui_path() -> Path | None:
    candidate = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


if __name__ == "__main__":
    sys.exit(main())
