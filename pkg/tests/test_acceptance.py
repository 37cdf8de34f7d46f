"""Acceptance gate: every primary criterion, each printing one PASS/FAIL line.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they pass.
"""

import contextlib
import io
import itertools
import json
import random
import threading
import time
from pathlib import Path

from fastapi.testclient import TestClient

from boundsearch.cli import main as cli_main
from boundsearch.corpus import SEARCHABLE_FIELDS, load_corpus
from boundsearch.index import apply_boundaries, build_index
from boundsearch.nfa import MatchSpan, compile_nfa, find_first, match_full
from boundsearch.patterns import (
    AnySymbol,
    Concat,
    Epsilon,
    Literal,
    Star,
    Union,
    oracle_match,
    parse_pattern,
    words_to_pattern,
)
from boundsearch.search import SearchQuery, execute_search
from boundsearch.service import ServiceConfig, create_app

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "awka.jsonl"

HOSTEL_BOUNDARY = {
    "property_type": "Student Hostel",
    "transaction_type": "Rent",
    "location_state": "Anambra",
}


@contextlib.contextmanager
def criterion(name, budget_seconds=None):
    started = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - started
        if budget_seconds is not None and elapsed >= budget_seconds:
            raise AssertionError(
                f"{name}: took {elapsed:.2f}s, budget {budget_seconds}s"
            )
    except BaseException:
        print(f"FAIL: {name}")
        raise
    print(f"PASS: {name} ({elapsed:.2f}s)")


def test_restart_scan_walkthrough():
    with criterion("scan walkthrough (XYZ over ZXYXYZ)", budget_seconds=1.0):
        nfa = compile_nfa(parse_pattern("XYZ"))
        assert match_full(nfa, "ZXYXYZ") is False
        assert find_first(nfa, "ZXYXYZ") == MatchSpan(3, 6)

        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = cli_main(["trace", "--pattern", "XYZ", "--input", "ZXYXYZ"])
        assert code == 0
        out = buffer.getvalue()
        for start in (0, 1, 2, 3):
            assert f"start {start}:" in out
        assert out.count("verdict: non-acceptance") == 3
        assert "verdict: accepted, span [3,6)" in out


def test_word_pair_translation_against_containment():
    with criterion("word-pair translation vs containment (1000 strings)", 5.0):
        rng = random.Random(20260810)
        alphabet = "regux"  # neither word can arise from these symbols alone
        words = ("regular", "expression")
        nfa = compile_nfa(words_to_pattern(list(words)))

        single_word_cases = 0
        for _ in range(1000):
            planted = rng.choice([(), (words[0],), (words[1],), words, words[::-1]])
            budget = 40 - sum(len(w) for w in planted)
            chunks = [rng.choice(alphabet) for _ in range(rng.randint(0, budget))]
            for word in planted:
                chunks.insert(rng.randint(0, len(chunks)), word)
            text = "".join(chunks)
            assert len(text) <= 40

            expected = all(w in text for w in words)
            assert match_full(nfa, text) == expected, text
            if sum(w in text for w in words) == 1:
                single_word_cases += 1
                assert not match_full(nfa, text)
        assert single_word_cases >= 100  # rejection side genuinely exercised


def all_strings(alphabet, max_len):
    for n in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield "".join(combo)


def random_pattern(rng, depth):
    if depth <= 1:
        return rng.choice(
            [Epsilon(), AnySymbol(), Literal("a"), Literal("b"), Literal("a")]
        )
    kind = rng.random()
    if kind < 0.2:
        return random_pattern(rng, 1)
    if kind < 0.45:
        return Star(random_pattern(rng, depth - 1))
    left = random_pattern(rng, depth - 1)
    right = random_pattern(rng, rng.randint(1, depth - 1))
    return Concat(left, right) if kind < 0.75 else Union(left, right)


def test_engine_agrees_with_oracle():
    with criterion("engine vs oracle (exhaustive depth<=3 + 10k random)", 60.0):
        leaves = [Epsilon(), Literal("a"), Literal("b"), AnySymbol()]
        depth2 = list(leaves)
        depth2 += [Star(x) for x in leaves]
        depth2 += [Concat(x, y) for x in leaves for y in leaves]
        depth2 += [Union(x, y) for x in leaves for y in leaves]
        depth3 = list(leaves)
        depth3 += [Star(x) for x in depth2]
        depth3 += [Concat(x, y) for x in depth2 for y in depth2]
        depth3 += [Union(x, y) for x in depth2 for y in depth2]

        strings = list(all_strings("ab", 5))
        assert len(depth3) == 4 + 40 + 2 * 40 * 40
        for ast in depth3:
            nfa = compile_nfa(ast)
            for s in strings:
                assert match_full(nfa, s) == oracle_match(ast, s), (ast, s)

        rng = random.Random(1729)
        for _ in range(10_000):
            ast = random_pattern(rng, rng.randint(1, 5))
            s = "".join(rng.choice("ab") for _ in range(rng.randint(0, 8)))
            assert match_full(compile_nfa(ast), s) == oracle_match(ast, s), (ast, s)


def test_fixture_scenario_desk_scale():
    with criterion("boundary + 'ifi' literal on the fixture", 1.0):
        corpus = load_corpus(FIXTURE)
        index = build_index(corpus)
        page = execute_search(
            corpus,
            index,
            SearchQuery(boundaries=HOSTEL_BOUNDARY, pattern_text="ifi"),
        )

        brute = [
            l.id
            for l in corpus.listings
            if all(getattr(l, f) == v for f, v in HOSTEL_BOUNDARY.items())
            and any("ifi" in getattr(l, f).lower() for f in SEARCHABLE_FIELDS)
        ]
        assert sorted(h.listing_id for h in page.hits) == sorted(brute)
        assert sorted(brute) == [
            "L-001",
            "L-003",
            "L-006",
            "L-009",
            "L-014",
            "L-018",
        ]
        for hit in page.hits:
            listing = corpus.by_id[hit.listing_id]
            region = getattr(listing, hit.matched_field)[
                hit.span.start : hit.span.end
            ]
            assert region == "Ifi"


def random_listing_corpus(rng, size):
    words = [
        "ifite", "awka", "road", "close", "hostel", "flat", "gate",
        "water", "room", "lodge", "estate", "junction",
    ]
    schema = {
        "property_type": ["Hostel", "Flat", "Duplex", "Shop"],
        "transaction_type": ["Rent", "Sale"],
        "location_state": ["Anambra", "Benue", "Enugu"],
    }

    def text():
        return " ".join(rng.choice(words) for _ in range(rng.randint(0, 2)))

    lines = [json.dumps({"schema": schema})]
    for n in range(size):
        lines.append(
            json.dumps(
                {
                    "id": f"R-{n:04d}",
                    "title": text() or "untitled",
                    "description": text(),
                    "location_state": rng.choice(schema["location_state"]),
                    "location_locality": text(),
                    "location_street": text(),
                    "property_type": rng.choice(schema["property_type"]),
                    "transaction_type": rng.choice(schema["transaction_type"]),
                    "price": None,
                }
            )
        )
    return load_corpus(io.StringIO("\n".join(lines) + "\n"))


def random_boundaries(rng, corpus):
    count = rng.choices([0, 1, 2, 3], weights=[10, 30, 35, 25])[0]
    facets = rng.sample(sorted(corpus.schema.values), k=count)
    return {f: rng.choice(corpus.schema.allowed(f)) for f in facets}


def random_pattern_query(rng):
    roll = rng.random()
    if roll < 0.7:
        return rng.choice(["a", "ro", "ifi", "awk", "gate", "q", "lo"]), "literal"
    if roll < 0.9:
        return rng.choice(["ro.d", "a|e", "aw*ka", "(i|a)f", "ro*"]), "regex"
    return rng.choice(["awka", "road gate", "hostel"]), "keywords"


def test_refinement_and_index_equivalence_on_random_corpora():
    rng = random.Random(987601)
    corpora = [random_listing_corpus(rng, rng.randint(20, 200)) for _ in range(100)]

    with criterion("index equals brute-force boundary filter (100 corpora)"):
        for corpus in corpora:
            index = build_index(corpus)
            for _ in range(20):
                boundaries = random_boundaries(rng, corpus)
                brute = [
                    l.id
                    for l in corpus.listings
                    if all(getattr(l, f) == v for f, v in boundaries.items())
                ]
                assert apply_boundaries(index, boundaries) == brute

    with criterion("refinement: hits within boundaries, never more (10k queries)", 60.0):
        for corpus in corpora:
            index = build_index(corpus)
            for _ in range(100):
                boundaries = random_boundaries(rng, corpus)
                pattern, mode = random_pattern_query(rng)
                page = execute_search(
                    corpus,
                    index,
                    SearchQuery(
                        boundaries=boundaries,
                        pattern_text=pattern,
                        mode=mode,
                        limit=500,
                    ),
                )
                boundary_only = execute_search(
                    corpus,
                    index,
                    SearchQuery(boundaries=boundaries, pattern_text="", limit=500),
                )
                boundary_ids = set(apply_boundaries(index, boundaries))
                assert {h.listing_id for h in page.hits} <= boundary_ids
                assert page.total <= boundary_only.total
                assert boundary_only.total == len(boundary_ids)


def test_cli_records_match_api_hits():
    with criterion("command output equals API hits (scenario + 20 random)"):
        client = TestClient(create_app(ServiceConfig(corpus_path=FIXTURE)))
        rng = random.Random(424242)

        cases = [
            {
                "boundaries": HOSTEL_BOUNDARY,
                "pattern": "ifi",
                "mode": "literal",
                "case": False,
                "limit": 20,
                "offset": 0,
            }
        ]
        schema = {
            "property_type": ["Student Hostel", "Flat", "Duplex"],
            "transaction_type": ["Rent", "Sale"],
            "location_state": ["Anambra", "Benue"],
        }
        for _ in range(20):
            boundaries = {
                facet: rng.choice(values)
                for facet, values in schema.items()
                if rng.random() < 0.4
            }
            mode = rng.choices(
                ["literal", "regex", "keywords"], weights=[6, 2, 2]
            )[0]
            pattern = {
                "literal": rng.choice(["ifi", "ROOM", "awka", "e", "close", ""]),
                "regex": rng.choice(["if.te", "ro*ad", "flat|duplex", "(a|e)state"]),
                "keywords": rng.choice(["ifite awka", "hostel room", "water"]),
            }[mode]
            if mode == "keywords" and not pattern:
                pattern = "awka"
            cases.append(
                {
                    "boundaries": boundaries,
                    "pattern": pattern,
                    "mode": mode,
                    "case": rng.random() < 0.3,
                    "limit": rng.choice([5, 20]),
                    "offset": rng.choice([0, 2]),
                }
            )

        for case in cases:
            argv = ["search", str(FIXTURE), "--pattern", case["pattern"],
                    "--mode", case["mode"], "--limit", str(case["limit"]),
                    "--offset", str(case["offset"]), "--format", "records"]
            params = {
                "q": case["pattern"],
                "mode": case["mode"],
                "limit": str(case["limit"]),
                "offset": str(case["offset"]),
                "case": "1" if case["case"] else "0",
            }
            if case["case"]:
                argv.append("--case-sensitive")
            for facet, value in case["boundaries"].items():
                argv += ["--facet", f"{facet}={value}"]
                params[f"facet.{facet}"] = value

            buffer = io.StringIO()
            with contextlib.redirect_stdout(buffer):
                assert cli_main(argv) == 0
            records = [
                json.loads(line) for line in buffer.getvalue().splitlines() if line
            ]
            response = client.get("/api/search", params=params)
            assert response.status_code == 200
            assert records == response.json()["hits"], case


def versioned_corpus_text(version):
    schema = {
        "property_type": ["Flat"],
        "transaction_type": ["Rent"],
        "location_state": ["Anambra"],
    }
    lines = [json.dumps({"schema": schema})]
    for n in range(10 + version):
        lines.append(
            json.dumps(
                {
                    "id": f"V-{n:03d}",
                    "title": f"listing {n}",
                    "description": "",
                    "location_state": "Anambra",
                    "location_locality": "Awka",
                    "location_street": f"rev{version} street {n}",
                    "property_type": "Flat",
                    "transaction_type": "Rent",
                    "price": None,
                }
            )
        )
    return "\n".join(lines) + "\n"


def test_snapshot_consistency_under_reload(tmp_path):
    with criterion("1000 searches stay snapshot-consistent across 10 reloads"):
        path = tmp_path / "corpus.jsonl"
        path.write_text(versioned_corpus_text(0), encoding="utf-8")
        client = TestClient(
            create_app(ServiceConfig(corpus_path=path, allow_reload=True))
        )

        violations = []
        searches_done = threading.Semaphore(0)

        def searcher(count):
            for _ in range(count):
                body = client.get("/api/search", params={"limit": "50"}).json()
                tags = {h["snippet"].split()[0] for h in body["hits"]}
                if len(tags) != 1:
                    violations.append(("mixed tags", tags))
                    continue
                version = int(tags.pop().removeprefix("rev"))
                if body["total"] != 10 + version:
                    violations.append(("total mismatch", version, body["total"]))
                searches_done.release()

        workers = [threading.Thread(target=searcher, args=(125,)) for _ in range(8)]
        for w in workers:
            w.start()
        for version in range(1, 11):
            path.write_text(versioned_corpus_text(version), encoding="utf-8")
            assert client.post("/api/reload").status_code == 200
            time.sleep(0.02)
        for w in workers:
            w.join()

        assert not violations
        assert searches_done._value == 1000
