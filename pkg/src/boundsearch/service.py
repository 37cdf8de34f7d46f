"""Read-mostly HTTP service over one corpus snapshot.

Every request is answered from exactly one immutable (corpus, index)
snapshot; reload builds a fresh snapshot and swaps it atomically, so
readers never observe a half-built index. Errors use a closed code set
so clients can switch on them.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .corpus import FACET_NAMES, Corpus, CorpusLoadError, load_corpus
from .index import BoundaryIndex, UnknownFacetError, UnknownValueError, build_index
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
    execute_search,
    hit_payload,
    query_payload,
)

CORPUS_ENV_VAR = "BOUNDSEARCH_CORPUS"

SNIPPET_CONTEXT = 40

ERROR_CODES = (
    "pattern_syntax",
    "unknown_facet",
    "unknown_value",
    "too_many_words",
    "bad_parameter",
)


@dataclass
class ServiceConfig:
    corpus_path: Path
    bind_address: str = "127.0.0.1:8000"
    allow_reload: bool = False
    default_limit: int = 20
    ui_path: Path | None = None


@dataclass(frozen=True)
class Snapshot:
    corpus: Corpus
    index: BoundaryIndex
    version: int


class BadParameter(ValueError):
    def __init__(self, message: str, parameter: str):
        super().__init__(message)
        self.parameter = parameter


def api_error(code: str, message: str, detail: dict | None = None, status: int = 400):
    assert code in ERROR_CODES
    body: dict = {"error": {"code": code, "message": message}}
    if detail:
        body["error"]["detail"] = detail
    return JSONResponse(body, status_code=status)


def resolve_corpus_path(config: ServiceConfig) -> Path:
    override = os.environ.get(CORPUS_ENV_VAR)
    return Path(override) if override else Path(config.corpus_path)


def create_app(config: ServiceConfig) -> FastAPI:
    """Load the corpus, build the boundary index, and expose the API.

    Raises on startup if the corpus is missing or invalid; a service
    never comes up over broken data.
    """
    if config.default_limit < 1:
        raise ValueError("default_limit must be >= 1")
    corpus_path = resolve_corpus_path(config)
    corpus = load_corpus(corpus_path)
    app = FastAPI(title="boundsearch", docs_url=None, redoc_url=None)
    app.state.config = config
    app.state.snapshot = Snapshot(corpus=corpus, index=build_index(corpus), version=1)
    app.state.reload_lock = threading.Lock()

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        # framework 404/405s also conform to the closed error-code set
        return api_error("bad_parameter", str(exc.detail), status=exc.status_code)

    @app.get("/api/facets")
    def facets():
        snapshot: Snapshot = app.state.snapshot
        return JSONResponse(
            {
                "facets": {
                    facet: list(snapshot.corpus.schema.allowed(facet))
                    for facet in FACET_NAMES
                }
            }
        )

    @app.get("/api/search")
    def search(request: Request):
        snapshot: Snapshot = app.state.snapshot
        try:
            query = decode_search_params(
                request.query_params, snapshot, config.default_limit
            )
            page = execute_search(snapshot.corpus, snapshot.index, query)
        except PatternSyntaxError as err:
            return api_error("pattern_syntax", str(err), {"offset": err.offset})
        except TooManyWordsError as err:
            return api_error("too_many_words", str(err))
        except (EmptyPatternError, EmptyWordListError, EmptyWordError) as err:
            return api_error("bad_parameter", str(err), {"parameter": "q"})
        except UnknownFacetError as err:
            return api_error(
                "unknown_facet", f"unknown facet {err.facet!r}", {"facet": err.facet}
            )
        except UnknownValueError as err:
            return api_error(
                "unknown_value",
                f"unknown {err.facet} value {err.value!r}",
                {"facet": err.facet, "value": err.value},
            )
        except InvalidQueryError as err:
            return api_error("bad_parameter", str(err), {"parameter": err.parameter})
        except BadParameter as err:
            return api_error("bad_parameter", str(err), {"parameter": err.parameter})
        return JSONResponse(
            {
                "total": page.total,
                "hits": [
                    hit_payload(snapshot.corpus, hit, SNIPPET_CONTEXT)
                    for hit in page.hits
                ],
                "query": query_payload(page.query_echo),
            }
        )

    @app.post("/api/reload")
    def reload():
        if not config.allow_reload:
            return api_error(
                "bad_parameter", "reload is disabled", {"parameter": "allow_reload"},
                status=405,
            )
        path = resolve_corpus_path(config)
        with app.state.reload_lock:
            try:
                corpus = load_corpus(path)
            except (OSError, CorpusLoadError) as err:
                # old snapshot keeps serving
                return api_error(
                    "bad_parameter",
                    f"corpus reload failed: {err}",
                    {"parameter": "corpus", "path": str(path)},
                )
            old: Snapshot = app.state.snapshot
            app.state.snapshot = Snapshot(
                corpus=corpus, index=build_index(corpus), version=old.version + 1
            )
        return JSONResponse({"status": "ok", "listings": len(corpus.listings)})

    if config.ui_path is not None and Path(config.ui_path).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_path, html=True), name="ui")

    return app


def decode_search_params(params, snapshot: Snapshot, default_limit: int) -> SearchQuery:
    """Translate raw query-string parameters into a SearchQuery."""
    boundaries: dict[str, str] = {}
    for key in params.keys():
        if not key.startswith("facet."):
            continue
        facet = key[len("facet.") :]
        values = params.getlist(key)
        if len(values) > 1:
            raise BadParameter(f"facet {facet!r} given more than once", key)
        if facet not in snapshot.index.facet_values:
            raise UnknownFacetError(facet)
        boundaries[facet] = values[0]

    mode = params.get("mode", "literal")
    case = params.get("case", "0")
    if case not in ("0", "1"):
        raise BadParameter("case must be 0 or 1", "case")

    fields_csv = params.get("fields")
    if fields_csv is not None:
        fields = tuple(name.strip() for name in fields_csv.split(",") if name.strip())
    else:
        fields = SearchQuery().fields

    limit = _int_param(params, "limit", default_limit, minimum=1)
    offset = _int_param(params, "offset", 0, minimum=0)

    return SearchQuery(
        boundaries=boundaries,
        pattern_text=params.get("q", ""),
        mode=mode,
        case_sensitive=case == "1",
        fields=fields,
        limit=limit,
        offset=offset,
    )


def _int_param(params, name: str, default: int, minimum: int) -> int:
    raw = params.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise BadParameter(f"{name} must be an integer", name)
    if value < minimum:
        raise BadParameter(f"{name} must be >= {minimum}", name)
    return value


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted (uvicorn, single process)."""
    import uvicorn

    host, _, port = config.bind_address.rpartition(":")
    app = create_app(config)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
