"""HTTP JSON API over the session engine.

Clients speak item/dish names, never internal ids. Every mutation response
embeds the post-mutation state snapshot so a UI needs no second round trip.
Sessions live in memory only and are evicted after an idle timeout; session
ids are a plain counter, so replaying an identical request sequence against
a fresh server yields byte-identical bodies.

Errors always use the envelope {"error": {"code", "message", "details"}}.
"""
from __future__ import annotations

import itertools
import threading
import time

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .corpus import Corpus
from .replay import recommendations_to_dicts
from .session import Session, SessionConfig
from .stats import CorpusStats

__all__ = ["create_app", "ApiError"]

DEFAULT_IDLE_TIMEOUT = 30 * 60.0
SUGGESTION_LIMIT = 5


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: dict | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={
                "error": {
                    "code": self.code,
                    "message": self.message,
                    "details": self.details,
                }
            },
        )


class _SessionEntry:
    __slots__ = ("session", "lock", "created_at", "last_access")

    def __init__(self, session: Session):
        self.session = session
        self.lock = threading.Lock()
        self.created_at = time.monotonic()
        self.last_access = self.created_at


class _Registry:
    """In-memory session store with lazy idle eviction."""

    def __init__(self, idle_timeout: float):
        self.idle_timeout = idle_timeout
        self._lock = threading.Lock()
        self._sessions: dict[str, _SessionEntry] = {}
        self._ids = itertools.count(1)

    def create(self, session: Session) -> str:
        with self._lock:
            self._evict_locked()
            session_id = f"s-{next(self._ids):06d}"
            self._sessions[session_id] = _SessionEntry(session)
            return session_id

    def get(self, session_id: str) -> _SessionEntry:
        with self._lock:
            self._evict_locked()
            entry = self._sessions.get(session_id)
            if entry is None:
                raise ApiError(
                    404,
                    "session_not_found",
                    f"no session {session_id!r}",
                    {"session_id": session_id},
                )
            entry.last_access = time.monotonic()
            return entry

    def _evict_locked(self) -> None:
        now = time.monotonic()
        stale = [
            sid
            for sid, entry in self._sessions.items()
            if now - entry.last_access > self.idle_timeout
        ]
        for sid in stale:
            del self._sessions[sid]


def create_app(
    corpus: Corpus,
    defaults: SessionConfig | None = None,
    idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
) -> FastAPI:
    """Build the API app around one immutable corpus."""
    defaults = defaults or SessionConfig()
    app = FastAPI(title="basketchef", docs_url=None, redoc_url=None)
    # demonstration server: the static UI runs on another origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = _Registry(idle_timeout)

    stats_cache: dict[tuple[int, int], CorpusStats] = {}
    stats_lock = threading.Lock()

    def stats_for(config: SessionConfig) -> CorpusStats:
        key = (config.k, config.h)
        with stats_lock:
            if key not in stats_cache:
                stats_cache[key] = CorpusStats.compute(corpus, k=key[0], h=key[1])
            return stats_cache[key]

    stats_for(defaults)  # precompute at startup

    def resolve_item(name) -> int:
        if not isinstance(name, str):
            raise ApiError(400, "invalid_request", "item must be a string")
        from .corpus import normalize_item_name

        try:
            normalized = normalize_item_name(name)
        except ValueError as exc:
            raise ApiError(400, "unknown_item", str(exc), {"item": name})
        if not corpus.has_item(normalized):
            prefix_matches = [
                it.name
                for it in corpus.vocabulary
                if it.name.startswith(normalized)
            ][:SUGGESTION_LIMIT]
            raise ApiError(
                400,
                "unknown_item",
                f"unknown item {normalized!r}",
                {"item": normalized, "suggestions": prefix_matches},
            )
        return corpus.item_id(normalized)

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return exc.response()

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return ApiError(
            400, "invalid_request", "malformed request body", {}
        ).response()

    @app.get("/corpus")
    def corpus_summary():
        stats = stats_for(defaults)
        return {
            "categories": [
                {
                    "name": cat.name,
                    "subcategories": [
                        {"name": sub.name, "dish_count": len(sub.dishes)}
                        for sub in cat.subcategories
                    ],
                    "identifiers": [
                        corpus.item_name(i)
                        for i in stats.identifier_sets[ci].identifiers
                    ],
                }
                for ci, cat in enumerate(corpus.categories)
            ],
            "vocabulary_size": corpus.vocabulary_size,
            "vocabulary": [it.name for it in corpus.vocabulary],
        }

    @app.post("/sessions", status_code=201)
    def create_session(overrides: dict | None = None):
        overrides = overrides or {}
        try:
            config = defaults.with_overrides(**overrides)
        except (ValueError, TypeError) as exc:
            raise ApiError(400, "invalid_config", str(exc), {"overrides": overrides})
        session = Session(stats_for(config), config)
        session_id = registry.create(session)
        return {"session_id": session_id, "state": session.snapshot()}

    @app.get("/sessions/{session_id}")
    def session_state(session_id: str):
        entry = registry.get(session_id)
        with entry.lock:
            return {"session_id": session_id, "state": entry.session.snapshot()}

    @app.post("/sessions/{session_id}/items")
    def add_item(session_id: str, payload: dict):
        if "item" not in payload:
            raise ApiError(400, "invalid_request", "payload needs an 'item' field")
        entry = registry.get(session_id)
        item = resolve_item(payload["item"])
        with entry.lock:
            report = entry.session.add_item(item)
            return {
                "session_id": session_id,
                "report": report.to_dict(),
                "state": entry.session.snapshot(),
            }

    @app.delete("/sessions/{session_id}/items/{name}")
    def remove_item(session_id: str, name: str):
        entry = registry.get(session_id)
        item = resolve_item(name)
        with entry.lock:
            try:
                report = entry.session.remove_item(item)
            except ValueError as exc:
                raise ApiError(
                    400, "item_not_in_basket", str(exc), {"item": name}
                )
            return {
                "session_id": session_id,
                "report": report.to_dict(),
                "state": entry.session.snapshot(),
            }

    @app.get("/sessions/{session_id}/recommendations")
    def recommendations(session_id: str):
        entry = registry.get(session_id)
        with entry.lock:
            recs = entry.session.recommend()
            return {
                "session_id": session_id,
                "recommendations": recommendations_to_dicts(corpus, recs),
            }

    @app.post("/sessions/{session_id}/select")
    def select_dish(session_id: str, payload: dict):
        missing = [f for f in ("dish", "recipe_id", "accepted_items") if f not in payload]
        if missing:
            raise ApiError(
                400,
                "invalid_request",
                f"payload needs field(s): {', '.join(missing)}",
            )
        if not isinstance(payload["accepted_items"], list):
            raise ApiError(400, "invalid_request", "accepted_items must be a list")
        entry = registry.get(session_id)
        items = [resolve_item(raw) for raw in payload["accepted_items"]]
        with entry.lock:
            try:
                report = entry.session.select_dish(
                    payload["dish"], payload["recipe_id"], items
                )
            except KeyError as exc:
                raise ApiError(
                    404, "recipe_not_found", exc.args[0], {"recipe_id": payload["recipe_id"]}
                )
            except ValueError as exc:
                raise ApiError(400, "invalid_selection", str(exc))
            return {
                "session_id": session_id,
                "report": report.to_dict(),
                "state": entry.session.snapshot(),
            }

    return app
