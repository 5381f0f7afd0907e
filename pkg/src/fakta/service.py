"""HTTP service exposing the fact-check pipeline.

All loaded artifacts (index, registry, stance model, lexicons) are
immutable, so request handling is freely concurrent. Responses carry no
timestamps or random ids: checking the same claim against the same
artifacts reproduces the same bytes (timing fields aside). Checked claims
are kept in a bounded in-process cache so the document view can show
per-sentence evidence without re-running the pipeline; the cache never
influences /api/check results.

Document ids contain slashes (and, for external hits, whole URLs), so
clients URL-encode the id in /api/document/{doc_id}.
"""

from __future__ import annotations

import hashlib
from collections import OrderedDict
from typing import Any

from fastapi import FastAPI, Query as QueryParam
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import FaktaError
from .pipeline import (
    ChannelResult,
    DocumentAnalysis,
    FactChecker,
    FactCheckResult,
    document_to_dict,
    rationale_to_dict,
    result_to_dict,
)
from .stance import STANCE_LABELS

CACHE_SIZE = 128


class CheckOverrides(BaseModel):
    k: int | None = None
    model: str | None = None
    label_mode: str | None = None
    nei_threshold: float | None = None
    channels: list[str] | None = None


class CheckRequest(BaseModel):
    claim: str
    request_id: str | None = None
    config: CheckOverrides = Field(default_factory=CheckOverrides)


def claim_fingerprint(claim: str) -> str:
    return hashlib.sha1(claim.strip().encode("utf-8")).hexdigest()[:16]


class _ResultCache:
    def __init__(self, limit: int = CACHE_SIZE):
        self._data: OrderedDict[str, tuple[str, FactCheckResult]] = OrderedDict()
        self._limit = limit

    def put(self, claim_id: str, claim: str, result: FactCheckResult) -> None:
        self._data[claim_id] = (claim, result)
        self._data.move_to_end(claim_id)
        while len(self._data) > self._limit:
            self._data.popitem(last=False)

    def get(self, claim_id: str) -> tuple[str, FactCheckResult] | None:
        return self._data.get(claim_id)


def _find_document(
    result: FactCheckResult, doc_id: str
) -> tuple[ChannelResult, DocumentAnalysis] | None:
    for channel in result.channels:
        for analysis in channel.documents:
            if analysis.hit.doc_id == doc_id:
                return channel, analysis
    return None


def create_app(
    checker: FactChecker | None,
    cors_origins: list[str] | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="fakta", docs_url="/api/docs", openapi_url="/api/openapi.json")
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )
    cache = _ResultCache()

    @app.get("/api/health")
    def health() -> dict[str, Any]:
        return {
            "status": "ok" if checker is not None else "not-ready",
            "artifacts_loaded": checker is not None,
            "index_size": len(checker.index) if checker is not None else 0,
        }

    @app.post("/api/check")
    def check(request: CheckRequest):
        if checker is None:
            return JSONResponse(
                {"error": "service booted without index/model artifacts"},
                status_code=503,
            )
        claim = request.claim.strip()
        if not claim:
            return JSONResponse({"error": "claim must be non-empty"}, status_code=400)
        overrides = request.config.model_dump(exclude_none=True)
        try:
            result = checker.check(claim, **overrides)
        except (FaktaError, ValueError) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        claim_id = claim_fingerprint(claim)
        cache.put(claim_id, claim, result)
        payload = {
            "request_id": request.request_id or claim_id,
            "claim_id": claim_id,
            **result_to_dict(result),
        }
        media_channels = [ch for ch in result.channels if ch.channel != "wikipedia"]
        wikipedia = result.channel("wikipedia")
        degraded = (
            media_channels
            and all(ch.error is not None for ch in media_channels)
            and wikipedia is not None
            and wikipedia.error is None
        )
        return JSONResponse(payload, status_code=502 if degraded else 200)

    @app.get("/api/document/{doc_id:path}")
    def document(
        doc_id: str,
        claim_id: str | None = QueryParam(default=None),
        claim: str | None = QueryParam(default=None),
        sort: str | None = QueryParam(default=None),
    ):
        if checker is None:
            return JSONResponse(
                {"error": "service booted without index/model artifacts"},
                status_code=503,
            )
        if sort is not None and sort not in STANCE_LABELS:
            return JSONResponse(
                {"error": f"sort must be one of {', '.join(STANCE_LABELS)}"},
                status_code=400,
            )
        entry = None
        if claim_id is not None:
            entry = cache.get(claim_id)
        if entry is None and claim is not None and claim.strip():
            fresh_id = claim_fingerprint(claim.strip())
            entry = cache.get(fresh_id)
            if entry is None:
                result = checker.check(claim.strip())
                cache.put(fresh_id, claim.strip(), result)
                entry = (claim.strip(), result)
            claim_id = fresh_id
        if entry is None:
            return JSONResponse(
                {"error": "unknown claim_id; run /api/check first"}, status_code=404
            )
        stored_claim, result = entry
        found = _find_document(result, doc_id)
        if found is None:
            return JSONResponse(
                {"error": f"doc_id {doc_id!r} not in the results for this claim"},
                status_code=404,
            )
        channel, analysis = found
        payload = {
            "claim": stored_claim,
            "claim_id": claim_id,
            "channel": channel.channel,
            **document_to_dict(analysis),
        }
        if sort is not None:
            from .stance import sort_rationales

            payload["rationales"] = [
                rationale_to_dict(r)
                for r in sort_rationales(analysis.rationales, sort)
            ]
            payload["sorted_by"] = sort
        return JSONResponse(payload)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
