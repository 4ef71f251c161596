"""HTTP JSON API for the search interface.

All reads operate over immutable workspace artifacts; the only mutable state
is the append-only rating store (writes serialized by its lock). Query
errors map to structured bodies with machine-readable codes: OOV_TERM (with
in-vocabulary suggestions), MISSING_ALIGNMENT, BAD_PIPELINE.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .. import layout
from ..errors import CrosslexError, MissingArtifactError, OOVTermError, RatingSchemeError
from ..metrics import RatingRecord, RatingStore
from ..retrieve import HttpCompletionClient, PIPELINE_KINDS, Query, run_pipeline
from .config import ServiceConfig
from .workspace import load_manifest

QUERY_SCHEMA_VERSION = 1


class QueryRequest(BaseModel):
    home: str
    target: str
    term: str
    pipeline: str = "aligned"
    k: int = Field(default=10, ge=1)
    align_method: str = "self_learn"


class RatingRequest(BaseModel):
    home: str
    query: str
    target: str
    response_term: str
    scheme: str = "cs2"
    values: dict
    rater_id: str = "anonymous"
    context_id: str = ""
    pipeline: str = ""


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message, **extra}})


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="crosslex", version="0.1.0")
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )
    ws = Path(config.workspace)
    store = RatingStore(layout.ratings_path(ws))
    llm_client = (
        HttpCompletionClient(config.llm_endpoint, config.llm_model, config.llm_key_env)
        if config.llm_endpoint
        else None
    )
    app.state.llm_client = llm_client
    app.state.workspace = ws
    app.state.rating_store = store

    @app.get("/api/health")
    def health():
        return {"status": "ok", "workspace": str(ws), "schema_version": QUERY_SCHEMA_VERSION}

    @app.get("/api/domains")
    def domains():
        manifest = load_manifest(ws)
        out = []
        for name in sorted(manifest["domains"]):
            if name == layout.COMBINED:
                continue
            info = manifest["domains"][name]
            out.append({"id": name, "stats": info.get("stats", {})})
        return {"domains": out}

    @app.post("/api/query")
    def query(req: QueryRequest):
        if req.pipeline not in PIPELINE_KINDS:
            return _error(422, "BAD_PIPELINE", f"unknown pipeline {req.pipeline!r}", allowed=list(PIPELINE_KINDS))
        if req.home == req.target:
            return _error(422, "BAD_PIPELINE", "home and target domains must be distinct")
        q = Query(
            home_domain=req.home,
            target_domain=req.target,
            term=req.term,
            kind=req.pipeline,
            expansion_k=req.k,
            max_contexts_per_term=config.max_contexts_per_term,
            max_per_paper=config.max_per_paper,
            total_pairs_target=config.total_pairs_target,
            align_method=req.align_method,
        )
        try:
            hits = run_pipeline(q, ws, client=app.state.llm_client)
        except OOVTermError as exc:
            return _error(422, "OOV_TERM", str(exc), suggestions=exc.suggestions)
        except MissingArtifactError as exc:
            return _error(409, "MISSING_ALIGNMENT", str(exc), remedy=exc.remedy)
        except CrosslexError as exc:
            return _error(400, "BAD_PIPELINE", str(exc))
        return {
            "schema_version": QUERY_SCHEMA_VERSION,
            "query": {
                "home": req.home,
                "target": req.target,
                "term": req.term,
                "pipeline": req.pipeline,
                "k": req.k,
                "align_method": req.align_method,
            },
            "hits": [
                {
                    "term": h.term,
                    "score": h.score,
                    "rank": h.rank,
                    "contexts": [
                        {
                            "paper_id": c.paper_id,
                            "text": c.text,
                            "url": c.url,
                            "highlight": list(c.highlight) if c.highlight else None,
                        }
                        for c in h.contexts
                    ],
                }
                for h in hits
            ],
        }

    @app.get("/api/paper/{paper_id}")
    def paper(paper_id: str):
        manifest = load_manifest(ws)
        for domain in sorted(manifest["domains"]):
            papers = layout.corpus_path(ws, domain) / "papers.jsonl"
            if not papers.exists():
                continue
            for line in papers.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                obj = json.loads(line)
                if str(obj.get("id")) == paper_id:
                    return {"paper": obj}
        return _error(404, "UNKNOWN_PAPER", f"no paper {paper_id!r} in any domain")

    @app.post("/api/ratings", status_code=201)
    def ratings(req: RatingRequest):
        try:
            record = RatingRecord(
                home_domain=req.home,
                query_term=req.query,
                target_domain=req.target,
                response_term=req.response_term,
                scheme=req.scheme,
                values=req.values,
                rater_id=req.rater_id,
                context_id=req.context_id,
                pipeline=req.pipeline,
            )
        except RatingSchemeError as exc:
            return _error(422, "BAD_RATING", str(exc))
        return {"id": store.append(record)}

    @app.get("/api/ratings/export")
    def ratings_export():
        from ..metrics import export_rows

        return {"rows": [row.__dict__ for row in export_rows(store)]}

    return app
