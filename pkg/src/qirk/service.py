"""HTTP service exposing the ask pipeline and entity lookups.

POST /api/ask       {"ir": "..."} or {"nl": "..."}, optional {"k": N}
GET  /api/entity/{id}
GET  /api/health

Responses carry every pipeline stage that was reached; a stage failure
returns 400 with the failing stage named (503 when the remote translator is
unreachable).  The service never mutates the store or index, so requests
may be served concurrently.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse

from .errors import RemoteUnavailable
from .pipeline import AskEngine, StageError


def _error_response(exc: StageError) -> JSONResponse:
    status = 503 if isinstance(exc.cause, RemoteUnavailable) else 400
    body = {"stage": exc.stage, "message": str(exc)}
    if exc.position:
        body["position"] = exc.position
    return JSONResponse(status_code=status, content=body)


def create_app(engine: AskEngine, static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="qirk", docs_url=None, redoc_url=None)

    @app.post("/api/ask")
    def ask(body: dict = Body(...)):
        nl = body.get("nl")
        ir = body.get("ir")
        k = body.get("k")
        if (nl is None) == (ir is None):
            return JSONResponse(status_code=400, content={
                "stage": "input",
                "message": "provide exactly one of 'nl' or 'ir'",
            })
        if k is not None and (not isinstance(k, int) or k < 1):
            return JSONResponse(status_code=400, content={
                "stage": "input", "message": "'k' must be a positive integer",
            })
        try:
            return engine.ask(ir=ir, nl=nl, k=k)
        except StageError as exc:
            return _error_response(exc)

    @app.get("/api/entity/{entity_id}")
    def entity(entity_id: str):
        record = engine.entity(entity_id)
        if record is None:
            return JSONResponse(status_code=404, content={
                "message": f"unknown entity {entity_id!r}"})
        return record

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "entities": len(engine.store.entities),
            "properties": len(engine.store.properties),
            "statements": engine.store.statement_count(),
            "vectors": engine.index.count,
        }

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")

    return app
