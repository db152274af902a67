"""JSON-over-HTTP session service.

Endpoints::

    POST   /models                          upload a model or raw spec document
    GET    /models/{id}/graph               analysis JSON document
    POST   /sessions {"model_id": ...}      new session
    GET    /sessions/{id}/view              current view document
    POST   /sessions/{id}/decisions         {"decision": ..., "value": ...}
    POST   /sessions/{id}/whatif            preview without committing
    DELETE /sessions/{id}/decisions/{name}  retract
    GET    /health

Errors are ``{"code", "message", "detail"}``; one mutation per session is in
flight at a time.  When a built UI bundle exists it is served at ``/``.
"""

from __future__ import annotations

import hashlib
import json
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import analysis as an
from .dopler import ModelError, model_from_json
from .dopler.anomalies import detect_anomalies
from .session import (
    ConfigSpace,
    Session,
    SessionError,
    session_snapshot,
    trace_to_json,
)
from .textfmt import SpecFormatError, spec_from_json

API_VERSION = "1"

UI_DIST = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"


class _Store:
    def __init__(self):
        self.models: dict[str, dict] = {}
        self.sessions: dict[str, Session] = {}
        self.locks: dict[str, threading.Lock] = {}
        self.store_lock = threading.Lock()

    def add_model(self, doc: dict) -> dict:
        digest = hashlib.sha256(
            json.dumps(doc, sort_keys=True).encode()
        ).hexdigest()[:16]
        with self.store_lock:
            if digest in self.models:
                return self.models[digest]["summary_doc"]
        if "decisions" in doc:
            model = model_from_json(doc)
            space = ConfigSpace.for_model(model)
            analysis = detect_anomalies(model)
            summary = analysis.summary()
            graph_doc = an.graph_to_json(analysis.graph, analysis.result, analysis.report)
        else:
            spec = spec_from_json(doc)
            space = ConfigSpace(spec)
            from .saturation import explore

            result = explore(spec)
            graph, report = an.analyze(result)
            summary = an.report_summary(graph, report)
            graph_doc = an.graph_to_json(graph, result, report)
        entry = {
            "space": space,
            "summary": summary,
            "graph_doc": graph_doc,
            "summary_doc": {
                "model_id": digest,
                "analysis": summary,
                "api_version": API_VERSION,
            },
        }
        with self.store_lock:
            self.models[digest] = entry
        return entry["summary_doc"]

    def model(self, model_id: str) -> dict:
        entry = self.models.get(model_id)
        if entry is None:
            raise SessionError("unknown_model", f"no model {model_id!r}")
        return entry

    def new_session(self, model_id: str) -> Session:
        entry = self.model(model_id)
        session = Session(entry["space"])
        session.model_id = model_id
        with self.store_lock:
            self.sessions[session.id] = session
            self.locks[session.id] = threading.Lock()
        return session

    def session(self, session_id: str) -> tuple[Session, threading.Lock]:
        session = self.sessions.get(session_id)
        if session is None:
            raise SessionError("unknown_session", f"no session {session_id!r}")
        return session, self.locks[session_id]


def _error(status: int, code: str, message: str, detail: Optional[dict] = None):
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail or {}},
    )


_STATUS = {
    "unknown_model": 404,
    "unknown_session": 404,
    "unknown_decision": 404,
    "unknown_value": 400,
    "not_taken": 404,
    "already_taken": 409,
    "not_visible": 409,
    "not_applicable": 409,
    "non_terminating": 409,
    "session_inconsistent": 409,
    "session_non_terminating": 409,
}


def create_app(
    preload: Optional[list[str]] = None, state_dir: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="configuration sessions", version=API_VERSION)
    store = _Store()
    app.state.store = store
    snapshots = Path(state_dir) if state_dir else None
    if snapshots:
        snapshots.mkdir(parents=True, exist_ok=True)

    def persist(session: Session) -> None:
        if snapshots:
            target = snapshots / f"{session.id}.json"
            target.write_text(json.dumps(session_snapshot(session), indent=2) + "\n")

    for path in preload or []:
        store.add_model(json.loads(Path(path).read_text()))

    @app.exception_handler(SessionError)
    async def session_error(_req: Request, exc: SessionError):
        return _error(_STATUS.get(exc.code, 400), exc.code, str(exc), exc.detail)

    @app.get("/health")
    def health():
        return {"status": "ok", "api_version": API_VERSION}

    @app.post("/models")
    async def upload_model(request: Request):
        try:
            doc = await request.json()
        except json.JSONDecodeError as e:
            return _error(400, "bad_json", f"line {e.lineno}: {e.msg}")
        try:
            return store.add_model(doc)
        except (ModelError, SpecFormatError) as e:
            return _error(400, "bad_model", str(e))

    @app.get("/models/{model_id}/graph")
    def model_graph(model_id: str):
        return store.model(model_id)["graph_doc"]

    @app.post("/sessions")
    async def new_session(request: Request):
        doc = await request.json()
        model_id = doc.get("model_id")
        if not isinstance(model_id, str):
            return _error(400, "bad_request", "missing model_id")
        session = store.new_session(model_id)
        return {
            "session_id": session.id,
            "model_id": model_id,
            "view": session.view(overlay=store.model(model_id)["summary"]),
        }

    @app.get("/sessions/{session_id}/view")
    def get_view(session_id: str):
        session, _lock = store.session(session_id)
        return session.view(overlay=store.model(session.model_id)["summary"])

    @app.post("/sessions/{session_id}/decisions")
    async def take_decision(session_id: str, request: Request):
        doc = await request.json()
        session, lock = store.session(session_id)
        with lock:
            trace = session.take_decision(doc.get("decision"), doc.get("value"))
            view = session.view(overlay=store.model(session.model_id)["summary"])
            persist(session)
        return {"trace": trace_to_json(trace), "view": view}

    @app.post("/sessions/{session_id}/whatif")
    async def whatif(session_id: str, request: Request):
        doc = await request.json()
        session, lock = store.session(session_id)
        with lock:
            trace = session.whatif(doc.get("decision"), doc.get("value"))
        return {"trace": trace_to_json(trace)}

    @app.delete("/sessions/{session_id}/decisions/{decision}")
    def retract(session_id: str, decision: str):
        session, lock = store.session(session_id)
        with lock:
            session.retract_decision(decision)
            view = session.view(overlay=store.model(session.model_id)["summary"])
            persist(session)
        return {"view": view}

    if UI_DIST.is_dir():
        app.mount("/", StaticFiles(directory=str(UI_DIST), html=True), name="ui")

    return app
