"""HTTP facade for the web studio.

Model and project CRUD with pluggable persistence, compile and validate
endpoints, and simulation runs streamed record-by-record. Every model
write is validated first: an invalid model is never persisted. Each run
session owns exactly one engine execution in its own thread; concurrent
runs share nothing, so a run's determinism is unaffected by other
in-flight runs.

The stream endpoint speaks server-sent events: a ``header`` event naming
the components, one unnamed message per population record (strictly in
tick order, no gaps), then a ``done`` event carrying the final status.
"""

from __future__ import annotations

import json
import threading
import uuid

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse, Response, StreamingResponse

from .compiler import CompileError, compile_model, program_to_document
from .engine import EngineConfig, EngineError, run_stream
from .eol import EolClient, EolError, EolNetworkError, traits_to_parameters
from .exemplars import ExemplarId, exemplar_document, list_exemplars
from .model import validate_model
from .netlogo import emit_netlogo
from .serialize import ModelParseError, model_from_document
from .store import DocumentStore, MemoryStore, safe_document_id

__all__ = ["create_app", "RunSession"]

MODELS = "models"
PROJECTS = "projects"


class RunSession:
    """One simulation run: records accumulate as the engine produces them."""

    def __init__(self, session_id: str, model_id: str, config: EngineConfig):
        self.id = session_id
        self.model_id = model_id
        self.config = config
        self.status = "pending"
        self.error: str | None = None
        self.records: list[dict] = []
        self.columns: list[dict] = []
        self._cond = threading.Condition()

    def start(self, columns: list[dict]) -> None:
        with self._cond:
            self.columns = columns
            self.status = "running"
            self._cond.notify_all()

    def append(self, record: dict) -> None:
        with self._cond:
            self.records.append(record)
            self._cond.notify_all()

    def finish(self, status: str, error: str | None = None) -> None:
        with self._cond:
            self.status = status
            self.error = error
            self._cond.notify_all()

    def snapshot(self) -> dict:
        with self._cond:
            return {
                "id": self.id,
                "model_id": self.model_id,
                "status": self.status,
                "records_so_far": len(self.records),
                **({"error": self.error} if self.error else {}),
            }

    def wait_for(self, index: int) -> dict | None:
        """Record at ``index``, blocking until it exists; None when the
        run has ended and no further record will arrive."""
        with self._cond:
            while True:
                if index < len(self.records):
                    return self.records[index]
                if self.status in ("done", "failed"):
                    return None
                self._cond.wait(timeout=0.5)


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


def create_app(store: DocumentStore | None = None, eol: EolClient | None = None) -> FastAPI:
    store = store if store is not None else MemoryStore()
    eol = eol if eol is not None else EolClient()
    app = FastAPI(title="ecoloom", version="0.1.0")
    sessions: dict[str, RunSession] = {}
    sessions_lock = threading.Lock()

    # -- helpers -------------------------------------------------------------

    def load_model_doc(model_id: str) -> dict:
        doc = store.get(MODELS, model_id)
        if doc is None:
            raise HTTPException(404, f"no model {model_id!r}")
        return doc

    def parse_and_validate(doc: dict) -> None:
        try:
            model = model_from_document(doc)
        except ModelParseError as exc:
            raise HTTPException(422, str(exc)) from exc
        report = validate_model(model)
        if not report.ok:
            raise HTTPException(
                422,
                {
                    "message": "model has validation violations",
                    "violations": [
                        {"element_id": v.element_id, "rule": v.rule, "message": v.message}
                        for v in report.violations
                    ],
                },
            )

    def store_model(doc: dict, fallback_id: str | None = None) -> str:
        doc = dict(doc)
        model_id = doc.get("id") or fallback_id or _new_id()
        if not safe_document_id(model_id):
            raise HTTPException(422, f"unusable model id {model_id!r}")
        doc["id"] = model_id
        project_id = doc.get("project_id")
        if project_id is not None and store.get(PROJECTS, project_id) is None:
            raise HTTPException(422, f"no project {project_id!r}")
        parse_and_validate(doc)
        store.put(MODELS, model_id, doc)
        return model_id

    # -- projects ------------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(body: dict = Body(...)):
        name = body.get("name")
        if not isinstance(name, str) or not name:
            raise HTTPException(422, "project requires a non-empty name")
        project_id = body.get("id") or _new_id()
        if not safe_document_id(project_id):
            raise HTTPException(422, f"unusable project id {project_id!r}")
        store.put(PROJECTS, project_id, {"id": project_id, "name": name})
        return {"id": project_id, "name": name}

    @app.get("/projects")
    def list_projects():
        return [store.get(PROJECTS, pid) for pid in store.list_ids(PROJECTS)]

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        doc = store.get(PROJECTS, project_id)
        if doc is None:
            raise HTTPException(404, f"no project {project_id!r}")
        model_ids = [
            mid for mid in store.list_ids(MODELS)
            if (store.get(MODELS, mid) or {}).get("project_id") == project_id
        ]
        return {**doc, "model_ids": model_ids}

    # -- models ---------------------------------------------------------------

    @app.get("/models")
    def list_models():
        out = []
        for model_id in store.list_ids(MODELS):
            doc = store.get(MODELS, model_id) or {}
            out.append({"id": model_id, "name": doc.get("name", ""),
                        "project_id": doc.get("project_id")})
        return out

    @app.post("/models", status_code=201)
    def create_model(body: dict = Body(...)):
        model_id = store_model(body)
        return {"id": model_id}

    @app.get("/models/{model_id}")
    def get_model(model_id: str):
        return load_model_doc(model_id)

    @app.put("/models/{model_id}")
    def put_model(model_id: str, body: dict = Body(...)):
        body = dict(body)
        body["id"] = model_id
        store_model(body)
        return {"id": model_id}

    @app.delete("/models/{model_id}", status_code=204)
    def delete_model(model_id: str):
        if not store.delete(MODELS, model_id):
            raise HTTPException(404, f"no model {model_id!r}")
        return Response(status_code=204)

    @app.post("/models/{model_id}/copy", status_code=201)
    def copy_model(model_id: str, body: dict | None = Body(None)):
        doc = dict(load_model_doc(model_id))
        doc["id"] = _new_id()
        doc["name"] = (body or {}).get("name") or f"{doc.get('name', model_id)} (copy)"
        return {"id": store_model(doc)}

    # -- exemplars ------------------------------------------------------------

    @app.get("/exemplars")
    def get_exemplars():
        return [
            {"id": info.id.value, "title": info.title, "description": info.description}
            for info in list_exemplars()
        ]

    @app.post("/models/from-exemplar/{exemplar_id}", status_code=201)
    def instantiate_exemplar(exemplar_id: str, body: dict | None = Body(None)):
        try:
            ExemplarId(exemplar_id)
        except ValueError:
            raise HTTPException(404, f"no exemplar {exemplar_id!r}") from None
        doc = dict(exemplar_document(exemplar_id))
        doc["id"] = _new_id()
        if body:
            if body.get("name"):
                doc["name"] = body["name"]
            if body.get("project_id"):
                doc["project_id"] = body["project_id"]
        return {"id": store_model(doc)}

    # -- compile ---------------------------------------------------------------

    @app.post("/models/{model_id}/compile")
    def compile_endpoint(model_id: str, emit: str = Query("netlogo")):
        doc = load_model_doc(model_id)
        try:
            program = compile_model(model_from_document(doc))
        except (ModelParseError, CompileError) as exc:
            raise HTTPException(422, str(exc)) from exc
        if emit == "netlogo":
            return PlainTextResponse(emit_netlogo(program))
        if emit == "ir":
            return program_to_document(program)
        raise HTTPException(422, f"unknown emit target {emit!r}")

    # -- runs -------------------------------------------------------------------

    def execute(session: RunSession, program, config: EngineConfig) -> None:
        try:
            session.start(
                [{"component_id": cid, "display_name": name} for cid, name in program.columns]
            )
            for record in run_stream(program, config):
                session.append({"tick": record.tick, "counts": record.counts})
            session.finish("done")
        except Exception as exc:  # failures surface through the session status
            session.finish("failed", str(exc))

    @app.post("/runs", status_code=201)
    def create_run(body: dict = Body(...)):
        model_id = body.get("model_id")
        if not isinstance(model_id, str):
            raise HTTPException(422, "run requires a model_id")
        doc = load_model_doc(model_id)
        try:
            program = compile_model(model_from_document(doc))
            config = EngineConfig.from_dict(body.get("config") or {})
        except (ModelParseError, CompileError, EngineError, TypeError) as exc:
            raise HTTPException(422, str(exc)) from exc
        session = RunSession(_new_id(), model_id, config)
        with sessions_lock:
            sessions[session.id] = session
        threading.Thread(target=execute, args=(session, program, config), daemon=True).start()
        return session.snapshot()

    def load_session(run_id: str) -> RunSession:
        with sessions_lock:
            session = sessions.get(run_id)
        if session is None:
            raise HTTPException(404, f"no run {run_id!r}")
        return session

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        return load_session(run_id).snapshot()

    @app.get("/runs/{run_id}/stream")
    def stream_run(run_id: str):
        session = load_session(run_id)

        def events():
            yield f"event: header\ndata: {json.dumps({'components': session.columns})}\n\n"
            index = 0
            while True:
                record = session.wait_for(index)
                if record is None:
                    break
                yield f"data: {json.dumps(record)}\n\n"
                index += 1
            yield f"event: done\ndata: {json.dumps(session.snapshot())}\n\n"

        return StreamingResponse(events(), media_type="text/event-stream")

    @app.get("/runs/{run_id}/csv")
    def run_csv(run_id: str):
        session = load_session(run_id)
        snapshot = session.snapshot()
        if snapshot["status"] == "failed":
            raise HTTPException(409, f"run failed: {session.error}")
        if snapshot["status"] != "done":
            raise HTTPException(409, "run still in progress; stream it or retry when done")
        from .series import PopulationRecord, TimeSeries

        series = TimeSeries(
            component_ids=[c["component_id"] for c in session.columns],
            component_names=[c["display_name"] for c in session.columns],
            records=[PopulationRecord(r["tick"], r["counts"]) for r in session.records],
        )
        return PlainTextResponse(series.to_csv(), media_type="text/csv")

    # -- species lookup proxy -----------------------------------------------------

    @app.get("/eol/search")
    def eol_search(q: str = Query(...)):
        try:
            candidates = eol.search_species(q)
        except EolNetworkError as exc:
            raise HTTPException(502, str(exc)) from exc
        except EolError as exc:
            raise HTTPException(500, str(exc)) from exc
        return {
            "candidates": [
                {"taxon_id": c.taxon_id, "scientific_name": c.scientific_name,
                 "common_name": c.common_name}
                for c in candidates
            ]
        }

    @app.get("/eol/traits")
    def eol_traits(taxon: str = Query(...)):
        try:
            traits = eol.fetch_traits(taxon)
        except EolNetworkError as exc:
            raise HTTPException(502, str(exc)) from exc
        except EolError as exc:
            raise HTTPException(500, str(exc)) from exc
        params, warnings = traits_to_parameters(traits)
        return {
            "traits": [
                {"predicate": t.predicate, "value": t.value, "units": t.units, "source": t.source}
                for t in traits
            ],
            "parameters": {k: v for k, v in vars(params).items() if v is not None},
            "warnings": warnings,
        }

    return app
