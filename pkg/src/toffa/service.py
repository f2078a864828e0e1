"""Embedded HTTP service: session-scoped models, the analysis pipeline as
endpoints, and static hosting for the companion UI."""

from __future__ import annotations

import hashlib
import itertools
import json
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .ccf import check_cks, detect_interleaving_faults, model_ccfs, resolve_ccf
from .contribution import utility_table
from .dsl import model_to_dict, parse_model
from .ilp import Infeasible, NodeLimitExceeded, optimal_configuration
from .model import Model, ModelError, validate_model
from .scenario import Scenario, ScenarioError, resolve_weights, scenario_from_dict
from .tradeoff import build_adaptation_model, run_scenario


@dataclass
class Session:
    id: str
    source: str
    model: Model
    created: float
    updated: float
    last_scenario: Scenario | None = None
    version_counter: "itertools.count[int]" = field(default_factory=lambda: itertools.count(1))
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, source: str, model: Model) -> Session:
        now = time.time()
        session = Session(uuid.uuid4().hex, source, model, now, now)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return session


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()


def _scenario_payload(data: dict) -> tuple[Scenario, str]:
    scenario = data.get("scenario")
    if not isinstance(scenario, dict):
        raise HTTPException(status_code=422, detail="body must carry a 'scenario' object")
    try:
        parsed = scenario_from_dict(scenario)
    except ScenarioError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return parsed, json.dumps(scenario, sort_keys=True)


async def _json_body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception:
        raise HTTPException(status_code=400, detail="request body must be structured data")
    if not isinstance(data, dict):
        raise HTTPException(status_code=400, detail="request body must be an object")
    return data


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="trade-off analysis service")
    store = SessionStore()

    @app.exception_handler(HTTPException)
    async def _http_error(request: Request, exc: HTTPException) -> JSONResponse:
        return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/api/session", status_code=201)
    async def create_session(request: Request) -> dict:
        raw = await request.body()
        source: str | None = None
        content_type = request.headers.get("content-type", "")
        if "json" in content_type:
            try:
                data = json.loads(raw)
            except ValueError:
                raise HTTPException(status_code=400, detail="malformed body")
            if not isinstance(data, dict) or not isinstance(data.get("source"), str):
                raise HTTPException(status_code=422, detail="body must carry a 'source' string")
            source = data["source"]
        else:
            source = raw.decode("utf-8", errors="replace")
        try:
            model = parse_model(source)
        except ModelError as e:
            raise HTTPException(status_code=422, detail=e.format())
        session = store.create(source, model)
        return {
            "session": session.id,
            "model": model.name,
            "digest": _digest(session.source),
            "diagnostics": [d.to_dict() for d in validate_model(model)],
        }

    @app.get("/api/session/{sid}/model")
    async def get_model(sid: str) -> dict:
        session = store.get(sid)
        return {
            "session": sid,
            "digest": _digest(session.source),
            "model": model_to_dict(session.model),
        }

    @app.get("/api/session/{sid}/ccfs")
    async def get_ccfs(sid: str) -> dict:
        session = store.get(sid)
        return {
            "session": sid,
            "digest": _digest(session.source),
            "ccfs": [{"id": c.id, "members": list(c.members)} for c in model_ccfs(session.model)],
        }

    @app.post("/api/session/{sid}/check")
    async def check(sid: str) -> dict:
        session = store.get(sid)
        m = session.model
        diagnostics = validate_model(m)
        if m.cks is not None:
            diagnostics.extend(check_cks(m))
        conflicts = []
        for ccf in model_ccfs(m):
            conflicts.extend(detect_interleaving_faults(m, ccf))
        return {
            "session": sid,
            "digest": _digest(session.source),
            "diagnostics": [d.to_dict() for d in diagnostics],
            "interleaving": [c.to_dict() for c in conflicts],
        }

    def _weights(session: Session, scenario: Scenario):
        try:
            return resolve_weights(session.model, scenario)
        except ScenarioError as e:
            raise HTTPException(status_code=422, detail=str(e))

    def _versioned(session: Session, scenario: Scenario, scenario_json: str) -> dict:
        with session.lock:
            version = next(session.version_counter)
            session.last_scenario = scenario
            session.updated = time.time()
        return {
            "session": session.id,
            "version": version,
            "digest": _digest(session.source, scenario_json),
        }

    @app.post("/api/session/{sid}/prioritize")
    async def prioritize(sid: str, request: Request) -> dict:
        session = store.get(sid)
        scenario, scenario_json = _scenario_payload(await _json_body(request))
        weights, consistency = _weights(session, scenario)
        body = _versioned(session, scenario, scenario_json)
        body.update(
            {
                "goals": dict(weights.goals.weights),
                "contexts": dict(weights.contexts.weights),
                "softgoals": dict(weights.softgoals.weights),
                "consistency": consistency.to_dict() if consistency else None,
            }
        )
        return body

    def _restrict(session: Session, data: dict):
        ccf_id = data.get("ccf")
        if ccf_id is None:
            return None
        try:
            return resolve_ccf(session.model, ccf_id)
        except KeyError:
            raise HTTPException(status_code=422, detail=f"unknown CCF {ccf_id}")

    @app.post("/api/session/{sid}/utility")
    async def utility(sid: str, request: Request) -> dict:
        session = store.get(sid)
        data = await _json_body(request)
        scenario, scenario_json = _scenario_payload(data)
        restrict = _restrict(session, data)
        weights, _ = _weights(session, scenario)
        table = utility_table(session.model, weights, restrict)
        body = _versioned(session, scenario, scenario_json)
        body.update({"ccf": data.get("ccf"), "table": table.to_dict()})
        return body

    @app.post("/api/session/{sid}/optimize")
    async def optimize(sid: str, request: Request) -> dict:
        session = store.get(sid)
        data = await _json_body(request)
        scenario, scenario_json = _scenario_payload(data)
        restrict = _restrict(session, data)
        weights, _ = _weights(session, scenario)
        try:
            cfg, table = optimal_configuration(
                session.model,
                weights,
                restrict,
                strict_context=bool(data.get("strict_context", False)),
            )
        except Infeasible as e:
            raise HTTPException(status_code=409, detail=str(e))
        except NodeLimitExceeded as e:
            raise HTTPException(status_code=409, detail=str(e))
        body = _versioned(session, scenario, scenario_json)
        body.update(
            {
                "ccf": data.get("ccf"),
                "configuration": cfg.to_dict(),
                "table": table.to_dict(),
            }
        )
        return body

    @app.post("/api/session/{sid}/tradeoff")
    async def tradeoff(sid: str, request: Request) -> dict:
        session = store.get(sid)
        data = await _json_body(request)
        scenario, scenario_json = _scenario_payload(data)
        try:
            result = run_scenario(
                session.model, scenario, strict_context=bool(data.get("strict_context", False))
            )
        except (ScenarioError, NodeLimitExceeded) as e:
            raise HTTPException(status_code=422, detail=str(e))
        body = _versioned(session, scenario, scenario_json)
        body.update(result.to_dict())
        return body

    @app.post("/api/session/{sid}/adaptation-model")
    async def adaptation_model(sid: str, request: Request) -> dict:
        session = store.get(sid)
        data = await _json_body(request)
        scenario, scenario_json = _scenario_payload(data)
        try:
            result = run_scenario(
                session.model, scenario, strict_context=bool(data.get("strict_context", False))
            )
            initial = data.get("initial")
            am = build_adaptation_model(
                session.model,
                result,
                initial_policy="explicit" if initial else "most-frequent",
                explicit_initial=initial,
            )
        except (ValueError, NodeLimitExceeded) as e:
            raise HTTPException(status_code=422, detail=str(e))
        body = _versioned(session, scenario, scenario_json)
        body.update({"adaptation": am.to_dict(), "dot": am.to_dot()})
        return body

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
