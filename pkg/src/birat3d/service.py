"""HTTP session service for interactive deformation.

Sessions live in memory (optionally snapshotted to ``--state-dir``) and
hold an immutable state tuple (net, factors, generator spec, revision).
Mutations rebuild a full new state and swap it under the session's lock —
all-or-nothing, so a 422 never leaves a half-applied session.  Reads copy
the state reference once and work on that consistent snapshot.

Endpoints (JSON bodies mirror the file formats):

* ``POST /api/session`` — create from ``{"net": ...}`` or ``{"spec": ...}``
  plus optional ``"factors"``.
* ``GET  /api/session/{id}/report`` — class, distance, weights, factors.
* ``PUT  /api/session/{id}/generators`` — replace generator data; the
  server rebuilds the points and resynthesizes weights with the session's
  fixed factors.
* ``PUT  /api/session/{id}/factors`` — replace the rank-one factors.
* ``GET  /api/session/{id}/mesh?res=n`` / ``.../inverse``
* ``POST /api/session/{id}/eval`` / ``.../ieval``

Mutations accept an optional ``"revision"``; a stale value is a 409.
Unknown sessions are 404, domain errors 422 with the CLI's error codes.
"""
from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .birationality import synthesize_weights
from .constructions import construct, parse_construction_spec
from .controlnet import ControlNet, classification_of
from .errors import (Birat3dError, InputError, StaleRevision, UnknownSession)
from .inversion import eval_inverse, eval_map, invert
from .jsonio import check_report, net_from_json, net_to_json
from .mesh import boundary_mesh
from .scalars import parse_scalar, scalar_to_json, scale_first_one

_UNIT_FACTORS = ((1, 1), (1, 1), (1, 1))


def _parse_factors(data) -> tuple:
    if isinstance(data, dict):
        try:
            data = [data["a"], data["b"], data["c"]]
        except KeyError as exc:
            raise InputError(f"factors are missing {exc.args[0]!r}")
    if not isinstance(data, (list, tuple)) or len(data) != 3 \
            or any(not isinstance(p, (list, tuple)) or len(p) != 2
                   for p in data):
        raise InputError("factors must be three pairs")
    return tuple(tuple(parse_scalar(x) for x in pair) for pair in data)


def _factors_json(factors) -> dict:
    return {k: [scalar_to_json(x) for x in pair]
            for k, pair in zip("abc", factors)}


@dataclass(frozen=True)
class SessionState:
    """One consistent snapshot of a session."""

    net: ControlNet
    factors: tuple
    spec: dict | None          # generator JSON, when the session has one
    revision: int


class Session:
    def __init__(self, sid: str, state: SessionState):
        self.id = sid
        self.state = state
        self.lock = threading.Lock()


class SessionStore:
    def __init__(self, state_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._registry = threading.Lock()
        self._state_dir = state_dir
        if state_dir:
            os.makedirs(state_dir, exist_ok=True)
            self._restore()

    # -- snapshots ---------------------------------------------------------

    def _snapshot(self, session: Session):
        if not self._state_dir:
            return
        state = session.state
        doc = {"net": net_to_json(state.net),
               "factors": _factors_json(state.factors),
               "spec": state.spec,
               "revision": state.revision}
        path = os.path.join(self._state_dir, f"{session.id}.json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)

    def _restore(self):
        for name in sorted(os.listdir(self._state_dir)):
            if not name.endswith(".json"):
                continue
            sid = name[:-5]
            try:
                with open(os.path.join(self._state_dir, name),
                          encoding="utf-8") as fh:
                    doc = json.load(fh)
                state = SessionState(_rebuild_net(doc),
                                     _parse_factors(doc["factors"]),
                                     doc.get("spec"),
                                     int(doc["revision"]))
            except (OSError, KeyError, ValueError, json.JSONDecodeError,
                    Birat3dError):
                continue          # a corrupt snapshot never blocks startup
            self._sessions[sid] = Session(sid, state)

    # -- access ------------------------------------------------------------

    def create(self, state: SessionState) -> Session:
        sid = uuid.uuid4().hex[:12]
        session = Session(sid, state)
        with self._registry:
            self._sessions[sid] = session
        self._snapshot(session)
        return session

    def get(self, sid: str) -> Session:
        try:
            return self._sessions[sid]
        except KeyError:
            raise UnknownSession(f"no session {sid!r}")

    def mutate(self, sid: str, expected_revision, build) -> Session:
        """Swap in ``build(state)`` under the session's writer lock."""
        session = self.get(sid)
        with session.lock:
            state = session.state
            if expected_revision is not None \
                    and int(expected_revision) != state.revision:
                raise StaleRevision(
                    f"session is at revision {state.revision}, "
                    f"not {expected_revision}")
            new_state = build(state)
            session.state = new_state
        self._snapshot(session)
        return session


def _rebuild_net(doc: dict) -> ControlNet:
    """Net of a snapshot: through its construction when a spec is present,
    so the carried structure payload survives restarts."""
    spec = doc.get("spec")
    if spec is not None:
        built = construct(parse_construction_spec(spec))
        return synthesize_weights(built, _parse_factors(doc["factors"]),
                                  built.classification)
    return net_from_json(doc["net"])


def _state_from_payload(payload: dict) -> SessionState:
    if not isinstance(payload, dict):
        raise InputError("the session payload must be a JSON object")
    factors = _parse_factors(payload.get("factors", _UNIT_FACTORS))
    if "spec" in payload:
        spec = payload["spec"]
        built = construct(parse_construction_spec(spec))
        net = synthesize_weights(built, factors, built.classification)
        return SessionState(net, factors, spec, 1)
    if "net" in payload:
        net = net_from_json(payload["net"])
        return SessionState(net, factors, None, 1)
    raise InputError("a session needs either 'net' or 'spec'")


def create_app(state_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="birat3d session service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore(state_dir)
    app.state.store = store

    @app.exception_handler(Birat3dError)
    def _domain_error(request: Request, exc: Birat3dError):
        status = 404 if isinstance(exc, UnknownSession) else \
            409 if isinstance(exc, StaleRevision) else 422
        return JSONResponse(status_code=status, content=exc.to_json())

    @app.post("/api/session")
    def create_session(payload: dict = Body(...)):
        state = _state_from_payload(payload)
        session = store.create(state)
        return {"session": session.id, "revision": state.revision,
                "report": _report_doc(state)}

    @app.get("/api/session/{sid}/report")
    def report(sid: str):
        state = store.get(sid).state
        return {"session": sid, "revision": state.revision,
                "report": _report_doc(state)}

    @app.put("/api/session/{sid}/generators")
    def put_generators(sid: str, payload: dict = Body(...)):
        if "generators" not in payload:
            raise InputError("the body needs a 'generators' object")

        def build(state: SessionState) -> SessionState:
            spec_json = dict(payload["generators"])
            if "class" not in spec_json:
                spec_json["class"] = _session_class(state)
            built = construct(parse_construction_spec(spec_json))
            net = synthesize_weights(built, state.factors,
                                     built.classification)
            return SessionState(net, state.factors, spec_json,
                                state.revision + 1)

        session = store.mutate(sid, payload.get("revision"), build)
        state = session.state
        return {"session": sid, "revision": state.revision,
                "report": _report_doc(state)}

    @app.put("/api/session/{sid}/factors")
    def put_factors(sid: str, payload: dict = Body(...)):
        if "factors" not in payload:
            raise InputError("the body needs a 'factors' object")
        factors = _parse_factors(payload["factors"])

        def build(state: SessionState) -> SessionState:
            net = synthesize_weights(state.net, factors,
                                     classification_of(state.net))
            return SessionState(net, factors, state.spec,
                                state.revision + 1)

        session = store.mutate(sid, payload.get("revision"), build)
        state = session.state
        return {"session": sid, "revision": state.revision,
                "report": _report_doc(state)}

    @app.get("/api/session/{sid}/mesh")
    def mesh(sid: str, res: int = 8):
        state = store.get(sid).state
        doc = boundary_mesh(state.net, res).to_json()
        doc.update({"session": sid, "revision": state.revision})
        return doc

    @app.get("/api/session/{sid}/inverse")
    def inverse(sid: str):
        state = store.get(sid).state
        data = invert(state.net)
        doc = data.to_json()
        doc.update({"session": sid, "revision": state.revision})
        return doc

    @app.post("/api/session/{sid}/eval")
    def eval_forward(sid: str, payload: dict = Body(...)):
        state = store.get(sid).state
        params = _parse_params(payload)
        coords = eval_map(state.net, params)
        return {"session": sid, "revision": state.revision,
                "point": [scalar_to_json(c) for c in
                          scale_first_one(coords, state.net.ctx())]}

    @app.post("/api/session/{sid}/ieval")
    def eval_backward(sid: str, payload: dict = Body(...)):
        state = store.get(sid).state
        if "xyz" not in payload or not isinstance(payload["xyz"], list) \
                or len(payload["xyz"]) != 4:
            raise InputError("the body needs 'xyz': [x0, x1, x2, x3]")
        data = invert(state.net)
        pairs = eval_inverse(data.inverse, payload["xyz"])
        return {"session": sid, "revision": state.revision,
                "params": [[scalar_to_json(x) for x in pair]
                           for pair in pairs]}

    return app


def _parse_params(payload: dict):
    stu = payload.get("stu")
    if isinstance(stu, list) and len(stu) == 6:
        stu = [stu[0:2], stu[2:4], stu[4:6]]
    if not isinstance(stu, list) or len(stu) != 3 \
            or any(not isinstance(p, list) or len(p) != 2 for p in stu):
        raise InputError(
            "the body needs 'stu': three parameter pairs (or a flat list "
            "of 6 scalars)")
    return [tuple(parse_scalar(x) for x in pair) for pair in stu]


def _session_class(state: SessionState) -> str:
    """The class a generator update rebuilds: the session's spec class,
    or the current net's classification for net-born sessions."""
    if isinstance(state.spec, dict) and "class" in state.spec:
        return state.spec["class"]
    return classification_of(state.net).class_name


def _report_doc(state: SessionState) -> dict:
    doc = check_report(state.net)
    doc["factors"] = _factors_json(state.factors)
    return doc


def serve(port: int = 8723, state_dir: str | None = None):
    import uvicorn

    uvicorn.run(create_app(state_dir), host="127.0.0.1", port=port,
                log_level="warning")
