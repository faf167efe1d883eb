"""HTTP facade over workspaces: an in-memory store with optimistic
concurrency, exposing slices, contraction, expansion, undo, and the log.

Mutating requests may carry an ``If-Match`` header holding the state hash
the client last saw; a mismatch is answered with 409 and no change.  Every
response that returns workspace state carries the current state hash as
its ``ETag``.
"""

from __future__ import annotations

import itertools
import threading

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import workspace as ws
from .errors import EngineError, NothingToUndo, ParseError
from .homotopy import ContractionDirective, ExpansionDirective
from .monotone import Bias
from .render import emit_svg, emit_text, project
from .diagram import slice_diagram
from .workspace import Workspace


class ContractBody(BaseModel):
    path: str = ""
    window: tuple[int, int]
    bias: str | None = None


class ExpandBody(BaseModel):
    path: str = ""
    height: int
    split: tuple[tuple[int, ...], tuple[int, ...]]
    first: str = "lower"


class CreateBody(BaseModel):
    document: dict | None = Field(default=None)


class WorkspaceStore:
    """Workspace values by id; mutations per workspace are serialized."""

    def __init__(self):
        self._items: dict[str, Workspace] = {}
        self._ids = itertools.count(1)
        self._lock = threading.Lock()

    def create(self, w: Workspace) -> str:
        with self._lock:
            wid = f"w{next(self._ids)}"
            self._items[wid] = w
            return wid

    def get(self, wid: str) -> Workspace | None:
        return self._items.get(wid)

    def put(self, wid: str, w: Workspace) -> None:
        with self._lock:
            self._items[wid] = w


def _error_payload(e: EngineError) -> dict:
    payload = {"reason": e.reason, "detail": str(e)}
    for key in ("step", "height", "cause", "violations"):
        value = getattr(e, key, None)
        if value is not None:
            payload[key] = value if not isinstance(value, list) else [
                [str(part) for part in v] if isinstance(v, tuple) else str(v)
                for v in value
            ]
    return payload


def create_app(store: WorkspaceStore | None = None) -> FastAPI:
    store = store if store is not None else WorkspaceStore()
    app = FastAPI(title="zigzagcat")
    app.state.store = store

    def fetch(wid: str):
        w = store.get(wid)
        if w is None:
            return None, JSONResponse(
                {"reason": "NotFound", "detail": f"no workspace {wid}"}, 404
            )
        return w, None

    def guard(request: Request, w: Workspace):
        expected = request.headers.get("if-match")
        if expected is not None and expected.strip('"') != ws.state_hash(w):
            return JSONResponse(
                {"reason": "Conflict", "detail": "workspace changed underneath"},
                409,
            )
        return None

    def state_response(wid: str, w: Workspace, status: int = 200):
        return JSONResponse(
            {"id": wid, "hash": ws.state_hash(w), "workspace": ws.to_document(w)},
            status,
            headers={"ETag": ws.state_hash(w)},
        )

    @app.post("/workspaces")
    def create_workspace(body: CreateBody | None = None):
        try:
            w = (
                ws.load(ws.canonical_bytes(body.document))
                if body is not None and body.document is not None
                else Workspace()
            )
        except EngineError as e:
            return JSONResponse(_error_payload(e), 400)
        wid = store.create(w)
        return state_response(wid, w, 201)

    @app.get("/workspaces/{wid}")
    def get_workspace(wid: str):
        w, missing = fetch(wid)
        if missing:
            return missing
        return state_response(wid, w)

    @app.get("/workspaces/{wid}/log")
    def get_log(wid: str):
        w, missing = fetch(wid)
        if missing:
            return missing
        return JSONResponse(
            {
                "log": [
                    {
                        "command": e.command,
                        "before_hash": e.before_hash,
                        "after_hash": e.after_hash,
                    }
                    for e in w.log
                ]
            },
            headers={"ETag": ws.state_hash(w)},
        )

    @app.get("/workspaces/{wid}/diagrams/{name}/slice")
    def get_slice(wid: str, name: str, path: str = "", format: str = "graph"):
        w, missing = fetch(wid)
        if missing:
            return missing
        if name not in w.diagrams:
            return JSONResponse(
                {"reason": "NotFound", "detail": f"no diagram {name}"}, 404
            )
        try:
            part = slice_diagram(w.diagrams[name], ws.parse_path(path))
        except EngineError as e:
            return JSONResponse(_error_payload(e), 400)
        graph = project(w.signature, part)
        if format == "svg":
            return Response(
                emit_svg(graph),
                media_type="image/svg+xml",
                headers={"ETag": ws.state_hash(w)},
            )
        if format == "graph":
            return JSONResponse(
                {
                    "dimension": graph.dimension,
                    "rows": [
                        {
                            "outer_kind": row.outer_kind,
                            "outer_index": row.outer_index,
                            "nodes": [
                                {
                                    "inner_kind": n.inner_kind,
                                    "inner_index": n.inner_index,
                                    "kind": n.kind,
                                    "label": n.label,
                                    "color": n.color,
                                }
                                for n in row.nodes
                            ],
                        }
                        for row in graph.rows
                    ],
                    "edges": [list(map(list, e)) for e in graph.edges],
                    "text": emit_text(graph),
                },
                headers={"ETag": ws.state_hash(w)},
            )
        return JSONResponse(
            {"reason": "BadFormat", "detail": f"unknown format {format!r}"}, 400
        )

    def mutate(wid: str, name: str | None, request: Request, action):
        w, missing = fetch(wid)
        if missing:
            return missing
        if name is not None and name not in w.diagrams:
            return JSONResponse(
                {"reason": "NotFound", "detail": f"no diagram {name}"}, 404
            )
        conflict = guard(request, w)
        if conflict:
            return conflict
        try:
            after = action(w)
        except NothingToUndo as e:
            return JSONResponse(_error_payload(e), 409)
        except ParseError as e:
            return JSONResponse(_error_payload(e), 400)
        except EngineError as e:
            return JSONResponse(_error_payload(e), 422)
        store.put(wid, after)
        return state_response(wid, after)

    @app.post("/workspaces/{wid}/diagrams/{name}/contract")
    def contract(wid: str, name: str, body: ContractBody, request: Request):
        def action(w):
            directive = ContractionDirective(
                ws.parse_path(body.path),
                tuple(body.window),
                ws.BIASES.get(body.bias or "", Bias.NONE),
            )
            return ws.contract_command(w, name, directive)

        return mutate(wid, name, request, action)

    @app.post("/workspaces/{wid}/diagrams/{name}/expand")
    def expand(wid: str, name: str, body: ExpandBody, request: Request):
        def action(w):
            directive = ExpansionDirective(
                ws.parse_path(body.path),
                body.height,
                body.split,
                ws.BIASES.get(body.first, Bias.LOWER),
            )
            return ws.expand_command(w, name, directive)

        return mutate(wid, name, request, action)

    @app.post("/workspaces/{wid}/undo")
    def undo(wid: str, request: Request):
        return mutate(wid, None, request, ws.undo)

    return app
