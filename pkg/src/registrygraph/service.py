"""HTTP facade for the dashboard: search, dossiers, tool payloads, chat.

The service owns no retrieval logic.  Search, network, and history
endpoints delegate to the same deterministic tools the agent calls, so
the dashboard and the agent can never disagree about what the graph
contains.  POST /chat drives a full conversational turn and relays
trace events as newline-delimited JSON frames while the turn is still
running; ``stream=false`` returns the complete response in one
document instead.

Sessions live in memory, keyed by session id, with optional JSON file
persistence so a restarted service still resolves follow-up questions.
Turns within one session serialize on a per-session lock; distinct
sessions run concurrently.
"""

from __future__ import annotations

import json
import queue
import threading
from pathlib import Path
from typing import Any, Iterator

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel, ConfigDict, Field

from registrygraph.agent import SessionContext, TurnError, handle_turn
from registrygraph.graph import NodeLabel, PropertyGraph
from registrygraph.llm.gateway import LlmConfig, LlmGateway
from registrygraph.tools import Toolbox, ToolStatus


# ----------------------------------------------------------------------
# response schemas


class CandidateRow(BaseModel):
    model_config = ConfigDict(extra="allow")

    uid: str
    name: str | None = None
    label: str
    strength: str | None = None
    location: str | None = None


class SearchResponse(BaseModel):
    query: str
    count: int
    candidates: list[CandidateRow]


class AssociateRow(BaseModel):
    uid: str
    name: str | None = None
    label: str
    role: str | None = None
    via: str | None = None
    date: str | None = None


class Dossier(BaseModel):
    uid: str
    name: str | None = None
    label: str
    strength: str | None = None
    profile: dict[str, Any]
    personnel: list[AssociateRow]
    affiliations: list[AssociateRow]
    events: list[dict[str, Any]]


class ToolPayload(BaseModel):
    tool: str
    status: str
    summary: str
    rows: list[dict[str, Any]]


class ChatRequest(BaseModel):
    message: str
    session_id: str | None = None
    current_uid: str | None = None
    stream: bool = True


class ChatResponse(BaseModel):
    type: str = "answer"
    session_id: str
    turn_id: str
    answer: str
    state: str
    trace: list[dict[str, Any]] = Field(
        description="Executed tool calls, one entry per trajectory step."
    )
    events: list[dict[str, Any]]
    model_calls: int


# ----------------------------------------------------------------------
# session store


class SessionStore:
    """In-memory sessions with optional JSON file persistence."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._sessions: dict[str, SessionContext] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()
        if self._path is not None and self._path.exists():
            data = json.loads(self._path.read_text(encoding="utf-8"))
            for item in data.get("sessions", []):
                ctx = SessionContext.from_dict(item)
                self._sessions[ctx.session_id] = ctx

    def acquire(self, session_id: str | None) -> tuple[SessionContext, threading.Lock]:
        """Fetch or create a session together with its turn lock."""
        with self._guard:
            if session_id is not None and session_id in self._sessions:
                ctx = self._sessions[session_id]
            elif session_id is not None:
                ctx = SessionContext(session_id=session_id)
                self._sessions[ctx.session_id] = ctx
            else:
                ctx = SessionContext()
                self._sessions[ctx.session_id] = ctx
            lock = self._locks.setdefault(ctx.session_id, threading.Lock())
        return ctx, lock

    def persist(self) -> None:
        if self._path is None:
            return
        with self._guard:
            payload = {
                "sessions": [
                    self._sessions[key].to_dict() for key in sorted(self._sessions)
                ]
            }
        tmp = self._path.with_name(self._path.name + ".tmp")
        tmp.write_text(
            json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        tmp.replace(self._path)

    def __len__(self) -> int:
        with self._guard:
            return len(self._sessions)


# ----------------------------------------------------------------------
# dossier assembly


def _associates(graph: PropertyGraph, uid: str) -> tuple[list[dict], list[dict]]:
    """Entities attached to the node's events, split persons/companies."""
    persons: dict[tuple, dict] = {}
    companies: dict[tuple, dict] = {}
    for _edge, event in graph.neighbors(uid, direction="out"):
        if event.label is not NodeLabel.EVENT:
            continue
        for other_edge, other in graph.neighbors(event.uid, direction="in"):
            if other.uid == uid:
                continue
            bucket = (
                persons
                if other.label is NodeLabel.PERSON
                else companies
                if other.label is NodeLabel.COMPANY
                else None
            )
            if bucket is None:
                continue
            key = (other.uid, other_edge.role)
            bucket.setdefault(
                key,
                {
                    "uid": other.uid,
                    "name": other.name,
                    "label": other.label.value,
                    "role": other_edge.role,
                    "via": event.uid,
                    "date": event.props.get("date"),
                },
            )

    def ordered(bucket: dict[tuple, dict]) -> list[dict]:
        return sorted(bucket.values(), key=lambda r: (r["name"] or "", r["uid"], r["role"] or ""))

    return ordered(persons), ordered(companies)


def build_dossier(graph: PropertyGraph, toolbox: Toolbox, uid: str) -> dict[str, Any]:
    """Profile, associated entities, and chronological feed for one node."""
    node = graph.get_node(uid)
    history = toolbox.run("get_node_history", {"uid": uid})
    personnel, affiliations = _associates(graph, uid)
    return {
        "uid": node.uid,
        "name": node.name,
        "label": node.label.value,
        "strength": node.strength.value,
        "profile": dict(node.props),
        "personnel": personnel,
        "affiliations": affiliations,
        "events": history.rows,
    }


# ----------------------------------------------------------------------
# application


def create_app(
    graph: PropertyGraph,
    gateway: LlmGateway,
    config: LlmConfig | None = None,
    session_file: str | Path | None = None,
) -> FastAPI:
    """Wire the HTTP endpoints around one graph and one model gateway."""
    toolbox = Toolbox(graph)
    store = SessionStore(session_file)
    app = FastAPI(title="registrygraph", docs_url=None, redoc_url=None)
    # read-mostly analytical API; let browser dashboards call it cross-origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    app.state.toolbox = toolbox
    app.state.store = store

    def tool_or_404(name: str, arguments: dict[str, Any]) -> ToolPayload:
        result = toolbox.run(name, arguments)
        if result.status is ToolStatus.ERROR:
            raise HTTPException(status_code=404, detail=result.summary)
        return ToolPayload(
            tool=result.tool_name,
            status=result.status.value,
            summary=result.summary,
            rows=result.rows,
        )

    @app.get("/search", response_model=SearchResponse)
    def search(q: str | None = None, limit: int = 10) -> SearchResponse:
        if q is None or not q.strip():
            raise HTTPException(status_code=400, detail="query parameter q is required")
        result = toolbox.run("search_companies", {"query": q, "limit": limit})
        if result.status is ToolStatus.ERROR:
            raise HTTPException(status_code=400, detail=result.summary)
        return SearchResponse(query=q, count=len(result.rows), candidates=result.rows)

    @app.get("/entity/{uid}", response_model=Dossier)
    def entity(uid: str) -> dict[str, Any]:
        if not graph.has_node(uid):
            raise HTTPException(status_code=404, detail=f"unknown node {uid!r}")
        return build_dossier(graph, toolbox, uid)

    @app.get("/entity/{uid}/network", response_model=ToolPayload)
    def network(uid: str) -> ToolPayload:
        return tool_or_404("explore_network", {"uid": uid})

    @app.get("/entity/{uid}/history", response_model=ToolPayload)
    def history(uid: str) -> ToolPayload:
        return tool_or_404("get_node_history", {"uid": uid})

    def run_turn(request: ChatRequest, session: SessionContext, on_event=None):
        outcome = handle_turn(
            request.message,
            session,
            toolbox,
            gateway,
            config,
            current_uid=request.current_uid,
            on_event=on_event,
        )
        store.persist()
        trajectory = outcome.trajectory
        return ChatResponse(
            session_id=session.session_id,
            turn_id=trajectory.turn_id,
            answer=outcome.answer,
            state=outcome.state.value,
            trace=[step.to_dict() for step in trajectory.steps],
            events=[event.to_dict() for event in trajectory.events],
            model_calls=trajectory.model_calls,
        )

    @app.post("/chat")
    def chat(request: ChatRequest):
        session, lock = store.acquire(request.session_id)

        if not request.stream:
            with lock:
                try:
                    response = run_turn(request, session)
                except TurnError as exc:
                    return JSONResponse(
                        status_code=502,
                        content={
                            "type": "error",
                            "stage": exc.stage,
                            "detail": str(exc),
                            "session_id": session.session_id,
                        },
                    )
            return response

        frames: queue.Queue = queue.Queue()

        def worker() -> None:
            try:
                with lock:
                    response = run_turn(
                        request,
                        session,
                        on_event=lambda ev: frames.put({"type": "trace", **ev.to_dict()}),
                    )
                frames.put(response.model_dump())
            except TurnError as exc:
                frames.put(
                    {
                        "type": "error",
                        "stage": exc.stage,
                        "detail": str(exc),
                        "session_id": session.session_id,
                    }
                )
            except Exception as exc:  # keep the stream terminating
                frames.put(
                    {
                        "type": "error",
                        "stage": "internal",
                        "detail": str(exc),
                        "session_id": session.session_id,
                    }
                )
            finally:
                frames.put(None)

        threading.Thread(target=worker, daemon=True).start()

        def frame_stream() -> Iterator[str]:
            while True:
                frame = frames.get()
                if frame is None:
                    break
                yield json.dumps(frame, ensure_ascii=False) + "\n"

        return StreamingResponse(frame_stream(), media_type="application/x-ndjson")

    return app
