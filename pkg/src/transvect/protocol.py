"""JSON session protocol for the sigma-game engine.

Stateless request/response: every message carries a session id issued by
"new". Served over HTTP by the CLI and usable over line-delimited stdio.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import BudgetExceeded, IllegalMove, InvalidInput
from .game import GameState, legal_moves, min_lit, play, reachable, undo
from .graphs import FormGraph, classify_graph, connected_components
from .symplectic import Functional

DEFAULT_EXPIRY_SECONDS = 30 * 60


def dumps(obj: Any) -> str:
    """Deterministic JSON encoding used for every protocol payload."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class _Session:
    state: GameState
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = 0.0


class SessionStore:
    """Session table with idle expiry; ids are sequential and deterministic."""

    def __init__(self, expiry_seconds: float = DEFAULT_EXPIRY_SECONDS,
                 clock: Callable[[], float] = time.monotonic):
        self._sessions: dict[str, _Session] = {}
        self._counter = 0
        self._expiry = expiry_seconds
        self._clock = clock
        self._lock = threading.Lock()

    def create(self, state: GameState) -> str:
        with self._lock:
            self._counter += 1
            sid = f"s{self._counter}"
            self._sessions[sid] = _Session(state, last_used=self._clock())
            return sid

    def _expire(self) -> None:
        now = self._clock()
        dead = [sid for sid, s in self._sessions.items() if now - s.last_used > self._expiry]
        for sid in dead:
            del self._sessions[sid]

    def get(self, sid: str) -> Optional[_Session]:
        with self._lock:
            self._expire()
            session = self._sessions.get(sid)
            if session is not None:
                session.last_used = self._clock()
            return session


def _state_payload(st: GameState) -> dict:
    return {"lamps": list(st.lamps), "history": list(st.history)}


def _ok_state(st: GameState) -> dict:
    return {"state": _state_payload(st), "legal": sorted(legal_moves(st))}


def _parse_graph(obj: Any) -> FormGraph:
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise InvalidInput("graph needs 'vertices' and 'edges'")
    n = len(obj["vertices"])
    edges = [(int(u), int(v)) for u, v in obj["edges"]]
    return FormGraph.from_edges(n, edges)


def _root_payload(root) -> dict:
    return {"vertices": root.num_vertices, "edges": [list(e) for e in root.edges]}


def handle_request(store: SessionStore, request: Any) -> dict:
    try:
        return _dispatch(store, request)
    except IllegalMove:
        return {"error": "IllegalMove"}
    except BudgetExceeded:
        return {"error": "BudgetExceeded"}
    except InvalidInput as exc:
        return {"error": "InvalidInput", "message": str(exc)}


def _get_session(store: SessionStore, request: dict):
    sid = request.get("session")
    session = store.get(sid) if isinstance(sid, str) else None
    if session is None:
        raise InvalidInput("unknown or expired session")
    return session


def _dispatch(store: SessionStore, request: Any) -> dict:
    if not isinstance(request, dict) or "op" not in request:
        raise InvalidInput("request needs an 'op'")
    op = request["op"]
    if op == "new":
        graph = _parse_graph(request.get("graph"))
        lamps = request.get("lamps")
        if not isinstance(lamps, list):
            raise InvalidInput("'lamps' must be a list of 0/1")
        st = GameState.new(graph, tuple(lamps))
        sid = store.create(st)
        return {"session": sid, **_ok_state(st)}

    session = _get_session(store, request)
    with session.lock:
        st = session.state
        if op == "play":
            vertex = request.get("vertex")
            if not isinstance(vertex, int):
                raise InvalidInput("'vertex' must be an int")
            session.state = play(st, vertex)
            return _ok_state(session.state)
        if op == "undo":
            try:
                session.state = undo(st)
            except IllegalMove:
                return {"error": "NothingToUndo"}
            return _ok_state(session.state)
        if op == "reachable":
            target = request.get("target")
            if not isinstance(target, list) or len(target) != st.graph.n:
                raise InvalidInput("'target' must list one bit per vertex")
            decision = reachable(st, Functional.make(2, target), want_witness=True)
            payload: dict[str, Any] = {
                "verdict": decision.verdict,
                "certificate": decision.certificate,
            }
            if decision.same and decision.witness is not None:
                payload["witness"] = [si for si, _k in decision.witness]
            return payload
        if op == "min_lit":
            result = min_lit(st)
            return {
                "count": result.count,
                "lamps": list(result.lamps),
                "moves": list(result.moves),
            }
        if op == "classify":
            comps = connected_components(st.graph)
            tags, roots = [], []
            for comp in comps:
                cls = classify_graph(st.graph.induced(comp))
                tags.append(cls.tag)
                roots.append(_root_payload(cls.root) if cls.root else None)
            payload = {
                "components": [list(c) for c in comps],
                "per_component": tags,
                "roots": roots,
            }
            if len(comps) == 1 and roots[0] is not None:
                payload["root"] = roots[0]
            return payload
    raise InvalidInput(f"unknown op {op!r}")


def handle_line(store: SessionStore, line: str) -> str:
    """One JSON request per line; always answers with one JSON line."""
    try:
        request = json.loads(line)
    except json.JSONDecodeError:
        return dumps({"error": "BadJSON"})
    return dumps(handle_request(store, request))
