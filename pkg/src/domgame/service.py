"""JSON-over-HTTP facade for interactive play.

Endpoints::

    POST /games            create a game (edge list or generator spec)
    GET  /games/{id}       the full denormalized view
    POST /games/{id}/moves submit the human move; engine replies inline
    GET  /games/{id}/hint  an optimal move for the human side

The engine auto-plays its consecutive turns, so a view always shows
either the human to move or a finished game.  The view is a pure
function of the session state; replaying the move log reproduces it
exactly.  Errors: 404 unknown session, 409 not your turn (or game
over), 422 illegal vertex, 400 malformed request.
"""

from __future__ import annotations

import json
import random
import re
import secrets
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import DomgameError, GameOver, IllegalMove
from .forest import (
    leaf_pair_at_distance,
    parse_edge_list,
    random_caterpillar,
    random_forest,
    random_tree,
)
from .residual import Player
from .solver import GameSolver, best_reply
from .strategy import GameRunner, STALLER_POLICIES

DEFAULT_IDLE_TIMEOUT = 3600.0

_SIDES = {"dominator": Player.DOMINATOR, "staller": Player.STALLER}


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    id: str
    runner: GameRunner
    human: Player
    staller_policy: str
    rng: random.Random
    solver: GameSolver | None
    policy: object
    last_access: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)
    move_log: list[int] = field(default_factory=list)


def _build_graph(payload: dict):
    if "edge_list" in payload:
        import warnings

        from .errors import IsolatedVertexWarning

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            try:
                return parse_edge_list(str(payload["edge_list"]))
            except IsolatedVertexWarning as exc:
                raise ServiceError(400, str(exc)) from exc
    gen = payload.get("generator")
    if not isinstance(gen, dict):
        raise ServiceError(400, "provide 'edge_list' or 'generator'")
    kind = gen.get("kind", "tree")
    n = int(gen.get("n", 8))
    seed = int(gen.get("seed", 0))
    if kind == "tree":
        return random_tree(n, seed)
    if kind == "caterpillar":
        return random_caterpillar(n, seed)
    if kind == "forest":
        return random_forest(n, int(gen.get("components", 2)), seed)
    raise ServiceError(400, f"unknown generator kind {kind!r}")


class GameService:
    """Session store plus the game-facing operations, HTTP-free."""

    def __init__(self, idle_timeout: float = DEFAULT_IDLE_TIMEOUT):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._idle_timeout = idle_timeout

    # -- sessions ----------------------------------------------------------

    def _purge(self) -> None:
        now = time.monotonic()
        dead = [
            sid
            for sid, s in self._sessions.items()
            if now - s.last_access > self._idle_timeout
        ]
        for sid in dead:
            del self._sessions[sid]

    def _get(self, sid: str) -> Session:
        with self._lock:
            self._purge()
            session = self._sessions.get(sid)
            if session is None:
                raise ServiceError(404, f"unknown session {sid!r}")
            session.last_access = time.monotonic()
            return session

    def create(self, payload: dict) -> dict:
        try:
            graph = _build_graph(payload)
        except DomgameError as exc:
            raise ServiceError(400, str(exc)) from exc
        human = _SIDES.get(str(payload.get("human", "staller")))
        start = _SIDES.get(str(payload.get("start", "dominator")))
        if human is None or start is None:
            raise ServiceError(400, "human and start must be 'dominator' or 'staller'")
        policy_name = str(payload.get("staller_policy", "optimal"))
        if policy_name not in STALLER_POLICIES:
            raise ServiceError(400, f"unknown staller policy {policy_name!r}")
        seed = int(payload.get("seed", 0))
        try:
            runner = GameRunner(graph, start)
        except DomgameError as exc:
            raise ServiceError(400, str(exc)) from exc
        solver = GameSolver(graph) if graph.n <= 64 else None
        if policy_name == "optimal":
            if solver is None:
                raise ServiceError(400, "the optimal opponent needs at most 64 vertices")
            policy = STALLER_POLICIES["optimal"](solver)
        else:
            policy = STALLER_POLICIES[policy_name]()
        session = Session(
            id=secrets.token_urlsafe(16),
            runner=runner,
            human=human,
            staller_policy=policy_name,
            rng=random.Random(seed),
            solver=solver,
            policy=policy,
        )
        self._engine_autoplay(session)
        with self._lock:
            self._sessions[session.id] = session
        return self.view(session.id)

    # -- game flow -----------------------------------------------------------

    def _engine_autoplay(self, session: Session) -> list[dict]:
        applied = []
        runner = session.runner
        while not runner.over and runner.to_move is not session.human:
            if runner.to_move is Player.DOMINATOR:
                record = runner.play_engine_move()
            else:
                record = runner.play(session.policy(runner.state, session.rng))
            session.move_log.append(record.vertex)
            applied.append(_record_dict(record))
        return applied

    def view(self, sid: str) -> dict:
        session = self._get(sid)
        with session.lock:
            return _view(session)

    def move(self, sid: str, payload: dict) -> dict:
        session = self._get(sid)
        with session.lock:
            runner = session.runner
            if runner.over or runner.to_move is not session.human:
                raise ServiceError(409, "not your turn")
            try:
                vertex = int(payload["vertex"])
            except (KeyError, TypeError, ValueError):
                raise ServiceError(400, "body must carry an integer 'vertex'") from None
            if not runner.state.is_legal(vertex):
                raise ServiceError(422, f"vertex {vertex} is not a legal move")
            record = runner.play(vertex)
            session.move_log.append(vertex)
            applied = [_record_dict(record)]
            applied.extend(self._engine_autoplay(session))
            out = _view(session)
            out["applied"] = applied
            return out

    def hint(self, sid: str) -> dict:
        session = self._get(sid)
        with session.lock:
            runner = session.runner
            if runner.over:
                raise ServiceError(409, "the game is over")
            if runner.to_move is not session.human:
                raise ServiceError(409, "not your turn")
            if session.solver is None:
                raise ServiceError(409, "no hints for graphs this large")
            try:
                vertex, value = best_reply(runner.state, session.human, session.solver)
            except GameOver as exc:
                raise ServiceError(409, str(exc)) from exc
            return {"vertex": vertex, "remaining_with_best_play": value}


def _record_dict(record) -> dict:
    return {
        "index": record.index,
        "player": record.player.value,
        "vertex": record.vertex,
        "gain": record.gain,
        "phase": int(record.phase),
        "newly_red": record.newly_red,
        "critical": record.critical,
    }


def _view(session: Session) -> dict:
    runner = session.runner
    state = runner.state
    graph = runner.graph
    n = graph.n
    legal = set(state.legal_moves()) if not runner.over else set()
    human_turn = not runner.over and runner.to_move is session.human
    records = [_record_dict(r) for r in runner.records]
    extra = sum(r.extra or 0 for r in runner.records if r.extra is not None)
    return {
        "id": session.id,
        "n": n,
        "human": session.human.value,
        "start": runner.first.value,
        "staller_policy": session.staller_policy,
        "vertices": [
            {
                "id": v,
                "color": state.colors[v].value,
                "legal": bool(human_turn and v in legal),
            }
            for v in range(n)
        ],
        "base_edges": [list(e) for e in sorted(graph.edges)],
        "active_edges": [list(e) for e in state.active_edges()],
        "to_move": None if runner.over else ("human" if human_turn else "engine"),
        "phase": int(runner.phase),
        "over": runner.over,
        "turns": len(runner.records),
        "value": state.value(),
        "records": records,
        "move_log": list(session.move_log),
        "ledger": {
            "phase1_extra": extra,
            "critical": sum(1 for r in runner.records if r.critical),
        },
        "bounds": {
            "cap_3n5": (3 * n) // 5,
            "cap_3n5_staller": (3 * n + 1) // 5,
            "cap_5n8": (5 * n) // 8,
            "cap_5n8_staller": (5 * n + 2) // 8,
            "class_no_d4": not leaf_pair_at_distance(graph, 4),
        },
    }


# ---------------------------------------------------------------------------
# HTTP layer

_GAME = re.compile(r"^/games/([A-Za-z0-9_-]+)$")
_MOVES = re.compile(r"^/games/([A-Za-z0-9_-]+)/moves$")
_HINT = re.compile(r"^/games/([A-Za-z0-9_-]+)/hint$")


class _Handler(BaseHTTPRequestHandler):
    service: GameService = None  # type: ignore[assignment]
    ui_dir: str | None = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            payload = json.loads(raw.decode("utf-8") or "{}")
        except json.JSONDecodeError:
            raise ServiceError(400, "request body is not valid JSON") from None
        if not isinstance(payload, dict):
            raise ServiceError(400, "request body must be a JSON object")
        return payload

    def _dispatch(self, method: str) -> None:
        try:
            if method == "POST" and self.path == "/games":
                self._send_json(201, self.service.create(self._read_json()))
                return
            match = _GAME.match(self.path)
            if method == "GET" and match:
                self._send_json(200, self.service.view(match.group(1)))
                return
            match = _MOVES.match(self.path)
            if method == "POST" and match:
                self._send_json(200, self.service.move(match.group(1), self._read_json()))
                return
            match = _HINT.match(self.path)
            if method == "GET" and match:
                self._send_json(200, self.service.hint(match.group(1)))
                return
            if method == "GET" and self._serve_static():
                return
            self._send_json(404, {"error": f"no route for {method} {self.path}"})
        except ServiceError as exc:
            self._send_json(exc.status, {"error": exc.message})
        except IllegalMove as exc:
            self._send_json(422, {"error": str(exc)})
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(500, {"error": f"internal error: {exc}"})

    def _serve_static(self) -> bool:
        if not self.ui_dir:
            return False
        import os

        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        path = os.path.normpath(os.path.join(self.ui_dir, rel))
        if not path.startswith(os.path.normpath(self.ui_dir)) or not os.path.isfile(path):
            return False
        types = {
            ".html": "text/html",
            ".js": "text/javascript",
            ".css": "text/css",
            ".svg": "image/svg+xml",
            ".map": "application/json",
        }
        ctype = types.get(os.path.splitext(path)[1], "application/octet-stream")
        with open(path, "rb") as fh:
            body = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)
        return True

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")


def make_server(
    host: str = "127.0.0.1",
    port: int = 0,
    *,
    service: GameService | None = None,
    ui_dir: str | None = None,
) -> ThreadingHTTPServer:
    handler = type(
        "BoundHandler",
        (_Handler,),
        {"service": service or GameService(), "ui_dir": ui_dir},
    )
    return ThreadingHTTPServer((host, port), handler)
