"""The two-player game as a turn engine with an HTTP/JSON API.

One human plays at most one side; the other side is engine-controlled (a
questioning strategy, a fixed behaviour answering for a concrete room,
or the Mole keeper).  Sessions are serialized per game by a lock and
stored in memory, optionally snapshotted to JSON files so clients can
reconnect after a restart.

Outcome rules: a claim accepted before turn n + max_spies wins for the
interrogator; accepted exactly at the start of that turn it is a draw;
anything else is a win for the secret-keeper.  A refuted claim does not
end the game; the witness is recorded and shown.

Endpoints:

  POST /games                     create a session
  GET  /games/{id}                public state
  POST /games/{id}/question       {"asker": int, "subject": int}
  POST /games/{id}/answer         {"answer": "knight"|"spy"}
  POST /games/{id}/claim          {"spies": [int, ...]}
  GET  /games/{id}/analysis       consistent-set count (size capped)

Static files for the web client are served from a configurable directory.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from enum import Enum
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlparse

from . import consistency
from .core import (
    Answer,
    GameParams,
    InvalidMoveError,
    ParameterError,
    QuestionGraph,
    Room,
    entry_to_dict,
    new_room,
    record,
)
from .interrogators import Ask, Interrogator, make_interrogator
from .secretkeepers import (
    MoleKeeper,
    SpyBehavior,
    behavior_answer,
    parse_behavior,
)


class SequencingError(RuntimeError):
    """A request arrived out of turn for the session's current status."""


class Status(Enum):
    AWAITING_QUESTION = "awaiting-question"
    AWAITING_ANSWER = "awaiting-answer"
    FINISHED = "finished"


class Outcome(Enum):
    INTERROGATOR_WIN = "interrogator-win"
    DRAW = "draw"
    SECRET_KEEPER_WIN = "secret-keeper-win"


HUMAN = "human"


@dataclass
class GameSession:
    """One game: parameters, roles, transcript and adjudication state."""

    id: str
    params: GameParams
    interrogator_role: str  # "human" or a strategy id
    keeper_role: str  # "human", "mole", or a behaviour id
    graph: QuestionGraph
    strategy: Optional[Interrogator] = None
    mole: Optional[MoleKeeper] = None
    room: Optional[Room] = None
    behavior: Optional[SpyBehavior] = None
    status: Status = Status.AWAITING_QUESTION
    outcome: Optional[Outcome] = None
    corrupted: bool = False
    final_spies: Optional[frozenset[int]] = None
    claims: list = field(default_factory=list)
    pending_question: Optional[tuple[int, int]] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def turn(self) -> int:
        return len(self.graph) + 1

    @property
    def question_target(self) -> int:
        return self.params.n + self.params.max_spies - 1

    @property
    def draw_turn(self) -> int:
        return self.params.n + self.params.max_spies

    # --- engine plumbing ---------------------------------------------------

    def keeper_answer(self, asker: int, subject: int) -> Answer:
        if self.mole is not None:
            return self.mole.answer(asker, subject)
        return behavior_answer(self.room, self.behavior, asker, subject)

    def apply_question(self, asker: int, subject: int) -> Answer:
        """Record one engine- or human-posed question with its answer."""
        answer = self.keeper_answer(asker, subject)
        self.graph = record(self.graph, asker, subject, answer)
        if self.strategy is not None:
            self.strategy.observe(asker, subject, answer)
        return answer

    def settle_claim(self, claim: frozenset[int]) -> consistency.Verdict:
        verdict = consistency.adjudicate(self.graph, self.params, claim)
        if self.mole is not None:
            witness = self.mole.refute(claim)
            if (witness is None) != verdict.accepted:
                raise RuntimeError(
                    "keeper refutation disagrees with adjudication"
                )
        self.claims.append(
            {
                "turn": self.turn,
                "spies": sorted(claim),
                "accepted": verdict.accepted,
                "witness": None if verdict.witness is None else sorted(verdict.witness),
            }
        )
        if verdict.accepted:
            self.final_spies = claim
            if self.turn < self.draw_turn:
                self.finish(Outcome.INTERROGATOR_WIN)
            elif self.turn == self.draw_turn:
                self.finish(Outcome.DRAW)
            else:
                self.finish(Outcome.SECRET_KEEPER_WIN)
        return verdict

    def finish(self, outcome: Outcome) -> None:
        if self.outcome is not None:
            raise SequencingError("outcome already set")
        self.outcome = outcome
        self.status = Status.FINISHED

    def run_engine(self) -> None:
        """Advance engine-controlled roles until human input is needed."""
        while self.status is not Status.FINISHED:
            if self.interrogator_role == HUMAN:
                if self.status is Status.AWAITING_ANSWER:
                    return  # human keeper owes an answer
                return
            move = self.strategy.next_move()
            if isinstance(move, Ask):
                if self.keeper_role == HUMAN:
                    if self.pending_question is None:
                        self.pending_question = (move.asker, move.subject)
                        self.status = Status.AWAITING_ANSWER
                    return
                self.apply_question(move.asker, move.subject)
                continue
            verdict = self.settle_claim(move.spies)
            if not verdict.accepted:
                # deterministic strategies only claim certainties; a
                # refutation here means an engine bug
                raise RuntimeError("engine claim was refuted")

    # --- public view ---------------------------------------------------------

    def view(self) -> dict:
        reveal = self.status is Status.FINISHED
        out = {
            "id": self.id,
            "n": self.params.n,
            "max_spies": self.params.max_spies,
            "interrogator": self.interrogator_role,
            "secret_keeper": self.keeper_role,
            "turn": self.turn,
            "status": self.status.value,
            "question_target": self.question_target,
            "draw_turn": self.draw_turn,
            "transcript": [entry_to_dict(e) for e in self.graph.entries],
            "claims": self.claims,
            "corrupted": self.corrupted,
            "pending_question": self.pending_question,
        }
        if reveal:
            out["outcome"] = self.outcome.value if self.outcome else None
            out["spies"] = sorted(self.final_spies) if self.final_spies else None
        return out


def create_session(
    n: int,
    max_spies: int,
    interrogator: str = HUMAN,
    keeper: str = "mole",
    spies: Optional[int] = None,
    seed: int = 0,
    session_id: Optional[str] = None,
) -> GameSession:
    """Build a session; engine roles start moving immediately."""
    params = GameParams(n=n, max_spies=max_spies)
    if interrogator == HUMAN and keeper == HUMAN:
        raise ParameterError("one side must be engine-controlled")
    session = GameSession(
        id=session_id or secrets.token_hex(8),
        params=params,
        interrogator_role=interrogator,
        keeper_role=keeper,
        graph=QuestionGraph(n=n),
    )
    if interrogator != HUMAN:
        session.strategy = make_interrogator(interrogator, params)
    if keeper == HUMAN:
        pass
    elif keeper == "mole":
        session.mole = MoleKeeper(params)
    else:
        session.behavior = parse_behavior(keeper).fresh()
        count = max_spies if spies is None else spies
        session.room = new_room(params, count, seed)
    session.run_engine()
    return session


def autoplay(
    n: int,
    max_spies: int,
    interrogator: str,
    keeper: str = "mole",
    spies: Optional[int] = None,
    seed: int = 0,
) -> GameSession:
    """Play a full engine-versus-engine game to its outcome."""
    if interrogator == HUMAN or keeper == HUMAN:
        raise ParameterError("autoplay needs engine roles on both sides")
    return create_session(n, max_spies, interrogator, keeper, spies, seed)


# --- session store -----------------------------------------------------------


class GameStore:
    """Thread-safe session registry with optional JSON snapshots."""

    def __init__(self, snapshot_dir: Optional[Path] = None):
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self.snapshot_dir = Path(snapshot_dir) if snapshot_dir else None
        if self.snapshot_dir:
            self.snapshot_dir.mkdir(parents=True, exist_ok=True)

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = session
        self.snapshot(session)

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise KeyError(session_id) from None

    def snapshot(self, session: GameSession) -> None:
        if not self.snapshot_dir:
            return
        path = self.snapshot_dir / f"{session.id}.json"
        path.write_text(json.dumps(session.view(), indent=2))


# --- HTTP layer ----------------------------------------------------------------


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _session_or_404(store: GameStore, session_id: str) -> GameSession:
    try:
        return store.get(session_id)
    except KeyError:
        raise ApiError(404, "not-found", f"no session {session_id!r}") from None


def handle_create(store: GameStore, body: dict) -> dict:
    try:
        session = create_session(
            n=int(body.get("n", 5)),
            max_spies=int(body.get("max_spies", 2)),
            interrogator=str(body.get("interrogator", HUMAN)),
            keeper=str(body.get("secret_keeper", "mole")),
            spies=None if body.get("spies") is None else int(body["spies"]),
            seed=int(body.get("seed", 0)),
        )
    except (ParameterError, ValueError, TypeError) as exc:
        raise ApiError(422, "bad-params", str(exc)) from exc
    store.add(session)
    return session.view()


def handle_question(store: GameStore, session_id: str, body: dict) -> dict:
    session = _session_or_404(store, session_id)
    with session.lock:
        if session.status is not Status.AWAITING_QUESTION:
            raise ApiError(
                409, "out-of-turn", f"session is {session.status.value}"
            )
        if session.interrogator_role != HUMAN:
            raise ApiError(409, "out-of-turn", "interrogator is engine-run")
        try:
            asker = int(body["asker"])
            subject = int(body["subject"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ApiError(422, "bad-move", "need integer asker and subject") from exc
        if session.keeper_role == HUMAN:
            # validate the move, then wait for the human answer
            try:
                record(session.graph, asker, subject, Answer.SPY)
            except InvalidMoveError as exc:
                raise ApiError(422, "invalid-move", str(exc)) from exc
            session.pending_question = (asker, subject)
            session.status = Status.AWAITING_ANSWER
            session_view = session.view()
            store.snapshot(session)
            return session_view
        try:
            answer = session.apply_question(asker, subject)
        except InvalidMoveError as exc:
            raise ApiError(422, "invalid-move", str(exc)) from exc
        view = session.view()
        view["answer"] = answer.value
        store.snapshot(session)
        return view


def handle_answer(store: GameStore, session_id: str, body: dict) -> dict:
    session = _session_or_404(store, session_id)
    with session.lock:
        if session.status is not Status.AWAITING_ANSWER:
            raise ApiError(409, "out-of-turn", "no question awaits an answer")
        try:
            answer = Answer(str(body["answer"]))
        except (KeyError, ValueError) as exc:
            raise ApiError(422, "bad-answer", 'answer must be "knight" or "spy"') from exc
        asker, subject = session.pending_question
        session.graph = record(session.graph, asker, subject, answer)
        session.pending_question = None
        session.status = Status.AWAITING_QUESTION
        if session.strategy is not None:
            session.strategy.observe(asker, subject, answer)
        # the answer checker: an answer leaving no identity assignment
        # within the spy bound loses the game for the keeper
        sets = consistency.consistent_sets(session.graph, session.params)
        if not sets:
            session.corrupted = True
            session.finish(Outcome.INTERROGATOR_WIN)
        else:
            session.run_engine()
        view = session.view()
        store.snapshot(session)
        return view


def handle_claim(store: GameStore, session_id: str, body: dict) -> dict:
    session = _session_or_404(store, session_id)
    with session.lock:
        if session.status is not Status.AWAITING_QUESTION:
            raise ApiError(409, "out-of-turn", "claims open a turn")
        if session.interrogator_role != HUMAN:
            raise ApiError(409, "out-of-turn", "interrogator is engine-run")
        try:
            claim = frozenset(int(s) for s in body["spies"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ApiError(422, "bad-claim", "spies must be a seat list") from exc
        if len(claim) > session.params.max_spies:
            raise ApiError(422, "bad-claim", "claim exceeds the spy bound")
        try:
            verdict = session.settle_claim(claim)
        except ParameterError as exc:
            raise ApiError(422, "bad-claim", str(exc)) from exc
        except consistency.CorruptedGameError as exc:
            raise ApiError(409, "corrupted", str(exc)) from exc
        view = session.view()
        view["verdict"] = {
            "accepted": verdict.accepted,
            "witness": None if verdict.witness is None else sorted(verdict.witness),
        }
        store.snapshot(session)
        return view


def handle_analysis(store: GameStore, session_id: str, query: dict) -> dict:
    """Consistent-set count for the transcript, optionally with one
    hypothetical next answer appended (the answer checker's what-if)."""
    session = _session_or_404(store, session_id)
    with session.lock:
        if session.params.n > consistency.SERVICE_SEAT_LIMIT:
            raise ApiError(422, "too-large", "analysis capped by room size")
        graph = session.graph
        hypothetical = None
        if "answer" in query:
            try:
                asker = int(query["asker"][0])
                subject = int(query["subject"][0])
                answer = Answer(query["answer"][0])
            except (KeyError, ValueError, IndexError) as exc:
                raise ApiError(
                    422, "bad-hypothetical",
                    "need asker, subject and answer parameters",
                ) from exc
            try:
                graph = record(graph, asker, subject, answer)
            except InvalidMoveError as exc:
                raise ApiError(422, "invalid-move", str(exc)) from exc
            hypothetical = {
                "asker": asker, "subject": subject, "answer": answer.value,
            }
        try:
            count = consistency.count_consistent_sets(
                graph, session.params, limit=1000, time_budget=5.0
            )
        except consistency.ResourceError as exc:
            raise ApiError(422, "resource", str(exc)) from exc
        return {
            "id": session.id,
            "turn": session.turn,
            "consistent_sets": count,
            "capped_at": 1000,
            "hypothetical": hypothetical,
        }


class _Handler(BaseHTTPRequestHandler):
    store: GameStore = None
    static_dir: Optional[Path] = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        data = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if not length:
            return {}
        try:
            return json.loads(self.rfile.read(length))
        except json.JSONDecodeError:
            raise ApiError(400, "bad-json", "request body is not JSON")

    def _route(self, method: str) -> None:
        path = urlparse(self.path).path
        parts = [p for p in path.split("/") if p]
        try:
            if method == "POST" and parts == ["games"]:
                self._send_json(201, handle_create(self.store, self._body()))
            elif method == "GET" and len(parts) == 2 and parts[0] == "games":
                session = _session_or_404(self.store, parts[1])
                with session.lock:
                    self._send_json(200, session.view())
            elif (
                method == "POST"
                and len(parts) == 3
                and parts[0] == "games"
                and parts[2] in ("question", "answer", "claim")
            ):
                handler = {
                    "question": handle_question,
                    "answer": handle_answer,
                    "claim": handle_claim,
                }[parts[2]]
                self._send_json(200, handler(self.store, parts[1], self._body()))
            elif (
                method == "GET"
                and len(parts) == 3
                and parts[0] == "games"
                and parts[2] == "analysis"
            ):
                query = parse_qs(urlparse(self.path).query)
                self._send_json(200, handle_analysis(self.store, parts[1], query))
            elif method == "GET":
                self._serve_static(path)
            else:
                raise ApiError(404, "not-found", f"no route {method} {path}")
        except ApiError as exc:
            self._send_json(exc.status, {"code": exc.code, "message": exc.message})
        except (SequencingError, InvalidMoveError) as exc:
            self._send_json(409, {"code": "sequencing", "message": str(exc)})
        except Exception as exc:  # pragma: no cover - last resort
            self._send_json(500, {"code": "internal", "message": str(exc)})

    def _serve_static(self, path: str) -> None:
        if self.static_dir is None:
            raise ApiError(404, "not-found", "no static bundle configured")
        rel = path.lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())):
            raise ApiError(404, "not-found", "outside static root")
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            raise ApiError(404, "not-found", f"no file {rel!r}")
        ctype = {
            ".html": "text/html",
            ".js": "text/javascript",
            ".css": "text/css",
            ".json": "application/json",
            ".svg": "image/svg+xml",
        }.get(target.suffix, "application/octet-stream")
        data = target.read_bytes()
        self.send_response(HTTPStatus.OK)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        self._route("GET")

    def do_POST(self):
        self._route("POST")


def make_server(
    port: int = 0,
    static_dir: Optional[str] = None,
    snapshot_dir: Optional[str] = None,
) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; port 0 picks a free one."""
    store = GameStore(snapshot_dir=Path(snapshot_dir) if snapshot_dir else None)
    handler = type(
        "Handler",
        (_Handler,),
        {
            "store": store,
            "static_dir": Path(static_dir) if static_dir else None,
        },
    )
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(port: int, static_dir: Optional[str] = None, snapshot_dir=None) -> None:
    server = make_server(port, static_dir, snapshot_dir)
    host, actual_port = server.server_address
    print(f"serving on http://{host}:{actual_port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
