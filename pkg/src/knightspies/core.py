"""Domain types for knights-and-spies rooms and question transcripts.

Everything here is immutable: rooms and transcripts are frozen values, and
`record` evolves a transcript by returning a new one.  Seats are numbered
1..n throughout, and transcripts carry explicit 1-based turn numbers so that
worked example games can be replayed move for move.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional


class ParameterError(ValueError):
    """Raised for invalid game parameters or arguments."""


class InvalidMoveError(ValueError):
    """Raised for self-questions, repeated questions and out-of-range seats."""


class Identity(Enum):
    KNIGHT = "knight"
    SPY = "spy"


class Answer(Enum):
    """A reply to "what is the identity of person j?".

    KNIGHT is a supportive statement, SPY an accusation.
    """

    KNIGHT = "knight"
    SPY = "spy"


@dataclass(frozen=True)
class GameParams:
    """Room size n and the public bound max_spies on the number of spies.

    Requires n >= 3 and 1 <= max_spies < n/2, i.e. knights are guaranteed
    to be in a strict majority.
    """

    n: int
    max_spies: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not isinstance(self.max_spies, int):
            raise ParameterError("n and max_spies must be integers")
        if self.n < 3:
            raise ParameterError(f"need at least 3 people, got n={self.n}")
        if not 1 <= self.max_spies or not 2 * self.max_spies < self.n:
            raise ParameterError(
                f"max_spies must satisfy 1 <= max_spies < n/2, got "
                f"n={self.n}, max_spies={self.max_spies}"
            )

    @property
    def seats(self) -> range:
        return range(1, self.n + 1)


def max_questions(params: GameParams) -> int:
    """Worst-case questions needed to identify everyone: n + max_spies - 1."""
    return params.n + params.max_spies - 1


def f_target(n: int) -> int:
    """The question bound when all that is known is that knights outnumber spies.

    Equals max_questions with max_spies = floor((n-1)/2): 3m-3 for n = 2m-1
    and 3m-2 for n = 2m.
    """
    if not isinstance(n, int) or n < 3:
        raise ParameterError(f"need n >= 3, got {n!r}")
    if n % 2 == 1:
        m = (n + 1) // 2
        return 3 * m - 3
    m = n // 2
    return 3 * m - 2


@dataclass(frozen=True)
class Room:
    """A hidden assignment of identities to seats plus the public bound.

    The seed used to generate the room is kept for replay; rooms built by
    hand carry seed=None.
    """

    params: GameParams
    identities: tuple[Identity, ...]
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.identities) != self.params.n:
            raise ParameterError(
                f"room has {len(self.identities)} identities for n={self.params.n}"
            )
        if self.spy_count > self.params.max_spies:
            raise ParameterError(
                f"{self.spy_count} spies exceed the bound {self.params.max_spies}"
            )

    def identity_of(self, seat: int) -> Identity:
        return self.identities[seat - 1]

    def is_spy(self, seat: int) -> bool:
        return self.identities[seat - 1] is Identity.SPY

    @property
    def spy_seats(self) -> frozenset[int]:
        return frozenset(
            seat for seat in self.params.seats if self.is_spy(seat)
        )

    @property
    def spy_count(self) -> int:
        return sum(1 for i in self.identities if i is Identity.SPY)

    @property
    def knight_count(self) -> int:
        return self.params.n - self.spy_count


def new_room(params: GameParams, spies: int, seed: int) -> Room:
    """Draw a room with exactly `spies` spies, uniformly over seat choices.

    The identity multiset is shuffled with a generator seeded by `seed`;
    identical seeds give identical rooms.
    """
    import random

    if not 0 <= spies <= params.max_spies:
        raise ParameterError(
            f"spy count {spies} outside [0, {params.max_spies}]"
        )
    ids = [Identity.SPY] * spies + [Identity.KNIGHT] * (params.n - spies)
    random.Random(seed).shuffle(ids)
    return Room(params=params, identities=tuple(ids), seed=seed)


def room_from_spy_seats(params: GameParams, spy_seats: Iterable[int]) -> Room:
    """Build a room by listing the spy seats explicitly."""
    spy_set = set(spy_seats)
    for seat in spy_set:
        if seat not in params.seats:
            raise ParameterError(f"seat {seat} out of range for n={params.n}")
    ids = tuple(
        Identity.SPY if seat in spy_set else Identity.KNIGHT
        for seat in params.seats
    )
    return Room(params=params, identities=ids)


class Entry(NamedTuple):
    turn: int
    asker: int
    subject: int
    answer: Answer


@dataclass(frozen=True)
class QuestionGraph:
    """An ordered transcript of (asker, subject, answer) triples.

    Invariants: askers never ask about themselves, no (asker, subject) pair
    repeats, and turn numbers run 1, 2, 3, ... in order.
    """

    n: int
    entries: tuple[Entry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def pairs(self) -> set[tuple[int, int]]:
        return {(e.asker, e.subject) for e in self.entries}

    def subjects(self) -> set[int]:
        return {e.subject for e in self.entries}

    @property
    def next_turn(self) -> int:
        return len(self.entries) + 1


def record(
    graph: QuestionGraph, asker: int, subject: int, answer: Answer
) -> QuestionGraph:
    """Append a question and its answer, returning a new transcript.

    Self-questions and verbatim repeats are rejected here rather than
    answered: every strategy in the library assumes they never occur.
    """
    if asker not in range(1, graph.n + 1) or subject not in range(1, graph.n + 1):
        raise InvalidMoveError(
            f"seats must lie in 1..{graph.n}, got asker={asker} subject={subject}"
        )
    if asker == subject:
        raise InvalidMoveError(f"person {asker} may not be asked about himself")
    if any(e.asker == asker and e.subject == subject for e in graph.entries):
        raise InvalidMoveError(
            f"({asker}, {subject}) has already been asked"
        )
    entry = Entry(graph.next_turn, asker, subject, answer)
    return QuestionGraph(n=graph.n, entries=graph.entries + (entry,))


# --- transcript serialization -------------------------------------------
#
# One JSON object per line: {"turn": int, "asker": int, "subject": int,
# "answer": "knight"|"spy"}.  This format is shared by the CLI, the game
# service and the web client.


def entry_to_dict(entry: Entry) -> dict:
    return {
        "turn": entry.turn,
        "asker": entry.asker,
        "subject": entry.subject,
        "answer": entry.answer.value,
    }


def graph_to_jsonl(graph: QuestionGraph) -> str:
    return "".join(json.dumps(entry_to_dict(e)) + "\n" for e in graph.entries)


def graph_from_jsonl(text: str, n: int) -> QuestionGraph:
    """Parse a newline-delimited transcript, revalidating every move."""
    graph = QuestionGraph(n=n)
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            answer = Answer(obj["answer"])
            asker = int(obj["asker"])
            subject = int(obj["subject"])
            turn = int(obj.get("turn", graph.next_turn))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParameterError(f"bad transcript line {lineno}: {line!r}") from exc
        if turn != graph.next_turn:
            raise ParameterError(
                f"line {lineno}: turn {turn}, expected {graph.next_turn}"
            )
        graph = record(graph, asker, subject, answer)
    return graph
