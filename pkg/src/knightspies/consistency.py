"""Deciding which spy sets are consistent with a transcript.

A set S of seats is a consistent spy set for a transcript when |S| is
within the public bound and every statement made by a seat outside S is
true, i.e. for every entry (i, j, a) with i not in S:  a == "spy" iff
j is in S.  Statements by members of S impose no constraint.

Two solvers are provided: a backtracking enumerator with constraint
propagation (`consistent_sets`) and a 2^n brute force used as its oracle
(`brute_force_sets`).  Both are pure functions of the transcript.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from .core import Answer, GameParams, ParameterError, QuestionGraph

SpySet = frozenset[int]


class CorruptedGameError(RuntimeError):
    """No identity assignment within the spy bound fits the transcript."""


class ResourceError(RuntimeError):
    """A consistency query exceeded its size or time budget."""


# Seat count above which service-facing queries refuse to run; the
# backtracker is worst-case exponential.
SERVICE_SEAT_LIMIT = 64


def is_consistent(
    graph: QuestionGraph, params: GameParams, candidate: SpySet
) -> bool:
    """Check the defining condition for a candidate spy set directly."""
    if len(candidate) > params.max_spies:
        return False
    for e in graph.entries:
        if e.asker in candidate:
            continue
        if (e.answer is Answer.SPY) != (e.subject in candidate):
            return False
    return True


def brute_force_sets(graph: QuestionGraph, params: GameParams) -> list[SpySet]:
    """Enumerate all consistent spy sets by exhausting every subset.

    Test oracle only; refuses rooms with more than 20 seats.
    """
    if params.n > 20:
        raise ResourceError(f"brute force capped at n <= 20, got n={params.n}")
    out = []
    for size in range(params.max_spies + 1):
        for combo in itertools.combinations(params.seats, size):
            s = frozenset(combo)
            if is_consistent(graph, params, s):
                out.append(s)
    return out


def _statements_by_seat(graph: QuestionGraph, n: int) -> list[list[tuple[int, bool]]]:
    """For each seat, the (subject, accused) pairs it has stated."""
    by_seat: list[list[tuple[int, bool]]] = [[] for _ in range(n + 1)]
    for e in graph.entries:
        by_seat[e.asker].append((e.subject, e.answer is Answer.SPY))
    return by_seat


_KNIGHT, _SPY, _FREE = 0, 1, 2


def _solve(
    graph: QuestionGraph,
    params: GameParams,
    limit: Optional[int] = None,
    deadline: Optional[float] = None,
) -> list[SpySet]:
    """Backtracking search over seat assignments with unit propagation.

    Branches on the seat involved in the most transcript entries first,
    committing "knight" before "spy": knight commitments propagate harder
    (a knight's statements pin their subjects).
    """
    n = params.n
    stated = _statements_by_seat(graph, n)

    involvement = [0] * (n + 1)
    for e in graph.entries:
        involvement[e.asker] += 1
        involvement[e.subject] += 1
    order = sorted(params.seats, key=lambda s: (-involvement[s], s))

    assign = [_FREE] * (n + 1)
    results: list[SpySet] = []

    def propagate(seat: int, value: int, trail: list[int]) -> bool:
        """Assign seat := value and push knight implications; False on clash."""
        stack = [(seat, value)]
        while stack:
            s, v = stack.pop()
            if assign[s] != _FREE:
                if assign[s] != v:
                    return False
                continue
            assign[s] = v
            trail.append(s)
            if v == _SPY:
                if sum(1 for x in assign[1:] if x == _SPY) > params.max_spies:
                    return False
            else:
                for subject, accused in stated[s]:
                    stack.append((subject, _SPY if accused else _KNIGHT))
        return True

    def undo(trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            assign[trail.pop()] = _FREE

    def search(idx: int, trail: list[int]) -> None:
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceError("consistency search timed out")
        if limit is not None and len(results) >= limit:
            return
        while idx < n and assign[order[idx]] != _FREE:
            idx += 1
        if idx == n:
            results.append(
                frozenset(s for s in params.seats if assign[s] == _SPY)
            )
            return
        seat = order[idx]
        for value in (_KNIGHT, _SPY):
            mark = len(trail)
            if propagate(seat, value, trail):
                search(idx + 1, trail)
            undo(trail, mark)
            if limit is not None and len(results) >= limit:
                return

    search(0, [])
    return results


def consistent_sets(graph: QuestionGraph, params: GameParams) -> list[SpySet]:
    """All consistent spy sets, sorted by (size, seats) for determinism."""
    found = _solve(graph, params)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def count_consistent_sets(
    graph: QuestionGraph,
    params: GameParams,
    limit: Optional[int] = None,
    time_budget: Optional[float] = None,
) -> int:
    """Number of consistent sets, stopping early once `limit` are found."""
    if params.n > SERVICE_SEAT_LIMIT:
        raise ResourceError(
            f"consistency queries are capped at n <= {SERVICE_SEAT_LIMIT}"
        )
    deadline = time.monotonic() + time_budget if time_budget else None
    return len(_solve(graph, params, limit=limit, deadline=deadline))


def iter_consistent_sets_lex(
    graph: QuestionGraph, params: GameParams
) -> Iterator[SpySet]:
    """Yield consistent sets in lexicographic order of their sorted seats.

    The empty set comes first, then {1}, {1,2}, ..., {1,n}, {2}, and so on.
    Used to pick deterministic refutation witnesses without enumerating
    everything.
    """
    n = params.n
    supporters: list[list[int]] = [[] for _ in range(n + 1)]
    for e in graph.entries:
        if e.answer is Answer.KNIGHT:
            supporters[e.subject].append(e.asker)

    chosen: list[int] = []
    chosen_set: set[int] = set()

    def complete_ok() -> bool:
        # Hypothesis: spies are exactly `chosen`, everyone else a knight.
        for e in graph.entries:
            if e.asker in chosen_set:
                continue
            if (e.answer is Answer.SPY) != (e.subject in chosen_set):
                return False
        return True

    def feasible(seat: int) -> bool:
        # In the subtree where `seat` joins the spy set, every smaller seat
        # not already chosen is committed as a knight; a supportive
        # statement from such a seat about `seat` can never be satisfied.
        for who in supporters[seat]:
            if who < seat and who not in chosen_set:
                return False
        return True

    def rec(floor: int) -> Iterator[SpySet]:
        if complete_ok():
            yield frozenset(chosen)
        if len(chosen) == params.max_spies:
            return
        for seat in range(floor, n + 1):
            if not feasible(seat):
                continue
            chosen.append(seat)
            chosen_set.add(seat)
            yield from rec(seat + 1)
            chosen.pop()
            chosen_set.discard(seat)

    yield from rec(1)


class VerdictKind(Enum):
    ACCEPTED = "accepted"
    REFUTED = "refuted"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witness: Optional[SpySet] = None
    claim_consistent: bool = True

    @property
    def accepted(self) -> bool:
        return self.kind is VerdictKind.ACCEPTED


def adjudicate(
    graph: QuestionGraph, params: GameParams, claim: SpySet
) -> Verdict:
    """Accept a claim only if it is the unique consistent spy set.

    Otherwise refute with the lexicographically smallest consistent set
    differing from the claim.  An inconsistent claim is likewise refuted.
    A transcript with no consistent set at all means the answerer broke
    the rules; that raises CorruptedGameError.
    """
    claim = frozenset(claim)
    for seat in claim:
        if seat not in params.seats:
            raise ParameterError(f"claimed seat {seat} out of range")
    claim_ok = is_consistent(graph, params, claim)
    witness = None
    for s in iter_consistent_sets_lex(graph, params):
        if s != claim:
            witness = s
            break
    if witness is None:
        if not claim_ok:
            raise CorruptedGameError(
                "transcript admits no consistent spy set"
            )
        return Verdict(VerdictKind.ACCEPTED, claim_consistent=True)
    return Verdict(VerdictKind.REFUTED, witness=witness, claim_consistent=claim_ok)
