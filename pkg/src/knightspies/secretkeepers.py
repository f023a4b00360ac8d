"""Answer-side policies: fixed spy behaviours and the Mole Hiding keeper.

Fixed behaviours answer on behalf of a concrete room: knights always tell
the truth, while spies answer truthfully, always lie (knavish), always say
"spy" (spyish) or flip a seeded coin.  The Mole keeper needs no room at
all: it answers adaptively so that, right up to the question bound, at
least two different spy sets remain consistent with the transcript.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import consistency
from .core import (
    Answer,
    GameParams,
    Identity,
    ParameterError,
    QuestionGraph,
    Room,
)


# --- fixed behaviours ------------------------------------------------------


class SpyBehavior:
    """Base class; subclasses decide what a spy replies."""

    name = "abstract"

    def spy_answer(self, room: Room, asker: int, subject: int) -> Answer:
        raise NotImplementedError

    def fresh(self) -> "SpyBehavior":
        """A per-game copy (relevant only for stateful behaviours)."""
        return self


class TruthfulSpies(SpyBehavior):
    name = "truthful"

    def spy_answer(self, room: Room, asker: int, subject: int) -> Answer:
        return _truth(room, subject)


class KnavishSpies(SpyBehavior):
    """Spies always lie.

    `honest_pairs` lists (asker, subject) exceptions where the spy answers
    truthfully instead; this is how published example games that deviate
    from pure lying on a single answer are replayed.
    """

    name = "knavish"

    def __init__(self, honest_pairs: frozenset[tuple[int, int]] = frozenset()):
        self.honest_pairs = honest_pairs

    def spy_answer(self, room: Room, asker: int, subject: int) -> Answer:
        truth = _truth(room, subject)
        if (asker, subject) in self.honest_pairs:
            return truth
        return Answer.SPY if truth is Answer.KNIGHT else Answer.KNIGHT


class SpyishSpies(SpyBehavior):
    name = "spyish"

    def spy_answer(self, room: Room, asker: int, subject: int) -> Answer:
        return Answer.SPY


class RandomSpies(SpyBehavior):
    """Spies answer with a fair coin per question."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    @property
    def name(self) -> str:
        return f"random:{self.seed}"

    def fresh(self) -> "RandomSpies":
        return RandomSpies(self.seed)

    def spy_answer(self, room: Room, asker: int, subject: int) -> Answer:
        return Answer.SPY if self._rng.random() < 0.5 else Answer.KNIGHT


def _truth(room: Room, subject: int) -> Answer:
    return (
        Answer.SPY if room.identity_of(subject) is Identity.SPY else Answer.KNIGHT
    )


def behavior_answer(
    room: Room, behavior: SpyBehavior, asker: int, subject: int
) -> Answer:
    """What seat `asker` replies when asked about `subject`."""
    if asker == subject:
        raise ParameterError("self-questions are rejected upstream")
    if room.identity_of(asker) is Identity.KNIGHT:
        return _truth(room, subject)
    return behavior.spy_answer(room, asker, subject)


def parse_behavior(spec: str) -> SpyBehavior:
    """Map identifiers "truthful", "knavish", "spyish", "random:<seed>"."""
    if spec == "truthful":
        return TruthfulSpies()
    if spec == "knavish":
        return KnavishSpies()
    if spec == "spyish":
        return SpyishSpies()
    if spec.startswith("random:"):
        try:
            return RandomSpies(int(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise ParameterError(f"bad random seed in {spec!r}") from exc
    raise ParameterError(f"unknown behaviour {spec!r}")


FIXED_BEHAVIORS = ("truthful", "knavish", "spyish")


# --- the Mole Hiding keeper -------------------------------------------------


@dataclass
class _Component:
    members: frozenset[int]
    asked: set[int] = field(default_factory=set)
    supported: Optional[int] = None  # set once every member has been asked about

    @property
    def exhausted(self) -> bool:
        return self.supported is not None


class MoleKeeper:
    """Two-phase adaptive keeper that concedes nothing early.

    Phase 1 answers the first max_spies - 1 questions with blanket
    accusations.  The seats touched by those questions form a graph G whose
    connected components are then frozen.  Phase 2 supports anyone outside
    G; inside a component it accuses until the last never-asked-about
    member comes up, supports that one member, and from then on supports
    only him.  (Supporting a second member of an exhausted component can
    leave the transcript with no consistent spy set, so repeat questions
    about the others keep drawing accusations.)
    """

    def __init__(self, params: GameParams):
        self.params = params
        self.answered = 0
        self.graph = QuestionGraph(n=params.n)
        self._phase1_pairs: list[tuple[int, int]] = []
        self._frozen = False
        self._components: list[_Component] = []
        self._component_of: dict[int, _Component] = {}
        self._phase2_subjects: set[int] = set()

    # phase boundary -------------------------------------------------------

    @property
    def in_phase_one(self) -> bool:
        return self.answered < self.params.max_spies - 1

    @staticmethod
    def _group_components(pairs: list[tuple[int, int]]) -> list[frozenset[int]]:
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for seat in parent:
            groups.setdefault(find(seat), set()).add(seat)
        return [frozenset(members) for members in groups.values()]

    def _freeze_components(self) -> None:
        self._frozen = True
        for members in self._group_components(self._phase1_pairs):
            comp = _Component(members=members)
            self._components.append(comp)
            for seat in members:
                self._component_of[seat] = comp

    # answering -------------------------------------------------------------

    def answer(self, asker: int, subject: int) -> Answer:
        from .core import record

        if self.in_phase_one:
            reply = Answer.SPY
            self._phase1_pairs.append((asker, subject))
        else:
            if not self._frozen:
                self._freeze_components()
            reply = self._phase2_answer(subject)
            self._phase2_subjects.add(subject)
        self.graph = record(self.graph, asker, subject, reply)
        self.answered += 1
        return reply

    def _phase2_answer(self, subject: int) -> Answer:
        comp = self._component_of.get(subject)
        if comp is None:
            return Answer.KNIGHT
        if comp.exhausted:
            return Answer.KNIGHT if subject == comp.supported else Answer.SPY
        remaining = comp.members - comp.asked
        if remaining == {subject}:
            comp.supported = subject
            comp.asked.add(subject)
            return Answer.KNIGHT
        comp.asked.add(subject)
        return Answer.SPY

    # claims ----------------------------------------------------------------

    def current_spy_set(self) -> frozenset[int]:
        """The set S the keeper would exhibit right now.

        Each component contributes all members but one: the member already
        singled out by support once the component is exhausted, otherwise
        the lowest member never yet asked about.  Works mid-phase-1 too,
        by grouping the accusations made so far.
        """
        if self._frozen:
            components = self._components
        else:
            components = [
                _Component(members=m)
                for m in self._group_components(self._phase1_pairs)
            ]
        spies: set[int] = set()
        for comp in components:
            keep = (
                comp.supported
                if comp.exhausted
                else min(comp.members - comp.asked)
            )
            spies.update(comp.members - {keep})
        return frozenset(spies)

    def refute(self, claim: frozenset[int]) -> Optional[frozenset[int]]:
        """A consistent spy set different from the claim, or None to accept.

        Constructs S from the component bookkeeping; when some seat has
        never been asked about in phase 2 the enlarged set S + {x} serves
        as a second witness.  In the rare case both constructions coincide
        with the claim, the consistency solver is consulted before
        conceding, so acceptance always matches adjudication.
        """
        claim = frozenset(claim)
        base = self.current_spy_set()
        if base != claim:
            return base
        unasked = [
            seat
            for seat in self.params.seats
            if seat not in self._phase2_subjects
        ]
        if unasked:
            x = min(unasked)
            star = base | {x}
            if star != claim:
                return star
        for s in consistency.iter_consistent_sets_lex(self.graph, self.params):
            if s != claim:
                return s
        return None


def parse_keeper(spec: str):
    """Keeper identifiers: the fixed behaviours plus "mole"."""
    if spec == "mole":
        return None
    return parse_behavior(spec)
