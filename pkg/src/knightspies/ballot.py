"""Lattice-path combinatorics behind the spider strategy's savings.

The candidate-hunting step of the spider strategy maps to a walk of +-1
steps: up when a knight is supported or a spy accused, down otherwise,
with an initial step for each candidate implicitly voting for himself.
Extending the walk until everyone has been involved makes every walk
exactly n steps long, so under always-lying spies each seat contributes
the step matching his identity and rooms with k knights and s spies
correspond to paths with k upsteps and s downsteps.

Questions saved by the strategy equal visits of this path to 0 from
above.  Everything here is exact: big integers for path counts and
binomials, rationals for probabilities, because the headline result (the
savings distribution does not depend on whether spies always lie or
always accuse) is an exact distribution equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional

from .core import GameParams, ParameterError, Room, room_from_spy_seats
from .interrogators import spider_run
from .secretkeepers import KnavishSpies, SpyBehavior, SpyishSpies, behavior_answer


class UnsupportedModeError(ValueError):
    """Raised when a path encoding is requested outside its valid regime."""


@dataclass(frozen=True)
class Path:
    """A +-1 step sequence with an optional shifted start height."""

    steps: tuple[int, ...]
    start_height: int = 0

    def __post_init__(self) -> None:
        if any(s not in (-1, 1) for s in self.steps):
            raise ParameterError("path steps must be +1 or -1")

    @property
    def upsteps(self) -> int:
        return sum(1 for s in self.steps if s == 1)

    @property
    def downsteps(self) -> int:
        return len(self.steps) - self.upsteps

    def heights(self) -> list[int]:
        """Height after each step; index 0 is the start height."""
        out = [self.start_height]
        for s in self.steps:
            out.append(out[-1] + s)
        return out

    @property
    def end_height(self) -> int:
        return self.start_height + sum(self.steps)


def visits_from_above(path: Path, level: int) -> int:
    """Count the times r where step r moves down onto height `level`."""
    count = 0
    h = path.start_height
    for s in path.steps:
        h += s
        if s == -1 and h == level:
            count += 1
    return count


def visit_times_from_above(path: Path, level: int) -> list[int]:
    times = []
    h = path.start_height
    for r, s in enumerate(path.steps, start=1):
        h += s
        if s == -1 and h == level:
            times.append(r)
    return times


def all_paths(k: int, s: int) -> Iterator[Path]:
    """Every path with k upsteps and s downsteps."""
    n = k + s
    for down_positions in itertools.combinations(range(n), s):
        downs = set(down_positions)
        yield Path(tuple(-1 if i in downs else 1 for i in range(n)))


def reflect_between_extremes(path: Path, level: int) -> Path:
    """Reflect the segment between the first and last visit to `level`.

    A visit here is any time (including time 0) the height equals
    `level`.  The result has the same endpoints and step counts, and its
    visits from above to `level` and `level - 1` swap with the
    original's.  Applying the reflection twice gives the path back.
    """
    heights = path.heights()
    times = [t for t, h in enumerate(heights) if h == level]
    if not times:
        raise ParameterError(f"path never visits height {level}")
    b, c = times[0], times[-1]
    steps = list(path.steps)
    for i in range(b, c):
        steps[i] = -steps[i]
    return Path(tuple(steps), start_height=path.start_height)


def reflect_first_visit(path: Path) -> Path:
    """Reflect the prefix ending at the first visit to -1 in that line.

    The result starts at height -2 (kept as an annotation so visit
    counting stays well defined), reaches the same endpoint, and has one
    more upstep and one fewer downstep; its visits to -1 from above are
    the original's minus one.
    """
    if path.start_height != 0:
        raise ParameterError("defined for paths starting at height 0")
    heights = path.heights()
    d = next((t for t, h in enumerate(heights) if h == -1), None)
    if d is None:
        raise ParameterError("path never visits -1")
    steps = list(path.steps)
    for i in range(d):
        steps[i] = -steps[i]
    return Path(tuple(steps), start_height=-2)


def c_visits(k: int, s: int) -> int:
    """Total visits to -1 from above over all (k, s) paths.

    Closed form: sum of C(k+s, r) for 0 <= r <= s-1.
    """
    if k < s or s < 0:
        raise ParameterError(f"need k >= s >= 0, got k={k}, s={s}")
    n = k + s
    return sum(comb(n, r) for r in range(s))


def expected_saved(k: int, s: int) -> Fraction:
    """Expected questions saved in a room of k knights and s spies."""
    if k <= s or s < 0:
        raise ParameterError(f"need k > s >= 0, got k={k}, s={s}")
    return Fraction(c_visits(k, s), comb(k + s, s))


def g_lower_bound(bound: int, n: int) -> float:
    """Chance that the first bound+1 seats hold no spy is at least
    (1 - bound/(n - bound))^(bound + 1); increasing in n for fixed bound."""
    if bound < 2 or n <= 2 * bound:
        raise ParameterError(f"need bound >= 2 and n > 2*bound, got {bound}, {n}")
    return float((1 - Fraction(bound, n - bound)) ** (bound + 1))


def h_value(bound: int) -> float:
    """g evaluated at n = bound^2: (1 - 1/(bound - 1))^(bound + 1)."""
    if bound < 2:
        raise ParameterError(f"need bound >= 2, got {bound}")
    return float((1 - Fraction(1, bound - 1)) ** (bound + 1))


# --- the room/path correspondence -------------------------------------------


def path_from_step1(room: Room, behavior: Optional[SpyBehavior] = None) -> Path:
    """Encode the candidate-hunting step on a room as an n-step path.

    Replays the spider's first step (lowest fresh seat as candidate and
    as questioner) and then keeps questioning fresh people about the
    accepted candidate until everyone in the room has either been a
    candidate or been asked a question, so the path has exactly n steps.

    Only always-lying spies are supported: that is the regime where seats
    and steps correspond one to one (honest-exception pairs configured on
    the behaviour knowingly break the up=knight reading but keep the
    replay faithful).
    """
    if behavior is None:
        behavior = KnavishSpies()
    if not isinstance(behavior, KnavishSpies):
        raise UnsupportedModeError(
            "path encoding requires always-lying spies"
        )
    params = room.params
    budget = params.max_spies
    fresh = set(params.seats)
    steps: list[int] = []

    def answer_step(subject: int, answer) -> int:
        # up when a knight is supported or a spy accused
        supported = answer.value == "knight"
        return 1 if supported != room.is_spy(subject) else -1

    while True:
        candidate = min(fresh)
        fresh.discard(candidate)
        steps.append(-1 if room.is_spy(candidate) else 1)  # implicit self-vote
        supporters = 0
        accusers = 0
        accepted = False
        while True:
            if supporters == budget:
                accepted = True
                break
            if accusers == supporters + 1:
                break
            asker = min(fresh)
            fresh.discard(asker)
            answer = behavior_answer(room, behavior, asker, candidate)
            steps.append(answer_step(candidate, answer))
            if answer.value == "knight":
                supporters += 1
            else:
                accusers += 1
        if accepted:
            break
        budget -= accusers
    for asker in sorted(fresh):
        answer = behavior_answer(room, behavior, asker, candidate)
        steps.append(answer_step(candidate, answer))
    if len(steps) != params.n:
        raise RuntimeError(f"path has {len(steps)} steps for n={params.n}")
    return Path(tuple(steps))


def rejected_knights_equals_visits(room: Room) -> bool:
    """Check the bijection: rejected knights in the candidate hunt equal
    the path's visits to 0 from above (always-lying spies)."""
    _, _, r = spider_run(room, KnavishSpies())
    path = path_from_step1(room)
    return visits_from_above(path, 0) == r


# --- exact savings distributions ---------------------------------------------


def distribution_saved(
    k: int, s: int, behavior: Optional[SpyBehavior] = None
) -> dict[int, Fraction]:
    """Exact distribution of questions saved over all seat arrangements.

    Runs the spider strategy on every one of the C(k+s, s) rooms with k
    knights and s spies and tallies the rejected-knight count.  Only the
    two constrained behaviours are meaningful here.
    """
    if behavior is None:
        behavior = KnavishSpies()
    if not isinstance(behavior, (KnavishSpies, SpyishSpies)):
        raise UnsupportedModeError(
            "savings distributions are defined for always-lying or "
            "always-accusing spies"
        )
    if k <= s or s < 0:
        raise ParameterError(f"need k > s >= 0, got k={k}, s={s}")
    if k + s > 20:
        raise ParameterError("full enumeration capped at k + s <= 20")
    if s == 0:
        return {0: Fraction(1)}
    n = k + s
    params = GameParams(n=n, max_spies=s)
    total = comb(n, s)
    counts: dict[int, int] = {}
    for spy_seats in itertools.combinations(range(1, n + 1), s):
        room = room_from_spy_seats(params, spy_seats)
        _, _, r = spider_run(room, behavior)
        counts[r] = counts.get(r, 0) + 1
    return {q: Fraction(c, total) for q, c in sorted(counts.items())}


def distribution_mean(dist: dict[int, Fraction]) -> Fraction:
    return sum((Fraction(q) * p for q, p in dist.items()), Fraction(0))


# --- enumeration-backed verification -----------------------------------------
#
# Each check returns a JSON-ready report: {"check", "params", "status",
# "counterexample"?}.  Status is "pass" or "fail".


def _report(check: str, params: dict, ok: bool, counterexample=None) -> dict:
    out = {"check": check, "params": params, "status": "pass" if ok else "fail"}
    if counterexample is not None:
        out["counterexample"] = counterexample
    return out


def check_rejection_visit_bijection(max_n: int = 10) -> dict:
    """Rejected knights == visits to 0 from above, every room, every bound."""
    for n in range(3, max_n + 1):
        for bound in range(1, (n - 1) // 2 + 1):
            params = GameParams(n=n, max_spies=bound)
            for s in range(0, bound + 1):
                for spies in itertools.combinations(range(1, n + 1), s):
                    room = room_from_spy_seats(params, spies)
                    if not rejected_knights_equals_visits(room):
                        return _report(
                            "rejected-knights-equal-visits",
                            {"max_n": max_n},
                            False,
                            {"n": n, "bound": bound, "spies": list(spies)},
                        )
    return _report("rejected-knights-equal-visits", {"max_n": max_n}, True)


def check_visit_histogram_invariance(max_steps: int = 12) -> dict:
    """The number of paths with exactly p visits from above to level m is
    the same for every m from -1 up to k - s."""
    for total in range(1, max_steps + 1):
        for s in range(0, total // 2 + 1):
            k = total - s
            if k < s:
                continue
            histograms: list[dict[int, int]] = []
            levels = list(range(-1, k - s + 1))
            for level in levels:
                hist: dict[int, int] = {}
                for path in all_paths(k, s):
                    v = visits_from_above(path, level)
                    hist[v] = hist.get(v, 0) + 1
                histograms.append(hist)
            if any(h != histograms[0] for h in histograms[1:]):
                return _report(
                    "visit-histogram-invariance",
                    {"max_steps": max_steps},
                    False,
                    {"k": k, "s": s},
                )
    return _report("visit-histogram-invariance", {"max_steps": max_steps}, True)


def check_reflection_bijections(max_steps: int = 12) -> dict:
    """Both reflections are bijections with the stated visit transfers."""
    for total in range(1, max_steps + 1):
        for s in range(0, total // 2 + 1):
            k = total - s
            if k < s:
                continue
            seen: set[tuple[int, ...]] = set()
            for path in all_paths(k, s):
                for level in range(0, k - s + 1):
                    refl = reflect_between_extremes(path, level)
                    if (refl.upsteps, refl.downsteps) != (k, s):
                        return _report(
                            "reflection-bijections",
                            {"max_steps": max_steps},
                            False,
                            {"k": k, "s": s, "level": level, "path": path.steps},
                        )
                    back = reflect_between_extremes(refl, level)
                    ok = (
                        back == path
                        and visits_from_above(refl, level)
                        == visits_from_above(path, level - 1)
                        and visits_from_above(refl, level - 1)
                        == visits_from_above(path, level)
                    )
                    if not ok:
                        return _report(
                            "reflection-bijections",
                            {"max_steps": max_steps},
                            False,
                            {"k": k, "s": s, "level": level, "path": path.steps},
                        )
                if visits_from_above(path, -1) > 0:
                    star = reflect_first_visit(path)
                    if (star.upsteps, star.downsteps) != (k + 1, s - 1):
                        return _report(
                            "reflection-bijections",
                            {"max_steps": max_steps},
                            False,
                            {"k": k, "s": s, "path": path.steps},
                        )
                    if visits_from_above(star, -1) != visits_from_above(path, -1) - 1:
                        return _report(
                            "reflection-bijections",
                            {"max_steps": max_steps},
                            False,
                            {"k": k, "s": s, "path": path.steps},
                        )
                    if star.steps in seen:
                        return _report(
                            "reflection-bijections",
                            {"max_steps": max_steps},
                            False,
                            {"k": k, "s": s, "path": path.steps,
                             "reason": "first-visit reflection not injective"},
                        )
                    seen.add(star.steps)
    return _report("reflection-bijections", {"max_steps": max_steps}, True)


def check_visit_total_formula(max_steps: int = 14) -> dict:
    """Enumerated visits to -1 from above match the binomial sum exactly."""
    for total in range(1, max_steps + 1):
        for s in range(0, total + 1):
            k = total - s
            if k < s:
                continue
            enumerated = sum(
                visits_from_above(path, -1) for path in all_paths(k, s)
            )
            if enumerated != c_visits(k, s):
                return _report(
                    "visit-total-formula",
                    {"max_steps": max_steps},
                    False,
                    {"k": k, "s": s, "enumerated": enumerated,
                     "formula": c_visits(k, s)},
                )
    return _report("visit-total-formula", {"max_steps": max_steps}, True)


def check_savings_distribution_invariance(max_people: int = 9) -> dict:
    """Always-lying and always-accusing spies give the same exact savings
    distribution, whose mean is the closed-form expectation."""
    for total in range(3, max_people + 1):
        for s in range(1, total + 1):
            k = total - s
            if k <= s:
                continue
            lying = distribution_saved(k, s, KnavishSpies())
            accusing = distribution_saved(k, s, SpyishSpies())
            if lying != accusing:
                return _report(
                    "savings-distribution-invariance",
                    {"max_people": max_people},
                    False,
                    {"k": k, "s": s, "lying": str(lying), "accusing": str(accusing)},
                )
            if distribution_mean(lying) != expected_saved(k, s):
                return _report(
                    "savings-distribution-invariance",
                    {"max_people": max_people},
                    False,
                    {"k": k, "s": s, "reason": "mean mismatch"},
                )
    return _report(
        "savings-distribution-invariance", {"max_people": max_people}, True
    )


def check_closed_forms(
    identity_max: int = 20, asym_s: int = 200, trend_s: int = 300
) -> dict:
    """Big-integer identities and asymptotics for the savings formulas."""
    from math import pi, sqrt

    for s in range(1, identity_max + 1):
        if c_visits(s + 1, s) != 2 ** (2 * s) - comb(2 * s + 1, s):
            return _report(
                "savings-closed-forms",
                {"identity_max": identity_max},
                False,
                {"s": s, "reason": "near-split binomial identity"},
            )
    exact = float(expected_saved(asym_s + 1, asym_s))
    asym = 0.5 * sqrt(pi * asym_s) - 1
    if abs(exact - asym) / asym > 0.10:
        return _report(
            "savings-closed-forms",
            {"asym_s": asym_s},
            False,
            {"exact": exact, "asymptotic": asym},
        )
    trend = float(expected_saved(2 * trend_s, trend_s))
    if not 0.9 < trend < 1.1:
        return _report(
            "savings-closed-forms",
            {"trend_s": trend_s},
            False,
            {"value": trend},
        )
    return _report(
        "savings-closed-forms",
        {"identity_max": identity_max, "asym_s": asym_s, "trend_s": trend_s},
        True,
    )
