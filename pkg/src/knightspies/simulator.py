"""Seeded Monte Carlo harness for strategy-versus-behaviour runs.

Each trial draws its own room from a per-trial seed derived from the
master seed with a splitmix64 step, so batches are reproducible
bit-for-bit and trials could be distributed without a shared generator.
Reports carry exact integer histograms (one bin per question count), the
usual moments, and a count of runs that exceeded the n + max_spies - 1
bound, which for chain building is monitored rather than guaranteed.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import GameParams, ParameterError, new_room
from .interrogators import STRATEGIES, make_interrogator, run_against_room
from .secretkeepers import RandomSpies, parse_behavior


def splitmix64(x: int) -> int:
    """One splitmix64 step; used to derive independent per-trial seeds."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def trial_seed(master_seed: int, index: int) -> int:
    return splitmix64((master_seed & 0xFFFFFFFFFFFFFFFF) + index)


BOUND_RULES = {
    "half": lambda n: (n - 1) // 2,
    "quarter": lambda n: n // 4,
}


@dataclass(frozen=True)
class SimConfig:
    strategy: str
    behavior: str
    n: int
    max_spies: int
    spies: int
    trials: int
    master_seed: int

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ParameterError(f"unknown strategy {self.strategy!r}")
        parse_behavior(self.behavior)  # validates
        if self.trials < 1:
            raise ParameterError("need at least one trial")
        GameParams(n=self.n, max_spies=self.max_spies)  # validates
        if not 0 <= self.spies <= self.max_spies:
            raise ParameterError("spy count outside the bound")


@dataclass(frozen=True)
class SimReport:
    config: SimConfig
    histogram: dict[int, int]
    mean: float
    stddev: float
    min_questions: int
    max_questions: int
    violations: int

    @property
    def trials(self) -> int:
        return self.config.trials

    @property
    def stderr(self) -> float:
        return self.stddev / math.sqrt(self.trials)


def run_batch(config: SimConfig) -> SimReport:
    """Run `trials` independent rooms and tally question counts.

    Identity recovery is checked on every trial by the strategy runner;
    a miss raises instead of being silently counted.
    """
    params = GameParams(n=config.n, max_spies=config.max_spies)
    bound = params.n + params.max_spies - 1
    counts: list[int] = []
    histogram: dict[int, int] = {}
    violations = 0
    base_behavior = parse_behavior(config.behavior)
    for i in range(config.trials):
        seed = trial_seed(config.master_seed, i)
        room = new_room(params, config.spies, seed)
        if isinstance(base_behavior, RandomSpies):
            behavior = RandomSpies(splitmix64(seed))
        else:
            behavior = base_behavior.fresh()
        strategy = make_interrogator(config.strategy, params)
        result = run_against_room(strategy, room, behavior)
        q = result.question_count
        counts.append(q)
        histogram[q] = histogram.get(q, 0) + 1
        if q > bound:
            violations += 1
    mean = statistics.fmean(counts)
    stddev = statistics.pstdev(counts) if len(counts) > 1 else 0.0
    return SimReport(
        config=config,
        histogram=dict(sorted(histogram.items())),
        mean=mean,
        stddev=stddev,
        min_questions=min(counts),
        max_questions=max(counts),
        violations=violations,
    )


def run_series(
    strategy: str,
    behavior: str,
    sizes: Sequence[int],
    bound_rule: str,
    trials: int,
    master_seed: int,
) -> list[SimReport]:
    """One batch per room size, with max_spies from a named rule and the
    spy count equal to the bound (the hardest admissible room)."""
    try:
        rule = BOUND_RULES[bound_rule]
    except KeyError:
        raise ParameterError(
            f"unknown bound rule {bound_rule!r}; pick from {sorted(BOUND_RULES)}"
        ) from None
    reports = []
    for idx, n in enumerate(sizes):
        bound = rule(n)
        config = SimConfig(
            strategy=strategy,
            behavior=behavior,
            n=n,
            max_spies=bound,
            spies=bound,
            trials=trials,
            master_seed=splitmix64(master_seed + idx),
        )
        reports.append(run_batch(config))
    return reports


def fit_gradient(points: Iterable[tuple[float, float]]) -> tuple[float, float]:
    """Ordinary least squares slope and intercept for (x, y) points."""
    pts = list(points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if len(set(xs)) < 2:
        raise ParameterError("need at least two distinct x values")
    mean_x = statistics.fmean(xs)
    mean_y = statistics.fmean(ys)
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, mean_y - slope * mean_x


REPORT_COLUMNS = [
    "n", "max_spies", "spies", "strategy", "behavior", "trials",
    "mean", "stddev", "min", "max", "violations", "seed",
]


def reports_to_csv(reports: Iterable[SimReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(REPORT_COLUMNS)
    for r in reports:
        c = r.config
        writer.writerow([
            c.n, c.max_spies, c.spies, c.strategy, c.behavior, c.trials,
            f"{r.mean:.6f}", f"{r.stddev:.6f}", r.min_questions,
            r.max_questions, r.violations, c.master_seed,
        ])
    return buf.getvalue()


def histogram_to_csv(report: SimReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["questions", "frequency"])
    for q, freq in report.histogram.items():
        writer.writerow([q, freq])
    return buf.getvalue()
