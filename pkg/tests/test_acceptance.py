"""Acceptance gate: one test per primary criterion, at stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion; the same checks back `knightspies verify --scope all`.
"""

import itertools
from fractions import Fraction
from math import comb

from knightspies import ballot, cli, kernels, service, simulator
from knightspies.core import Answer, GameParams, room_from_spy_seats
from knightspies.interrogators import chain_identify, spider_run
from knightspies.secretkeepers import parse_behavior


def _report(number: int, name: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"[PASS] criterion {number}: {name}{suffix}")


def test_criterion_01_spider_count_identity():
    """Every room to n=10, every bound, every arrangement, three fixed
    behaviours: question count is exactly n + bound - 1 - r and the
    identities come back right (checked inside the runner)."""
    runs = 0
    for n in range(3, 11):
        for bound in range(1, (n - 1) // 2 + 1):
            params = GameParams(n=n, max_spies=bound)
            for s in range(0, bound + 1):
                for spies in itertools.combinations(range(1, n + 1), s):
                    room = room_from_spy_seats(params, spies)
                    for name in ("truthful", "knavish", "spyish"):
                        spider_run(room, parse_behavior(name))
                        runs += 1
    _report(1, "spider question-count identity", f"{runs} runs")


def test_criterion_02_savings_distribution_exact():
    """Always-lying and always-accusing spies: identical exact rational
    savings distributions for all k > s with k + s <= 9, with the
    closed-form mean."""
    report = ballot.check_savings_distribution_invariance(9)
    assert report["status"] == "pass", report
    _report(2, "savings distribution invariance (k+s <= 9)")


def test_criterion_03_visit_total_formula():
    """Enumerated visits to -1 from above match the binomial sum for all
    k >= s with k + s <= 14; spot value c(2,1) = 1."""
    assert ballot.c_visits(2, 1) == 1
    report = ballot.check_visit_total_formula(14)
    assert report["status"] == "pass", report
    _report(3, "visit-total binomial formula (k+s <= 14)")


def test_criterion_04_visit_histograms_and_reflections():
    """Visit-count histograms constant over the level for all k + s <= 12,
    and both reflections are bijections with the stated transfers."""
    report = ballot.check_visit_histogram_invariance(12)
    assert report["status"] == "pass", report
    report = ballot.check_reflection_bijections(12)
    assert report["status"] == "pass", report
    _report(4, "histogram invariance and reflection bijections (k+s <= 12)")


def test_criterion_05_rejections_equal_visits():
    """Rejected knights equal visits to 0 from above for every room with
    n <= 10 under always-lying spies."""
    report = ballot.check_rejection_visit_bijection(10)
    assert report["status"] == "pass", report
    _report(5, "rejected knights = visits to 0 from above (n <= 10)")


def test_criterion_06_closed_forms():
    """Near-split identity to s = 20; the sqrt(pi*s)/2 - 1 asymptotic
    within 10% at s = 200; the k = 2s expectation inside (0.9, 1.1) at
    s = 300 -- all in exact arithmetic before the final comparison."""
    for s in range(1, 21):
        assert ballot.c_visits(s + 1, s) == 2 ** (2 * s) - comb(2 * s + 1, s)
    report = ballot.check_closed_forms(identity_max=20, asym_s=200, trend_s=300)
    assert report["status"] == "pass", report
    _report(6, "closed forms and asymptotics")


def test_criterion_07_keeper_floor_and_witnesses():
    """(a) The adaptive keeper holds all four strategies to n + bound - 1
    questions for every n <= 12.  (b) Along every question order (all of
    them for n <= 6, ten thousand sampled for n <= 12) at least two spy
    sets stay consistent before the final question and at least one at
    every turn."""
    report = cli._check_keeper_floor(12)
    assert report["status"] == "pass", report
    report = cli._check_keeper_witnesses(
        exhaustive_n=6, random_orders=10000, max_n=12, seed=1
    )
    assert report["status"] == "pass", report
    _report(
        7,
        "keeper floor and double witnesses",
        f"{report['nodes']} exhaustive nodes via {report['params']['backend']}",
    )


def test_criterion_08_solver_agreement():
    """Backtracking enumerator equals the 2^n brute force on 1000 random
    transcripts for each n in {6, 9, 12}."""
    report = cli._check_solver_agreement(sizes=(6, 9, 12), transcripts=1000)
    assert report["status"] == "pass", report
    _report(8, "backtracker vs brute force (1000 x {6,9,12})")


def test_criterion_09_spider_savings_mean():
    """Spider vs always-accusing spies, n = 100, bound = spies = 49,
    25000 seeded trials: the sample mean lies within three standard
    errors of the exact target, and no trial exceeds 148 questions."""
    config = simulator.SimConfig(
        strategy="spider", behavior="spyish",
        n=100, max_spies=49, spies=49, trials=25000, master_seed=42,
    )
    report = simulator.run_batch(config)
    target = 148 - float(ballot.expected_saved(51, 49))
    deviation = abs(report.mean - target) / report.stderr
    assert deviation <= 3.0, (report.mean, target, report.stderr)
    assert report.max_questions <= 148
    assert report.violations == 0
    _report(
        9, "spider savings mean",
        f"mean {report.mean:.3f} vs target {target:.3f}, {deviation:.2f} SE",
    )


def test_criterion_10_chain_building_gradients():
    """Chain building vs always-accusing spies, 1000 trials per size in
    {40,...,100}: fitted slope in [1.25, 1.40] when the bound is
    (n-1)/2 and in [1.15, 1.28] when it is n/4, with zero runs over
    n + bound - 1 questions."""
    results = {}
    for rule, lo, hi in (("half", 1.25, 1.40), ("quarter", 1.15, 1.28)):
        reports = simulator.run_series(
            "chain-building", "spyish",
            [40, 50, 60, 70, 80, 90, 100], rule, 1000, 2026,
        )
        slope, _ = simulator.fit_gradient(
            [(r.config.n, r.mean) for r in reports]
        )
        violations = sum(r.violations for r in reports)
        assert violations == 0, (rule, violations)
        assert lo <= slope <= hi, (rule, slope)
        results[rule] = slope
    _report(
        10, "chain-building gradients",
        f"half {results['half']:.3f}, quarter {results['quarter']:.3f}",
    )


def test_criterion_11_chain_bisection():
    """Exactly floor(log2 k) + 1 questions and correct identities for
    every boundary position, chain lengths to 1024."""
    for k in range(1, 1025):
        expected = k.bit_length()
        chain = list(range(1, k + 1))
        for boundary in range(k + 1):
            def answer(asker, subject, boundary=boundary):
                return Answer.SPY if subject <= boundary else Answer.KNIGHT

            identities, count = chain_identify(chain, k + 1, answer)
            assert count == expected, (k, boundary, count)
            spies = {seat for seat, i in identities.items() if i.value == "spy"}
            assert spies == set(range(1, boundary + 1))
    _report(11, "chain bisection exact counts (k <= 1024)")
