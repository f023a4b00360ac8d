import csv
import io

import pytest

from knightspies.core import ParameterError
from knightspies.simulator import (
    SimConfig,
    fit_gradient,
    histogram_to_csv,
    reports_to_csv,
    run_batch,
    run_series,
    splitmix64,
    trial_seed,
)


class TestSeeding:
    def test_splitmix_known_value(self):
        # splitmix64(0) from the reference sequence
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_trial_seeds_distinct(self):
        seeds = {trial_seed(99, i) for i in range(10000)}
        assert len(seeds) == 10000


class TestRunBatch:
    def test_reproducible(self):
        cfg = SimConfig(
            strategy="spider", behavior="spyish",
            n=12, max_spies=5, spies=5, trials=200, master_seed=7,
        )
        a = run_batch(cfg)
        b = run_batch(cfg)
        assert a.histogram == b.histogram
        assert a.mean == b.mean

    def test_truthful_always_full_count(self):
        cfg = SimConfig(
            strategy="spider", behavior="truthful",
            n=15, max_spies=7, spies=7, trials=100, master_seed=1,
        )
        report = run_batch(cfg)
        assert report.histogram == {21: 100}

    def test_histogram_totals_and_bounds(self):
        cfg = SimConfig(
            strategy="spider", behavior="spyish",
            n=20, max_spies=9, spies=9, trials=300, master_seed=3,
        )
        report = run_batch(cfg)
        assert sum(report.histogram.values()) == 300
        assert report.max_questions <= 28
        assert report.violations == 0

    def test_random_behavior_reproducible(self):
        cfg = SimConfig(
            strategy="chain-building", behavior="random:5",
            n=15, max_spies=7, spies=7, trials=100, master_seed=5,
        )
        assert run_batch(cfg).histogram == run_batch(cfg).histogram

    def test_invalid_config(self):
        with pytest.raises(ParameterError):
            SimConfig("nonsense", "spyish", 10, 4, 4, 10, 0)
        with pytest.raises(ParameterError):
            SimConfig("spider", "spyish", 10, 4, 5, 10, 0)
        with pytest.raises(ParameterError):
            SimConfig("spider", "spyish", 10, 4, 4, 0, 0)


class TestStrategyComparison:
    def test_chain_building_beats_spider_near_even_split(self):
        # in the 51-knight, 49-spy room chain building needs noticeably
        # fewer questions than the spider hunt against accusing spies
        kwargs = dict(n=100, max_spies=49, spies=49, trials=400, master_seed=8)
        spider = run_batch(SimConfig(strategy="spider", behavior="spyish", **kwargs))
        chains = run_batch(
            SimConfig(strategy="chain-building", behavior="spyish", **kwargs)
        )
        assert chains.mean < spider.mean - 5

    def test_average_stays_under_three_quarter_bound_conjecture(self):
        # monitored evidence: with the bound large and met exactly, chain
        # building averages at most n + 3*bound/4 questions
        for n in (60, 100):
            bound = (n - 1) // 2
            report = run_batch(
                SimConfig(
                    strategy="chain-building", behavior="spyish",
                    n=n, max_spies=bound, spies=bound,
                    trials=400, master_seed=21,
                )
            )
            assert report.mean <= n + 0.75 * bound


class TestSeries:
    def test_bound_rules(self):
        reports = run_series("spider", "spyish", [8, 12], "quarter", 20, 1)
        assert [r.config.max_spies for r in reports] == [2, 3]
        assert [r.config.spies for r in reports] == [2, 3]

    def test_unknown_rule(self):
        with pytest.raises(ParameterError):
            run_series("spider", "spyish", [8], "third", 5, 1)


class TestGradient:
    def test_exact_line(self):
        slope, intercept = fit_gradient([(n, 1.5 * n) for n in (10, 20, 30)])
        assert slope == pytest.approx(1.5)
        assert intercept == pytest.approx(0.0)

    def test_degenerate(self):
        with pytest.raises(ParameterError):
            fit_gradient([(5, 1.0), (5, 2.0)])


class TestCsv:
    def test_report_columns(self):
        cfg = SimConfig(
            strategy="spider", behavior="spyish",
            n=9, max_spies=4, spies=4, trials=50, master_seed=2,
        )
        text = reports_to_csv([run_batch(cfg)])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == [
            "n", "max_spies", "spies", "strategy", "behavior", "trials",
            "mean", "stddev", "min", "max", "violations", "seed",
        ]
        assert rows[1][0] == "9" and rows[1][3] == "spider"

    def test_histogram_csv(self):
        cfg = SimConfig(
            strategy="spider", behavior="truthful",
            n=9, max_spies=4, spies=4, trials=10, master_seed=2,
        )
        text = histogram_to_csv(run_batch(cfg))
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["questions", "frequency"]
        assert rows[1] == ["12", "10"]
