import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knightspies import consistency
from knightspies.core import Answer, GameParams, QuestionGraph, record
from knightspies.consistency import (
    CorruptedGameError,
    ResourceError,
    VerdictKind,
    adjudicate,
    brute_force_sets,
    consistent_sets,
    is_consistent,
    iter_consistent_sets_lex,
)


def build(n, entries):
    g = QuestionGraph(n=n)
    for asker, subject, answer in entries:
        g = record(g, asker, subject, Answer(answer))
    return g


P3 = GameParams(n=3, max_spies=1)


class TestIsConsistent:
    def test_empty_graph_all_small_sets(self):
        g = QuestionGraph(n=3)
        for cand in [frozenset(), frozenset({1}), frozenset({3})]:
            assert is_consistent(g, P3, cand)
        assert not is_consistent(g, P3, frozenset({1, 2}))  # above the bound

    def test_mutual_support(self):
        g = build(3, [(1, 2, "knight"), (2, 1, "knight")])
        assert not is_consistent(g, P3, frozenset({1}))  # 2 would have lied
        assert is_consistent(g, P3, frozenset({3}))
        assert is_consistent(g, P3, frozenset())


class TestEnumeration:
    def test_mutual_support_sets(self):
        g = build(3, [(1, 2, "knight"), (2, 1, "knight")])
        assert consistent_sets(g, P3) == [frozenset(), frozenset({3})]

    def test_empty_graph(self):
        g = QuestionGraph(n=3)
        assert consistent_sets(g, P3) == [
            frozenset(), frozenset({1}), frozenset({2}), frozenset({3}),
        ]

    def test_brute_force_small(self):
        g = QuestionGraph(n=4)
        sets = brute_force_sets(g, GameParams(n=4, max_spies=1))
        assert len(sets) == 5  # empty plus four singletons

    def test_brute_force_cap(self):
        with pytest.raises(ResourceError):
            brute_force_sets(QuestionGraph(n=21), GameParams(n=21, max_spies=10))

    def test_lex_order(self):
        g = QuestionGraph(n=4)
        got = list(iter_consistent_sets_lex(g, GameParams(n=4, max_spies=1)))
        assert got == [
            frozenset(), frozenset({1}), frozenset({2}),
            frozenset({3}), frozenset({4}),
        ]

    @given(st.data())
    @settings(max_examples=150, deadline=None)
    def test_solvers_agree(self, data):
        n = data.draw(st.integers(3, 8))
        bound = data.draw(st.integers(1, (n - 1) // 2))
        params = GameParams(n=n, max_spies=bound)
        g = QuestionGraph(n=n)
        length = data.draw(st.integers(0, 2 * n))
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        for _ in range(length):
            a, s = rng.randrange(1, n + 1), rng.randrange(1, n + 1)
            if a == s or (a, s) in g.pairs():
                continue
            g = record(g, a, s, Answer.SPY if rng.random() < 0.5 else Answer.KNIGHT)
        fast = set(consistent_sets(g, params))
        assert fast == set(brute_force_sets(g, params))
        lex = list(iter_consistent_sets_lex(g, params))
        assert set(lex) == fast
        assert lex == sorted(lex, key=lambda s: sorted(s))

    def test_monotone_under_new_entries(self):
        rng = random.Random(7)
        params = GameParams(n=6, max_spies=2)
        for _ in range(50):
            g = QuestionGraph(n=6)
            family = set(consistent_sets(g, params))
            for _ in range(8):
                a, s = rng.randrange(1, 7), rng.randrange(1, 7)
                if a == s or (a, s) in g.pairs():
                    continue
                g = record(
                    g, a, s, Answer.SPY if rng.random() < 0.5 else Answer.KNIGHT
                )
                smaller = set(consistent_sets(g, params))
                assert smaller <= family
                family = smaller


class TestAdjudicate:
    def test_premature_claim_refuted(self):
        g = QuestionGraph(n=3)
        verdict = adjudicate(g, P3, frozenset({1}))
        assert verdict.kind is VerdictKind.REFUTED
        assert verdict.witness == frozenset()  # lexicographically smallest

    def test_unique_claim_accepted(self):
        g = build(3, [(1, 2, "knight"), (2, 1, "knight"), (1, 3, "spy")])
        assert consistent_sets(g, P3) == [frozenset({3})]
        verdict = adjudicate(g, P3, frozenset({3}))
        assert verdict.accepted

    def test_inconsistent_claim_refuted_with_witness(self):
        g = build(3, [(1, 2, "knight"), (2, 1, "knight"), (1, 3, "spy")])
        verdict = adjudicate(g, P3, frozenset({1}))
        assert verdict.kind is VerdictKind.REFUTED
        assert not verdict.claim_consistent
        assert verdict.witness == frozenset({3})

    def test_corrupted_game(self):
        # both of two mutual accusers cannot be knights, and a third seat
        # accused by everyone pushes every assignment past the bound
        g = build(
            3,
            [(1, 2, "spy"), (2, 1, "spy"), (1, 3, "spy"), (2, 3, "spy")],
        )
        assert consistent_sets(g, P3) == []
        with pytest.raises(CorruptedGameError):
            adjudicate(g, P3, frozenset({3}))

    def test_accept_iff_unique(self):
        rng = random.Random(11)
        params = GameParams(n=6, max_spies=2)
        for _ in range(200):
            g = QuestionGraph(n=6)
            for _ in range(rng.randrange(0, 10)):
                a, s = rng.randrange(1, 7), rng.randrange(1, 7)
                if a == s or (a, s) in g.pairs():
                    continue
                g = record(
                    g, a, s, Answer.SPY if rng.random() < 0.5 else Answer.KNIGHT
                )
            sets = consistent_sets(g, params)
            if not sets:
                continue
            claim = rng.choice(sets)
            verdict = adjudicate(g, params, claim)
            assert verdict.accepted == (len(sets) == 1)


class TestServiceLimits:
    def test_count_cap(self):
        g = QuestionGraph(n=12)
        count = consistency.count_consistent_sets(
            g, GameParams(n=12, max_spies=5), limit=10
        )
        assert count == 10

    def test_seat_limit(self):
        with pytest.raises(ResourceError):
            consistency.count_consistent_sets(
                QuestionGraph(n=70), GameParams(n=70, max_spies=30)
            )
