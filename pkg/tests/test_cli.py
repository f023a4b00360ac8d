import csv
import io
import json

import pytest

from knightspies import cli
from knightspies.core import Answer, GameParams, QuestionGraph, graph_to_jsonl, record
from knightspies.secretkeepers import MoleKeeper


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_lemma_scope_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--scope", "lemmas", "--max-steps", "9",
            "--max-n", "7",
        )
        assert code == 0
        reports = json.loads(out)
        assert {r["status"] for r in reports} == {"pass"}
        assert [r["check"] for r in reports] == [
            "rejected-knights-equal-visits",
            "visit-histogram-invariance",
            "reflection-bijections",
            "visit-total-formula",
        ]

    def test_prop1_scope_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--scope", "prop1", "--max-n", "7",
            "--max-chain", "64", "--transcripts", "60",
        )
        assert code == 0
        assert {r["status"] for r in json.loads(out)} == {"pass"}

    def test_theorem1_scope_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--scope", "theorem1", "--max-people", "7"
        )
        assert code == 0


class TestAnalyze:
    def test_canonical_transcript(self, tmp_path, capsys, canonical_12_order):
        keeper = MoleKeeper(GameParams(n=12, max_spies=5))
        for a, s in canonical_12_order:
            keeper.answer(a, s)
        path = tmp_path / "game.jsonl"
        path.write_text(graph_to_jsonl(keeper.graph))
        code, out, _ = run_cli(
            capsys, "analyze", str(path), "--n", "12", "--l", "5"
        )
        assert code == 0
        result = json.loads(out)
        assert result["unique"] is True
        assert result["consistent_sets"] == [[2, 3, 5]]
        assert result["questions"] == 16

    def test_too_large_is_resource_error(self, tmp_path, capsys):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        code, _, err = run_cli(
            capsys, "analyze", str(path), "--n", "80", "--l", "10"
        )
        assert code == cli.EXIT_RESOURCE


class TestAutoplay:
    def test_draw_at_thirty_questions(self, capsys):
        code, out, _ = run_cli(
            capsys, "autoplay", "--interrogator", "spider", "--keeper", "mole",
            "--n", "21", "--l", "10",
        )
        assert code == 0
        game = json.loads(out)
        assert game["outcome"] == "draw"
        assert len(game["transcript"]) == 30

    def test_usage_error(self, capsys):
        code, _, _ = run_cli(
            capsys, "autoplay", "--interrogator", "nonsense",
            "--n", "9", "--l", "3",
        )
        assert code == cli.EXIT_USAGE


class TestSimulate:
    def test_csv_output(self, capsys):
        code, out, err = run_cli(
            capsys, "simulate", "--strategy", "spider", "--behavior", "truthful",
            "--sizes", "9,12", "--bound-rule", "half", "--trials", "20",
            "--seed", "4",
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "n"
        assert len(rows) == 3
        trailer = json.loads(err.strip().splitlines()[-1])
        assert "slope" in trailer

    def test_explicit_bound(self, capsys, tmp_path):
        out_path = tmp_path / "r.csv"
        hist_path = tmp_path / "h.csv"
        code, _, _ = run_cli(
            capsys, "simulate", "--strategy", "spider", "--behavior", "spyish",
            "--sizes", "11", "--bound-rule", "explicit", "--max-spies", "4",
            "--spies", "4", "--trials", "25", "--seed", "1",
            "--out", str(out_path), "--histogram", str(hist_path),
        )
        assert code == 0
        assert out_path.read_text().startswith("n,")
        assert hist_path.read_text().startswith("questions,")

    def test_explicit_needs_bound(self, capsys):
        code, _, _ = run_cli(
            capsys, "simulate", "--strategy", "spider", "--sizes", "11",
            "--bound-rule", "explicit",
        )
        assert code == cli.EXIT_USAGE


class TestBench:
    def test_bench_small(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--n", "4", "--max-spies", "1")
        assert code == 0
        rows = json.loads(out)
        assert all(r["ok"] for r in rows)
