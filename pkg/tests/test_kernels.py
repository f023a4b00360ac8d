import pytest

from knightspies import kernels
from knightspies import _molewalk_py


class TestWalkerBackends:
    def test_python_backend_small(self):
        result = _molewalk_py.exhaustive_mole_check(3, 1)
        assert result["ok"] is True
        assert result["nodes"] == 156
        assert result["candidates"] == 4

    def test_selected_backend_matches_python(self):
        for n, bound in [(3, 1), (4, 1)]:
            a = kernels.exhaustive_mole_check(n, bound)
            b = _molewalk_py.exhaustive_mole_check(n, bound)
            assert a["ok"] == b["ok"]
            assert a["nodes"] == b["nodes"]
            assert a["candidates"] == b["candidates"]

    def test_backend_flag(self):
        assert kernels.BACKEND in ("compiled", "python")
        assert "python" in kernels.backends()

    def test_benchmark_rows(self):
        rows = kernels.benchmark(4, 1)
        assert {r["backend"] for r in rows} >= {"python"}
        for row in rows:
            assert row["ok"] is True
            assert row["nodes"] == 13344

    @pytest.mark.skipif(
        kernels.BACKEND != "compiled", reason="extension not built"
    )
    def test_compiled_candidate_cap(self):
        compiled = kernels.backends()["compiled"]
        with pytest.raises(ValueError):
            compiled.exhaustive_mole_check(9, 4)  # 256 candidate sets
