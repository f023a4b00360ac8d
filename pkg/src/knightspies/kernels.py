"""Backend selection for the exhaustive question-order walker.

The compiled extension is preferred when importable; otherwise the
pure-Python fallback takes over with identical semantics.  `BACKEND`
records which one won so reports and benchmarks can say so.
"""

from __future__ import annotations

import time

try:
    from . import _molewalk as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _molewalk_py as _impl

    BACKEND = "python"

from . import _molewalk_py as _python_impl

exhaustive_mole_check = _impl.exhaustive_mole_check


def backends() -> dict[str, object]:
    """The available walker implementations keyed by name."""
    out = {"python": _python_impl}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out


def benchmark(n: int = 5, bound: int = 2) -> list[dict]:
    """Time every available backend on one exhaustive walk; sanity-checks
    that they visit the same tree and agree on the verdict."""
    rows = []
    reference = None
    for name, module in sorted(backends().items()):
        start = time.perf_counter()
        result = module.exhaustive_mole_check(n, bound)
        elapsed = time.perf_counter() - start
        row = {
            "backend": name,
            "n": n,
            "bound": bound,
            "nodes": result["nodes"],
            "ok": result["ok"],
            "seconds": elapsed,
            "nodes_per_second": result["nodes"] / elapsed if elapsed else None,
        }
        rows.append(row)
        if reference is None:
            reference = (result["nodes"], result["ok"])
        elif (result["nodes"], result["ok"]) != reference:
            raise RuntimeError(f"backend disagreement: {rows}")
    return rows
