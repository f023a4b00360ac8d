"""Pure-Python walker over every question order against the Mole keeper.

Checks, for one (n, max_spies) pair, that along EVERY sequence of valid
questions up to the n + max_spies - 1 horizon the keeper's answers leave
at least two consistent spy sets before the final question and at least
one after it.  Consistency is tracked as a bitmask over all candidate
spy sets, intersected with a precomputed mask per (asker, subject,
answer) triple, so each tree edge costs a few integer operations.

This is the fallback backend: identical semantics to the compiled
kernel, practical up to roughly n = 5 (the n = 6 tree has ~10^10 nodes).
"""

from __future__ import annotations

import itertools


def _candidate_masks(n: int, bound: int) -> list[int]:
    """All spy sets of size <= bound as seat bitmasks (seat i -> bit i)."""
    cands = []
    for size in range(bound + 1):
        for combo in itertools.combinations(range(n), size):
            m = 0
            for seat in combo:
                m |= 1 << seat
            cands.append(m)
    return cands


def exhaustive_mole_check(n: int, bound: int) -> dict:
    """Walk the full question tree; returns {ok, nodes, candidates, violation}.

    `violation`, when present, is the question path (0-based seat pairs
    with answers) leading to a node with too few consistent sets.
    """
    horizon = n + bound - 1
    phase1_len = bound - 1
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    npairs = len(pairs)
    cands = _candidate_masks(n, bound)
    ncand = len(cands)
    full = (1 << ncand) - 1

    mask_spy = [0] * npairs
    mask_knight = [0] * npairs
    for p, (i, j) in enumerate(pairs):
        ms = mk = 0
        for c, s in enumerate(cands):
            in_i = (s >> i) & 1
            in_j = (s >> j) & 1
            if in_i or in_j:
                ms |= 1 << c
            if in_i or not in_j:
                mk |= 1 << c
        mask_spy[p] = ms
        mask_knight[p] = mk

    used = [False] * npairs
    path: list[tuple[int, int, str]] = []
    comp = [-1] * n
    asked2 = [False] * n
    unasked = [0] * n  # per component id
    exhausted = [False] * n
    supported = [-1] * n
    state = {"nodes": 0, "violation": None}

    def freeze() -> None:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        touched = set()
        for i, j, _ in path:
            touched.add(i)
            touched.add(j)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
        roots: dict[int, int] = {}
        for seat in sorted(touched):
            root = find(seat)
            cid = roots.setdefault(root, len(roots))
            comp[seat] = cid
            unasked[cid] += 1

    def unfreeze() -> None:
        for seat in range(n):
            comp[seat] = -1
            asked2[seat] = False
            unasked[seat] = 0
            exhausted[seat] = False
            supported[seat] = -1

    def phase2_answer(j: int):
        """Answer about subject j; returns (is_spy_answer, undo_token)."""
        c = comp[j]
        if c < 0:
            return False, None
        if exhausted[c]:
            return j != supported[c], None
        if not asked2[j] and unasked[c] == 1:
            asked2[j] = True
            unasked[c] = 0
            exhausted[c] = True
            supported[c] = j
            return False, ("exhaust", j, c)
        if not asked2[j]:
            asked2[j] = True
            unasked[c] -= 1
            return True, ("asked", j, c)
        return True, None

    def undo(token) -> None:
        if token is None:
            return
        kind, j, c = token
        if kind == "exhaust":
            asked2[j] = False
            unasked[c] = 1
            exhausted[c] = False
            supported[c] = -1
        else:
            asked2[j] = False
            unasked[c] += 1

    def walk(depth: int, family: int) -> None:
        if state["violation"] is not None:
            return
        froze = depth == phase1_len
        if froze:
            freeze()
        try:
            if depth == horizon:
                return
            need_two = depth + 1 < horizon
            in_phase1 = depth < phase1_len
            for p in range(npairs):
                if used[p]:
                    continue
                i, j = pairs[p]
                if in_phase1:
                    accuse, token = True, None
                else:
                    accuse, token = phase2_answer(j)
                fam2 = family & (mask_spy[p] if accuse else mask_knight[p])
                state["nodes"] += 1
                bad = (
                    (fam2 & (fam2 - 1)) == 0 if need_two else fam2 == 0
                )
                if bad:
                    state["violation"] = path + [
                        (i, j, "spy" if accuse else "knight")
                    ]
                    undo(token)
                    return
                used[p] = True
                path.append((i, j, "spy" if accuse else "knight"))
                walk(depth + 1, fam2)
                path.pop()
                used[p] = False
                undo(token)
                if state["violation"] is not None:
                    return
        finally:
            if froze:
                unfreeze()

    walk(0, full)
    return {
        "ok": state["violation"] is None,
        "nodes": state["nodes"],
        "candidates": ncand,
        "violation": state["violation"],
    }
