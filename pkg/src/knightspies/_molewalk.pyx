# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled walker over every question order against the Mole keeper.

Semantics identical to the pure-Python fallback, but the consistency
family fits one 64-bit word (at most 64 candidate spy sets, enough for
n = 7 with a bound of 3) and each tree edge costs a handful of integer
operations, which makes the ~10^10-node tree at n = 6 tractable.
"""

import itertools

DEF MAXN = 16
DEF MAXP = 240


cdef class _Walk:
    cdef int n, bound, horizon, phase1_len, npairs, ncand
    cdef int pair_i[MAXP]
    cdef int pair_j[MAXP]
    cdef unsigned long long mask_spy[MAXP]
    cdef unsigned long long mask_knight[MAXP]
    cdef bint used[MAXP]
    cdef int path_p[MAXP]
    cdef bint path_spy[MAXP]
    cdef int comp[MAXN]
    cdef bint asked2[MAXN]
    cdef int unasked[MAXN]
    cdef bint exhausted[MAXN]
    cdef int supported[MAXN]
    cdef unsigned long long nodes
    cdef bint failed
    cdef int fail_depth

    def __init__(self, int n, int bound):
        cdef int p, i, j, c, seat
        self.n = n
        self.bound = bound
        self.horizon = n + bound - 1
        self.phase1_len = bound - 1
        self.nodes = 0
        self.failed = False

        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        self.npairs = len(pairs)
        if self.npairs > MAXP:
            raise ValueError("room too large for the compiled walker")
        cands = []
        for size in range(bound + 1):
            for combo in itertools.combinations(range(n), size):
                m = 0
                for seat in combo:
                    m |= 1 << seat
                cands.append(m)
        self.ncand = len(cands)
        if self.ncand > 64:
            raise ValueError(
                "more than 64 candidate spy sets; use the python backend"
            )
        for p in range(self.npairs):
            i, j = pairs[p]
            self.pair_i[p] = i
            self.pair_j[p] = j
            ms = 0
            mk = 0
            for c in range(self.ncand):
                s = cands[c]
                in_i = (s >> i) & 1
                in_j = (s >> j) & 1
                if in_i or in_j:
                    ms |= 1 << c
                if in_i or not in_j:
                    mk |= 1 << c
            self.mask_spy[p] = ms
            self.mask_knight[p] = mk
            self.used[p] = 0
        for seat in range(MAXN):
            self.comp[seat] = -1
            self.asked2[seat] = 0
            self.unasked[seat] = 0
            self.exhausted[seat] = 0
            self.supported[seat] = -1

    cdef void _freeze(self) nogil:
        cdef int parent[MAXN]
        cdef int root_cid[MAXN]
        cdef bint touched[MAXN]
        cdef int k, i, j, ri, rj, seat, cid
        for k in range(self.n):
            parent[k] = k
            root_cid[k] = -1
            touched[k] = 0
        for k in range(self.phase1_len):
            i = self.pair_i[self.path_p[k]]
            j = self.pair_j[self.path_p[k]]
            touched[i] = 1
            touched[j] = 1
            ri = i
            while parent[ri] != ri:
                ri = parent[ri]
            rj = j
            while parent[rj] != rj:
                rj = parent[rj]
            if ri != rj:
                parent[ri] = rj
        cid = 0
        for seat in range(self.n):
            if not touched[seat]:
                continue
            ri = seat
            while parent[ri] != ri:
                ri = parent[ri]
            if root_cid[ri] < 0:
                root_cid[ri] = cid
                cid += 1
            self.comp[seat] = root_cid[ri]
            self.unasked[root_cid[ri]] += 1

    cdef void _unfreeze(self) nogil:
        cdef int seat
        for seat in range(self.n):
            self.comp[seat] = -1
            self.asked2[seat] = 0
            self.unasked[seat] = 0
            self.exhausted[seat] = 0
            self.supported[seat] = -1

    cdef void _walk(self, int depth, unsigned long long family) nogil:
        cdef int p, j, c, undo_kind, undo_j, undo_c
        cdef bint accuse, need_two, in_phase1, froze, bad
        cdef unsigned long long fam2
        if self.failed:
            return
        froze = depth == self.phase1_len
        if froze:
            self._freeze()
        if depth + 1 == self.horizon:
            # Leaf level: answers influence nothing deeper, so the keeper
            # state needs no mutation and the family only a non-empty check.
            for p in range(self.npairs):
                if self.used[p]:
                    continue
                j = self.pair_j[p]
                c = self.comp[j]
                if c < 0:
                    accuse = 0
                elif self.exhausted[c]:
                    accuse = j != self.supported[c]
                elif (not self.asked2[j]) and self.unasked[c] == 1:
                    accuse = 0
                else:
                    accuse = 1
                if accuse:
                    fam2 = family & self.mask_spy[p]
                else:
                    fam2 = family & self.mask_knight[p]
                self.nodes += 1
                if fam2 == 0:
                    self.failed = True
                    self.fail_depth = depth
                    self.path_p[depth] = p
                    self.path_spy[depth] = accuse
                    break
            if froze:
                self._unfreeze()
            return
        if depth < self.horizon:
            need_two = depth + 1 < self.horizon
            in_phase1 = depth < self.phase1_len
            for p in range(self.npairs):
                if self.used[p]:
                    continue
                j = self.pair_j[p]
                undo_kind = 0
                undo_j = 0
                undo_c = 0
                if in_phase1:
                    accuse = 1
                else:
                    c = self.comp[j]
                    if c < 0:
                        accuse = 0
                    elif self.exhausted[c]:
                        accuse = j != self.supported[c]
                    elif (not self.asked2[j]) and self.unasked[c] == 1:
                        accuse = 0
                        self.asked2[j] = 1
                        self.unasked[c] = 0
                        self.exhausted[c] = 1
                        self.supported[c] = j
                        undo_kind = 2
                        undo_j = j
                        undo_c = c
                    elif not self.asked2[j]:
                        accuse = 1
                        self.asked2[j] = 1
                        self.unasked[c] -= 1
                        undo_kind = 1
                        undo_j = j
                        undo_c = c
                    else:
                        accuse = 1
                if accuse:
                    fam2 = family & self.mask_spy[p]
                else:
                    fam2 = family & self.mask_knight[p]
                self.nodes += 1
                if need_two:
                    bad = (fam2 & (fam2 - 1)) == 0
                else:
                    bad = fam2 == 0
                if bad:
                    self.failed = True
                    self.fail_depth = depth
                    self.path_p[depth] = p
                    self.path_spy[depth] = accuse
                else:
                    self.used[p] = 1
                    self.path_p[depth] = p
                    self.path_spy[depth] = accuse
                    self._walk(depth + 1, fam2)
                    self.used[p] = 0
                if undo_kind == 2:
                    self.asked2[undo_j] = 0
                    self.unasked[undo_c] = 1
                    self.exhausted[undo_c] = 0
                    self.supported[undo_c] = -1
                elif undo_kind == 1:
                    self.asked2[undo_j] = 0
                    self.unasked[undo_c] += 1
                if self.failed:
                    break
        if froze:
            self._unfreeze()

    def run(self):
        cdef unsigned long long full
        if self.ncand >= 64:
            full = <unsigned long long> 0xFFFFFFFFFFFFFFFF
        else:
            full = ((<unsigned long long> 1) << self.ncand) - 1
        with nogil:
            self._walk(0, full)
        violation = None
        if self.failed:
            violation = [
                (
                    self.pair_i[self.path_p[d]],
                    self.pair_j[self.path_p[d]],
                    "spy" if self.path_spy[d] else "knight",
                )
                for d in range(self.fail_depth + 1)
            ]
        return {
            "ok": not self.failed,
            "nodes": self.nodes,
            "candidates": self.ncand,
            "violation": violation,
        }


def exhaustive_mole_check(n, bound):
    """Walk the full question tree; returns {ok, nodes, candidates, violation}."""
    return _Walk(n, bound).run()
