"""Grid of trie nodes with range predecessor/successor queries and downward LCE.

Every real node is a point: its x coordinate is the breadth-first position
(levels ordered by depth, nodes within a level by preorder) and its y
coordinate is one of three permutations: preorder rank, postorder rank, or
the lexicographic rank of the node's suffix.  Range predecessor/successor
over these permutations locates, for a node v and a target depth d, the
contiguous interval of v's depth-d descendants and, inside it, the nodes
whose suffixes are lexicographically closest to v's.  One of those two
nodes realizes the longest common extension from v toward the leaves.

Each permutation is indexed by a balanced wavelet tree: O(log n) per query,
built level by level with stable partitions by value bit.  Queries descend
toward the threshold value recording the best side branch, then walk down
the recorded branch to its extreme value.
"""

from __future__ import annotations

import numpy as np

from .trie import BOTTOM, CommonSuffixTrie, NodeOrders
from .suffix_order import SuffixOrder

_SEQUENCES = ("pre", "post", "lex")


class WaveletTree:
    """Balanced wavelet tree over a permutation of {0, ..., n-1}.

    Positions are half-open 0-based ranges.  Only cumulative one-counts per
    level are stored; bits and child segment boundaries are recovered from
    them during descent.
    """

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.int64)
        n = int(values.size)
        self.n = n
        self.bits = max(1, int(n - 1).bit_length()) if n > 1 else 1
        # int32 state is enough below 2^30 points and halves memory traffic
        self.dtype = np.int32 if n < (1 << 30) else np.int64
        cums = []
        cur = values
        for level in range(self.bits):
            shift = self.bits - 1 - level
            b = ((cur >> shift) & 1).astype(np.int32)
            c = np.empty(n + 1, dtype=self.dtype)
            c[0] = 0
            np.cumsum(b, dtype=self.dtype, out=c[1:])
            cums.append(c)
            if level + 1 < self.bits:
                cur = cur[np.argsort(cur >> shift, kind="stable")]
        self.cums = cums

    def range_pred_batch(self, x1, x2, y):
        """Largest value <= y at positions [x1, x2); -1 where none exists."""
        return self._range_query(x1, x2, y, pred=True)

    def range_succ_batch(self, x1, x2, y):
        """Smallest value >= y at positions [x1, x2); -1 where none exists."""
        return self._range_query(x1, x2, y, pred=False)

    def _range_query(self, x1, x2, y, pred: bool):
        n, L, dt = self.n, self.bits, self.dtype
        m = x1.size
        full = (1 << L) - 1
        x1 = np.asarray(x1)
        x2 = np.asarray(x2)
        y = np.asarray(y)
        if pred:
            alive = (x2 > x1) & (y >= 0)
            y = np.where(alive, np.minimum(y, full), 0).astype(dt)
        else:
            alive = (x2 > x1) & (y <= full)
            y = np.where(alive, np.maximum(y, 0), 0).astype(dt)
        one = dt(1)
        s = np.zeros(m, dt)
        e = np.full(m, n, dtype=dt)
        a = np.where(alive, x1, 0).astype(dt)
        b = np.where(alive, x2, 0).astype(dt)
        ck_level = np.full(m, -1, dtype=np.int8)
        ck_s = np.zeros(m, dt)
        ck_e = np.zeros(m, dt)
        ck_a = np.zeros(m, dt)
        ck_b = np.zeros(m, dt)
        ck_val = np.zeros(m, dt)
        for level in range(L):
            C = self.cums[level]
            shift = L - 1 - level
            cs = C[s]
            zend = e - (C[e] - cs)  # s + zeros(node): boundary between the children
            a1 = C[a] - cs          # ones before a within the node
            b1 = C[b] - cs
            right = ((y >> shift) & one).astype(bool)
            if pred:
                rec = alive & right & ((b - b1) > (a - a1))
            else:
                rec = alive & ~right & (b1 > a1)
            if rec.any():
                ck_level[rec] = level + 1
                if pred:
                    ck_s[rec] = s[rec]
                    ck_e[rec] = zend[rec]
                    ck_a[rec] = a[rec] - a1[rec]
                    ck_b[rec] = b[rec] - b1[rec]
                    ck_val[rec] = ((y[rec] >> shift) ^ one) << shift
                else:
                    ck_s[rec] = zend[rec]
                    ck_e[rec] = e[rec]
                    ck_a[rec] = zend[rec] + a1[rec]
                    ck_b[rec] = zend[rec] + b1[rec]
                    ck_val[rec] = ((y[rec] >> shift) | one) << shift
            s = np.where(right, zend, s)
            e = np.where(right, e, zend)
            a = np.where(right, zend + a1, a - a1)
            b = np.where(right, zend + b1, b - b1)
        res = np.where(alive & (b > a), y.astype(np.int64), -1)
        need = alive & (res < 0) & (ck_level >= 0)
        if need.any():
            idx = np.flatnonzero(need)
            res[idx] = self._walk_extreme(
                ck_level[idx], ck_s[idx], ck_e[idx], ck_a[idx], ck_b[idx], ck_val[idx],
                to_max=pred,
            )
        return res

    def _walk_extreme(self, ck_level, s, e, a, b, val, to_max):
        """Descend from each recorded branch to its maximum (or minimum) value."""
        L, dt = self.bits, self.dtype
        val = val.astype(np.int64)
        start = int(ck_level.min()) if ck_level.size else L
        for level in range(start, L):
            act = ck_level <= level
            C = self.cums[level]
            shift = L - 1 - level
            cs = C[s]
            zend = e - (C[e] - cs)
            a1 = C[a] - cs
            b1 = C[b] - cs
            if to_max:
                go_right = act & (b1 > a1)
            else:
                go_right = act & ~((b - b1) > (a - a1))
            val[go_right] |= 1 << shift
            s2 = np.where(go_right, zend, s)
            e2 = np.where(go_right, e, zend)
            a2 = np.where(go_right, zend + a1, a - a1)
            b2 = np.where(go_right, zend + b1, b - b1)
            s = np.where(act, s2, s)
            e = np.where(act, e2, e)
            a = np.where(act, a2, a)
            b = np.where(act, b2, b)
        return val


class GridIndex:
    """Range predecessor/successor over the node grid plus depth-bounded LCE."""

    def __init__(self, trie: CommonSuffixTrie, orders: NodeOrders, order: SuffixOrder):
        self.trie = trie
        self.orders = orders
        self.sorder = order
        n = trie.n_nodes
        self.n = n
        bfs_node = orders.bfs_node
        yvals = {
            "pre": orders.pre[bfs_node[1:]].astype(np.int64) - 1,
            "post": orders.post[bfs_node[1:]].astype(np.int64) - 1,
            "lex": order.isa0[bfs_node[1:]].astype(np.int64) - 1,
        }
        self._trees = {}
        self._pos_of = {}
        for name, vals in yvals.items():
            self._trees[name] = WaveletTree(vals)
            inv = np.empty(n, dtype=np.int64)
            inv[vals] = np.arange(n, dtype=np.int64)
            self._pos_of[name] = inv
        self.range_queries = 0
        self.lce_down_queries = 0

    # -- raw range queries (1-based positions and values) ----------------------

    def _check_interval(self, seq, x1, x2):
        if seq not in _SEQUENCES:
            raise ValueError(f"unknown sequence {seq!r}")
        if not (1 <= x1 <= x2 <= self.n):
            raise ValueError(f"malformed interval [{x1}, {x2}] for n={self.n}")

    def range_pred(self, seq: str, x1: int, x2: int, y: int):
        """Point with largest y-value <= y among grid positions [x1, x2], or None."""
        self._check_interval(seq, x1, x2)
        v = self._pred_batch(seq, np.array([x1]), np.array([x2]), np.array([y]))[0]
        if v < 0:
            return None
        return int(self._pos_of[seq][v]) + 1, int(v) + 1

    def range_succ(self, seq: str, x1: int, x2: int, y: int):
        """Point with smallest y-value >= y among grid positions [x1, x2], or None."""
        self._check_interval(seq, x1, x2)
        v = self._succ_batch(seq, np.array([x1]), np.array([x2]), np.array([y]))[0]
        if v < 0:
            return None
        return int(self._pos_of[seq][v]) + 1, int(v) + 1

    def _pred_batch(self, seq, x1, x2, y):
        self.range_queries += int(x1.size)
        return self._trees[seq].range_pred_batch(
            np.asarray(x1, np.int64) - 1, np.asarray(x2, np.int64), np.asarray(y, np.int64) - 1
        )

    def _succ_batch(self, seq, x1, x2, y):
        self.range_queries += int(x1.size)
        return self._trees[seq].range_succ_batch(
            np.asarray(x1, np.int64) - 1, np.asarray(x2, np.int64), np.asarray(y, np.int64) - 1
        )

    # -- depth-constrained descendant interval and LCE --------------------------

    def descendants_at_depth(self, v: int, d: int):
        """Inclusive bfs interval of v's descendants at suffix depth d, or None."""
        if d <= int(self.trie.sdepth[v]):
            raise ValueError(f"depth {d} not strictly below node {v}")
        lo, hi, ok = self._desc_interval_batch(
            np.array([v], dtype=np.int32), np.array([d], dtype=np.int64)
        )
        if not ok[0]:
            return None
        return int(lo[0]), int(hi[0])

    def _desc_interval_batch(self, vs, ds):
        orders = self.orders
        m = vs.size
        lo = np.zeros(m, dtype=np.int64)
        hi = np.zeros(m, dtype=np.int64)
        ok = ds <= orders.max_sdepth
        if not ok.any():
            return lo, hi, ok
        dsafe = np.where(ok, ds, 1)
        dlo = orders.depth_lo[dsafe]
        dhi = orders.depth_hi[dsafe]
        pv = self._succ_batch("pre", np.where(ok, dlo, 1), np.where(ok, dhi, 0), orders.pre[vs])
        qv = self._pred_batch("post", np.where(ok, dlo, 1), np.where(ok, dhi, 0), orders.post[vs])
        ok = ok & (pv >= 0) & (qv >= 0)
        sel = ok
        lo[sel] = self._pos_of["pre"][pv[sel]] + 1
        hi[sel] = self._pos_of["post"][qv[sel]] + 1
        ok = ok & (lo <= hi)
        return lo, hi, ok

    def lce_down(self, v: int, d: int):
        """Descendant of v at suffix depth d with the longest common extension toward the root.

        Returns (node, lcp) or None when v has no descendant at depth d.  Ties
        on the lcp return the candidate with the smaller suffix rank.
        """
        if d <= int(self.trie.sdepth[v]):
            raise ValueError(f"depth {d} not strictly below node {v}")
        nodes, lcps, ok = self.lce_down_batch(
            np.array([v], dtype=np.int32), np.array([d], dtype=np.int64)
        )
        if not ok[0]:
            return None
        return int(nodes[0]), int(lcps[0])

    def lce_down_batch(self, vs, ds):
        """Vectorized lce_down; returns (nodes, lcps, found)."""
        self.lce_down_queries += int(vs.size)
        sorder = self.sorder
        m = vs.size
        nodes = np.zeros(m, dtype=np.int32)
        lcps = np.zeros(m, dtype=np.int64)
        lo, hi, ok = self._desc_interval_batch(vs, ds)
        if not ok.any():
            return nodes, lcps, ok
        ranks = sorder.isa0[vs].astype(np.int64)
        qlo = np.where(ok, lo, 1)
        qhi = np.where(ok, hi, 0)
        r1 = self._pred_batch("lex", qlo, qhi, ranks)
        r2 = self._succ_batch("lex", qlo, qhi, ranks)
        has1 = ok & (r1 >= 0)
        has2 = ok & (r2 >= 0)
        n1 = np.where(has1, sorder.sa0[np.where(has1, r1 + 1, 1)], 0).astype(np.int32)
        n2 = np.where(has2, sorder.sa0[np.where(has2, r2 + 1, 1)], 0).astype(np.int32)
        l1 = np.zeros(m, dtype=np.int64)
        l2 = np.zeros(m, dtype=np.int64)
        if has1.any():
            l1[has1] = sorder.lce_batch(vs[has1], n1[has1])
        if has2.any():
            l2[has2] = sorder.lce_batch(vs[has2], n2[has2])
        # prefer the predecessor side on equal lcp: it has the smaller rank
        use1 = has1 & (~has2 | (l1 >= l2))
        nodes = np.where(use1, n1, n2)
        lcps = np.where(use1, l1, l2)
        found = has1 | has2
        nodes[~found] = 0
        lcps[~found] = 0
        return nodes, lcps, found
