"""Lexicographic ranks of node suffixes, adjacent LCPs, and upward LCE queries.

Ranks are computed by prefix doubling over the trie: the suffix of a node
with its first 2^k symbols removed is the suffix of its ancestor 2^k edges
above, so the rank of a length-2^(k+1) prefix is the rank of the pair
(rank_k(node), rank_k(ancestor)).  The bottom node acts as the empty suffix
with rank 0, which makes the boundary cases fall out of plain array gathers.

Two symbol orders are supported: the natural integer order (order 0, with
the sentinel largest) and its reversal (order 1).  Because no suffix is a
prefix of another, the rank under order 1 is N+1 minus the rank under
order 0; the justifying invariant is asserted by the test suite.
"""

from __future__ import annotations

import numpy as np

from .trie import BOTTOM, CommonSuffixTrie


class MinSparseTable:
    """Static range-minimum over an int array, O(1) per query after O(n log n) build."""

    def __init__(self, arr: np.ndarray):
        arr = np.asarray(arr, dtype=np.int32)
        self.n = int(arr.size)
        table = [arr]
        k = 1
        while (1 << k) <= self.n:
            prev = table[-1]
            half = 1 << (k - 1)
            table.append(np.minimum(prev[: self.n - (1 << k) + 1], prev[half: half + self.n - (1 << k) + 1]))
            k += 1
        self._table = table

    def query(self, lo: int, hi: int) -> int:
        """Minimum over the inclusive 0-based range [lo, hi]."""
        k = (hi - lo + 1).bit_length() - 1
        t = self._table[k]
        return int(min(t[lo], t[hi - (1 << k) + 1]))

    def query_batch(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        length = hi - lo + 1
        out = np.empty(lo.shape, dtype=np.int64)
        ks = np.zeros(lo.shape, dtype=np.int64)
        tmp = length >> 1
        while tmp.any():
            ks += (tmp > 0)
            tmp >>= 1
        for k in range(len(self._table)):
            sel = ks == k
            if not sel.any():
                continue
            t = self._table[k]
            out[sel] = np.minimum(t[lo[sel]], t[hi[sel] - (1 << k) + 1])
        return out


class SuffixOrder:
    """Suffix ranks under both symbol orders plus LCE toward the root."""

    def __init__(self, trie: CommonSuffixTrie, isa0, sa0, lcp_adj, rank_levels):
        self.trie = trie
        n = trie.n_nodes
        self.isa0 = isa0                      # node -> rank in [1, N], 0 at the bottom slot
        self.isa1 = np.where(np.arange(n + 1) > 0, n + 1 - isa0, 0).astype(isa0.dtype)
        self.sa0 = sa0                        # rank (1-based) -> node
        self.lcp_adj = lcp_adj                # lcp_adj[j] = LCP(sa0[j+1], sa0[j+2]), length N-1
        self._rank_levels = rank_levels       # doubling snapshots, kept for diagnostics
        self._rmq = MinSparseTable(lcp_adj) if lcp_adj.size else None

    def isa(self, ell: int) -> np.ndarray:
        return self.isa0 if ell == 0 else self.isa1

    def lcp0(self, r: int) -> int:
        """Adjacent LCP at rank r (2 <= r <= N): LCP of the suffixes ranked r-1 and r."""
        if not 2 <= r <= self.trie.n_nodes:
            raise ValueError(f"rank {r} out of range")
        return int(self.lcp_adj[r - 2])

    def lce_to_root(self, u: int, v: int) -> int:
        """Length of the longest common prefix of the suffixes of two distinct nodes."""
        if u == v:
            raise ValueError("lce_to_root requires two distinct nodes")
        if u == BOTTOM or v == BOTTOM:
            raise ValueError("lce_to_root is defined on real nodes only")
        ru, rv = int(self.isa0[u]), int(self.isa0[v])
        if ru > rv:
            ru, rv = rv, ru
        return self._rmq.query(ru - 1, rv - 2)

    def lce_batch(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        ru = self.isa0[us].astype(np.int64)
        rv = self.isa0[vs].astype(np.int64)
        lo = np.minimum(ru, rv)
        hi = np.maximum(ru, rv)
        return self._rmq.query_batch(lo - 1, hi - 2)


def build_suffix_order(trie: CommonSuffixTrie) -> SuffixOrder:
    n = trie.n_nodes
    if n == 1:
        isa0 = np.array([0, 1], dtype=np.int32)
        sa0 = np.array([0, 1], dtype=np.int32)
        return SuffixOrder(trie, isa0, sa0, np.empty(0, dtype=np.int32), [isa0.copy()])

    labels = trie.in_label
    # rank by first symbol; equal labels share a rank, bottom keeps rank 0
    inv = np.unique(labels[1:], return_inverse=True)[1]
    rank = np.zeros(n + 1, dtype=np.int32)
    rank[1:] = inv.astype(np.int32) + 1

    levels = [rank.copy()]
    step = 1
    k = 0
    while int(rank[1:].max()) < n:
        if step > trie.max_sdepth:
            raise AssertionError("suffix ranks failed to separate; duplicate suffixes?")
        second = rank[trie._up[k]]
        first = rank
        order = np.lexsort((second[1:], first[1:])).astype(np.int64) + 1
        f = first[order]
        s = second[order]
        bump = np.empty(n, dtype=np.int32)
        bump[0] = 1
        bump[1:] = ((f[1:] != f[:-1]) | (s[1:] != s[:-1])).astype(np.int32)
        new_rank = np.zeros(n + 1, dtype=np.int32)
        new_rank[order] = np.cumsum(bump, dtype=np.int32)
        rank = new_rank
        levels.append(rank.copy())
        step <<= 1
        k += 1

    isa0 = rank
    sa0 = np.zeros(n + 1, dtype=np.int32)
    sa0[isa0[1:]] = np.arange(1, n + 1, dtype=np.int32)

    lcp_adj = _adjacent_lcp(trie, sa0, levels)
    return SuffixOrder(trie, isa0, sa0, lcp_adj, levels)


def _adjacent_lcp(trie, sa0, levels):
    """LCP of rank-adjacent suffixes via the doubling rank snapshots.

    Walks power-of-two steps from the largest level down: whenever the
    current pair agrees on a 2^j-symbol prefix (equal level-j ranks), both
    sides jump to their ancestors 2^j above.  Sentinel placement guarantees
    rank equality implies both suffixes are at least that long.
    """
    n = trie.n_nodes
    u = sa0[1:n].astype(np.int32)
    v = sa0[2:n + 1].astype(np.int32)
    lcp = np.zeros(n - 1, dtype=np.int64)
    for j in range(len(levels) - 1, -1, -1):
        if j >= len(trie._up):
            continue
        r = levels[j]
        eq = r[u] == r[v]
        if eq.any():
            lcp[eq] += 1 << j
            up_j = trie._up[j]
            u = np.where(eq, up_j[u], u)
            v = np.where(eq, up_j[v], v)
    return lcp.astype(np.int32)
