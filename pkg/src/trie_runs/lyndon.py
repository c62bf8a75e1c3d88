"""Longest Lyndon prefixes of node suffixes via nearest-smaller-value ancestors.

For each node, the nearest strict ancestor whose suffix ranks below the
node's own suffix marks the end of the longest Lyndon prefix of the node's
suffix.  These ancestors are found by sweeping nodes in decreasing rank
order over a decremental nearest-marked-ancestor structure: unmark the node,
then ask for its nearest marked strict ancestor, so exactly the higher
ranked nodes are unmarked at query time.

The marked-ancestor structure is union-find with path compression: an
unmarked node's set is merged into its parent's set, and each set remembers
the marked node sitting on top of it.
"""

from __future__ import annotations

import numpy as np

from .trie import BOTTOM, ROOT, CommonSuffixTrie
from .suffix_order import SuffixOrder


class MarkedAncestorStructure:
    """Decremental nearest-marked-ancestor queries over a trie.

    All real nodes start marked; the bottom node is permanently marked and
    is returned once an entire ancestor path has been unmarked.
    """

    def __init__(self, trie: CommonSuffixTrie):
        n = trie.n_nodes
        self._n = n
        self._tree_parent = trie.parent
        self._uf = list(range(n + 1))
        self._anchor = list(range(n + 1))
        self._size = [1] * (n + 1)
        self._marked = [True] * (n + 1)

    def _find(self, x: int) -> int:
        uf = self._uf
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    def is_marked(self, v: int) -> bool:
        return self._marked[v]

    def nma(self, v: int) -> int:
        """Nearest marked strict ancestor of `v`."""
        return self._anchor[self._find(int(self._tree_parent[v]))]

    def unmark(self, v: int) -> None:
        """Unmark a currently marked real node; unmarking twice is an error."""
        if not 1 <= v <= self._n:
            raise ValueError(f"cannot unmark node {v}")
        if not self._marked[v]:
            raise ValueError(f"node {v} is already unmarked")
        self._marked[v] = False
        rp = self._find(int(self._tree_parent[v]))
        rv = self._find(v)
        anchor = self._anchor[rp]
        if self._size[rp] < self._size[rv]:
            rp, rv = rv, rp
        self._uf[rv] = rp
        self._size[rp] += self._size[rv]
        self._anchor[rp] = anchor


def compute_nsv_all(trie: CommonSuffixTrie, order: SuffixOrder, ell: int) -> np.ndarray:
    """Nearest strict ancestor with a smaller suffix rank, for every real node.

    Sweeps nodes in decreasing rank under the chosen symbol order, unmarking
    each before querying, exactly as MarkedAncestorStructure does; the
    union-find bookkeeping is inlined so the sweep stays a tight loop.
    Returns an int32 array indexed by node id; BOTTOM means no such ancestor.
    """
    n = trie.n_nodes
    if ell == 0:
        seq = order.sa0[n:0:-1]
    elif ell == 1:
        # rank under order 1 is the reversal of rank under order 0
        seq = order.sa0[1:n + 1]
    else:
        raise ValueError(f"order flag must be 0 or 1, got {ell}")
    parent = trie.parent.tolist()
    uf = list(range(n + 1))
    anchor = list(range(n + 1))
    size = [1] * (n + 1)
    nsv = [0] * (n + 1)
    for v in seq.tolist():
        r = parent[v]
        while uf[r] != r:
            uf[r] = uf[uf[r]]
            r = uf[r]
        a = anchor[r]
        nsv[v] = a
        s = v
        while uf[s] != s:
            uf[s] = uf[uf[s]]
            s = uf[s]
        if size[r] < size[s]:
            r, s = s, r
        uf[s] = r
        size[r] += size[s]
        anchor[r] = a
    return np.array(nsv, dtype=np.int32)


class LyndonTable:
    """Per-node, per-order longest Lyndon prefix data.

    nsv(v, ell) is the node ending the longest Lyndon prefix of the suffix
    of v under symbol order ell; llen(v, ell) is that prefix's length.
    """

    def __init__(self, trie: CommonSuffixTrie, nsv0: np.ndarray, nsv1: np.ndarray):
        self.trie = trie
        self._nsv = (nsv0, nsv1)
        sd = trie.sdepth.astype(np.int64)
        llen0 = sd - sd[nsv0]
        llen1 = sd - sd[nsv1]
        llen0[BOTTOM] = 0
        llen1[BOTTOM] = 0
        self._llen = (llen0, llen1)

    def nsv(self, ell: int) -> np.ndarray:
        return self._nsv[ell]

    def llen(self, ell: int) -> np.ndarray:
        return self._llen[ell]

    def longest_lyndon_prefix(self, v: int, ell: int) -> tuple[int, int]:
        """(end node, length) of the longest Lyndon prefix of v's suffix under order ell.

        The root and the bottom node have no meaningful Lyndon prefix (their
        suffixes are the bare sentinel and the empty string) and are rejected.
        """
        if v in (ROOT, BOTTOM):
            raise ValueError("longest Lyndon prefix is undefined for the root and bottom nodes")
        if not 1 <= v <= self.trie.n_nodes:
            raise ValueError(f"no such node {v}")
        return int(self._nsv[ell][v]), int(self._llen[ell][v])


def build_lyndon_table(trie: CommonSuffixTrie, order: SuffixOrder) -> LyndonTable:
    return LyndonTable(trie, compute_nsv_all(trie, order, 0), compute_nsv_all(trie, order, 1))
