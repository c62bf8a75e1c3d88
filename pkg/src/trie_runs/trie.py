"""Common-suffix tries: construction, validation, node orders, level ancestors.

A common-suffix trie is a rooted tree with integer edge labels, read toward
the root: the "suffix" of a node is the label sequence from the node up to
an auxiliary bottom node attached above the root.  The root-to-bottom edge
carries a sentinel label strictly larger than every regular symbol, so node
suffixes are pairwise distinct and none is a proper prefix of another.

Node ids are dense: 0 is the bottom node, 1 the root, and ids 2..N follow
preorder (children visited in ascending label order).  All per-node data
lives in numpy arrays indexed by node id; index 0 belongs to the bottom
node.
"""

from __future__ import annotations

import numpy as np

BOTTOM = 0
ROOT = 1

# Depth at which per-level vectorized traversal gives way to iterative DFS.
_DEEP_TRIE_CUTOFF = 1024


class TrieError(ValueError):
    """Input data violates a trie invariant (labels, shape, connectivity)."""


def _gather_children(csr: np.ndarray, offsets: np.ndarray, frontier: np.ndarray):
    """All CSR children of `frontier`, preserving frontier order then label order."""
    starts = offsets[frontier]
    counts = offsets[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=csr.dtype)
    base = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
    return csr[base + np.arange(total, dtype=np.int64)]


def _preorder_by_dfs(csr, offsets, parent, n):
    """Iterative DFS fallback for deep tries: preorder rank and subtree size."""
    pre = np.zeros(n + 1, dtype=np.int64)
    size = np.ones(n + 1, dtype=np.int64)
    size[BOTTOM] = 0
    child = csr.tolist()
    off = offsets.tolist()
    par = parent.tolist()
    sz = size.tolist()
    pr = pre.tolist()
    cursor = off[:-1].copy()
    stack = [ROOT]
    pr[ROOT] = 1
    counter = 2
    while stack:
        v = stack[-1]
        c = cursor[v]
        if c < off[v + 1]:
            cursor[v] = c + 1
            u = child[c]
            pr[u] = counter
            counter += 1
            stack.append(u)
        else:
            stack.pop()
            if v != ROOT:
                sz[par[v]] += sz[v]
    return np.array(pr, dtype=np.int64), np.array(sz, dtype=np.int64)


class CommonSuffixTrie:
    """Immutable rooted trie with the auxiliary bottom node attached.

    Construction happens through :func:`build_from_strings`,
    :func:`build_from_edges`, or the internal array finalizer; after that the
    structure is read-only and safe to query from multiple threads.
    """

    def __init__(self, parent, in_label, sdepth, subtree_size, sentinel, orig_ids=None):
        self.parent = parent              # int32, parent[BOTTOM] == BOTTOM
        self.in_label = in_label          # int64, in_label[ROOT] == sentinel
        self.sdepth = sdepth              # int32, edges from node to bottom
        self.subtree_size = subtree_size  # int64, real descendants incl. self
        self.sentinel = int(sentinel)
        self.orig_ids = orig_ids          # dense id -> id in the source data, or None
        self.n_nodes = int(parent.size - 1)
        self.edge_count = self.n_nodes    # one incoming edge per real node, bottom edge included
        self.max_sdepth = int(sdepth.max())
        self._build_children_csr()
        self._build_lifting()

    # -- construction helpers -------------------------------------------------

    def _build_children_csr(self):
        n = self.n_nodes
        kids = np.arange(1, n + 1, dtype=np.int32)
        order = np.lexsort((self.in_label[1:], self.parent[1:]))
        self._csr = kids[order]
        counts = np.bincount(self.parent[1:], minlength=n + 1)
        self._csr_off = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)

    def _build_lifting(self):
        up = [self.parent.astype(np.int32)]
        while (1 << len(up)) <= self.max_sdepth:
            prev = up[-1]
            up.append(prev[prev])
        self._up = up

    # -- queries ---------------------------------------------------------------

    def ancestor_at(self, v: int, k: int) -> int:
        """Ancestor exactly `k` edges above `v`; k == sdepth(v) yields the bottom node."""
        if not 0 <= k <= int(self.sdepth[v]):
            raise ValueError(f"ancestor distance {k} out of range for node {v}")
        j = 0
        while k:
            if k & 1:
                v = int(self._up[j][v])
            k >>= 1
            j += 1
        return int(v)

    def ancestors_at(self, vs: np.ndarray, ks: np.ndarray) -> np.ndarray:
        """Vectorized ancestor_at; distances beyond the root saturate at the bottom node."""
        vs = np.asarray(vs, dtype=np.int32).copy()
        ks = np.asarray(ks, dtype=np.int64)
        if ks.size == 0:
            return vs
        hi = int(ks.max())
        if hi > self.max_sdepth:
            raise ValueError(f"ancestor distance {hi} exceeds trie height")
        j = 0
        while (1 << j) <= hi:
            step = (ks >> j) & 1 == 1
            vs[step] = self._up[j][vs[step]]
            j += 1
        return vs

    def suffix_char(self, v: int, i: int) -> int:
        """The i-th symbol (1-based) of the suffix of `v`; position sdepth(v) is the sentinel."""
        if not 1 <= i <= int(self.sdepth[v]):
            raise ValueError(f"suffix position {i} out of range for node {v}")
        return int(self.in_label[self.ancestor_at(v, i - 1)])

    def suffix_of(self, v: int) -> list[int]:
        """Materialized suffix of `v` (labels from v up to and including the sentinel)."""
        out = []
        while v != BOTTOM:
            out.append(int(self.in_label[v]))
            v = int(self.parent[v])
        return out

    def children_of(self, v: int) -> list[tuple[int, int]]:
        """(label, child) pairs in ascending label order."""
        lo, hi = int(self._csr_off[v]), int(self._csr_off[v + 1])
        return [(int(self.in_label[c]), int(c)) for c in self._csr[lo:hi]]

    def child_with_label(self, v: int, label: int):
        """Child of `v` whose incoming edge carries `label`, or None."""
        lo, hi = int(self._csr_off[v]), int(self._csr_off[v + 1])
        kids = self._csr[lo:hi]
        labels = self.in_label[kids]
        i = int(np.searchsorted(labels, label))
        if i < kids.size and labels[i] == label:
            return int(kids[i])
        return None

    def to_edge_rows(self) -> list[tuple[int, int, int]]:
        """(child, parent, label) rows for the real nodes; root row has parent -1, label -1."""
        rows = [(ROOT, -1, -1)]
        for v in range(2, self.n_nodes + 1):
            rows.append((v, int(self.parent[v]), int(self.in_label[v])))
        return rows


def _pre_and_size(csr, offsets, parent, sdepth, n):
    max_d = int(sdepth.max()) if n else 0
    if max_d > _DEEP_TRIE_CUTOFF:
        return _preorder_by_dfs(csr, offsets, parent, n)
    # per-level vectorized traversal
    size = np.ones(n + 1, dtype=np.int64)
    size[BOTTOM] = 0
    frontiers = []
    cur = np.array([ROOT], dtype=np.int32)
    while cur.size:
        frontiers.append(cur)
        cur = _gather_children(csr, offsets, cur)
    for level in reversed(frontiers[1:]):
        np.add.at(size, parent[level], size[level])
    pre = np.zeros(n + 1, dtype=np.int64)
    pre[ROOT] = 1
    for level in frontiers:
        starts = offsets[level]
        counts = (offsets[level + 1] - starts).astype(np.int64)
        kids = _gather_children(csr, offsets, level)
        if kids.size == 0:
            break
        has = counts > 0
        ksize = size[kids]
        run = np.cumsum(ksize) - ksize
        seg_start_pos = np.concatenate(([0], np.cumsum(counts)[:-1]))[has]
        within = run - np.repeat(run[seg_start_pos], counts[has])
        pre[kids] = np.repeat(pre[level[has]], counts[has]) + 1 + within
    return pre, size


def _finalize(parent_raw, label_raw, orig_ids):
    """Validate raw (parent, label) arrays and renumber nodes to preorder ids.

    `parent_raw`/`label_raw` are 1-indexed over real nodes with slot 0 as the
    bottom node: parent_raw[ROOT] == BOTTOM and label_raw[ROOT] is ignored.
    """
    n = int(parent_raw.size - 1)
    if n < 1:
        raise TrieError("empty input: a trie needs at least the root")
    labels = label_raw[2:] if n >= 2 else label_raw[2:2]
    if labels.size and int(labels.min()) < 0:
        raise TrieError("edge labels must be non-negative integers")

    # sibling labels must be pairwise distinct
    if n >= 2:
        order = np.lexsort((label_raw[2:], parent_raw[2:]))
        p_sorted = parent_raw[2:][order]
        l_sorted = label_raw[2:][order]
        dup = (p_sorted[1:] == p_sorted[:-1]) & (l_sorted[1:] == l_sorted[:-1])
        if dup.any():
            i = int(np.flatnonzero(dup)[0])
            node = int(p_sorted[i])
            shown = int(orig_ids[node]) if orig_ids is not None else node
            raise TrieError(
                f"duplicate child label {int(l_sorted[i])} under node {shown}"
            )

    # depth by pointer jumping; non-convergence means a cycle / disconnected part
    ptr = parent_raw.astype(np.int64)
    ptr[BOTTOM] = BOTTOM
    depth = np.ones(n + 1, dtype=np.int64)
    depth[BOTTOM] = 0
    rounds = 0
    while True:
        moving = ptr != BOTTOM
        if not moving.any():
            break
        rounds += 1
        if rounds > 64:
            bad = np.flatnonzero(moving)
            shown = [int(orig_ids[b]) if orig_ids is not None else int(b) for b in bad[:5]]
            raise TrieError(f"cycle or disconnected nodes detected near {shown}")
        depth += depth[ptr]
        ptr = ptr[ptr]
    sdepth = depth.astype(np.int32)

    kids = np.arange(1, n + 1, dtype=np.int32)
    order = np.lexsort((label_raw[1:], parent_raw[1:]))
    csr = kids[order]
    counts = np.bincount(parent_raw[1:], minlength=n + 1)
    offsets = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)

    pre, size = _pre_and_size(csr, offsets, parent_raw, sdepth, n)

    # remap everything so that node id == preorder rank
    perm = pre.astype(np.int32)  # raw id -> dense id
    parent = np.zeros(n + 1, dtype=np.int32)
    in_label = np.zeros(n + 1, dtype=np.int64)
    sd = np.zeros(n + 1, dtype=np.int32)
    sz = np.zeros(n + 1, dtype=np.int64)
    idx = np.arange(1, n + 1)
    parent[perm[idx]] = perm[parent_raw[idx]]
    in_label[perm[idx]] = label_raw[idx]
    sd[perm[idx]] = sdepth[idx]
    sz[perm[idx]] = size[idx]
    mapped_ids = None
    if orig_ids is not None:
        mapped_ids = np.zeros(n + 1, dtype=np.int64)
        mapped_ids[perm[idx]] = orig_ids[idx]

    sentinel = int(in_label[2:].max()) + 1 if n >= 2 else 0
    in_label[ROOT] = sentinel
    return CommonSuffixTrie(parent, in_label, sd, sz, sentinel, mapped_ids)


def build_from_strings(strings, direction: str = "rootward") -> CommonSuffixTrie:
    """Build the trie of a string set.

    direction="rootward" reads each string leaf-to-root, so the suffix of a
    string's end node is the string itself followed by the sentinel (the
    root-to-leaf path spells the reversal).  direction="leafward" stores the
    strings top-down instead.
    """
    if direction not in ("rootward", "leafward"):
        raise ValueError(f"unknown direction {direction!r}")
    strs = [list(s.encode("utf-8")) if isinstance(s, str) else list(s) for s in strings]
    if not strs:
        raise TrieError("empty input: no strings")
    for s in strs:
        if not s:
            raise TrieError("empty string in input")
        for c in s:
            if c < 0:
                raise TrieError(f"negative symbol {c} in input")

    children: list[dict[int, int]] = [{}]  # per raw node: label -> child raw id
    parents = [0]
    labels = [-1]
    for s in strs:
        seq = s[::-1] if direction == "rootward" else s
        v = 0
        for c in seq:
            nxt = children[v].get(c)
            if nxt is None:
                nxt = len(children)
                children[v][c] = nxt
                children.append({})
                parents.append(v)
                labels.append(c)
            v = nxt

    n = len(parents)
    parent_raw = np.zeros(n + 1, dtype=np.int64)
    label_raw = np.full(n + 1, -1, dtype=np.int64)
    parent_raw[1:] = np.array(parents, dtype=np.int64) + 1
    parent_raw[ROOT] = BOTTOM
    label_raw[2:] = np.array(labels[1:], dtype=np.int64)
    return _finalize(parent_raw, label_raw, None)


NO_PARENT = -1


def build_from_edges(rows) -> CommonSuffixTrie:
    """Build a trie from (child, parent, label) rows; the root row carries parent -1.

    Ids are renumbered densely (preorder); the original ids are kept in
    `orig_ids` for diagnostics.
    """
    rows = list(rows)
    if not rows:
        raise TrieError("empty input: no edge rows")
    ids = {}
    for child, par, _ in rows:
        if child in ids:
            raise TrieError(f"node {child} defined twice")
        ids[child] = len(ids) + 1
    roots = [c for c, p, _ in rows if p == NO_PARENT]
    if len(roots) != 1:
        raise TrieError(f"expected exactly one root row, found {len(roots)}")

    n = len(rows)
    parent_raw = np.zeros(n + 1, dtype=np.int64)
    label_raw = np.full(n + 1, -1, dtype=np.int64)
    orig = np.zeros(n + 1, dtype=np.int64)
    for child, par, label in rows:
        c = ids[child]
        orig[c] = child
        if par == NO_PARENT:
            parent_raw[c] = BOTTOM
            continue
        if par not in ids:
            raise TrieError(f"node {child} references unknown parent {par}")
        if label < 0:
            raise TrieError(f"edge into node {child} has negative label {label}")
        parent_raw[c] = ids[par]
        label_raw[c] = label
    root_raw = ids[roots[0]]
    if root_raw != ROOT:
        # swap raw ids so the root occupies slot 1 before finalizing
        other = ROOT
        swap = {root_raw: other, other: root_raw}
        remap = np.arange(n + 1, dtype=np.int64)
        remap[root_raw], remap[other] = other, root_raw
        parent_raw = remap[parent_raw.astype(np.int64)]
        parent_raw[[root_raw, other]] = parent_raw[[other, root_raw]]
        label_raw[[root_raw, other]] = label_raw[[other, root_raw]]
        orig[[root_raw, other]] = orig[[other, root_raw]]
    return _finalize(parent_raw, label_raw, orig)


class NodeOrders:
    """Breadth-first positions, preorder/postorder ranks, per-depth intervals.

    bfs positions enumerate nodes by (sdepth, preorder), so every depth level
    is one contiguous interval and the descendants of any node occupy a
    contiguous sub-interval of their level.
    """

    def __init__(self, trie: CommonSuffixTrie):
        n = trie.n_nodes
        # node ids are preorder ranks by construction; verified in tests
        self.pre = np.arange(n + 1, dtype=np.int64)
        self.pre[BOTTOM] = 0
        depth0 = trie.sdepth.astype(np.int64) - 1
        self.post = self.pre + trie.subtree_size - 1 - depth0
        self.post[BOTTOM] = 0
        by_depth = np.argsort(trie.sdepth[1:], kind="stable").astype(np.int64) + 1
        self.bfs_node = np.concatenate(([0], by_depth)).astype(np.int32)  # position -> node
        self.bfs_pos = np.zeros(n + 1, dtype=np.int64)                    # node -> position
        self.bfs_pos[by_depth] = np.arange(1, n + 1, dtype=np.int64)
        sd_sorted = trie.sdepth[by_depth]
        max_d = trie.max_sdepth
        self.depth_lo = np.zeros(max_d + 2, dtype=np.int64)
        self.depth_hi = np.zeros(max_d + 2, dtype=np.int64)
        ds = np.arange(1, max_d + 1)
        self.depth_lo[1:max_d + 1] = np.searchsorted(sd_sorted, ds, side="left") + 1
        self.depth_hi[1:max_d + 1] = np.searchsorted(sd_sorted, ds, side="right")
        self.max_sdepth = max_d

    def depth_interval(self, d: int):
        """Inclusive bfs-position interval of the nodes at sdepth `d`, or None."""
        if not 1 <= d <= self.max_sdepth:
            return None
        return int(self.depth_lo[d]), int(self.depth_hi[d])


def compute_orders(trie: CommonSuffixTrie) -> NodeOrders:
    return NodeOrders(trie)
