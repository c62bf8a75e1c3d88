"""Brute-force reference implementations used as correctness anchors.

Everything here is a direct transcription of a definition: materialize,
scan, compare.  These functions deliberately avoid every production index
structure (suffix order, Lyndon tables, grid index, runs engine) so that
agreement between the two sides is meaningful.  Inputs are small by design.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .trie import BOTTOM, ROOT, CommonSuffixTrie


def _as_symbols(w) -> list[int]:
    if isinstance(w, str):
        return list(w.encode("utf-8"))
    return [int(c) for c in w]


def _failure_function(s: list[int]) -> list[int]:
    """KMP failure table: f[L] = longest proper border of s[0:L]."""
    m = len(s)
    f = [0] * (m + 1)
    k = 0
    for j in range(1, m):
        c = s[j]
        while k and s[k] != c:
            k = f[k]
        if s[k] == c:
            k += 1
        f[j + 1] = k
    return f


def smallest_period(w) -> int:
    s = _as_symbols(w)
    f = _failure_function(s)
    return len(s) - f[len(s)]


def string_runs_bruteforce(w) -> set[tuple[int, int, int]]:
    """All maximal repetitions of a string as (start, end, period), 1-based inclusive.

    An interval qualifies when its smallest period is at most half its length
    and any one-symbol extension on either side changes that smallest period.
    """
    s = _as_symbols(w)
    n = len(s)
    per = [_failure_function(s[i:]) for i in range(n)]

    def pi(i: int, length: int) -> int:
        return length - per[i][length]

    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            length = j - i + 1
            p = pi(i, length)
            if 2 * p > length:
                continue
            if i > 0 and pi(i - 1, length + 1) == p:
                continue
            if j < n - 1 and pi(i, length + 1) == p:
                continue
            out.add((i + 1, j + 1, p))
    return out


def string_nsv_reference(a) -> list[int]:
    """Next smaller value by the back-pointer sweep, 1-based positions.

    Position n+1 acts as a value smaller than everything; entries with no
    smaller value to their right map to n+1.
    """
    n = len(a)
    if n == 0:
        return []
    nsv = [0] * (n + 2)
    nsv[n] = n + 1
    for i in range(n - 1, 0, -1):
        x = i + 1
        while x <= n and a[i - 1] <= a[x - 1]:
            x = nsv[x]
        nsv[i] = x
    return nsv[1:n + 1]


def string_nsv_naive(a) -> list[int]:
    """Same contract as string_nsv_reference, by plain rightward scanning."""
    n = len(a)
    out = []
    for i in range(n):
        j = i + 1
        while j < n and a[j] >= a[i]:
            j += 1
        out.append(j + 1)
    return out


def string_suffix_ranks(w) -> list[int]:
    """1-based rank of each suffix of w under the natural symbol order."""
    s = _as_symbols(w)
    n = len(s)
    order = sorted(range(n), key=lambda i: s[i:])
    isa = [0] * n
    for r, i in enumerate(order):
        isa[i] = r + 1
    return isa


# -- trie-side oracles -------------------------------------------------------------


def materialize_suffix(trie: CommonSuffixTrie, v: int) -> tuple[int, ...]:
    return tuple(trie.suffix_of(v))


def upward_path(trie: CommonSuffixTrie, deep: int):
    """(labels, chain) of the path from `deep` to the root, sentinel excluded."""
    labels = []
    chain = [deep]
    v = deep
    while v != ROOT:
        labels.append(int(trie.in_label[v]))
        v = int(trie.parent[v])
        chain.append(v)
    return labels, chain


def trie_runs_bruteforce(trie: CommonSuffixTrie) -> set[tuple[int, int, int]]:
    """All runs as (deep, shallow, period) by scanning every ancestor pair.

    The deep-side maximality test uses the fact that sibling labels are
    distinct: at most one child can continue the period, namely the one
    carrying the symbol one period above the deep endpoint.
    """
    out = set()
    for deep in range(1, trie.n_nodes + 1):
        labels, chain = upward_path(trie, deep)
        m = len(labels)
        if m < 2:
            continue
        f = _failure_function(labels)
        child_labels = {lab for lab, _ in trie.children_of(deep)}
        for length in range(2, m + 1):
            p = length - f[length]
            if 2 * p > length:
                continue
            if length < m and (length + 1) - f[length + 1] == p:
                continue  # periodicity survives one more edge toward the root
            if labels[p - 1] in child_labels:
                continue  # the unique continuation label exists below
            out.add((deep, chain[length], p))
    return out


def suffix_sort_naive(trie: CommonSuffixTrie, ell: int = 0) -> dict[int, int]:
    """node -> 1-based rank of its suffix, by materializing and sorting."""
    key = (lambda s: s) if ell == 0 else (lambda s: tuple(-c for c in s))
    pairs = sorted(
        (key(materialize_suffix(trie, v)), v) for v in range(1, trie.n_nodes + 1)
    )
    return {v: r + 1 for r, (_, v) in enumerate(pairs)}


def nsv_naive(trie: CommonSuffixTrie, ranks: dict[int, int]) -> dict[int, int]:
    """Nearest strict ancestor with a smaller rank, by walking parent chains."""
    out = {}
    for v in range(1, trie.n_nodes + 1):
        u = int(trie.parent[v])
        while u != BOTTOM and ranks[u] >= ranks[v]:
            u = int(trie.parent[u])
        out[v] = u
    return out


def lce_naive(trie: CommonSuffixTrie, u: int, v: int) -> int:
    a = materialize_suffix(trie, u)
    b = materialize_suffix(trie, v)
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def is_lyndon(word, ell: int = 0) -> bool:
    """Strictly smaller than every proper suffix under the chosen symbol order."""
    s = _as_symbols(word)
    if ell == 1:
        s = [-c for c in s]
    return all(s < s[i:] for i in range(1, len(s)))


def range_pred_naive(values, x1: int, x2: int, y: int):
    """Scan of a 1-based sequence: largest value <= y on the inclusive interval."""
    best = None
    for x in range(x1, x2 + 1):
        v = values[x - 1]
        if v <= y and (best is None or v > best[1]):
            best = (x, v)
    return best


def range_succ_naive(values, x1: int, x2: int, y: int):
    best = None
    for x in range(x1, x2 + 1):
        v = values[x - 1]
        if v >= y and (best is None or v < best[1]):
            best = (x, v)
    return best


def descendants_at_depth_naive(trie: CommonSuffixTrie, v: int, d: int) -> set[int]:
    out = set()
    stack = [v]
    while stack:
        u = stack.pop()
        if int(trie.sdepth[u]) == d:
            out.add(u)
            continue
        if int(trie.sdepth[u]) > d:
            continue
        stack.extend(c for _, c in trie.children_of(u))
    out.discard(v)
    return out


def lce_down_naive(trie: CommonSuffixTrie, v: int, d: int):
    """(best lcp, attaining node set) over descendants of v at depth d, or None."""
    nodes = descendants_at_depth_naive(trie, v, d)
    if not nodes:
        return None
    scored = [(lce_naive(trie, u, v), u) for u in nodes]
    best = max(s for s, _ in scored)
    return best, {u for s, u in scored if s == best}


@dataclass
class OracleReport:
    """Outcome of one oracle comparison; failures carry a replayable reproducer."""

    structure: str
    passed: bool
    detail: str = ""
    reproducer: str = field(default="", repr=False)  # edge-list TSV of the trie

    @staticmethod
    def success(structure: str) -> "OracleReport":
        return OracleReport(structure, True)

    @staticmethod
    def failure(structure: str, detail: str, trie: CommonSuffixTrie) -> "OracleReport":
        from .formats import edges_to_text

        return OracleReport(structure, False, detail, edges_to_text(trie))
