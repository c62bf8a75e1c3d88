"""Deterministic trie generators for fixtures, fuzzing, and benchmarks.

Identical spec plus seed yields a byte-identical trie.  Path-family kinds
lay a classic word along a single path so that the suffix of the leaf is
the word itself (followed by the sentinel); that specializes every trie
structure to the plain string case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .trie import BOTTOM, CommonSuffixTrie
from .trie import _finalize

KINDS = ("random", "path", "fibonacci-path", "thue-morse-path", "caterpillar")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str = "random"
    size: int = 100           # target real node count, root included
    alphabet: int = 2
    branching: float = 0.1    # probability a new node attaches to a random earlier node
    seed: int = 0

    def validate(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("size must be at least 1 (the root)")
        if self.alphabet < 1:
            raise ValueError("alphabet must be at least 1")
        if self.kind == "caterpillar" and self.alphabet < 2:
            raise ValueError("caterpillar needs an alphabet of at least 2")
        if not 0.0 <= self.branching <= 1.0:
            raise ValueError("branching must be a probability")


def fibonacci_word(n: int) -> list[int]:
    """Prefix of the infinite Fibonacci word over {0, 1} (0 -> 01, 1 -> 0)."""
    a, b = [0], [0, 1]
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def thue_morse_word(n: int) -> list[int]:
    return [bin(i).count("1") & 1 for i in range(n)]


def _path_trie(word: list[int]) -> CommonSuffixTrie:
    """Single path below the root; the leaf's suffix spells `word` + sentinel."""
    m = len(word)
    n = m + 1
    parent = np.zeros(n + 1, dtype=np.int64)
    label = np.full(n + 1, -1, dtype=np.int64)
    parent[1] = BOTTOM
    for j in range(2, n + 1):
        parent[j] = j - 1
        # node at depth j-1 carries word[m - (j - 1)] so the leaf reads the word upward
        label[j] = word[m - j + 1]
    return _finalize(parent, label, None)


def _random_trie(size: int, sigma: int, branching: float, seed: int) -> CommonSuffixTrie:
    rng = random.Random(seed)
    parent = [0, BOTTOM]  # slot per raw node id, 1-based; root at id 1
    label = [-1, -1]
    used: set[tuple[int, int]] = set()
    degree = [0, 0]
    open_nodes = [1]          # nodes with spare label capacity
    open_pos = {1: 0}
    last = 1
    for _ in range(size - 1):
        if degree[last] >= sigma or rng.random() < branching:
            par = open_nodes[rng.randrange(len(open_nodes))]
        else:
            par = last
        while True:
            lab = rng.randrange(sigma)
            if (par, lab) not in used:
                break
        used.add((par, lab))
        node = len(parent)
        parent.append(par)
        label.append(lab)
        degree.append(0)
        degree[par] += 1
        if degree[par] >= sigma:
            # swap-remove the saturated parent from the open pool
            pos = open_pos.pop(par)
            moved = open_nodes[-1]
            open_nodes[pos] = moved
            open_nodes.pop()
            if moved != par:
                open_pos[moved] = pos
        open_nodes.append(node)
        open_pos[node] = len(open_nodes) - 1
        last = node
    return _finalize(
        np.array(parent, dtype=np.int64), np.array(label, dtype=np.int64), None
    )


def _caterpillar_trie(size: int, sigma: int) -> CommonSuffixTrie:
    """A cyclically labeled spine with one leg per spine node: period rich and branchy."""
    parent = [0, BOTTOM]
    label = [-1, -1]
    spine = 1
    spine_depth = 0
    remaining = size - 1
    while remaining > 0:
        child = len(parent)
        parent.append(spine)
        label.append(spine_depth % sigma)
        remaining -= 1
        if remaining > 0:
            leg = len(parent)
            parent.append(spine)
            label.append((spine_depth + 1) % sigma)
            remaining -= 1
        spine = child
        spine_depth += 1
    return _finalize(np.array(parent, dtype=np.int64), np.array(label, dtype=np.int64), None)


def generate_trie(spec: GeneratorSpec) -> CommonSuffixTrie:
    spec.validate()
    if spec.kind == "random":
        return _random_trie(spec.size, spec.alphabet, spec.branching, spec.seed)
    if spec.kind == "path":
        word = [i % spec.alphabet for i in range(spec.size - 1)]
        return _path_trie(word)
    if spec.kind == "fibonacci-path":
        return _path_trie(fibonacci_word(spec.size - 1))
    if spec.kind == "thue-morse-path":
        return _path_trie(thue_morse_word(spec.size - 1))
    if spec.kind == "caterpillar":
        return _caterpillar_trie(spec.size, spec.alphabet)
    raise AssertionError(spec.kind)
