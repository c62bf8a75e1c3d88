"""Enumeration of maximal repetitions (runs) whose endpoints are ancestor/descendant pairs.

A run is a path between a node and one of its ancestors whose label string
has smallest period at most half the path length, and which cannot be
extended one edge in either direction without changing that period.

The pipeline follows the longest-Lyndon-prefix factorization: every run
contains, for the symbol order under which the character breaking the
period above the shallow endpoint is small, an occurrence of a Lyndon word
of length equal to the period (its Lyndon root).  The topmost such
occurrence starts at a node whose longest Lyndon prefix is exactly that
root, so the Lyndon table yields one candidate per (node, order) pair and
each run is confirmed by exactly one surviving candidate:

  1. the upward extension z of the candidate must be shorter than the
     period (deeper root occurrences of the same run are filtered out), and
     the characters at the period break must order according to the flag;
  2. a square of the period must exist below the shallow endpoint, checked
     with one depth-constrained downward LCE query;
  3. the deep endpoint is found by geometric whole-period extension steps
     plus a doubling-and-bisection search for the remainder shorter than
     one period.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .trie import BOTTOM, CommonSuffixTrie, NodeOrders, compute_orders
from .suffix_order import SuffixOrder, build_suffix_order
from .lyndon import LyndonTable, build_lyndon_table
from .range_index import GridIndex

_CHUNK = 1 << 18

_GROW, _BISECT, _DONE = 0, 1, 2


class DuplicateRunError(RuntimeError):
    """Two distinct candidates confirmed the same run; a core invariant broke."""


@dataclass(frozen=True)
class Candidate:
    """A potential Lyndon-root occurrence: str(vi, vj) is Lyndon under the flagged order."""

    vi: int
    vj: int
    period: int
    order: int


@dataclass(frozen=True)
class RunRecord:
    deep: int
    shallow: int
    period: int
    length: int
    exponent: Fraction

    def key(self) -> tuple[int, int, int]:
        return (self.deep, self.shallow, self.period)


class RunsEngine:
    """Bundles all index structures of one trie and runs the enumeration."""

    def __init__(self, trie: CommonSuffixTrie, *, orders=None, suffix=None, lyndon=None, grid=None):
        self.trie = trie
        self.orders: NodeOrders = orders if orders is not None else compute_orders(trie)
        self.suffix: SuffixOrder = suffix if suffix is not None else build_suffix_order(trie)
        self.lyndon: LyndonTable = lyndon if lyndon is not None else build_lyndon_table(trie, self.suffix)
        self.grid: GridIndex = grid if grid is not None else GridIndex(trie, self.orders, self.suffix)

    # -- candidates --------------------------------------------------------------

    def _candidate_arrays(self):
        n = self.trie.n_nodes
        if n < 2:
            empty = np.empty(0, dtype=np.int64)
            return empty.astype(np.int32), empty.astype(np.int32), empty, empty.astype(np.int8)
        base = np.arange(2, n + 1, dtype=np.int32)  # every real node except the root
        vi = np.concatenate([base, base])
        vj = np.concatenate([self.lyndon.nsv(0)[base], self.lyndon.nsv(1)[base]])
        p = np.concatenate([self.lyndon.llen(0)[base], self.lyndon.llen(1)[base]]).astype(np.int64)
        ell = np.concatenate([np.zeros(base.size, np.int8), np.ones(base.size, np.int8)])
        order = np.lexsort((ell, self.suffix.isa0[vi]))
        return vi[order], vj[order], p[order], ell[order]

    def collect_candidates(self) -> list[Candidate]:
        """One candidate per (non-root node, symbol order), sorted by suffix rank then order."""
        vi, vj, p, ell = self._candidate_arrays()
        return [Candidate(int(a), int(b), int(c), int(d)) for a, b, c, d in zip(vi, vj, p, ell)]

    # -- confirmation ------------------------------------------------------------

    def _confirm_arrays(self, vi, vj, p, ell):
        """Indices of confirmed candidates plus their run shallow endpoints and anchors."""
        trie = self.trie
        sd = trie.sdepth
        idx = np.flatnonzero(vj != BOTTOM)  # a period cannot span the sentinel edge
        if idx.size == 0:
            return idx, idx.astype(np.int32), idx.astype(np.int32)
        z = self.suffix.lce_batch(vi[idx], vj[idx])
        good = z < p[idx]
        idx, z = idx[good], z[good]
        if idx.size == 0:
            return idx, idx.astype(np.int32), idx.astype(np.int32)
        # character order at the period break selects exactly one of the two flags
        c1 = trie.in_label[trie.ancestors_at(vi[idx], z)]
        c2 = trie.in_label[trie.ancestors_at(vi[idx], z + p[idx])]
        good = np.where(ell[idx] == 0, c2 < c1, c1 < c2)
        idx, z = idx[good], z[good]
        if idx.size == 0:
            return idx, idx.astype(np.int32), idx.astype(np.int32)
        vk = trie.ancestors_at(vj[idx], z)
        vp = trie.ancestors_at(vi[idx], z)
        d = sd[vk].astype(np.int64) + 2 * p[idx]
        node, lcp, okq = self.grid.lce_down_batch(vp, d)
        good = okq & (lcp >= p[idx])
        return idx[good], vk[good], node[good]

    def try_confirm_run(self, c: Candidate):
        """Confirm one candidate: (shallow, anchor, period) or None.

        The anchor is the node two periods below the shallow endpoint on the
        run's path; the deep endpoint search starts from it.
        """
        vi = np.array([c.vi], dtype=np.int32)
        vj = np.array([c.vj], dtype=np.int32)
        p = np.array([c.period], dtype=np.int64)
        ell = np.array([c.order], dtype=np.int8)
        idx, vk, anchor = self._confirm_arrays(vi, vj, p, ell)
        if idx.size == 0:
            return None
        return int(vk[0]), int(anchor[0]), c.period

    def _confirm_chunked(self, vi, vj, p, ell, threads: int):
        total = vi.size
        spans = [(s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
        if not spans:
            e = np.empty(0, dtype=np.int64)
            return e, e.astype(np.int32), e.astype(np.int32)

        def work(span):
            s, t = span
            idx, vk, anchor = self._confirm_arrays(vi[s:t], vj[s:t], p[s:t], ell[s:t])
            return idx + s, vk, anchor

        if threads > 1 and len(spans) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(work, spans))
        else:
            parts = [work(sp) for sp in spans]
        idx = np.concatenate([q[0] for q in parts])
        vk = np.concatenate([q[1] for q in parts])
        anchor = np.concatenate([q[2] for q in parts])
        return idx, vk, anchor

    # -- deep endpoint extension ---------------------------------------------------

    def extend_to_deep_endpoint(self, shallow: int, anchor: int, period: int) -> int:
        """Deepest node to which the confirmed period extends below the anchor."""
        return int(
            self._extend_batch(
                np.array([shallow], dtype=np.int32),
                np.array([anchor], dtype=np.int32),
                np.array([period], dtype=np.int64),
            )[0]
        )

    def _extend_batch(self, vk, anchor, p):
        trie = self.trie
        sd = trie.sdepth
        maxd = trie.max_sdepth
        m = vk.size
        if m == 0:
            return anchor.astype(np.int32)
        cur = anchor.astype(np.int32).copy()
        p64 = p.astype(np.int64)
        length = sd[cur].astype(np.int64) - sd[vk]  # periodic length so far, >= 2p

        # Whole-period extension.  A block of k periods continues the run iff a
        # descendant k*p below matches the current node's suffix on k*p symbols
        # (valid while k*p does not exceed the established periodic length, so
        # the step size can grow geometrically).
        mode = np.zeros(m, dtype=np.int8)
        lo = np.zeros(m, dtype=np.int64)
        hi = np.zeros(m, dtype=np.int64)
        stash = cur.copy()
        while True:
            active = mode != _DONE
            if not active.any():
                break
            k = np.zeros(m, dtype=np.int64)
            grow = mode == _GROW
            if grow.any():
                room = (maxd - sd[cur].astype(np.int64)) // p64
                k[grow] = np.minimum(length[grow] // p64[grow], room[grow])
            bis = mode == _BISECT
            k[bis] = (lo[bis] + hi[bis]) // 2
            mode[grow & (k < 1)] = _DONE
            ask = (mode != _DONE) & active & (k >= 1)
            if not ask.any():
                continue
            feas = np.zeros(m, dtype=bool)
            node_q = np.zeros(m, dtype=np.int32)
            d = sd[cur].astype(np.int64) + k * p64
            nq, lq, oq = self.grid.lce_down_batch(cur[ask], d[ask])
            node_q[ask] = nq
            feas[ask] = oq & (lq >= (k * p64)[ask])
            adv = grow & ask & feas
            cur[adv] = node_q[adv]
            length[adv] += (k * p64)[adv]
            mode[grow & ask & ~feas & (k == 1)] = _DONE
            to_b = grow & ask & ~feas & (k > 1)
            mode[to_b] = _BISECT
            lo[to_b] = 0
            hi[to_b] = k[to_b]
            stash[to_b] = cur[to_b]
            ok_b = bis & feas
            lo[ok_b] = k[ok_b]
            stash[ok_b] = node_q[ok_b]
            hi[bis & ~feas] = k[bis & ~feas]
            fin = (mode == _BISECT) & (hi == lo + 1)
            take = fin & (lo > 0)
            length[take] += (lo * p64)[take]
            cur[take] = stash[take]
            mode[fin] = _DONE

        # Remainder shorter than one period: extending by t more edges requires
        # a descendant p below the ancestor (p - t) above the current endpoint
        # matching that ancestor on p symbols.  Feasibility is monotone in t,
        # so double then bisect.
        deep = cur.copy()
        cap = np.minimum(p64 - 1, maxd - sd[cur].astype(np.int64))
        mode = np.full(m, _DONE, dtype=np.int8)
        mode[cap >= 1] = _GROW
        t_next = np.ones(m, dtype=np.int64)
        t_lo = np.zeros(m, dtype=np.int64)
        t_hi = np.zeros(m, dtype=np.int64)
        while True:
            active = mode != _DONE
            if not active.any():
                break
            t_try = np.zeros(m, dtype=np.int64)
            grow = mode == _GROW
            t_try[grow] = t_next[grow]
            bis = mode == _BISECT
            t_try[bis] = (t_lo[bis] + t_hi[bis]) // 2
            anc = np.zeros(m, dtype=np.int32)
            anc[active] = trie.ancestors_at(cur[active], (p64 - t_try)[active])
            d = sd[cur].astype(np.int64) + t_try
            feas = np.zeros(m, dtype=bool)
            node_q = np.zeros(m, dtype=np.int32)
            nq, lq, oq = self.grid.lce_down_batch(anc[active], d[active])
            node_q[active] = nq
            feas[active] = oq & (lq >= p64[active])
            ok_g = grow & feas
            t_lo[ok_g] = t_try[ok_g]
            deep[ok_g] = node_q[ok_g]
            mode[ok_g & (t_try == cap)] = _DONE
            more = ok_g & (t_try < cap)
            t_next[more] = np.minimum(2 * t_try[more], cap[more])
            bad_g = grow & ~feas
            mode[bad_g & (t_try == t_lo + 1)] = _DONE
            to_b = bad_g & (t_try > t_lo + 1)
            mode[to_b] = _BISECT
            t_hi[to_b] = t_try[to_b]
            ok_b = bis & feas
            t_lo[ok_b] = t_try[ok_b]
            deep[ok_b] = node_q[ok_b]
            t_hi[bis & ~feas] = t_try[bis & ~feas]
            mode[(mode == _BISECT) & (t_hi == t_lo + 1)] = _DONE
        return deep

    # -- full enumeration ------------------------------------------------------------

    def _confirmed(self, threads: int):
        vi, vj, p, ell = self._candidate_arrays()
        idx, vk, anchor = self._confirm_chunked(vi, vj, p, ell, threads)
        pc = p[idx]
        if vk.size:
            order = np.lexsort((pc, anchor, vk))
            sk, sa, sp = vk[order], anchor[order], pc[order]
            dup = (sk[1:] == sk[:-1]) & (sa[1:] == sa[:-1]) & (sp[1:] == sp[:-1])
            if dup.any():
                i = int(np.flatnonzero(dup)[0])
                raise DuplicateRunError(
                    f"run at shallow={int(sk[i])} period={int(sp[i])} confirmed twice"
                )
        return vk, anchor, pc

    def count(self, threads: int = 1):
        """Run count plus the sorted (shallow endpoint, period) pairs, no deep endpoints."""
        vk, anchor, pc = self._confirmed(threads)
        sd = self.trie.sdepth
        isa = self.suffix.isa0
        order = np.lexsort((pc, isa[vk], sd[vk]))
        pairs = [(int(vk[i]), int(pc[i])) for i in order]
        return len(pairs), pairs

    def enumerate(self, threads: int = 1) -> list[RunRecord]:
        """All runs, sorted by (shallow depth, shallow rank, deep rank)."""
        vk, anchor, pc = self._confirmed(threads)
        deep = self._extend_batch(vk, anchor, pc)
        sd = self.trie.sdepth
        length = sd[deep].astype(np.int64) - sd[vk]
        if (length < 2 * pc).any():
            raise AssertionError("confirmed run shorter than two periods")
        isa = self.suffix.isa0
        order = np.lexsort((isa[deep], isa[vk], sd[vk]))
        records = [
            RunRecord(
                deep=int(deep[i]),
                shallow=int(vk[i]),
                period=int(pc[i]),
                length=int(length[i]),
                exponent=Fraction(int(length[i]), int(pc[i])),
            )
            for i in order
        ]
        for prev, nxt in zip(records, records[1:]):
            if prev.key() == nxt.key():
                raise DuplicateRunError(f"duplicate run record {prev.key()}")
        return records


def _effective_threads(threads) -> int:
    cap = os.environ.get("TRIE_RUNS_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    want = threads if threads is not None else 1
    return max(1, min(want, limit))


def enumerate_runs(trie: CommonSuffixTrie, threads=None) -> list[RunRecord]:
    return RunsEngine(trie).enumerate(_effective_threads(threads))


def count_runs(trie: CommonSuffixTrie, threads=None):
    return RunsEngine(trie).count(_effective_threads(threads))


def run_stats(records, trie: CommonSuffixTrie) -> dict:
    """Aggregate statistics with exact rational sums."""
    by_period: dict[int, list[int]] = {}
    for r in records:
        by_period.setdefault(r.period, []).append(r.length)
    sum_exp = Fraction(0)
    for period, lengths in sorted(by_period.items()):
        sum_exp += Fraction(sum(lengths), period)
    sum_floor = sum(max(r.length // r.period - 1, 1) for r in records)
    max_exp = max((r.exponent for r in records), default=Fraction(0))
    return {
        "count": len(records),
        "edge_count": trie.edge_count,
        "sum_exponents": sum_exp,
        "sum_floor_exponent_minus_one": sum_floor,
        "max_exponent": max_exp,
        "period_histogram": {p: len(v) for p, v in sorted(by_period.items())},
    }
