"""Maximal repetitions (runs) on edge-labeled rooted tries.

The library builds a common-suffix trie from strings or edge lists, indexes
it (suffix ranks, Lyndon tables, a range-predecessor grid), and enumerates
every maximal periodic ancestor/descendant path together with its period
and exact rational exponent.  Brute-force oracles for every structure live
in :mod:`trie_runs.oracles`; the CLI workbench in :mod:`trie_runs.cli`.
"""

from .trie import (
    BOTTOM,
    ROOT,
    CommonSuffixTrie,
    NodeOrders,
    TrieError,
    build_from_edges,
    build_from_strings,
    compute_orders,
)
from .suffix_order import SuffixOrder, build_suffix_order
from .lyndon import LyndonTable, MarkedAncestorStructure, build_lyndon_table, compute_nsv_all
from .range_index import GridIndex, WaveletTree
from .runs import (
    Candidate,
    DuplicateRunError,
    RunRecord,
    RunsEngine,
    count_runs,
    enumerate_runs,
    run_stats,
)
from .formats import ParseError
from .generators import GeneratorSpec, generate_trie

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "ROOT",
    "CommonSuffixTrie",
    "NodeOrders",
    "TrieError",
    "build_from_edges",
    "build_from_strings",
    "compute_orders",
    "SuffixOrder",
    "build_suffix_order",
    "LyndonTable",
    "MarkedAncestorStructure",
    "build_lyndon_table",
    "compute_nsv_all",
    "GridIndex",
    "WaveletTree",
    "Candidate",
    "DuplicateRunError",
    "RunRecord",
    "RunsEngine",
    "count_runs",
    "enumerate_runs",
    "run_stats",
    "ParseError",
    "GeneratorSpec",
    "generate_trie",
]
