"""File formats: string sets, edge-list TSV, runs/stats JSON, DOT export.

All emitters are deterministic: fixed field order, sorted node emission,
exact integers only (rationals as numerator/denominator pairs).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .trie import BOTTOM, ROOT, CommonSuffixTrie, build_from_edges, build_from_strings

EDGE_HEADER = "child\tparent\tlabel"


class ParseError(ValueError):
    """Malformed input file; message carries line diagnostics."""


def parse_strings_text(text: str) -> list[list[int]]:
    """One string per line, bytes as symbols; blank lines ignored."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        out.append(list(line.encode("utf-8")))
    if not out:
        raise ParseError("no strings found in input")
    return out


def _parse_label(field: str, lineno: int) -> int:
    try:
        return int(field)
    except ValueError:
        pass
    if len(field) == 1:
        return ord(field)
    raise ParseError(f"line {lineno}: label {field!r} is neither an integer nor a single character")


def parse_edges_text(text: str) -> list[tuple[int, int, int]]:
    """TSV rows child/parent/label; the root row carries parent -1."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty edge-list file")
    if lines[0].strip() != EDGE_HEADER.strip():
        raise ParseError(f"line 1: expected header {EDGE_HEADER!r}")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(f"line {i}: expected 3 tab-separated fields, got {len(parts)}")
        try:
            child = int(parts[0])
            parent = int(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {i}: bad node id: {exc}") from None
        label = -1 if parent == -1 else _parse_label(parts[2], i)
        rows.append((child, parent, label))
    if not rows:
        raise ParseError("edge-list file has a header but no rows")
    return rows


def load_trie_text(text: str, fmt: str, direction: str = "rootward") -> CommonSuffixTrie:
    if fmt == "strings":
        return build_from_strings(parse_strings_text(text), direction)
    if fmt == "edges":
        return build_from_edges(parse_edges_text(text))
    raise ValueError(f"unknown format {fmt!r}")


def edges_to_text(trie: CommonSuffixTrie) -> str:
    """Canonical edge-list serialization; parsing it back is the identity."""
    lines = [EDGE_HEADER]
    for child, parent, label in trie.to_edge_rows():
        lines.append(f"{child}\t{parent}\t{label}")
    return "\n".join(lines) + "\n"


def runs_to_json(records) -> str:
    items = [
        {
            "deep": r.deep,
            "shallow": r.shallow,
            "period": r.period,
            "length": r.length,
            "exponent_num": r.exponent.numerator,
            "exponent_den": r.exponent.denominator,
        }
        for r in records
    ]
    return json.dumps(items, sort_keys=True, separators=(",", ":")) + "\n"


def _fraction_json(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def stats_to_json(stats: dict) -> str:
    payload = {
        "count": stats["count"],
        "edge_count": stats["edge_count"],
        "sum_exponents": _fraction_json(stats["sum_exponents"]),
        "sum_floor_exponent_minus_one": stats["sum_floor_exponent_minus_one"],
        "max_exponent": _fraction_json(stats["max_exponent"]),
        "period_histogram": {str(k): v for k, v in stats["period_histogram"].items()},
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _dot_label(trie: CommonSuffixTrie, v: int) -> str:
    lab = int(trie.in_label[v])
    return "$" if lab == trie.sentinel else str(lab)


def trie_to_dot(trie: CommonSuffixTrie, highlight_run=None) -> str:
    """DOT graph: nodes annotated with id and suffix depth, edges with labels.

    When a run record is given, the edges on its path are drawn bold red and
    the graph label names the run's period.
    """
    marked = set()
    title = ""
    if highlight_run is not None:
        v = highlight_run.deep
        while v != highlight_run.shallow:
            marked.add(v)
            v = int(trie.parent[v])
        title = (
            f'  label="run: deep={highlight_run.deep} shallow={highlight_run.shallow} '
            f'period={highlight_run.period}";\n'
        )
    out = ["digraph trie {\n", '  node [shape=circle, fontsize=10];\n', title]
    out.append(f'  n{BOTTOM} [label="bot", shape=doublecircle];\n')
    for v in range(1, trie.n_nodes + 1):
        out.append(f'  n{v} [label="{v} d={int(trie.sdepth[v])}"];\n')
    for v in range(1, trie.n_nodes + 1):
        attrs = f'label="{_dot_label(trie, v)}"'
        if v in marked:
            attrs += ', color=red, penwidth=2.0'
        out.append(f"  n{int(trie.parent[v])} -> n{v} [{attrs}];\n")
    out.append("}\n")
    return "".join(x for x in out if x)
