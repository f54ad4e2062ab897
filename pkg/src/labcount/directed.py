"""Directed graphs: oriented sums, magic scans, periods and antimagic search.

The oriented sum at v is (labels on edges leaving v) minus (labels on edges
entering v); a directed loop is both and contributes 0.
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Optional

from .antimagic import _search
from .errors import UsageError, check_guardrail
from .labelings import BRUTE_LIMIT, NONNEG, count_block_magic, vertex_sums
from .multigraph import Multigraph, directed_path
from .quasipoly import detect_minimal

MAX_PATH_LENGTH = 8
MAX_DIRECTED_SEARCH_EDGES = 10


def _require_directed(d: Multigraph) -> None:
    if not d.directed:
        raise UsageError("expected a directed graph")


def directed_magic_scan(d: Multigraph, k_max: int, force: bool = False) -> dict:
    """All labelings with labels <= k_max whose oriented sums coincide.

    Reports how often each common value occurs.  Oriented sums always total
    zero, so only 0 can appear when there is at least one vertex; the scan
    confirms it exhaustively rather than assuming it.
    """
    _require_directed(d)
    check_guardrail((k_max + 1) ** d.num_edges, BRUTE_LIMIT, "brute-force labelings", force)
    values: Counter = Counter()
    for labels in product(range(k_max + 1), repeat=d.num_edges):
        sums = vertex_sums(d, labels)
        if len(set(sums)) <= 1:
            values[sums[0] if sums else 0] += 1
    nonzero = sorted(v for v in values if v != 0)
    return {
        "k_max": k_max,
        "equal_sum_labelings": sum(values.values()),
        "common_values": {str(v): values[v] for v in sorted(values)},
        "nonzero_common_values": nonzero,
        "reading": "no magic labeling of nonzero index",
        "status": "pass" if not nonzero else "fail",
    }


def path_interior_sequence(length: int, k_max: int) -> list[int]:
    """Counts of labelings of v0 -> ... -> v_length constant on interior vertices."""
    path = directed_path(length)
    block = [tuple(range(1, length))] if length >= 2 else []
    return [count_block_magic(path, block, k, NONNEG) for k in range(k_max + 1)]


def directed_period_experiment(length: int, k_max: Optional[int] = None) -> dict:
    """Measured minimal period of the interior-block count on a directed path.

    Equal oriented sums on the interior force the labels into an arithmetic
    progression, and the count over labels in 0..k has period length - 1.
    """
    if not 1 <= length <= MAX_PATH_LENGTH:
        raise UsageError(f"path length must be in 1..{MAX_PATH_LENGTH}")
    if k_max is None:
        k_max = 4 * max(length - 1, 1) + 3
    seq = path_interior_sequence(length, k_max)
    fit = detect_minimal(seq, max_period=max(length, 2), degree_bound=length, max_offset=0)
    return {
        "length": length,
        "k_max": k_max,
        "sequence": [str(x) for x in seq],
        "fit": fit.to_json(),
        "period": fit.period,
        "degree": fit.degree,
    }


def search_directed_antimagic(d: Multigraph, force: bool = False) -> Optional[tuple[int, ...]]:
    """Labels 1..|E| used once each with pairwise distinct oriented sums."""
    _require_directed(d)
    check_guardrail(d.num_edges, MAX_DIRECTED_SEARCH_EDGES, "edges for permutation search", force)
    return _search(d, range(1, d.num_edges + 1), True)


def is_directed_exception(d: Multigraph) -> bool:
    """True for the oriented 3-cycle and the directed 2-edge path.

    Both are recognized structurally (three vertices, no loops, every
    vertex's in/out degrees matching the pattern), not by name.
    """
    if not d.directed or d.n != 3 or any(u == v for u, v in d.edges):
        return False
    out_deg = [0] * 3
    in_deg = [0] * 3
    for u, v in d.edges:
        out_deg[u] += 1
        in_deg[v] += 1
    if len(set(d.edges)) != len(d.edges):
        return False
    if d.num_edges == 3:
        return all(o == 1 and i == 1 for o, i in zip(out_deg, in_deg))
    if d.num_edges == 2:
        return sorted(zip(out_deg, in_deg)) == [(0, 1), (1, 0), (1, 1)]
    return False
