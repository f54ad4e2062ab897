"""Antimagic counting and search.

The weak antimagic count is obtained by Möbius inversion on the lattice of
set partitions of V: a labeling has pairwise distinct vertex sums exactly
when the partition "same sum" is the finest one, so

    A_G(k) = sum over partitions pi of mu(0, pi) * M°_pi(k)

where M°_pi counts positive k-labelings with sums constant on each block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Optional, Sequence

from .errors import check_guardrail
from .labelings import POSITIVE, count_block_magic, vertex_sums
from .multigraph import Multigraph, component_analysis, loopless_is_bipartite

MAX_PARTITION_VERTICES = 10
MAX_STRICT_EDGES = 12
SEARCH_LIMIT = 10**9


@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[tuple[int, ...], ...]
    mobius: int

    def nontrivial_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)


def mobius_from_blocks(blocks: Sequence[Sequence[int]]) -> int:
    mu = 1
    for b in blocks:
        mu *= (-1) ** (len(b) - 1) * factorial(len(b) - 1)
    return mu


def _restricted_growth(n: int) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i: int, top: int) -> Iterator[list[int]]:
        if i == n:
            yield a
            return
        for c in range(top + 2):
            a[i] = c
            yield from rec(i + 1, max(top, c))

    yield from rec(1, 0)


def partitions_with_mobius(n: int, force: bool = False) -> Iterator[VertexPartition]:
    """Set partitions of ``0..n-1`` in restricted-growth order, with mu(0, pi)."""
    check_guardrail(n, MAX_PARTITION_VERTICES, "partition vertices", force)
    for rgs in _restricted_growth(n):
        blocks: list[list[int]] = []
        for v, c in enumerate(rgs):
            if c == len(blocks):
                blocks.append([])
            blocks[c].append(v)
        bt = tuple(tuple(b) for b in blocks)
        yield VertexPartition(bt, mobius_from_blocks(bt))


def mobius_recursive(n: int) -> dict:
    """mu(0, pi) on the partition lattice from the defining recursion.

    Used to cross-check the product formula; exponential, keep n small.
    """
    parts = [frozenset(frozenset(b) for b in p.blocks) for p in partitions_with_mobius(n)]
    bottom = frozenset(frozenset([v]) for v in range(n))

    def refines(a: frozenset, b: frozenset) -> bool:
        return all(any(x <= y for y in b) for x in a)

    @lru_cache(maxsize=None)
    def mu(p: frozenset) -> int:
        if p == bottom:
            return 1
        return -sum(mu(r) for r in parts if r != p and refines(r, p))

    return {tuple(sorted(tuple(sorted(b)) for b in p)): mu(p) for p in parts}


def count_weak_antimagic_ie(g: Multigraph, k: int) -> int:
    """A_G(k) by inclusion-exclusion over vertex partitions (dp engine)."""
    total = 0
    for pi in partitions_with_mobius(g.n):
        total += pi.mobius * count_block_magic(g, pi.nontrivial_blocks(), k, POSITIVE, engine="dp")
    return total


# ---------------------------------------------------------------------------
# searches


def _search(g: Multigraph, label_values: Sequence[int], distinct_labels: bool) -> Optional[tuple[int, ...]]:
    """Backtracking for a labeling with pairwise distinct vertex sums.

    Edges are labeled in decreasing order of endpoint degree sum (ties by
    index) and labels are tried in increasing order, so the witness is the
    first one in that assignment order.
    """
    q = g.num_edges
    deg = [g.degree(v) for v in range(g.n)]
    order = sorted(range(q), key=lambda e: (-(deg[g.edges[e][0]] + deg[g.edges[e][1]]), e))
    remaining = [0] * g.n
    open_edges: list[set[int]] = [set() for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        remaining[u] += 1
        open_edges[u].add(e)
        if v != u:
            remaining[v] += 1
            open_edges[v].add(e)
    sums = [0] * g.n

    def tied(w: int) -> bool:
        # Undirected only: if every open edge at w joins w to the same vertex o
        # and o has no other open edge, s(w) - s(o) can no longer change.
        if g.directed or not open_edges[w]:
            return False
        others = set()
        for f in open_edges[w]:
            a, b = g.edges[f]
            if a == b:
                return False
            others.add(b if a == w else a)
        if len(others) != 1:
            return False
        o = others.pop()
        return open_edges[o] == open_edges[w] and sums[o] == sums[w]
    labels = [0] * q
    done: set[int] = set()
    for v in range(g.n):
        if remaining[v] == 0:
            if 0 in done:
                return None
            done.add(0)
    used: set[int] = set()

    def step(i: int) -> bool:
        if i == q:
            return True
        e = order[i]
        u, v = g.edges[e]
        ends = (u,) if u == v else (u, v)
        for w in ends:
            open_edges[w].discard(e)
        for x in label_values:
            if distinct_labels and x in used:
                continue
            for w in ends:
                sums[w] += g.coefficient(e, w) * x
                remaining[w] -= 1
            closed = [w for w in ends if remaining[w] == 0]
            ok = not any(tied(w) for w in ends)
            added = []
            for w in closed:
                if not ok or sums[w] in done:
                    ok = False
                    break
                done.add(sums[w])
                added.append(sums[w])
            if ok:
                labels[e] = x
                used.add(x)
                if step(i + 1):
                    return True
                used.discard(x)
            for s in added:
                done.discard(s)
            for w in ends:
                sums[w] -= g.coefficient(e, w) * x
                remaining[w] += 1
        for w in ends:
            open_edges[w].add(e)
        return False

    if step(0):
        witness = tuple(labels)
        _validate(g, witness, label_values, distinct_labels)
        return witness
    return None


def _validate(g: Multigraph, labels: tuple[int, ...], label_values: Sequence[int], distinct_labels: bool) -> None:
    allowed = set(label_values)
    if not all(x in allowed for x in labels):
        raise AssertionError(f"witness {labels} uses a label outside the allowed range")
    if distinct_labels and len(set(labels)) != len(labels):
        raise AssertionError(f"witness {labels} repeats a label")
    sums = vertex_sums(g, labels)
    if len(set(sums)) != len(sums):
        raise AssertionError(f"witness {labels} has repeated vertex sums {sums}")


def search_strict_antimagic(g: Multigraph, force: bool = False) -> Optional[tuple[int, ...]]:
    """A labeling by 1..|E|, each used once, with pairwise distinct sums."""
    check_guardrail(g.num_edges, MAX_STRICT_EDGES, "edges for permutation search", force)
    return _search(g, range(1, g.num_edges + 1), True)


def search_weak_antimagic(g: Multigraph, k_bound: int, force: bool = False) -> Optional[tuple[int, ...]]:
    """A labeling with labels in 1..k_bound (repeats allowed) and distinct sums."""
    check_guardrail(max(k_bound, 1) ** g.num_edges, SEARCH_LIMIT, "labelings for weak search", force)
    return _search(g, range(1, k_bound + 1), False)


def verify_pml2(g: Multigraph, count_limit: int = 10**4) -> dict:
    """Existence of distinct-sum labelings with labels up to 2|E| (and |E| if bipartite).

    The searches run without a guardrail: they stop at the first witness.
    Counts A_G at the checked bounds are included when the inclusion-exclusion
    count is affordable.
    """
    analysis = component_analysis(g)
    report: dict = {
        "k2_components": analysis["k2_components"],
        "sum_tied_components": analysis["sum_tied_components"],
    }
    if analysis["k2_components"]:
        report["status"] = "not applicable"
        return report
    q = g.num_edges
    bounds = [("general", 2 * q)]
    bipartite = loopless_is_bipartite(g)
    report["bipartite"] = bipartite
    if bipartite:
        bounds.append(("bipartite", q))
    checks = []
    for name, bound in bounds:
        witness = search_weak_antimagic(g, bound, force=True)
        entry = {"statement": name, "bound": bound, "found": witness is not None, "witness": witness}
        if bound ** q <= count_limit:
            entry["count"] = str(count_weak_antimagic_ie(g, bound))
        checks.append(entry)
    report["checks"] = checks
    report["status"] = "pass" if all(c["found"] for c in checks) else "fail"
    return report
