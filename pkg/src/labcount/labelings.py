"""Labelings, vertex sums, and the counting engines.

Two independent engines count partially magic labelings:

* ``brute`` enumerates every labeling in the label box and inspects its
  vertex sums.  It is the oracle for everything else.
* ``dp`` sweeps the edges once, keeping only the partial sums of vertices
  that are still open (some incident edge unlabeled) plus the common sum
  already fixed for each block.  A vertex is checked against its block the
  moment its last incident edge is labeled.

All counts are Python integers; nothing in a counting path touches floats.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from functools import lru_cache
from itertools import permutations, product
from math import perm
from typing import Callable, Iterator, Optional, Sequence

from .errors import UsageError, check_guardrail
from .multigraph import Multigraph

BRUTE_LIMIT = 10**9

NONNEG = "nonneg"
POSITIVE = "positive"
POSITIVITIES = (NONNEG, POSITIVE)
ENGINES = ("brute", "dp")

Blocks = tuple[tuple[int, ...], ...]
Predicate = Callable[[tuple[int, ...], tuple[int, ...]], bool]


def vertex_sums(g: Multigraph, labels: Sequence[int]) -> tuple[int, ...]:
    """Vertex sums of a labeling.

    Undirected: total label of incident edges with each loop counted once.
    Directed: labels on out-edges minus labels on in-edges, so a loop adds 0.
    """
    if len(labels) != g.num_edges:
        raise UsageError(f"labeling has {len(labels)} entries for {g.num_edges} edges")
    sums = [0] * g.n
    if g.directed:
        for (u, v), x in zip(g.edges, labels):
            sums[u] += x
            sums[v] -= x
    else:
        for (u, v), x in zip(g.edges, labels):
            sums[u] += x
            if v != u:
                sums[v] += x
    return tuple(sums)


def label_range(k: int, positivity: str = NONNEG) -> range:
    if positivity not in POSITIVITIES:
        raise UsageError(f"positivity must be one of {POSITIVITIES}")
    if k < 0:
        raise UsageError("k must be nonnegative")
    return range(1 if positivity == POSITIVE else 0, k + 1)


def normalize_blocks(g: Multigraph, blocks: Sequence[Sequence[int]]) -> Blocks:
    """Validate a block specification and return it as sorted tuples."""
    seen: set[int] = set()
    out = []
    for block in blocks:
        b = tuple(sorted(block))
        if len(set(b)) != len(b):
            raise UsageError(f"block {list(block)} repeats a vertex")
        for v in b:
            if not 0 <= v < g.n:
                raise UsageError(f"vertex {v} outside 0..{g.n - 1}")
            if v in seen:
                raise UsageError(f"blocks overlap at vertex {v}")
            seen.add(v)
        out.append(b)
    return tuple(out)


def is_block_magic(sums: Sequence[int], blocks: Blocks) -> bool:
    for block in blocks:
        if len({sums[v] for v in block}) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# predicates for enumerate_labelings


def magic_index(r: int) -> Predicate:
    return lambda labels, sums: all(s == r for s in sums)


def block_magic(blocks: Blocks) -> Predicate:
    return lambda labels, sums: is_block_magic(sums, blocks)


def distinct_sums() -> Predicate:
    return lambda labels, sums: len(set(sums)) == len(sums)


def distinct_labels_and_sums() -> Predicate:
    return lambda labels, sums: len(set(labels)) == len(labels) and len(set(sums)) == len(sums)


def enumerate_labelings(
    g: Multigraph,
    k: int,
    positivity: str = NONNEG,
    predicate: Optional[Predicate] = None,
    force: bool = False,
) -> Iterator[tuple[int, ...]]:
    """Lexicographic stream of the k-labelings accepted by ``predicate``."""
    values = label_range(k, positivity)
    check_guardrail(len(values) ** g.num_edges, BRUTE_LIMIT, "brute-force labelings", force)
    for labels in product(values, repeat=g.num_edges):
        if predicate is None or predicate(labels, vertex_sums(g, labels)):
            yield labels


@lru_cache(maxsize=256)
def _sum_histogram(g: Multigraph, k: int, positivity: str) -> Counter:
    hist: Counter = Counter()
    for labels in product(label_range(k, positivity), repeat=g.num_edges):
        hist[vertex_sums(g, labels)] += 1
    return hist


def sum_histogram(g: Multigraph, k: int, positivity: str = NONNEG, force: bool = False) -> Counter:
    """Brute force: how many k-labelings produce each vertex-sum vector."""
    values = label_range(k, positivity)
    check_guardrail(len(values) ** g.num_edges, BRUTE_LIMIT, "brute-force labelings", force)
    return _sum_histogram(g, k, positivity)


# ---------------------------------------------------------------------------
# frontier dynamic program


def count_box_block_magic(
    g: Multigraph,
    blocks: Blocks,
    ranges: Sequence[tuple[int, int]],
    targets: Optional[Sequence[Optional[int]]] = None,
) -> int:
    """Count labelings with ``lo_e <= label_e <= hi_e`` and constant sums per block.

    ``targets`` optionally pins the common sum of each block.
    """
    if len(ranges) != g.num_edges:
        raise UsageError("one label range per edge is required")
    if any(lo > hi for lo, hi in ranges):
        return 0
    if targets is None:
        targets = [None] * len(blocks)
    elif len(targets) != len(blocks):
        raise UsageError("one target per block is required")
    # Size-one blocks without a pinned target constrain nothing.
    kept = [(b, t) for b, t in zip(blocks, targets) if len(b) > 1 or t is not None]
    blocks = tuple(b for b, _ in kept)
    targets = [t for _, t in kept]

    block_of: dict[int, int] = {}
    for bi, block in enumerate(blocks):
        for v in block:
            block_of[v] = bi
    cons = sorted(block_of)
    slot_of = {v: i for i, v in enumerate(cons)}
    slot_block = [block_of[v] for v in cons]

    contrib: list[list[tuple[int, int]]] = []
    last = [-1] * len(cons)
    for e, (a, b) in enumerate(g.edges):
        c = []
        for v in sorted({a, b}):
            if v in slot_of:
                coef = g.coefficient(e, v)
                if coef:
                    c.append((slot_of[v], coef))
                    last[slot_of[v]] = e
        contrib.append(c)
    closing: list[list[int]] = [[] for _ in range(g.num_edges)]
    initially_closed = []
    for slot, e in enumerate(last):
        (closing[e] if e >= 0 else initially_closed).append(slot)

    monotone = not g.directed

    def close(sums: list[int], values: list, slots: list[int]):
        for slot in slots:
            bi = slot_block[slot]
            if values[bi] is None:
                values[bi] = sums[slot]
            elif values[bi] != sums[slot]:
                return None
            sums[slot] = 0
        return (tuple(sums), tuple(values))

    start = close([0] * len(cons), list(targets), initially_closed)
    if start is None:
        return 0
    states: dict = {start: 1}
    multiplier = 1
    for e in range(g.num_edges):
        lo, hi = ranges[e]
        if not contrib[e]:
            multiplier *= hi - lo + 1
            continue
        slots_here = contrib[e]
        closing_here = closing[e]
        new_states: dict = defaultdict(int)
        for (sums, values), cnt in states.items():
            # A closing vertex whose block sum is already known forces the label.
            forced = None
            ok = True
            for slot, coef in slots_here:
                if slot in closing_here and values[slot_block[slot]] is not None:
                    need, rem = divmod(values[slot_block[slot]] - sums[slot], coef)
                    if rem or (forced is not None and forced != need):
                        ok = False
                        break
                    forced = need
            if not ok:
                continue
            if forced is not None:
                candidates = range(forced, forced + 1) if lo <= forced <= hi else range(0)
            else:
                candidates = range(lo, hi + 1)
            for x in candidates:
                s = list(sums)
                over = False
                for slot, coef in slots_here:
                    s[slot] += coef * x
                    if monotone:
                        t = values[slot_block[slot]]
                        if t is not None and s[slot] > t:
                            over = True
                if over:
                    break  # sums only grow with x in undirected mode
                state = close(s, list(values), closing_here)
                if state is not None:
                    new_states[state] += cnt
        states = new_states
        if not states:
            return 0
    return multiplier * sum(states.values())


# ---------------------------------------------------------------------------
# counters


def count_block_magic(
    g: Multigraph,
    blocks: Sequence[Sequence[int]],
    k: int,
    positivity: str = NONNEG,
    engine: str = "dp",
    force: bool = False,
) -> int:
    """Number of k-labelings whose vertex sums are constant on every block.

    With a single block S this is M_S(k) (``nonneg``) or the positive count
    with labels in 1..k.  Works for directed graphs with oriented sums.
    """
    blocks = normalize_blocks(g, blocks)
    values = label_range(k, positivity)
    if engine == "brute":
        hist = sum_histogram(g, k, positivity, force)
        return sum(c for sums, c in hist.items() if is_block_magic(sums, blocks))
    if engine == "dp":
        return count_box_block_magic(g, blocks, [(values.start, values.stop - 1)] * g.num_edges)
    raise UsageError(f"engine must be one of {ENGINES}")


def count_magic_by_index(g: Multigraph, r: int, engine: str = "dp", force: bool = False) -> int:
    """H_G(r): labelings whose vertex sums all equal ``r``.

    Every edge meets a vertex of sum ``r``, so labels range over 0..r.
    """
    if g.directed:
        raise UsageError("magic labelings by index are defined for undirected graphs")
    if r < 0:
        raise UsageError("index must be nonnegative")
    everything = tuple(range(g.n))
    if engine == "brute":
        hist = sum_histogram(g, r, NONNEG, force)
        return hist.get((r,) * g.n, 0)
    if engine == "dp":
        if g.n == 0:
            return 1
        return count_box_block_magic(g, (everything,), [(0, r)] * g.num_edges, [r])
    raise UsageError(f"engine must be one of {ENGINES}")


def count_weak_antimagic_direct(g: Multigraph, k: int, force: bool = False) -> int:
    """A_G(k) by enumeration: labels in 1..k, all vertex sums distinct.

    A_G(0) = 0 for every graph with an edge, since the label range is empty.
    """
    hist = sum_histogram(g, k, POSITIVE, force)
    return sum(c for sums, c in hist.items() if len(set(sums)) == len(sums))


def count_strict_antimagic(g: Multigraph, k: int, force: bool = False) -> int:
    """Labelings by pairwise-distinct labels from 1..k with distinct vertex sums."""
    q = g.num_edges
    if k < q:
        return 0
    check_guardrail(perm(k, q), BRUTE_LIMIT, "distinct-label labelings", force)
    total = 0
    for labels in permutations(range(1, k + 1), q):
        sums = vertex_sums(g, labels)
        if len(set(sums)) == len(sums):
            total += 1
    return total
