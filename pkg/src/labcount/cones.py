"""Constraint systems of partially magic labelings and their polyhedral data.

Two gradings of the same labelings are supported:

``maxlabel``
    variables ``z_e`` and ``k`` with ``0 <= z_e <= k`` and equal vertex sums
    inside each block.  The section ``k = 1`` is the polytope whose dilates
    count k-labelings.
``index``
    variables ``z_e`` only with ``z_e >= 0``; generators are graded by the
    common sum of the first block (the index when the block is all of V).

Extreme rays come from a double description run in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Optional, Sequence

from .errors import UsageError, check_guardrail
from .labelings import NONNEG, POSITIVE, count_block_magic, count_box_block_magic, normalize_blocks
from .linalg import affine_dimension, dot, nullspace, primitive, rank
from .multigraph import Multigraph
from .quasipoly import FitReport, detect_minimal, evaluate, format_rational

MAX_CONE_VARIABLES = 12
MAX_SPANNING_VERTICES = 10

GRADINGS = ("index", "maxlabel")


@dataclass(frozen=True)
class ConstraintSystem:
    graph: Multigraph
    blocks: tuple[tuple[int, ...], ...]
    grading: str
    variables: tuple[str, ...]
    equalities: tuple[tuple[int, ...], ...]
    inequalities: tuple[tuple[int, ...], ...]
    inequality_names: tuple[str, ...]
    # edge index and bound kind ("lower"/"upper") per inequality; None for k >= 0
    inequality_edges: tuple[Optional[tuple[int, str]], ...] = field(repr=False)

    @property
    def width(self) -> int:
        return len(self.variables)

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges

    def to_json(self) -> dict:
        return {
            "grading": self.grading,
            "variables": list(self.variables),
            "equalities": [[format_rational(x) for x in row] for row in self.equalities],
            "inequalities": [[format_rational(x) for x in row] for row in self.inequalities],
            "inequality_names": list(self.inequality_names),
        }


@dataclass(frozen=True)
class Ray:
    vector: tuple[int, ...]
    max_label: int
    index: Optional[int]
    k: Optional[int]

    def labels(self, num_edges: int) -> tuple[int, ...]:
        return self.vector[:num_edges]

    def to_json(self) -> dict:
        return {
            "vector": [str(x) for x in self.vector],
            "max_label": self.max_label,
            "index": self.index,
            "k": self.k,
        }


@dataclass(frozen=True)
class PolytopeFacts:
    dimension: int
    implicit_equalities: tuple[str, ...]
    implicit_rows: tuple[int, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    denominator_lcm: int

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "implicit_equalities": list(self.implicit_equalities),
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
            "denominator_lcm": self.denominator_lcm,
        }


# ---------------------------------------------------------------------------
# systems


def build_system(g: Multigraph, blocks: Sequence[Sequence[int]], grading: str = "maxlabel") -> ConstraintSystem:
    if grading not in GRADINGS:
        raise UsageError(f"grading must be one of {GRADINGS}")
    blocks = normalize_blocks(g, blocks)
    if grading == "index" and not blocks:
        raise UsageError("index grading needs at least one block")
    q = g.num_edges
    graded = grading == "maxlabel"
    width = q + (1 if graded else 0)
    variables = tuple(f"z{e}" for e in range(q)) + (("k",) if graded else ())

    coef = [[g.coefficient(e, v) for e in range(q)] for v in range(g.n)]
    equalities = []
    for block in blocks:
        for a, b in zip(block, block[1:]):
            row = tuple(x - y for x, y in zip(coef[a], coef[b])) + ((0,) if graded else ())
            equalities.append(row)

    inequalities = []
    names = []
    edges_of = []
    for e in range(q):
        row = [0] * width
        row[e] = 1
        inequalities.append(tuple(row))
        names.append(f"z{e} >= 0")
        edges_of.append((e, "lower"))
    if graded:
        for e in range(q):
            row = [0] * width
            row[e] = -1
            row[q] = 1
            inequalities.append(tuple(row))
            names.append(f"k - z{e} >= 0")
            edges_of.append((e, "upper"))
        if q == 0:
            inequalities.append((1,))
            names.append("k >= 0")
            edges_of.append(None)
    return ConstraintSystem(
        g, blocks, grading, variables, tuple(equalities), tuple(inequalities), tuple(names), tuple(edges_of)
    )


def _annotate(sys: ConstraintSystem, vec: tuple[int, ...]) -> Ray:
    q = sys.num_edges
    labels = vec[:q]
    index = None
    if sys.blocks:
        v = sys.blocks[0][0]
        index = sum(sys.graph.coefficient(e, v) * labels[e] for e in range(q))
    k = vec[q] if sys.grading == "maxlabel" else None
    return Ray(vec, max(labels, default=0), index, k)


# ---------------------------------------------------------------------------
# double description


def _double_description(width: int, equalities, inequalities) -> list[tuple[int, ...]]:
    # All constraint rows are integral, so lines and rays are kept as primitive
    # integer vectors and every update is a fraction-free combination.
    eq = [[int(x) for x in r] for r in equalities]
    lines = [list(primitive(v)) for v in nullspace(eq, width)]
    rays: list[tuple[int, ...]] = []
    processed: list[list[int]] = []
    for row in inequalities:
        h = [int(x) for x in row]
        pivot = next((i for i, l in enumerate(lines) if dot(h, l) != 0), None)
        if pivot is not None:
            l = lines.pop(pivot)
            hl = dot(h, l)
            sign = 1 if hl > 0 else -1
            lines = [list(primitive([hl * m_i - dot(h, m) * l_i for m_i, l_i in zip(m, l)])) for m in lines]
            rays = [
                primitive([sign * (hl * r_i - dot(h, r) * l_i) for r_i, l_i in zip(r, l)]) for r in rays
            ]
            rays.append(primitive([sign * x for x in l]))
            processed.append(h)
            continue
        values = [dot(h, r) for r in rays]
        pos = [r for r, x in zip(rays, values) if x > 0]
        neg = [r for r, x in zip(rays, values) if x < 0]
        new = [r for r, x in zip(rays, values) if x >= 0]
        target = width - len(lines) - 2
        for rp in pos:
            hp = dot(h, rp)
            zp = [i for i, row2 in enumerate(processed) if dot(row2, rp) == 0]
            for rn in neg:
                common = [processed[i] for i in zp if dot(processed[i], rn) == 0]
                if rank(eq + common, width) != target:
                    continue
                hn = dot(h, rn)
                new.append(primitive([hp * b - hn * a for a, b in zip(rp, rn)]))
        rays = list(dict.fromkeys(new))
        processed.append(h)
    if lines:
        raise UsageError("cone is not pointed")
    return sorted(rays)


def extreme_rays(sys: ConstraintSystem, force: bool = False) -> list[Ray]:
    """Primitive generators of the extreme rays, sorted lexicographically."""
    check_guardrail(sys.width, MAX_CONE_VARIABLES, "cone variables", force)
    vectors = _double_description(sys.width, sys.equalities, sys.inequalities)
    rays = [_annotate(sys, v) for v in vectors]
    for ray in rays:
        _verify_ray(sys, ray.vector)
    return rays


def _verify_ray(sys: ConstraintSystem, vec: tuple[int, ...]) -> None:
    if any(dot(row, vec) != 0 for row in sys.equalities):
        raise AssertionError(f"ray {vec} violates an equality")
    if any(dot(row, vec) < 0 for row in sys.inequalities):
        raise AssertionError(f"ray {vec} violates an inequality")
    if primitive(vec) != tuple(vec):
        raise AssertionError(f"ray {vec} is not primitive")
    tight = [list(r) for r in sys.equalities] + [list(r) for r in sys.inequalities if dot(r, vec) == 0]
    if rank(tight, sys.width) != sys.width - 1:
        raise AssertionError(f"ray {vec} is not extreme")


# ---------------------------------------------------------------------------
# polytope of the maxlabel grading


def polytope_facts(sys: ConstraintSystem, force: bool = False) -> PolytopeFacts:
    """Vertices, implicit equalities and dimension of the ``k = 1`` section."""
    if sys.grading != "maxlabel":
        raise UsageError("polytope facts need the maxlabel grading")
    q = sys.num_edges
    rays = extreme_rays(sys, force)
    vertices = sorted(tuple(Fraction(x, r.vector[q]) for x in r.vector[:q]) for r in rays)
    implicit = tuple(
        i for i, row in enumerate(sys.inequalities) if all(dot(row, r.vector) == 0 for r in rays)
    )
    dim = affine_dimension(vertices)
    rows = [list(r) for r in sys.equalities] + [list(sys.inequalities[i]) for i in implicit]
    if sys.width - rank(rows, sys.width) - 1 != dim:
        raise AssertionError("vertex hull and implicit equalities disagree on the dimension")
    den = reduce(lcm, (x.denominator for v in vertices for x in v), 1)
    return PolytopeFacts(dim, tuple(sys.inequality_names[i] for i in implicit), implicit, tuple(vertices), den)


def _interior_ranges(sys: ConstraintSystem, facts: PolytopeFacts, t: int) -> list[tuple[int, int]]:
    lo = [1] * sys.num_edges
    hi = [t - 1] * sys.num_edges
    for i in facts.implicit_rows:
        where = sys.inequality_edges[i]
        if where is None:
            continue
        e, kind = where
        if kind == "lower":
            lo[e] = 0
        else:
            hi[e] = t
    return list(zip(lo, hi))


def count_relative_interior(
    g: Multigraph, blocks: Sequence[Sequence[int]], t: int, facts: Optional[PolytopeFacts] = None
) -> int:
    """Lattice points of the relative interior of the t-th dilate.

    Equalities and implicit equalities hold exactly; every other bound is
    strict.
    """
    if t < 1:
        raise UsageError("dilation factor must be positive")
    sys = build_system(g, blocks, "maxlabel")
    if facts is None:
        facts = polytope_facts(sys)
    return count_box_block_magic(g, sys.blocks, _interior_ranges(sys, facts, t))


def verify_reciprocity(g: Multigraph, blocks: Sequence[Sequence[int]], k_max: int) -> dict:
    """Check ``(-1)**dim * M(-t) == interior(t)`` for ``1 <= t <= k_max + 1``.

    ``M`` is the fitted closed count of nonnegative k-labelings.  Each row
    also compares the interior count with the positive-label count at
    ``k = t - 1``; the two differ exactly when implicit equalities exist.
    """
    sys = build_system(g, blocks, "maxlabel")
    facts = polytope_facts(sys)
    period_bound = facts.denominator_lcm
    samples = period_bound * (facts.dimension + 3) + 1
    seq = [count_block_magic(g, sys.blocks, k, NONNEG) for k in range(samples)]
    fit = detect_minimal(seq, period_bound, max(facts.dimension, 0), 0)
    report: dict = {
        "blocks": [list(b) for b in sys.blocks],
        "dimension": facts.dimension,
        "implicit_equalities": list(facts.implicit_equalities),
        "denominator_lcm": facts.denominator_lcm,
        "fit": fit.to_json(),
        "rows": [],
    }
    if not fit.found:
        report["status"] = "inconclusive"
        report["passed"] = False
        return report
    sign = -1 if facts.dimension % 2 else 1
    all_pass = True
    all_equal = True
    for t in range(1, k_max + 2):
        predicted = sign * evaluate(fit.qp, -t)
        interior = count_block_magic_interior(g, sys, facts, t)
        positive = count_block_magic(g, sys.blocks, t - 1, POSITIVE)
        ok = predicted == interior
        all_pass &= ok
        all_equal &= positive == interior
        report["rows"].append(
            {
                "t": t,
                "reciprocal_value": format_rational(predicted),
                "interior_count": str(interior),
                "positive_count": str(positive),
                "pass": ok,
                "positive_equals_interior": positive == interior,
            }
        )
    report["passed"] = all_pass
    report["positive_equals_interior"] = all_equal
    report["status"] = "pass" if all_pass else "fail"
    return report


def count_block_magic_interior(g: Multigraph, sys: ConstraintSystem, facts: PolytopeFacts, t: int) -> int:
    return count_box_block_magic(g, sys.blocks, _interior_ranges(sys, facts, t))


# ---------------------------------------------------------------------------
# completely fundamental bounds


def check_cf_bounds(g: Multigraph, blocks: Sequence[Sequence[int]], grading: str, force: bool = False) -> dict:
    """Largest label and largest index over the extreme-ray generators."""
    sys = build_system(g, blocks, grading)
    rays = extreme_rays(sys, force)
    max_label = max((r.max_label for r in rays), default=None)
    indices = [r.index for r in rays if r.index is not None]
    max_index = max(indices, default=None)
    return {
        "grading": grading,
        "num_rays": len(rays),
        "rays": [r.to_json() for r in rays],
        "max_label_over_rays": max_label,
        "max_index_over_rays": max_index,
        "label_witnesses": [r.to_json() for r in rays if r.max_label == max_label],
        "index_witnesses": [r.to_json() for r in rays if max_index is not None and r.index == max_index],
    }


def check_spanning_condition(g: Multigraph, force: bool = False) -> bool:
    """True iff no spanning {loop, edge, cycle}-cover of V uses an odd cycle.

    Covers are spanning subgraphs whose components are each a loop, a single
    edge, or a cycle of length at least 3.
    """
    if g.directed:
        raise UsageError("spanning condition expects an undirected graph")
    check_guardrail(g.n, MAX_SPANNING_VERTICES, "vertices for exact cover search", force)
    loops = {u for u, v in g.edges if u == v}
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)

    def cycles_through(v: int, free: frozenset) -> list[tuple[int, ...]]:
        # Simple cycles of length >= 3 through v (smallest vertex of the cycle) inside `free`.
        found = []

        def walk(path: list[int], seen: set[int]) -> None:
            u = path[-1]
            for w in adj[u]:
                if w == v and len(path) >= 3:
                    found.append(tuple(path))
                elif w not in seen and w in free and w > v:
                    seen.add(w)
                    path.append(w)
                    walk(path, seen)
                    path.pop()
                    seen.discard(w)

        walk([v], {v})
        return found

    def has_odd_cover(free: frozenset, odd_used: bool) -> bool:
        if not free:
            return odd_used
        v = min(free)
        rest = free - {v}
        if v in loops and has_odd_cover(rest, odd_used):
            return True
        for w in adj[v]:
            if w in rest and has_odd_cover(rest - {w}, odd_used):
                return True
        for cycle in cycles_through(v, free):
            if has_odd_cover(free - set(cycle), odd_used or len(cycle) % 2 == 1):
                return True
        return False

    return not has_odd_cover(frozenset(range(g.n)), False)
