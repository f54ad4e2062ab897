"""Multigraph data model, the text file format, and graph generation.

Vertices are ``0..n-1``; edges form an ordered list in which loops and
parallel edges are allowed.  Edge identity is positional, so edge ``i`` is
always the ``i``-th edge line of the source file.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable, Iterator, Sequence

from .errors import InputError, UsageError

MAX_GENERATED_VERTICES = 7


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise UsageError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise UsageError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def incident_edges(self, v: int) -> list[int]:
        return [i for i, (a, b) in enumerate(self.edges) if v in (a, b)]

    def degree(self, v: int) -> int:
        """Number of incident edges; a loop counts once, matching vertex sums."""
        return len(self.incident_edges(v))

    def coefficient(self, edge: int, v: int) -> int:
        """Weight of edge ``edge`` in the vertex sum at ``v``.

        Undirected: 1 if incident (a loop counts once).  Directed: +1 at the
        tail, -1 at the head, 0 for a loop.
        """
        a, b = self.edges[edge]
        if not self.directed:
            return 1 if v in (a, b) else 0
        if a == b:
            return 0
        if v == a:
            return 1
        if v == b:
            return -1
        return 0

    def reversed(self) -> "Multigraph":
        return Multigraph(self.n, tuple((v, u) for u, v in self.edges), self.directed)

    def as_undirected(self) -> "Multigraph":
        return Multigraph(self.n, self.edges, False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "directed": self.directed,
            "edges": [list(e) for e in self.edges],
        }


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Multigraph:
    """Parse the graph file format.

    Lines starting with ``#`` and blank lines are ignored.  The first content
    line is ``graph directed|undirected``, the second ``vertices <n>``, and
    every further line is an edge ``<u> <v>``.
    """
    content = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        content.append((lineno, line))
    if len(content) < 2:
        raise InputError("graph file needs a 'graph' header line and a 'vertices' line")

    lineno, header = content[0]
    tokens = header.split()
    if len(tokens) != 2 or tokens[0] != "graph" or tokens[1] not in ("directed", "undirected"):
        raise InputError(f"line {lineno}: expected 'graph directed' or 'graph undirected', got {header!r}")
    directed = tokens[1] == "directed"

    lineno, vline = content[1]
    tokens = vline.split()
    if len(tokens) != 2 or tokens[0] != "vertices":
        raise InputError(f"line {lineno}: expected 'vertices <n>', got {vline!r}")
    n = _parse_int(tokens[1], lineno)
    if n < 0:
        raise InputError(f"line {lineno}: vertex count must be nonnegative")

    edges = []
    for lineno, line in content[2:]:
        tokens = line.split()
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        u, v = (_parse_int(t, lineno) for t in tokens)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {lineno}: endpoint out of range 0..{n - 1}: {line!r}")
        edges.append((u, v))
    return Multigraph(n, tuple(edges), directed)


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise InputError(f"line {lineno}: not an integer: {token!r}") from None


def format_graph(g: Multigraph) -> str:
    lines = [f"graph {'directed' if g.directed else 'undirected'}", f"vertices {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Multigraph:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# vertex subsets and block syntax


def vertex_subset(vertices: Iterable[int], n: int) -> tuple[int, ...]:
    items = list(vertices)
    s = tuple(sorted(set(items)))
    if len(s) != len(items):
        raise UsageError("vertex subset contains duplicates")
    for v in s:
        if not 0 <= v < n:
            raise UsageError(f"vertex {v} outside 0..{n - 1}")
    return s


def parse_blocks(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse ``"0,2|1,3"`` into blocks; the empty string means no blocks."""
    text = text.strip()
    if not text:
        return ()
    blocks = []
    for part in text.split("|"):
        part = part.strip()
        if not part:
            continue
        try:
            block = tuple(sorted(int(t) for t in part.split(",")))
        except ValueError:
            raise InputError(f"bad block syntax: {text!r}") from None
        blocks.append(block)
    return tuple(blocks)


# ---------------------------------------------------------------------------
# structural predicates


def loopless_is_bipartite(g: Multigraph) -> bool:
    if g.directed:
        raise UsageError("bipartiteness check expects an undirected graph")
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def components(g: Multigraph) -> list[tuple[int, ...]]:
    """Connected components (orientation ignored), ordered by least vertex."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return [tuple(vs) for _, vs in sorted(groups.items())]


def is_connected(g: Multigraph) -> bool:
    return len(components(g)) <= 1


def component_analysis(g: Multigraph) -> dict:
    comps = components(g)
    k2 = 0
    tied = 0
    for comp in comps:
        if len(comp) != 2:
            continue
        members = set(comp)
        comp_edges = [(u, v) for u, v in g.edges if u in members]
        if any(u == v for u, v in comp_edges):
            continue
        tied += 1
        if len(comp_edges) == 1:
            k2 += 1
    return {
        "components": [list(c) for c in comps],
        "k2_components": k2,
        "sum_tied_components": tied,
    }


def magic_quotient(g: Multigraph, subset: Sequence[int]) -> Multigraph:
    """The graph G_S: keep edges inside S, turn boundary edges into loops.

    Vertices of S are renumbered ``0..|S|-1`` in increasing order and the
    edge order of ``g`` is preserved.
    """
    if g.directed:
        raise UsageError("magic quotient expects an undirected graph")
    s = sorted(set(subset))
    if not s:
        raise UsageError("magic quotient needs a nonempty vertex subset")
    for v in s:
        if not 0 <= v < g.n:
            raise UsageError(f"vertex {v} outside 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(s)}
    edges = []
    for u, v in g.edges:
        if u in index and v in index:
            edges.append((index[u], index[v]))
        elif u in index:
            edges.append((index[u], index[u]))
        elif v in index:
            edges.append((index[v], index[v]))
    return Multigraph(len(s), tuple(edges), False)


# ---------------------------------------------------------------------------
# generation


def _subsets_lex(items: Sequence[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
    # Lexicographic order of the sorted edge tuples: depth-first, shortest prefix first.
    chosen: list[tuple[int, int]] = []

    def rec(start: int) -> Iterator[tuple[tuple[int, int], ...]]:
        yield tuple(chosen)
        for i in range(start, len(items)):
            chosen.append(items[i])
            yield from rec(i + 1)
            chosen.pop()

    return rec(0)


def generate_connected_graphs(
    n: int, include_multi: bool = False, start: int = 0
) -> Iterator[Multigraph]:
    """All connected simple graphs on the labeled vertex set ``0..n-1``.

    Edge subsets of K_n are visited in lexicographic order without any
    isomorphism reduction.  With ``include_multi`` each simple graph is
    followed by its variants with one edge doubled (the copy is appended).
    ``start`` skips that many graphs of the stream.
    """
    if not 1 <= n <= MAX_GENERATED_VERTICES:
        raise UsageError(f"vertex count must be in 1..{MAX_GENERATED_VERTICES}")

    def stream() -> Iterator[Multigraph]:
        all_edges = list(combinations(range(n), 2))
        for subset in _subsets_lex(all_edges):
            g = Multigraph(n, subset)
            if not is_connected(g):
                continue
            yield g
            if include_multi:
                for e in subset:
                    yield Multigraph(n, subset + (e,))

    return islice(stream(), start, None)


def connected_graphs_up_to(
    max_vertices: int, min_vertices: int = 1, include_multi: bool = False
) -> Iterator[Multigraph]:
    for n in range(min_vertices, max_vertices + 1):
        yield from generate_connected_graphs(n, include_multi)


def orientations(g: Multigraph) -> Iterator[Multigraph]:
    """Every orientation of ``g``; loops keep their single orientation."""
    choices = [i for i, (u, v) in enumerate(g.edges) if u != v]
    for mask in range(1 << len(choices)):
        edges = list(g.edges)
        for bit, i in enumerate(choices):
            if mask >> bit & 1:
                u, v = edges[i]
                edges[i] = (v, u)
        yield Multigraph(g.n, tuple(edges), True)


# ---------------------------------------------------------------------------
# named graphs used throughout tests and reports


def path_graph(num_vertices: int) -> Multigraph:
    return Multigraph(num_vertices, tuple((i, i + 1) for i in range(num_vertices - 1)))


def cycle_graph(num_vertices: int) -> Multigraph:
    return Multigraph(num_vertices, tuple((i, (i + 1) % num_vertices) for i in range(num_vertices)))


def complete_graph(num_vertices: int) -> Multigraph:
    return Multigraph(num_vertices, tuple(combinations(range(num_vertices), 2)))


def bowtie() -> Multigraph:
    """Triangles a,b,c and c,d,e sharing c; edge order ab, ac, bc, cd, ce, de."""
    return Multigraph(5, ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)))


def triangle_with_pendant() -> Multigraph:
    """Edges ab, bc, ca, cd."""
    return Multigraph(4, ((0, 1), (1, 2), (2, 0), (2, 3)))


def directed_path(length: int) -> Multigraph:
    return Multigraph(length + 1, tuple((i, i + 1) for i in range(length)), True)
