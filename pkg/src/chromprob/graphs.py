"""Finite simple graphs, the named graphs used throughout the package, and posets.

Vertices are always ``0 .. n-1``.  Graphs are immutable; derived data such as the
adjacency sets are cached on first use.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph or poset input."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop edge ({u}, {v})")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u > v:
                raise GraphError("edges must be stored with the smaller endpoint first; use build_graph")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in a) for a in self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabeled to ``0..k-1`` in increasing vertex order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return build_graph(len(keep), edges)

    def add_edge(self, u: int, v: int) -> Graph:
        return build_graph(self.n, list(self.edges) + [(u, v)])

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Normalize an edge list into a :class:`Graph`.

    Each pair is stored with its smaller endpoint first.  Duplicates (in either
    orientation) are rejected rather than merged.
    """
    normalized = []
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"edge must be a pair, got {pair!r}")
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        normalized.append((min(u, v), max(u, v)))
    if len(set(normalized)) != len(normalized):
        dup = next(e for e in normalized if normalized.count(e) > 1)
        raise GraphError(f"duplicate edge {dup}")
    return Graph(n, tuple(sorted(normalized)))


# -- named graphs -------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 0:
        raise GraphError("complete(n) needs n >= 0")
    return build_graph(n, combinations(range(n), 2))


def star(n: int) -> Graph:
    """K_{1,n}: center 0 joined to leaves 1..n."""
    if n < 0:
        raise GraphError("star(n) needs n >= 0")
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle(n) needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path (chain) on n vertices."""
    if n < 1:
        raise GraphError(f"path(n) needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError("complete_bipartite needs non-negative part sizes")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def edgeless(n: int) -> Graph:
    return build_graph(n, [])


def ternary_tree(k: int) -> Graph:
    """Rooted tree of depth 2k in which every vertex has two children.

    Every internal non-root vertex therefore has degree 3 and the root degree 2.
    Vertices are numbered breadth first, so vertex v has children 2v+1, 2v+2.
    """
    if k < 1:
        raise GraphError(f"ternary_tree(k) needs k >= 1, got {k}")
    n = 2 ** (2 * k + 1) - 1
    return build_graph(n, [((v - 1) // 2, v) for v in range(1, n)])


def tree_layer_counts(g: Graph, root: int = 0) -> tuple[int, int]:
    """(#vertices at even depth, #vertices at odd depth) from a BFS at ``root``."""
    depth = _bfs_depths(g, root)
    even = sum(1 for d in depth.values() if d % 2 == 0)
    return even, len(depth) - even


def figure1() -> Graph:
    """The 19-vertex claw-free graph of the two-color counterexample.

    Labels: a_0..a_11 -> 0..11, b_0..b_5 -> 12..17, c -> 18.  The sets
    {a_0..a_11} and {a_6..a_11, c} induce cliques and a_i b_i is an edge for
    i < 6.
    """
    edges = set(combinations(range(12), 2))
    edges |= {(i, 18) for i in range(6, 12)}
    edges |= {(i, 12 + i) for i in range(6)}
    return build_graph(19, edges)


NAMED_KINDS = {
    "complete": (complete, 1),
    "star": (star, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "edgeless": (edgeless, 1),
    "ternary_tree": (ternary_tree, 1),
    "figure1": (figure1, 0),
}


def named_graph(kind: str, *params: int) -> Graph:
    try:
        ctor, arity = NAMED_KINDS[kind]
    except KeyError:
        raise GraphError(f"unknown graph kind {kind!r}; choose from {sorted(NAMED_KINDS)}") from None
    if len(params) != arity:
        raise GraphError(f"{kind} takes {arity} integer parameter(s), got {len(params)}")
    return ctor(*params)


# -- structural predicates ----------------------------------------------------

def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def is_claw_free(g: Graph) -> bool:
    """True iff no vertex has three pairwise non-adjacent neighbors."""
    return find_claw(g) is None


def find_claw(g: Graph) -> tuple[int, int, int, int] | None:
    adj = g.adjacency
    for v in range(g.n):
        for a, b, c in combinations(sorted(adj[v]), 3):
            if b not in adj[a] and c not in adj[a] and c not in adj[b]:
                return v, a, b, c
    return None


def _bfs_depths(g: Graph, source: int) -> dict[int, int]:
    depth = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                queue.append(w)
    return depth


def connected_components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for v in range(g.n):
        if v not in seen:
            comp = sorted(_bfs_depths(g, v))
            seen.update(comp)
            comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(_bfs_depths(g, 0)) == g.n


def is_bipartite(g: Graph) -> bool:
    for comp in connected_components(g):
        depth = _bfs_depths(g, comp[0])
        if any(depth[u] % 2 == depth[v] % 2 for u in comp for v in g.adjacency[u]):
            return False
    return True


def triangle_count(g: Graph) -> int:
    adj = g.adjacency
    return sum(len(adj[u] & adj[v] & set(range(v + 1, g.n))) for u, v in g.edges)


# -- spanning trees -----------------------------------------------------------

def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def laplacian(g: Graph) -> list[list[int]]:
    lap = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        lap[u][v] = lap[v][u] = -1
        lap[u][u] += 1
        lap[v][v] += 1
    return lap


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees (0 for disconnected graphs) via the matrix-tree theorem."""
    if g.n == 0:
        return 0
    if not is_connected(g):
        return 0
    minor = [row[1:] for row in laplacian(g)[1:]]
    return bareiss_determinant(minor)


# -- posets -------------------------------------------------------------------

@dataclass(frozen=True)
class Poset:
    """Finite poset on ``0..n-1``; ``(a, b)`` in ``relation`` means a <= b.

    Build with :func:`build_poset`, which closes the input transitively.
    """

    n: int
    relation: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        rel = self.relation
        for a in range(self.n):
            if (a, a) not in rel:
                raise GraphError(f"relation is not reflexive at {a}")
        for a, b in rel:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"pair ({a}, {b}) outside 0..{self.n - 1}")
            if a != b and (b, a) in rel:
                raise GraphError(f"relation is not antisymmetric: {a} <= {b} <= {a}")
        for a, b in rel:
            for c in range(self.n):
                if (b, c) in rel and (a, c) not in rel:
                    raise GraphError(f"relation is not transitive: {a} <= {b} <= {c}")

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.relation

    def comparable(self, a: int, b: int) -> bool:
        return (a, b) in self.relation or (b, a) in self.relation


def build_poset(n: int, pairs: Iterable[Sequence[int]]) -> Poset:
    """Poset generated by covering (or any) relations ``a <= b``."""
    reach = [{a} for a in range(n)]
    for a, b in pairs:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"pair ({a}, {b}) outside 0..{n - 1}")
        reach[a].add(b)
    # Warshall closure
    for k in range(n):
        for a in range(n):
            if k in reach[a]:
                reach[a] |= reach[k]
    return Poset(n, frozenset((a, b) for a in range(n) for b in reach[a]))


def chain_poset(n: int) -> Poset:
    return build_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    return build_poset(n, [])


def incomparability_graph(p: Poset) -> Graph:
    return build_graph(p.n, [(a, b) for a, b in combinations(range(p.n), 2) if not p.comparable(a, b)])


def is_3plus1_free(p: Poset) -> bool:
    """No 3-chain a < b < c together with an element incomparable to all three."""
    n = p.n
    for a in range(n):
        for b in range(n):
            if a == b or not p.leq(a, b):
                continue
            for c in range(n):
                if c in (a, b) or not p.leq(b, c):
                    continue
                for d in range(n):
                    if d not in (a, b, c) and not (p.comparable(d, a) or p.comparable(d, b) or p.comparable(d, c)):
                        return False
    return True


# -- text formats -------------------------------------------------------------

def _int_rows(text: str, what: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise GraphError(f"{what} line {lineno}: expected integers, got {line!r}") from None
    if not rows or len(rows[0]) != 2:
        raise GraphError(f"{what}: first line must be '<count> <pairs>'")
    count, k = rows[0]
    body = rows[1:]
    if len(body) != k:
        raise GraphError(f"{what}: header announces {k} pairs but {len(body)} follow")
    for lineno, row in enumerate(body, 2):
        if len(row) != 2:
            raise GraphError(f"{what}: pair {lineno - 1} must have two entries")
    return [[count, k]] + body


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by m lines ``u v`` (0-based)."""
    rows = _int_rows(text, "edge list")
    return build_graph(rows[0][0], rows[1:])


def parse_poset(text: str) -> Poset:
    """Parse ``n k`` followed by k lines ``a b`` meaning a <= b."""
    rows = _int_rows(text, "poset")
    return build_poset(rows[0][0], rows[1:])
