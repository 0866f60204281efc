"""Chromatic polynomials and the uniform-coloring ratios built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .graphs import Graph, connected_components


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Integer polynomial; ``coefficients[i]`` multiplies ``q**i``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coefficients)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(int(x) for x in c) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if any(self.coefficients) else -1

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * q + c
        return acc

    def __add__(self, other):
        return UnivariatePolynomial(_padd(self.coefficients, other.coefficients))

    def __sub__(self, other):
        return UnivariatePolynomial(_padd(self.coefficients, [-c for c in other.coefficients]))

    def __mul__(self, other):
        return UnivariatePolynomial(_pmul(self.coefficients, other.coefficients))

    def to_json(self) -> list[int]:
        return list(self.coefficients)

    def __str__(self):
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            coef = str(abs(c)) if (abs(c) != 1 or i == 0) else ""
            terms.append(("-" if c < 0 else "+") + coef + mono)
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[1:] if s.startswith("+") else s


def _padd(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


# Internal graphs for the recursion are tuples of neighbor frozensets.

def _canonical_key(adj: tuple[frozenset[int], ...]) -> tuple:
    """Relabel by (degree, sorted neighbor degrees) and return the edge set.

    Equal keys imply isomorphic graphs, which is all the memo table needs; we make
    no claim that isomorphic graphs always share a key.
    """
    deg = [len(a) for a in adj]
    sig = [(deg[v], tuple(sorted(deg[w] for w in adj[v])), v) for v in range(len(adj))]
    order = [s[2] for s in sorted(sig)]
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted((min(pos[u], pos[w]), max(pos[u], pos[w])) for u in range(len(adj)) for w in adj[u] if u < w)
    return len(adj), tuple(edges)


def _remove_vertex(adj, v):
    keep = [u for u in range(len(adj)) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    return tuple(frozenset(index[w] for w in adj[u] if w != v) for u in keep)


def _delete_edge(adj, u, v):
    adj = list(adj)
    adj[u] = adj[u] - {v}
    adj[v] = adj[v] - {u}
    return tuple(adj)


def _contract_edge(adj, u, v):
    """Merge v into u, dropping loops and parallel edges."""
    merged = (adj[u] | adj[v]) - {u, v}
    new = []
    for w in range(len(adj)):
        if w == v:
            continue
        if w == u:
            nb = merged
        else:
            nb = adj[w]
            if v in nb:
                nb = (nb - {v}) | {u}
        new.append(nb)
    keep = [w for w in range(len(adj)) if w != v]
    index = {w: i for i, w in enumerate(keep)}
    return tuple(frozenset(index[x] for x in nb) for nb in new)


def _find_simplicial(adj):
    """A vertex whose neighborhood is a clique, preferring low degree."""
    best = None
    for v in sorted(range(len(adj)), key=lambda x: len(adj[x])):
        nb = adj[v]
        if all(nb - {w} <= adj[w] for w in nb):
            best = v
            break
    return best


def _components(adj):
    seen, comps = set(), []
    for s in range(len(adj)):
        if s in seen:
            continue
        stack, comp = [s], {s}
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def _sub(adj, vertices):
    index = {v: i for i, v in enumerate(vertices)}
    return tuple(frozenset(index[w] for w in adj[v]) for v in vertices)


def _chromatic(adj, memo) -> list[int]:
    n = len(adj)
    if n == 0:
        return [1]
    if not any(adj):
        return [0] * n + [1]
    key = _canonical_key(adj)
    if key in memo:
        return memo[key]
    comps = _components(adj)
    if len(comps) > 1:
        result = [1]
        for comp in comps:
            result = _pmul(result, _chromatic(_sub(adj, comp), memo))
    else:
        v = _find_simplicial(adj)
        if v is not None:
            # chi(G) = (q - d) chi(G - v) when N(v) is a clique of size d
            result = _pmul([-len(adj[v]), 1], _chromatic(_remove_vertex(adj, v), memo))
        else:
            u, w = _pick_edge(adj)
            deleted = _chromatic(_delete_edge(adj, u, w), memo)
            contracted = _chromatic(_contract_edge(adj, u, w), memo)
            result = _padd(deleted, [-c for c in contracted])
    memo[key] = result
    return result


def _pick_edge(adj):
    # Contracting an edge with many common neighbors removes the most edges.
    best, best_score = None, -1
    for u in range(len(adj)):
        for w in sorted(adj[u]):
            if u < w:
                score = len(adj[u] & adj[w])
                if score > best_score:
                    best, best_score = (u, w), score
    return best


def chromatic_polynomial(g: Graph) -> UnivariatePolynomial:
    """chi_G(q) by deletion-contraction with a per-call memo table.

    Simplicial vertices (neighborhood a clique, including isolated and pendant
    vertices) are peeled off as linear factors and components are multiplied.
    """
    return UnivariatePolynomial(tuple(_chromatic(g.adjacency, {})))


def falling_factorial(q: int, k: int) -> int:
    return prod(q - i for i in range(k))


def stable_partition_counts(g: Graph, max_blocks: int | None = None) -> list[int]:
    """``a[k]`` = number of partitions of V into k nonempty independent sets.

    chi_G(q) = sum_k a[k] (q)_k.  Backtracking component by component; each
    vertex joins an existing block it has no neighbor in, or opens a new one.
    Partitions with more than ``max_blocks`` blocks are pruned (their count is
    left at 0).
    """
    n = g.n
    order = [v for comp in connected_components(g) for v in comp]
    masks = g.neighbor_masks
    counts = [0] * (n + 1)
    blocks: list[int] = []
    limit = n if max_blocks is None else max_blocks

    def rec(i):
        if i == n:
            counts[len(blocks)] += 1
            return
        v = order[i]
        nb = masks[v]
        for b in range(len(blocks)):
            if blocks[b] & nb == 0:
                blocks[b] |= 1 << v
                rec(i + 1)
                blocks[b] &= ~(1 << v)
        if len(blocks) < limit:
            blocks.append(1 << v)
            rec(i + 1)
            blocks.pop()

    rec(0)
    return counts


def chromatic_eval(g: Graph, q: int) -> int:
    """Number of proper q-colorings of ``g``.

    Simplicial vertices contribute linear factors; the rest is counted by
    enumerating stable partitions, which stays small for graphs such as K_{n,n}
    whose full chromatic polynomial is expensive.
    """
    if q < 0:
        raise ValueError("q must be non-negative")
    adj = g.adjacency
    factor = 1
    while True:
        v = _find_simplicial(adj) if adj else None
        if v is None:
            break
        factor *= q - len(adj[v])
        adj = _remove_vertex(adj, v)
        if factor == 0:
            return 0
    if not adj:
        return factor
    rest = Graph(len(adj), tuple(sorted((u, w) for u in range(len(adj)) for w in adj[u] if u < w)))
    counts = stable_partition_counts(rest, max_blocks=q)
    return factor * sum(a * falling_factorial(q, k) for k, a in enumerate(counts) if a and k <= q)


def uniform_proper_probability(g: Graph, q: int) -> Fraction:
    """chi_G(q) / q^n."""
    if q < 1:
        raise ValueError("q must be positive")
    return Fraction(chromatic_eval(g, q), q ** g.n)


def mean_colors(g: Graph) -> Fraction:
    """Bartels-Welsh mean number of colors n (1 - chi_G(n-1)/chi_G(n))."""
    n = g.n
    top = chromatic_eval(g, n)
    assert top != 0, "chi_G(n) vanishes, impossible for a simple graph"
    return n * (1 - Fraction(chromatic_eval(g, n - 1), top))


def shameful_ratio_monotone(g: Graph, q: int) -> bool:
    """chi_G(q-1)/(q-1)^n <= chi_G(q)/q^n, compared exactly."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return uniform_proper_probability(g, q - 1) <= uniform_proper_probability(g, q)


def minimal_mcdiarmid_n(q: int = 3, n_max: int = 30) -> int | None:
    """Smallest n for which K_{n,n} violates the q-coloring ratio inequality."""
    from .graphs import complete_bipartite

    for n in range(1, n_max + 1):
        if not shameful_ratio_monotone(complete_bipartite(n, n), q):
            return n
    return None
