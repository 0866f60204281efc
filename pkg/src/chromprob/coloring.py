"""Probability that an independent random coloring is proper.

Colors are drawn independently per vertex from a distribution p on q colors.
Everything here is exact: distributions hold :class:`fractions.Fraction` entries
and results are Fractions.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .graphs import Graph, connected_components, ternary_tree, tree_layer_counts

DEFAULT_MAX_STATES = 2 ** 24


class InstanceTooLarge(RuntimeError):
    """An enumeration would exceed the configured state budget."""


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Distribution:
    """A point of the probability simplex with exact rational entries."""

    probabilities: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(Fraction(x) for x in self.probabilities)
        if not probs:
            raise ValueError("a distribution needs at least one color")
        if any(x < 0 for x in probs):
            raise ValueError(f"negative probability in {probs}")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def uniform(cls, q: int) -> Distribution:
        if q < 1:
            raise ValueError("uniform(q) needs q >= 1")
        return cls((Fraction(1, q),) * q)

    @classmethod
    def parse(cls, text: str) -> Distribution:
        """Parse ``"2/5,3/5"`` or ``"uniform:q"``."""
        text = text.strip()
        if text.startswith("uniform:"):
            try:
                q = int(text.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad uniform spec {text!r}") from None
            return cls.uniform(q)
        return cls(tuple(parse_rational(tok) for tok in text.split(",")))

    @property
    def q(self) -> int:
        return len(self.probabilities)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probabilities)

    def __len__(self):
        return len(self.probabilities)

    def __getitem__(self, i):
        return self.probabilities[i]

    def power_sum(self, m: int) -> Fraction:
        return sum((x ** m for x in self.probabilities), Fraction(0))

    def is_uniform(self) -> bool:
        return len(set(self.probabilities)) == 1

    def to_json(self) -> list[str]:
        return [format_rational(x) for x in self.probabilities]

    def __str__(self):
        return ",".join(self.to_json())


def as_distribution(p) -> Distribution:
    return p if isinstance(p, Distribution) else Distribution(tuple(p))


def two_color(p1) -> Distribution:
    p1 = Fraction(p1)
    return Distribution((p1, 1 - p1))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def distribution_grid(q: int, denominator: int, *, dedupe: bool = False) -> list[Distribution]:
    """Simplex points with all entries multiples of ``1/denominator``.

    With ``dedupe`` only one representative (descending) per sorted profile is
    kept; every symmetric function takes the same value on a profile.
    """
    out, seen = [], set()
    for comp in compositions(denominator, q):
        if dedupe:
            key = tuple(sorted(comp, reverse=True))
            if key in seen:
                continue
            seen.add(key)
            comp = key
        out.append(Distribution(tuple(Fraction(c, denominator) for c in comp)))
    return out


# -- power-sum polynomials ----------------------------------------------------

Partition = tuple[int, ...]


def _normalize_key(parts: Iterable[int]) -> Partition:
    # nu(1) == 1 on the simplex, so parts equal to 1 are dropped
    return tuple(sorted((int(x) for x in parts if x != 1), reverse=True))


class PowerSumPolynomial:
    """Rational combination of products nu(a_1)...nu(a_s), nu(m) = sum_i p_i^m.

    Keys are partitions with all parts >= 2, stored in descending order; the empty
    partition is the constant term.  The grading weight of nu(m) is m.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[int], Fraction] | None = None):
        acc: dict[Partition, Fraction] = {}
        for key, coeff in (terms or {}).items():
            k = _normalize_key(key)
            acc[k] = acc.get(k, Fraction(0)) + Fraction(coeff)
        self.terms = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def constant(cls, c=1) -> PowerSumPolynomial:
        return cls({(): Fraction(c)})

    @classmethod
    def nu(cls, m: int) -> PowerSumPolynomial:
        return cls({(m,): Fraction(1)})

    def coefficient(self, parts: Sequence[int]) -> Fraction:
        return self.terms.get(_normalize_key(parts), Fraction(0))

    def max_weight(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def truncate(self, max_weight: int) -> PowerSumPolynomial:
        return PowerSumPolynomial({k: c for k, c in self.terms.items() if sum(k) <= max_weight})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PowerSumPolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> PowerSumPolynomial:
        c = Fraction(c)
        return PowerSumPolynomial({k: v * c for k, v in self.terms.items()})

    def multiply(self, other, max_weight: int | None = None) -> PowerSumPolynomial:
        out: dict[Partition, Fraction] = {}
        for k1, c1 in self.terms.items():
            w1 = sum(k1)
            for k2, c2 in other.terms.items():
                if max_weight is not None and w1 + sum(k2) > max_weight:
                    continue
                key = tuple(sorted(k1 + k2, reverse=True))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return PowerSumPolynomial(out)

    __mul__ = multiply

    def __eq__(self, other):
        return isinstance(other, PowerSumPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), len(kv[0]), kv[0]))

    def to_json(self) -> list[dict]:
        return [{"partition": list(k), "coeff": format_rational(c)} for k, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> PowerSumPolynomial:
        return cls({tuple(t["partition"]): parse_rational(t["coeff"]) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.items():
            mono = "*".join(f"nu({m})" for m in k)
            parts.append(f"{format_rational(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def float_evaluator(self):
        """Vectorised float evaluation ``f(points)`` for arrays of shape (..., q)."""
        items = [(k, float(c)) for k, c in self.terms.items()]
        ms = sorted({m for k, _ in items for m in k})

        def f(x):
            x = np.asarray(x, dtype=float)
            nus = {m: np.sum(x ** m, axis=-1) for m in ms}
            total = np.zeros(x.shape[:-1])
            for k, c in items:
                term = np.full(x.shape[:-1], c)
                for m in k:
                    term = term * nus[m]
                total = total + term
            return total

        return f


def evaluate_power_sum(f: PowerSumPolynomial, p) -> Fraction:
    """Substitute nu(m) = sum_i p_i^m and evaluate exactly."""
    p = as_distribution(p)
    # common denominator keeps the inner sums in integers
    den = 1
    for x in p:
        den = den * x.denominator // _gcd(den, x.denominator)
    nums = [int(x * den) for x in p]
    cache: dict[int, Fraction] = {}

    def nu(m):
        if m not in cache:
            cache[m] = Fraction(sum(a ** m for a in nums), den ** m)
        return cache[m]

    total = Fraction(0)
    for key, coeff in f.terms.items():
        term = coeff
        for m in key:
            term *= nu(m)
        total += term
    return total


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def connected_signed_sums(g: Graph) -> dict[int, int]:
    """Map vertex bitmask B -> sum over spanning connected edge sets of G[B] of (-1)^|E'|.

    The value vanishes unless G[B] is connected; singletons map to 1.  Computed by
    the subset recursion indep(B) = sum_{S containing min(B)} c(S) indep(B - S),
    where indep(X) = 1 when X spans no edge (that sum is over all edge subsets of
    G[X] and collapses to [no edges]).
    """
    n = g.n
    masks = g.neighbor_masks
    full = (1 << n) - 1
    indep = [True] * (full + 1)
    for b in range(1, full + 1):
        low = (b & -b).bit_length() - 1
        rest = b & ~(1 << low)
        indep[b] = indep[rest] and not (masks[low] & rest)
    c: dict[int, int] = {}
    for b in range(1, full + 1):
        low_bit = b & -b
        rest = b ^ low_bit
        value = 1 if indep[b] else 0
        # proper subsets S of b containing the low bit: S = low_bit | T, T a proper subset of rest
        t = (rest - 1) & rest if rest else 0
        if rest:
            while True:
                s = low_bit | t
                cs = c.get(s, 0)
                if cs and indep[b ^ s]:
                    value -= cs
                if t == 0:
                    break
                t = (t - 1) & rest
        if value:
            c[b] = value
    return c


def power_sum_form(g: Graph) -> PowerSumPolynomial:
    """P_G as a polynomial in the power sums nu(m), m >= 2.

    Equals sum over edge subsets E' of (-1)^|E'| times the product over
    components of (V, E') of nu(#vertices of the component).  Computed by
    grouping edge subsets by the vertex partition they induce.
    """
    comps = connected_components(g)
    if len(comps) > 1:
        out = PowerSumPolynomial.constant(1)
        for comp in comps:
            out = out * power_sum_form(g.induced_subgraph(comp))
        return out
    n = g.n
    if n > 16:
        raise InstanceTooLarge(f"power_sum_form uses a 3^n subset sweep; n={n} is too large")
    if n <= 1:
        return PowerSumPolynomial.constant(1)
    c = connected_signed_sums(g)
    full = (1 << n) - 1
    memo: dict[int, dict[Partition, int]] = {0: {(): 1}}

    def expand(x: int) -> dict[Partition, int]:
        if x in memo:
            return memo[x]
        low_bit = x & -x
        rest = x ^ low_bit
        out: dict[Partition, int] = {}
        t = rest
        while True:
            s = low_bit | t
            cs = c.get(s)
            if cs:
                size = bin(s).count("1")
                for key, v in expand(x ^ s).items():
                    nk = key if size == 1 else tuple(sorted(key + (size,), reverse=True))
                    out[nk] = out.get(nk, 0) + cs * v
            if t == 0:
                break
            t = (t - 1) & rest
        out = {k: v for k, v in out.items() if v}
        memo[x] = out
        return out

    return PowerSumPolynomial({k: Fraction(v) for k, v in expand(full).items()})


def power_sum_form_by_edge_subsets(g: Graph, max_edges: int = 22) -> PowerSumPolynomial:
    """Literal inclusion-exclusion over all 2^|E| edge subsets (reference route)."""
    if g.m > max_edges:
        raise InstanceTooLarge(f"{g.m} edges exceeds the 2^|E| guard of {max_edges}")
    acc: Counter = Counter()
    edges = g.edges
    for r in range(g.m + 1):
        sign = -1 if r % 2 else 1
        for subset in combinations(edges, r):
            parent = list(range(g.n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in subset:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            sizes = Counter(find(v) for v in range(g.n))
            acc[_normalize_key(sizes.values())] += sign
    return PowerSumPolynomial({k: Fraction(v) for k, v in acc.items()})


# -- direct evaluation --------------------------------------------------------

def _bfs_order(g: Graph) -> list[int]:
    order = []
    for comp in connected_components(g):
        seen, frontier = {comp[0]}, [comp[0]]
        while frontier:
            order.extend(frontier)
            nxt = []
            for u in frontier:
                for w in sorted(g.adjacency[u]):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
    return order


def proper_probability(g: Graph, p, *, threads: int = 1) -> Fraction:
    """Exact P_G(p) by backtracking over proper colorings.

    Each leaf contributes prod_v p_{color(v)}; branches die on the first
    monochromatic edge.  With ``threads > 1`` the search is split by the color
    of the first vertex; the partial sums are combined exactly.
    """
    p = as_distribution(p)
    n, q = g.n, p.q
    if n == 0:
        return Fraction(1)
    den = 1
    for x in p:
        den = den * x.denominator // _gcd(den, x.denominator)
    weights = [int(x * den) for x in p]
    colors_used = [c for c in range(q) if weights[c]]
    order = _bfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in g.adjacency[v] if pos[w] < pos[v]] for v in order]
    assigned = [0] * n

    def search(i, assigned):
        if i == n:
            return 1
        total = 0
        back = earlier[i]
        for c in colors_used:
            if all(assigned[j] != c for j in back):
                assigned[i] = c
                total += weights[c] * search(i + 1, assigned)
        return total

    if threads > 1 and len(colors_used) > 1:
        def branch(c):
            local = [0] * n
            local[0] = c
            return weights[c] * search(1, local)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            numerator = sum(pool.map(branch, colors_used))
    else:
        numerator = search(0, assigned)
    return Fraction(numerator, den ** n)


def coloring_census(g: Graph, q: int, *, max_states: int = DEFAULT_MAX_STATES,
                    chunk: int = 1 << 20, proper_only: bool = False) -> Counter:
    """Count all q^n colorings by (#monochromatic edges, color-usage vector).

    Returns a Counter keyed by ``(mono, (a_0, ..., a_{q-1}))``.  Integer counts
    from a vectorised sweep over coloring indices; exact.
    """
    n = g.n
    states = q ** n
    if states > max_states:
        raise InstanceTooLarge(f"{q}^{n} = {states} colorings exceeds max_states={max_states}")
    if n == 0:
        return Counter({(0, (0,) * q): 1})
    edges = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    base = n + 1
    result: Counter = Counter()
    for start in range(0, states, chunk):
        idx = np.arange(start, min(states, start + chunk), dtype=np.int64)
        if q == 2:
            digits = np.stack([(idx >> v) & 1 for v in range(n)]).astype(np.int8)
        else:
            digits = np.empty((n, idx.size), dtype=np.int8)
            rest = idx.copy()
            for v in range(n):
                digits[v] = rest % q
                rest //= q
        mono = np.zeros(idx.size, dtype=np.int64)
        for u, v in edges:
            mono += digits[u] == digits[v]
        if proper_only:
            keep = mono == 0
            if not keep.any():
                continue
            digits, mono = digits[:, keep], mono[keep]
        key = mono
        for c in range(q):
            key = key * base + (digits == c).sum(axis=0)
        uniq, counts = np.unique(key, return_counts=True)
        for k, cnt in zip(uniq.tolist(), counts.tolist()):
            usage = []
            for _ in range(q):
                k, a = divmod(k, base)
                usage.append(a)
            result[(k, tuple(reversed(usage)))] += cnt
    return result


def coloring_weight(usage: Sequence[int], p: Distribution) -> Fraction:
    return prod((x ** a for x, a in zip(p, usage)), start=Fraction(1))


# -- complete graphs, stars, trees --------------------------------------------

def elementary_symmetric(values: Sequence[Fraction], k: int) -> Fraction:
    """e_k(values) by the prefix recurrence e_j <- e_j + x e_{j-1}."""
    e = [Fraction(1)] + [Fraction(0)] * k
    for x in values:
        for j in range(k, 0, -1):
            e[j] += x * e[j - 1]
    return e[k]


def birthday_probability(n: int, p) -> Fraction:
    """Probability that n independent draws from p are pairwise distinct: n! e_n(p)."""
    p = as_distribution(p)
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > p.q:
        return Fraction(0)
    if p.is_uniform():
        q = p.q
        return prod((Fraction(q - i, q) for i in range(1, n)), start=Fraction(1))
    return factorial(n) * elementary_symmetric(p.probabilities, n)


def minimal_birthday_n(q: int, threshold=Fraction(1, 2)) -> int:
    """Smallest n with uniform birthday probability <= threshold."""
    threshold = Fraction(threshold)
    prob, n = Fraction(1), 1
    while prob > threshold:
        if n >= q:
            return q + 1
        prob *= Fraction(q - n, q)
        n += 1
    return n


def star_closed_form(n: int, p) -> Fraction:
    """sum_i p_i (1 - p_i)^n for the star K_{1,n}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    p = as_distribution(p)
    return sum((x * (1 - x) ** n for x in p), Fraction(0))


def ternary_tree_closed_form(k: int, p1) -> Fraction:
    """Two-color proper probability of ``ternary_tree(k)``.

    The only proper 2-colorings alternate by depth, so the value is
    p1^a p2^b + p2^a p1^b with a, b the even/odd layer counts of the built tree.
    """
    p1 = Fraction(p1)
    if not 0 <= p1 <= 1:
        raise ValueError("p1 must lie in [0, 1]")
    even, odd = tree_layer_counts(ternary_tree(k))
    p2 = 1 - p1
    return p1 ** even * p2 ** odd + p2 ** even * p1 ** odd
