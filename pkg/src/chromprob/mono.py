"""Colorings that tolerate a bounded number of monochromatic edges.

``P_G(k, p)`` is the probability that an independent p-coloring has at most k
monochromatic edges.  The pmf of the monochromatic-edge count is computed
exactly from an integer census of all q^n colorings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .coloring import (
    DEFAULT_MAX_STATES,
    Distribution,
    as_distribution,
    coloring_census,
    distribution_grid,
    format_rational,
)
from .graphs import Graph


@dataclass(frozen=True)
class EdgeCountDistribution:
    """Exact pmf of the number of monochromatic edges, indexed 0..|E|."""

    pmf: tuple[Fraction, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.pmf):
            raise ValueError("negative mass in pmf")
        if sum(self.pmf) != 1:
            raise ValueError(f"pmf sums to {sum(self.pmf)}")

    def cumulative(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        return sum(self.pmf[: k + 1], Fraction(0))

    def to_json(self) -> list[str]:
        return [format_rational(x) for x in self.pmf]


@lru_cache(maxsize=64)
def _census(g: Graph, q: int, max_states: int):
    return coloring_census(g, q, max_states=max_states)


def _weight_table(p: Distribution, n: int):
    return [[x ** a for a in range(n + 1)] for x in p]


def mono_edge_distribution(g: Graph, p, *, max_states: int = DEFAULT_MAX_STATES) -> EdgeCountDistribution:
    p = as_distribution(p)
    census = _census(g, p.q, max_states)
    powers = _weight_table(p, g.n)
    pmf = [Fraction(0)] * (g.m + 1)
    for (mono, usage), count in census.items():
        w = Fraction(count)
        for c, a in enumerate(usage):
            w *= powers[c][a]
        pmf[mono] += w
    return EdgeCountDistribution(tuple(pmf))


def at_most_k_probability(g: Graph, p, k: int, *, max_states: int = DEFAULT_MAX_STATES) -> Fraction:
    p = as_distribution(p)
    if k >= g.m:
        return Fraction(1)
    census = _census(g, p.q, max_states)
    powers = _weight_table(p, g.n)
    total = Fraction(0)
    for (mono, usage), count in census.items():
        if mono <= k:
            w = Fraction(count)
            for c, a in enumerate(usage):
                w *= powers[c][a]
            total += w
    return total


# -- complete graphs (closed forms) -------------------------------------------

def complete_split_term(n: int, t: int, p1) -> Fraction:
    """p1^t p2^(n-t) + p2^t p1^(n-t): one fixed t-vs-(n-t) split, either orientation."""
    if not 0 <= t <= n // 2:
        raise ValueError(f"t must lie in 0..{n // 2}")
    p1 = Fraction(p1)
    p2 = 1 - p1
    return p1 ** t * p2 ** (n - t) + p2 ** t * p1 ** (n - t)


def complete_at_most_k(n: int, p1, k: int) -> Fraction:
    """P_{K_n}(k, (p1, 1 - p1)) from the split terms.

    For even n the balanced split t = n/2 is a single class of colorings, so it
    enters once as C(n, n/2) (p1 p2)^(n/2) rather than through the doubled
    split term.
    """
    p1 = Fraction(p1)
    p2 = 1 - p1
    total = Fraction(0)
    for t in range(n // 2 + 1):
        if comb(t, 2) + comb(n - t, 2) > k:
            continue
        if 2 * t == n:
            total += comb(n, t) * p1 ** t * p2 ** t
        else:
            total += comb(n, t) * complete_split_term(n, t, p1)
    return total


# -- chains -------------------------------------------------------------------

def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def chain_split_count(n: int, s: int, r: int) -> int:
    """N(s, r): 2-colorings of the n-vertex path with s red, n - s blue vertices
    and exactly r bichromatic adjacent pairs (so n - 1 - r monochromatic edges).
    """
    t = n - s
    if not (0 <= s <= t) or not (0 <= r <= max(n - 1, 0)):
        raise ValueError(f"need 0 <= s <= n - s and 0 <= r <= n - 1, got n={n}, s={s}, r={r}")
    h, odd = divmod(r, 2)
    if odd:
        return 2 * _binom(s - 1, h) * _binom(t - 1, h)
    if r == 2 * s:
        return 0 if s == t else _binom(t - 1, h)
    if r < 2 * s:
        return _binom(s - 1, h) * _binom(t - 1, h - 1) + _binom(t - 1, h) * _binom(s - 1, h - 1)
    return 0


# -- concave monotonicity -----------------------------------------------------

def split_profile(g: Graph, *, max_states: int = DEFAULT_MAX_STATES) -> list[list[int]]:
    """``table[s][c]`` = number of s-colorings (s vertices in color 1) with at most c
    monochromatic edges, for 0 <= s <= n // 2 and 0 <= c <= |E|."""
    census = _census(g, 2, max_states)
    n, m = g.n, g.m
    exact = [[0] * (m + 1) for _ in range(n // 2 + 1)]
    for (mono, usage), count in census.items():
        s = usage[1]
        if s <= n // 2:
            exact[s][mono] += count
    table = []
    for row in exact:
        acc, cum = 0, []
        for x in row:
            acc += x
            cum.append(acc)
        table.append(cum)
    return table


@dataclass(frozen=True)
class ConcaveMonotoneVerdict:
    holds: bool
    witness: tuple[int, int, int] | None = None  # (s, s + 1, c) with G(s,c) > G(s+1,c)

    def __bool__(self):
        return self.holds


def concave_monotone_check(g: Graph, *, max_states: int = DEFAULT_MAX_STATES) -> ConcaveMonotoneVerdict:
    """Is G(s, c) = table[s][c] / C(n, s) nondecreasing in s for every c?"""
    table = split_profile(g, max_states=max_states)
    n = g.n
    for c in range(g.m + 1):
        for s in range(len(table) - 1):
            lhs = Fraction(table[s][c], comb(n, s))
            rhs = Fraction(table[s + 1][c], comb(n, s + 1))
            if lhs > rhs:
                return ConcaveMonotoneVerdict(False, (s, s + 1, c))
    return ConcaveMonotoneVerdict(True)


# -- P-uniformity on a grid ---------------------------------------------------

@dataclass(frozen=True)
class UniformityVerdict:
    is_uniform_max_on_grid: bool
    best_point: Distribution
    best_value: Fraction
    uniform_value: Fraction
    points_evaluated: int = 0
    k: int = 0
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "is_uniform_max_on_grid": self.is_uniform_max_on_grid,
            "best_point": self.best_point.to_json(),
            "best_value": format_rational(self.best_value),
            "uniform_value": format_rational(self.uniform_value),
            "points_evaluated": self.points_evaluated,
            "k": self.k,
        }


def p_uniform_scan(g: Graph, q: int, k: int, grid_denominator: int, *,
                   max_states: int = DEFAULT_MAX_STATES) -> UniformityVerdict:
    """Evaluate P_G(k, .) on the rational grid with the given denominator.

    The uniform point is always evaluated, even when it is not on the grid.
    Uniform wins when no grid point has a strictly larger value.
    """
    uniform = Distribution.uniform(q)
    u_val = at_most_k_probability(g, uniform, k, max_states=max_states)
    best_point, best_val = uniform, u_val
    points = distribution_grid(q, grid_denominator, dedupe=True)
    for p in points:
        val = at_most_k_probability(g, p, k, max_states=max_states)
        if val > best_val:
            best_point, best_val = p, val
    return UniformityVerdict(best_val <= u_val, best_point, best_val, u_val, len(points) + 1, k)


def p_uniform_all_k(g: Graph, q: int, grid_denominator: int, *,
                    max_states: int = DEFAULT_MAX_STATES) -> list[UniformityVerdict]:
    return [p_uniform_scan(g, q, k, grid_denominator, max_states=max_states) for k in range(g.m + 1)]
