"""Cluster-expansion diagnostics at desk scale.

Penrose and Sokal tree bounds, the formal logarithm of the power-sum form of
P_G (Mayer coefficients C_alpha) with their coefficient bound, polymer
partition functions and the q thresholds of the large-q theorems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, isqrt
from typing import Sequence

from .coloring import (
    InstanceTooLarge,
    PowerSumPolynomial,
    as_distribution,
    connected_signed_sums,
    format_rational,
    power_sum_form,
    proper_probability,
)
from .graphs import Graph, build_graph, is_connected, max_degree, spanning_tree_count, triangle_count

K = Fraction("7.963907")
REGIME_NOTE = "constants outside stated regime"


def _int_or_fraction(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def t_n_delta(n: int, delta: int):
    """Sokal's bound Delta [(Delta-1)(n+1)]! / (n! [(Delta-2)n + Delta]!) on T_n(G)."""
    if delta < 2:
        raise ValueError("t_n_delta needs Delta >= 2")
    if n < 1:
        raise ValueError("t_n_delta needs n >= 1")
    num = delta * factorial((delta - 1) * (n + 1))
    den = factorial(n) * factorial((delta - 2) * n + delta)
    return _int_or_fraction(Fraction(num, den))


# -- Penrose ------------------------------------------------------------------

@dataclass(frozen=True)
class PenroseResult:
    signed_sum: int
    trees: int
    holds: bool
    sokal_bound: object = None  # t_n_delta(n, Delta) when Delta >= 2

    @property
    def within_sokal(self) -> bool | None:
        return None if self.sokal_bound is None else abs(self.signed_sum) <= self.sokal_bound

    def to_json(self) -> dict:
        sb = self.sokal_bound
        return {"signed_sum": self.signed_sum, "trees": self.trees, "holds": self.holds,
                "sokal_bound": None if sb is None else format_rational(Fraction(sb)),
                "within_sokal": self.within_sokal}


def _spans_connected(n: int, edges: Sequence[tuple[int, int]], subset: int) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = 0
    i = 0
    while subset:
        if subset & 1:
            u, v = edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                merged += 1
        subset >>= 1
        i += 1
    return merged == n - 1


def penrose_check(g: Graph, max_edges: int = 24) -> PenroseResult:
    """Sum of (-1)^|E'| over connected spanning E' (2^|E| sweep) vs the tree count."""
    if not is_connected(g):
        raise ValueError("penrose_check needs a connected graph")
    if g.m > max_edges:
        raise InstanceTooLarge(f"2^{g.m} edge subsets exceeds the guard 2^{max_edges}")
    edges = list(g.edges)
    total = 0
    if g.n == 1:
        total = 1
    else:
        for subset in range(1 << g.m):
            if bin(subset).count("1") >= g.n - 1 and _spans_connected(g.n, edges, subset):
                total += -1 if bin(subset).count("1") & 1 else 1
    trees = spanning_tree_count(g)
    delta = max_degree(g)
    bound = t_n_delta(g.n, delta) if delta >= 2 else None
    return PenroseResult(total, trees, abs(total) <= trees, bound)


# -- Mayer expansion ----------------------------------------------------------

MAX_MAYER_WEIGHT = 12


def mayer_log_expansion(g: Graph, max_weight: int) -> PowerSumPolynomial:
    """Formal log of the power-sum form, truncated at total weight ``max_weight``.

    log(1 + u) = sum_k (-1)^{k+1} u^k / k with u = P_G - 1; every term of u has
    weight >= 2, so k <= max_weight // 2 terms suffice.
    """
    if max_weight > MAX_MAYER_WEIGHT:
        raise InstanceTooLarge(f"max_weight {max_weight} > {MAX_MAYER_WEIGHT}")
    u = power_sum_form(g).truncate(max_weight) - PowerSumPolynomial.constant(1)
    out = PowerSumPolynomial()
    power = PowerSumPolynomial.constant(1)
    for k in range(1, max_weight // 2 + 1):
        power = power.multiply(u, max_weight)
        if not power.terms:
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def exp_power_sum(f: PowerSumPolynomial, max_weight: int) -> PowerSumPolynomial:
    """exp(f) truncated at ``max_weight``; f must have no constant term."""
    if f.coefficient(()) != 0:
        raise ValueError("exp_power_sum expects a series without constant term")
    f = f.truncate(max_weight)
    out = PowerSumPolynomial.constant(1)
    power = PowerSumPolynomial.constant(1)
    for k in range(1, max_weight // 2 + 1):
        power = power.multiply(f, max_weight)
        if not power.terms:
            break
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def _connected_subsets(g: Graph) -> list[tuple[int, int]]:
    """(vertex mask, signed sum) for connected induced subgraphs with >= 2 vertices."""
    return sorted((b, c) for b, c in connected_signed_sums(g).items() if b & (b - 1))


def mayer_by_ordered_polymers(g: Graph, max_weight: int, max_n: int = 4) -> PowerSumPolynomial:
    """Cross-check: sum over N of 1/N! times ordered polymer tuples weighted by the
    Ursell function of their overlap graph.  Factorial growth; n <= max_n only."""
    if g.n > max_n:
        raise InstanceTooLarge(f"ordered-polymer Mayer sum limited to n <= {max_n}")
    polymers = _connected_subsets(g)
    out: dict[tuple[int, ...], Fraction] = {}

    def ursell(masks):
        k = len(masks)
        if k == 1:
            return 1
        edges = [(i, j) for i in range(k) for j in range(i + 1, k) if masks[i] & masks[j]]
        if not edges:
            return 0
        return connected_signed_sums(build_graph(k, edges)).get((1 << k) - 1, 0)

    def rec(seq, weight):
        if seq:
            phi = ursell([polymers[i][0] for i in seq])
            if phi:
                coeff = Fraction(phi, factorial(len(seq)))
                key = []
                for i in seq:
                    coeff *= polymers[i][1]
                    key.append(bin(polymers[i][0]).count("1"))
                key = tuple(sorted(key, reverse=True))
                out[key] = out.get(key, Fraction(0)) + coeff
        for i, (mask, _) in enumerate(polymers):
            size = bin(mask).count("1")
            if weight + size <= max_weight:
                rec(seq + [i], weight + size)

    rec([], 0)
    return PowerSumPolynomial(out)


def derived_coefficients(g: Graph) -> dict[str, Fraction]:
    """Closed forms for C_(2), C_(2,2) and C_(3) obtained from the series log."""
    s = sum(comb(d, 2) for d in g.degrees())
    return {
        "C_(2)": Fraction(-g.m),
        "C_(2,2)": Fraction(-s) - Fraction(g.m, 2),
        "C_(3)": Fraction(s - triangle_count(g)),
    }


def published_coefficients(g: Graph) -> dict[str, Fraction]:
    """The published closed forms, reported for comparison and not asserted."""
    s = sum(comb(d, 2) for d in g.degrees())
    return {"C_(2)": Fraction(-g.m), "C_(2,2)": Fraction(-s), "C_(3)": Fraction(s)}


@dataclass(frozen=True)
class BoundRow:
    alpha: tuple[int, ...]
    coefficient: Fraction
    bound: Fraction
    within: bool
    note: str = ""

    def to_json(self) -> dict:
        out = {"alpha": list(self.alpha), "C": format_rational(self.coefficient),
               "bound": format_rational(self.bound), "bound_float": float(self.bound), "within": self.within}
        if self.note:
            out["note"] = self.note
        return out


def coefficient_bound_report(g: Graph, max_weight: int, k_const=K) -> list[BoundRow]:
    """|C_alpha| against 4|E| (K Delta)^(M - s) / 5 for every computed alpha."""
    k_const = Fraction(k_const)
    delta = max_degree(g)
    note = REGIME_NOTE if delta < 2 else ""
    rows = []
    for alpha, c in mayer_log_expansion(g, max_weight).items():
        if not alpha:
            continue
        m, s = sum(alpha), len(alpha)
        bound = Fraction(4 * g.m, 5) * (k_const * delta) ** (m - s)
        rows.append(BoundRow(alpha, c, bound, abs(c) <= bound, note))
    return rows


@dataclass(frozen=True)
class LogBoundResult:
    log_p: float
    bound: Fraction
    within: bool

    def to_json(self) -> dict:
        return {"log_P": self.log_p, "bound": format_rational(self.bound), "within": self.within}


def log_bound_check(g: Graph, p) -> LogBoundResult:
    """|log P_G(p)| against 4|E|/5 at a real point (reported, not asserted)."""
    val = proper_probability(g, as_distribution(p))
    bound = Fraction(4 * g.m, 5)
    log_p = math.log(val) if val > 0 else -math.inf
    return LogBoundResult(log_p, bound, abs(log_p) <= bound)


# -- polymer systems ----------------------------------------------------------

@dataclass(frozen=True)
class PolymerSystem:
    weights: tuple
    conflict: tuple[tuple[bool, ...], ...]
    ids: tuple = field(default=())

    def __post_init__(self):
        n = len(self.weights)
        if len(self.conflict) != n or any(len(r) != n for r in self.conflict):
            raise ValueError("conflict matrix shape mismatch")
        for i in range(n):
            if not self.conflict[i][i]:
                raise ValueError(f"polymer {i} must conflict with itself")
            for j in range(i):
                if self.conflict[i][j] != self.conflict[j][i]:
                    raise ValueError(f"conflict relation not symmetric at ({i}, {j})")
        if not self.ids:
            object.__setattr__(self, "ids", tuple(range(n)))

    def __len__(self):
        return len(self.weights)


MAX_POLYMER_STATES = 1 << 22


def polymer_partition_function(system: PolymerSystem, max_states: int = MAX_POLYMER_STATES):
    """Z = sum over pairwise compatible subfamilies of the product of weights.

    Independent-set recursion Z(A) = Z(A - x) + w_x Z(A - N[x]) with memo on the
    remaining bitmask.
    """
    n = len(system)
    nbr = []
    for i in range(n):
        m = 0
        for j in range(n):
            if system.conflict[i][j]:
                m |= 1 << j
        nbr.append(m)
    memo = {0: 1}

    def z(avail):
        if avail in memo:
            return memo[avail]
        if len(memo) > max_states:
            raise InstanceTooLarge(f"polymer recursion exceeded {max_states} states")
        x = (avail & -avail).bit_length() - 1
        res = z(avail & ~(1 << x)) + system.weights[x] * z(avail & ~nbr[x])
        memo[avail] = res
        return res

    return z((1 << n) - 1)


def kotecky_preiss_holds(system: PolymerSystem, c: Sequence[float]) -> bool:
    """|w_x| <= c_x exp(-sum of c_y over y conflicting with x, x included)."""
    if len(c) != len(system) or any(v <= 0 for v in c):
        raise ValueError("need one positive c_x per polymer")
    for i, w in enumerate(system.weights):
        total = sum(c[j] for j in range(len(system)) if system.conflict[i][j])
        if abs(w) > c[i] * math.exp(-total):
            return False
    return True


def graph_polymer_system(g: Graph, p) -> PolymerSystem:
    """Connected vertex subsets S (|S| >= 2) with w(S) = nu(|S|) * signed sum of G[S]."""
    p = as_distribution(p)
    polymers = _connected_subsets(g)
    weights, ids = [], []
    for mask, c in polymers:
        size = bin(mask).count("1")
        weights.append(c * p.power_sum(size))
        ids.append(tuple(v for v in range(g.n) if mask >> v & 1))
    masks = [m for m, _ in polymers]
    conflict = tuple(tuple(bool(a & b) for b in masks) for a in masks)
    return PolymerSystem(tuple(weights), conflict, tuple(ids))


def graph_polymer_value(g: Graph, p) -> Fraction:
    return Fraction(polymer_partition_function(graph_polymer_system(g, p)))


# -- thresholds ---------------------------------------------------------------

def threshold_q_main(delta: int) -> int:
    """Smallest q > 6.3e5 Delta^4."""
    return 630000 * delta ** 4 + 1


def threshold_q_shameful(delta: int) -> int:
    """Smallest q > 400 Delta^(3/2); exact via 400 Delta^(3/2) = sqrt(160000 Delta^3)."""
    # floor(sqrt(x)) + 1 exceeds sqrt(x) whether or not x is a square
    return isqrt(160000 * delta ** 3) + 1


def threshold_q_nonvanishing(delta: int, k_const=K) -> int:
    """Smallest q > 4 K^2 Delta^3."""
    bound = 4 * Fraction(k_const) ** 2 * delta ** 3
    return math.floor(bound) + 1


def threshold_q_log_bound(delta: int, k_const=K) -> int:
    """Smallest q > K^2 Delta^3."""
    return math.floor(Fraction(k_const) ** 2 * delta ** 3) + 1

