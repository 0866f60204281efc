"""Symmetric polynomials in finitely many variables.

Polynomials are stored in the monomial symmetric basis m_lambda.  The chromatic
symmetric function of a graph, evaluated at a probability vector, is exactly the
probability that the random coloring is proper.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Mapping, Sequence

from .coloring import DEFAULT_MAX_STATES, as_distribution, coloring_census, format_rational, parse_rational
from .graphs import Graph

Partition = tuple[int, ...]


def as_partition(parts: Sequence[int]) -> Partition:
    if any(int(x) < 0 for x in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted((int(x) for x in parts if x), reverse=True))


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0])) if lam else ()


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def partitions(n: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def distinct_permutations(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    counts = Counter(values)
    keys = sorted(counts)
    n = len(values)
    out = [0] * n

    def rec(i):
        if i == n:
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out[i] = k
                yield from rec(i + 1)
                counts[k] += 1

    yield from rec(0)


def rearrangement_count(lam: Partition, q: int) -> int:
    """Number of distinct exponent vectors of length q that sort to lam."""
    padded = list(lam) + [0] * (q - len(lam))
    return factorial(q) // prod(factorial(c) for c in Counter(padded).values())


class SymmetricPolynomial:
    """sum_lambda c_lambda m_lambda(x_1, ..., x_q)."""

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: Mapping[Sequence[int], Fraction] | None = None):
        if q < 1:
            raise ValueError("need at least one variable")
        acc: dict[Partition, Fraction] = {}
        for key, c in (terms or {}).items():
            lam = as_partition(key)
            if len(lam) > q:
                raise ValueError(f"m_{lam} vanishes in {q} variables (too many parts)")
            acc[lam] = acc.get(lam, Fraction(0)) + Fraction(c)
        self.q = q
        self.terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def from_monomials(cls, q: int, monomials: Mapping[Sequence[int], Fraction]) -> SymmetricPolynomial:
        """Build from an explicit {exponent vector: coefficient} map; checks symmetry."""
        mons = {tuple(k) + (0,) * (q - len(k)): Fraction(v) for k, v in monomials.items() if v}
        terms = {}
        for exps, c in mons.items():
            lam = as_partition(exps)
            if lam in terms:
                continue
            for perm in distinct_permutations(list(exps)):
                if mons.get(perm, 0) != c:
                    raise ValueError(f"not symmetric: coefficient of {perm} differs from {exps}")
            terms[lam] = c
        return cls(q, terms)

    def to_monomials(self) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for lam, c in self.terms.items():
            for perm in distinct_permutations(list(lam) + [0] * (self.q - len(lam))):
                out[perm] = c
        return out

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymmetricPolynomial(self.q, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> SymmetricPolynomial:
        return SymmetricPolynomial(self.q, {k: v * Fraction(c) for k, v in self.terms.items()})

    def _check(self, other):
        if self.q != other.q:
            raise ValueError(f"variable counts differ: {self.q} vs {other.q}")

    def __eq__(self, other):
        return isinstance(other, SymmetricPolynomial) and self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.q, frozenset(self.terms.items())))

    def __call__(self, x):
        return evaluate(self, x)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-v for v in kv[0])))

    def to_json(self) -> dict:
        return {"q": self.q, "terms": [{"partition": list(k), "coeff": format_rational(v)} for k, v in self.items()]}

    @classmethod
    def from_json(cls, data: dict) -> SymmetricPolynomial:
        return cls(data["q"], {tuple(t["partition"]): parse_rational(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(v)}*m{list(k)}" for k, v in self.items())


def monomial_symmetric(lam: Sequence[int], q: int) -> SymmetricPolynomial:
    return SymmetricPolynomial(q, {tuple(lam): 1})


def elementary(k: int, q: int) -> SymmetricPolynomial:
    """e_k = m_(1^k)."""
    if k > q:
        return SymmetricPolynomial(q)
    return SymmetricPolynomial(q, {(1,) * k: 1})


def chromatic_symmetric_function(g: Graph, q: int, *, max_states: int = DEFAULT_MAX_STATES) -> SymmetricPolynomial:
    """Stanley's X_G = sum over proper colorings of prod_v x_{color(v)}, in q variables."""
    census = coloring_census(g, q, max_states=max_states, proper_only=True)
    buckets: Counter = Counter()
    for (_, usage), count in census.items():
        buckets[as_partition(usage)] += count
    terms = {}
    for lam, total in buckets.items():
        r = rearrangement_count(lam, q)
        assert total % r == 0
        terms[lam] = Fraction(total // r)
    return SymmetricPolynomial(q, terms)


def evaluate(f: SymmetricPolynomial, x) -> Fraction:
    if len(x) != f.q:
        raise ValueError(f"polynomial has {f.q} variables, point has {len(x)} entries")
    vals = [Fraction(v) for v in x]
    total = Fraction(0)
    for lam, c in f.terms.items():
        padded = list(lam) + [0] * (f.q - len(lam))
        m = Fraction(0)
        for perm in distinct_permutations(padded):
            term = Fraction(1)
            for v, e in zip(vals, perm):
                if e:
                    term *= v ** e
            m += term
        total += c * m
    return total


def evaluate_distribution(f: SymmetricPolynomial, p) -> Fraction:
    return evaluate(f, list(as_distribution(p)))


# -- elementary basis ---------------------------------------------------------

@lru_cache(maxsize=None)
def _zero_one_count(rows: Partition, cols: tuple[int, ...]) -> int:
    """Number of 0-1 matrices with the given row sums and column sums."""
    if not rows:
        return 1 if not any(cols) else 0
    r, rest = rows[0], rows[1:]
    groups = Counter(c for c in cols if c > 0)
    values = sorted(groups)
    total = 0

    def choose(i, remaining, ways, new_cols):
        nonlocal total
        if i == len(values):
            if remaining == 0:
                total += ways * _zero_one_count(rest, tuple(sorted(new_cols + [0] * 0, reverse=True)))
            return
        v, size = values[i], groups[values[i]]
        for k in range(min(size, remaining) + 1):
            choose(i + 1, remaining - k, ways * comb(size, k), new_cols + [v - 1] * k + [v] * (size - k))

    choose(0, r, 1, [])
    return total


def elementary_product_in_monomials(lam: Partition, q: int) -> SymmetricPolynomial:
    """e_lambda = prod e_{lambda_i} expanded in m_mu (q variables)."""
    lam = as_partition(lam)
    if lam and lam[0] > q:
        return SymmetricPolynomial(q)
    size = sum(lam)
    terms = {}
    for mu in partitions(size, max_len=q):
        c = _zero_one_count(lam, tuple(mu))
        if c:
            terms[mu] = c
    return SymmetricPolynomial(q, terms)


class IncompleteBasisError(ValueError):
    """Degree exceeds the number of variables."""


def elementary_basis(f: SymmetricPolynomial) -> dict[Partition, Fraction]:
    """Coefficients c_lambda with f = sum c_lambda e_lambda.

    Triangular solve: the lexicographically largest monomial m_mu left in f is
    the leading term of e_{mu'} (mu' the conjugate), all other terms of e_{mu'}
    being dominated by mu.
    """
    if f.degree() > f.q:
        raise IncompleteBasisError(
            f"degree {f.degree()} exceeds {f.q} variables; use at least q={f.degree()} for a faithful e-expansion")
    remaining = dict(f.terms)
    coeffs: dict[Partition, Fraction] = {}
    while remaining:
        mu = max(remaining, key=lambda k: (sum(k), k))
        c = remaining[mu]
        lam = conjugate(mu)
        coeffs[lam] = coeffs.get(lam, Fraction(0)) + c
        for nu, v in elementary_product_in_monomials(lam, f.q).terms.items():
            new = remaining.get(nu, Fraction(0)) - c * v
            if new:
                remaining[nu] = new
            else:
                remaining.pop(nu, None)
    return {k: v for k, v in coeffs.items() if v}


def from_elementary(coeffs: Mapping[Partition, Fraction], q: int) -> SymmetricPolynomial:
    out = SymmetricPolynomial(q)
    for lam, c in coeffs.items():
        out = out + elementary_product_in_monomials(lam, q).scale(c)
    return out


def is_e_positive(f: SymmetricPolynomial) -> bool:
    return all(c >= 0 for c in elementary_basis(f).values())


# -- Schur functions ----------------------------------------------------------

def semistandard_tableaux(lam: Partition, q: int) -> Iterator[list[list[int]]]:
    """SSYT of shape lam with entries 1..q: rows weakly increase, columns strictly."""
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    tab = [[0] * row for row in lam]

    def rec(k):
        if k == len(cells):
            yield [row[:] for row in tab]
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, tab[i][j - 1])
        if i > 0:
            lo = max(lo, tab[i - 1][j] + 1)
        for v in range(lo, q + 1):
            tab[i][j] = v
            yield from rec(k + 1)
        tab[i][j] = 0

    yield from rec(0)


def schur_function(lam: Sequence[int], q: int) -> SymmetricPolynomial:
    """s_lambda in q variables; coefficient of m_mu is the number of SSYT of content mu."""
    lam = as_partition(lam)
    if len(lam) > q:
        raise ValueError(f"s_{lam} needs at most {q} parts")
    if sum(lam) > 12:
        raise ValueError("schur_function enumerates tableaux; |lambda| <= 12 supported")
    counts: Counter = Counter()
    for tab in semistandard_tableaux(lam, q):
        content = [0] * q
        for row in tab:
            for v in row:
                content[v - 1] += 1
        if all(content[i] >= content[i + 1] for i in range(q - 1)):
            counts[as_partition(content)] += 1
    return SymmetricPolynomial(q, counts)


def schur_concavity_counterexample(f: SymmetricPolynomial, denominator: int = 20):
    """Grid search for v majorizing w with f(v) > f(w).

    Points are distributions with the given denominator, taken in descending
    order.  Returns (v, w, f(v), f(w)) for the largest gap, or None.
    """
    from .coloring import distribution_grid
    from .simplex import majorizes

    points = [tuple(p) for p in distribution_grid(f.q, denominator, dedupe=True)]
    values = {p: evaluate(f, p) for p in points}
    best = None
    for v in points:
        for w in points:
            if v != w and values[v] > values[w] and majorizes(v, w):
                gap = values[v] - values[w]
                if best is None or gap > best[0]:
                    best = (gap, v, w)
    if best is None:
        return None
    _, v, w = best
    return v, w, values[v], values[w]
