"""Majorization, pinching, and searches for the maximizer of P_G on the simplex.

Theorem-grade comparisons run on exact rationals.  Only the gradient-ascent
inner loop of :func:`maximize_over_simplex` uses floats, and its candidates are
re-checked exactly before a verdict is issued.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Callable, Sequence

import numpy as np

from .chromatic import uniform_proper_probability
from .coloring import (
    Distribution,
    as_distribution,
    distribution_grid,
    evaluate_power_sum,
    format_rational,
    power_sum_form,
)
from .graphs import Graph, max_degree

FLOAT_TOL = 1e-12


def _exact(values) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in values)


def majorizes(v: Sequence, w: Sequence) -> bool:
    """Standard majorization v >= w: equal totals and dominating prefix sums of
    the descending rearrangements."""
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} vs {len(w)}")
    exact = _exact(v) and _exact(w)
    tol = 0 if exact else FLOAT_TOL
    sv, sw = sorted(v, reverse=True), sorted(w, reverse=True)
    pv = pw = 0
    for a, b in zip(sv, sw):
        pv += a
        pw += b
        if pv < pw - tol:
            return False
    return abs(pv - pw) <= tol


def pinch(p: Sequence, i: int, j: int, t=1):
    """Move p_i and p_j toward their mean by the fraction t (t = 1 averages them)."""
    if i == j:
        raise ValueError("pinch needs two distinct coordinates")
    t = Fraction(t) if isinstance(t, (int, Fraction)) else t
    vals = list(p)
    mid = (vals[i] + vals[j]) / 2
    vals[i] = vals[i] + t * (mid - vals[i])
    vals[j] = vals[j] + t * (mid - vals[j])
    if isinstance(p, Distribution):
        return Distribution(tuple(vals))
    return tuple(vals)


# -- random rational points ---------------------------------------------------

def random_composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0] + cuts + [total]
    return [bounds[k + 1] - bounds[k] for k in range(parts)]


def random_distribution(rng: random.Random, q: int, max_denominator: int = 60) -> Distribution:
    den = rng.randint(max(1, q), max_denominator)
    return Distribution(tuple(Fraction(a, den) for a in random_composition(rng, den, q)))


def random_majorized(rng: random.Random, p: Distribution, steps: int = 3) -> Distribution:
    """A point majorized by p: a few random pinches followed by a permutation."""
    w = p
    for _ in range(steps):
        i, j = rng.sample(range(p.q), 2)
        w = pinch(w, i, j, Fraction(rng.randint(0, 12), 12))
    vals = list(w)
    rng.shuffle(vals)
    return Distribution(tuple(vals))


# -- Schur concavity ----------------------------------------------------------

@dataclass(frozen=True)
class SchurVerdict:
    holds_on_samples: bool
    samples: int
    counterexample: tuple[Distribution, Distribution, Fraction, Fraction] | None = None

    def to_json(self) -> dict:
        out = {"holds_on_samples": self.holds_on_samples, "samples": self.samples, "counterexample": None}
        if self.counterexample:
            p, w, fp, fw = self.counterexample
            out["counterexample"] = {"p": p.to_json(), "majorized": w.to_json(),
                                     "value_p": format_rational(fp), "value_majorized": format_rational(fw)}
        return out


def proper_probability_objective(g: Graph) -> Callable[[Distribution], Fraction]:
    """Exact P_G through its power-sum form (computed once)."""
    form = power_sum_form(g)
    return lambda p: evaluate_power_sum(form, p)


def schur_concavity_scan(g: Graph, q: int, samples: int = 200, seed: int = 0,
                         objective: Callable[[Distribution], Fraction] | None = None) -> SchurVerdict:
    """Look for w majorized by p with f(w) < f(p), f = P_G by default.

    Half the samples are single pinches (p, pinch(p, i, j, t)); the rest are
    random majorization pairs built from several pinches and a permutation.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    f = objective or proper_probability_objective(g)
    rng = random.Random(seed)
    for k in range(samples):
        p = random_distribution(rng, q)
        if k % 2 == 0:
            i, j = rng.sample(range(q), 2)
            w = pinch(p, i, j, Fraction(rng.randint(0, 12), 12))
        else:
            w = random_majorized(rng, p)
        fp, fw = f(p), f(w)
        if fw < fp:
            return SchurVerdict(False, k + 1, (p, w, fp, fw))
    return SchurVerdict(True, samples)


def uniform_beats_grid(f: Callable[[Distribution], Fraction], q: int, denominator: int):
    """(uniform is a maximizer over grid plus uniform, best grid point, its value)."""
    u = f(Distribution.uniform(q))
    best, best_val = Distribution.uniform(q), u
    for p in distribution_grid(q, denominator, dedupe=True):
        v = f(p)
        if v > best_val:
            best, best_val = p, v
    return best_val <= u, best, best_val


# -- numerical maximisation ---------------------------------------------------

def project_simplex(v) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


@dataclass
class OptimizationResult:
    argmax: np.ndarray
    value: float
    converged: bool
    iterations: int


def _ascend(f, x, tolerance, h, max_iter):
    q = x.size
    directions = np.eye(q) - 1.0 / q
    fx = float(f(x))
    step = 0.1
    for it in range(max_iter):
        grad = np.array([(f(x + h * d) - f(x - h * d)) / (2 * h) for d in directions])
        if not np.all(np.isfinite(grad)):
            return x, fx, False, it
        while step > 1e-16:
            cand = project_simplex(x + step * grad)
            fc = float(f(cand))
            if fc > fx:
                break
            step *= 0.5
        else:
            return x, fx, True, it
        improvement = fc - fx
        x, fx = cand, fc
        step *= 2.0
        if improvement < tolerance and np.max(np.abs(grad - grad.mean())) * step < tolerance:
            return x, fx, True, it
    return x, fx, False, max_iter


def maximize_over_simplex(objective: Callable, q: int, restarts: int = 16, tolerance: float = 1e-14,
                          *, seed: int = 0, h: float = 1e-6, max_iter: int = 5000) -> OptimizationResult:
    """Multi-start projected gradient ascent with central finite differences.

    Differences are taken along the simplex tangent directions e_i - 1/q, so the
    objective must accept points within h of the simplex.  Restarts begin at
    Dirichlet(1, ..., 1) draws; the best value wins, ties going to the
    lexicographically smallest argmax.
    """
    if q == 1:
        x = np.ones(1)
        return OptimizationResult(x, float(objective(x)), True, 0)
    rng = np.random.default_rng(seed)
    starts = [np.full(q, 1.0 / q)] + [rng.dirichlet(np.ones(q)) for _ in range(max(restarts - 1, 0))]
    best = None
    for x0 in starts:
        x, fx, ok, it = _ascend(objective, x0, tolerance, h, max_iter)
        res = OptimizationResult(x, fx, ok, it)
        if best is None or fx > best.value + 1e-15 or (abs(fx - best.value) <= 1e-15 and tuple(x) < tuple(best.argmax)):
            best = res
    return best


def rationalize(x, max_denominator: int = 10 ** 6) -> Distribution:
    vals = [max(Fraction(float(v)).limit_denominator(max_denominator), Fraction(0)) for v in x]
    total = sum(vals)
    if total == 0:
        vals = [Fraction(1, len(vals))] * len(vals)
    else:
        vals = [v / total for v in vals]
    return Distribution(tuple(vals))


@dataclass(frozen=True)
class MaximizerVerdict:
    argmax: tuple[float, ...]
    value: float
    candidate: Distribution
    candidate_value: Fraction
    uniform_value: Fraction
    uniform_is_max: bool
    converged: bool

    def to_json(self) -> dict:
        return {
            "argmax": list(self.argmax),
            "value": self.value,
            "candidate": self.candidate.to_json(),
            "candidate_value": format_rational(self.candidate_value),
            "uniform_value": format_rational(self.uniform_value),
            "uniform_is_max": self.uniform_is_max,
            "converged": self.converged,
        }


def maximize_proper_probability(g: Graph, q: int, restarts: int = 16, seed: int = 0) -> MaximizerVerdict:
    """Numerically maximize P_G over the q-simplex, then compare with uniform exactly."""
    form = power_sum_form(g)
    res = maximize_over_simplex(form.float_evaluator(), q, restarts, seed=seed)
    cand = rationalize(res.argmax)
    cand_val = evaluate_power_sum(form, cand)
    u_val = uniform_proper_probability(g, q)
    return MaximizerVerdict(tuple(float(v) for v in res.argmax), res.value, cand, cand_val, u_val,
                            cand_val <= u_val, res.converged)


# -- large coordinates --------------------------------------------------------

def step1_condition_holds(g: Graph, q: int, p) -> bool:
    """max_i p_i >= 2 sqrt(Delta / q), decided exactly as p_i^2 q >= 4 Delta."""
    p = as_distribution(p)
    if p.q != q:
        raise ValueError(f"distribution has {p.q} entries, expected {q}")
    delta = max_degree(g)
    return max(p) ** 2 * q >= 4 * delta


def sample_step1_distribution(rng: random.Random, q: int, delta: int, max_denominator: int = 400) -> Distribution:
    """Random rational p with some coordinate at least 2 sqrt(delta / q)."""
    if 4 * delta > q:
        raise ValueError("2 sqrt(delta/q) exceeds 1; no distribution satisfies the condition")
    den = rng.randint(q, max(q, max_denominator))
    # smallest a with a^2 q >= 4 delta den^2
    need = -(-4 * delta * den * den // q)
    a_min = isqrt(need)
    if a_min * a_min < need:
        a_min += 1
    a = rng.randint(a_min, den)
    rest = random_composition(rng, den - a, q - 1)
    vals = [a] + rest
    rng.shuffle(vals)
    return Distribution(tuple(Fraction(v, den) for v in vals))


@dataclass(frozen=True)
class Step1Verdict:
    trials: int
    violations: int
    first_violation: Distribution | None = None

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {"trials": self.trials, "violations": self.violations, "holds": self.holds,
                "first_violation": self.first_violation.to_json() if self.first_violation else None}


def step1_empirical_check(g: Graph, q: int | Sequence[int], trials: int = 500, seed: int = 0) -> Step1Verdict:
    """Sample p meeting the large-coordinate condition; count P(p) > P(uniform).

    ``q`` may be a single color count or a collection to draw from per trial.
    P(p) comes from the power-sum form, P(uniform) from chi_G(q)/q^n.
    """
    qs = [q] if isinstance(q, int) else list(q)
    delta = max_degree(g)
    form = power_sum_form(g)
    uniform = {k: uniform_proper_probability(g, k) for k in qs}
    rng = random.Random(seed)
    violations, first = 0, None
    for _ in range(trials):
        k = rng.choice(qs)
        p = sample_step1_distribution(rng, k, delta)
        assert step1_condition_holds(g, k, p)
        if evaluate_power_sum(form, p) > uniform[k]:
            violations += 1
            first = first or p
    return Step1Verdict(trials, violations, first)


# -- the regions Omega and Omega_1 --------------------------------------------

def _leq_radius_power(s: Fraction, r2: Fraction, e: int) -> bool:
    """s <= r^e where r = sqrt(r2), s >= 0, decided exactly."""
    if e % 2 == 0:
        return s <= r2 ** (e // 2)
    x = r2 ** (e // 2)
    return s * s <= x * x * r2


def omega_membership(z_moduli: Sequence, delta: int, q: int, m_max: int = 16) -> bool:
    """|z_1|^m + ... + |z_q|^m <= (2 sqrt(delta/q))^(m-1) for m = 1..m_max."""
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    zs = [abs(Fraction(z)) for z in z_moduli]
    den = lcm(*(z.denominator for z in zs)) if zs else 1
    nums = [int(z * den) for z in zs]
    r2 = Fraction(4 * delta, q)
    for m in range(1, m_max + 1):
        s = Fraction(sum(a ** m for a in nums), den ** m)
        if not _leq_radius_power(s, r2, m - 1):
            return False
    return True


def in_omega1(p, delta: int, q: int) -> bool:
    p = as_distribution(p)
    return all(x * x * q <= 4 * delta for x in p)


def omega1_subset_omega(delta: int, q: int, samples: int = 1000, seed: int = 0, m_max: int = 16) -> bool:
    """Sample simplex points with every coordinate <= 2 sqrt(delta/q) and check Omega."""
    rng = random.Random(seed)
    checked = 0
    attempts = 0
    while checked < samples:
        attempts += 1
        if attempts > 50 * samples:
            raise RuntimeError("could not sample enough points of Omega_1")
        if checked % 4 == 0:
            p = _near_vertex_point(rng, delta, q)
        else:
            p = random_distribution(rng, q, max_denominator=4 * q)
        if not in_omega1(p, delta, q):
            continue
        checked += 1
        if not omega_membership(list(p), delta, q, m_max):
            return False
    return True


def _near_vertex_point(rng, delta, q):
    """Extreme-ish point of Omega_1: as many coordinates as possible just under the cap."""
    den = 10 ** 6
    cap = isqrt(4 * delta * den * den // q)  # floor(den * 2 sqrt(delta/q))
    cap = max(1, cap - rng.randint(0, 3))
    k = min(den // cap, q)
    vals = [cap] * k
    rem = den - cap * k
    if rem and len(vals) < q:
        vals.append(rem)
    elif rem:
        vals[-1] += rem
    vals += [0] * (q - len(vals))
    return Distribution(tuple(Fraction(v, den) for v in vals))
