"""Command-line front end: ``chromprob <command> ...``.

Exit codes: 0 success, 1 a reproduced assertion failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import chromatic, cluster, coloring, graphs, mono, simplex, symfunc
from .coloring import DEFAULT_MAX_STATES, Distribution, InstanceTooLarge, format_rational


class UsageError(Exception):
    pass


def load_graph(source: str) -> graphs.Graph:
    """``named:<kind>[:p1[:p2]]`` or a path to an edge-list file."""
    if source.startswith("named:"):
        kind, *params = source[len("named:"):].split(":")
        try:
            args = [int(x) for x in params]
        except ValueError:
            raise UsageError(f"graph parameters must be integers: {source!r}") from None
        return graphs.named_graph(kind, *args)
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"no such graph file: {source}")
    return graphs.parse_edge_list(path.read_text())


def load_distribution(text: str, q: int | None = None) -> Distribution:
    p = Distribution.parse(text)
    if q is not None and p.q != q:
        raise UsageError(f"distribution has {p.q} entries, expected {q}")
    return p


def _frac(x) -> str:
    return format_rational(Fraction(x))


# -- commands -----------------------------------------------------------------
# Each returns (inputs, results, ok); ok=False maps to exit code 1.

def cmd_graph(a):
    g = load_graph(a.graph)
    claw = graphs.find_claw(g)
    comps = graphs.connected_components(g)
    res = {
        "n": g.n, "m": g.m, "max_degree": graphs.max_degree(g),
        "claw_free": claw is None, "claw": list(claw) if claw else None,
        "bipartite": graphs.is_bipartite(g), "connected": len(comps) == 1, "components": len(comps),
        "triangles": graphs.triangle_count(g), "spanning_trees": graphs.spanning_tree_count(g),
    }
    return {"graph": a.graph}, res, True


def cmd_chromatic(a):
    g = load_graph(a.graph)
    poly = chromatic.chromatic_polynomial(g)
    res = {"coefficients": poly.to_json(), "polynomial": str(poly)}
    if a.q is not None:
        res["value"] = poly(a.q)
        res["uniform_probability"] = _frac(chromatic.uniform_proper_probability(g, a.q))
    return {"graph": a.graph, "q": a.q}, res, True


def cmd_prob(a):
    g = load_graph(a.graph)
    p = load_distribution(a.dist)
    val = coloring.proper_probability(g, p, threads=a.threads)
    return {"graph": a.graph, "dist": p.to_json()}, {"probability": _frac(val), "float": float(val)}, True


def cmd_kprob(a):
    g = load_graph(a.graph)
    p = load_distribution(a.dist)
    val = mono.at_most_k_probability(g, p, a.k, max_states=a.max_states)
    return ({"graph": a.graph, "dist": p.to_json(), "k": a.k},
            {"probability": _frac(val), "float": float(val)}, True)


def cmd_distribution(a):
    g = load_graph(a.graph)
    p = load_distribution(a.dist)
    d = mono.mono_edge_distribution(g, p, max_states=a.max_states)
    return {"graph": a.graph, "dist": p.to_json()}, {"pmf": d.to_json()}, True


def cmd_optimize(a):
    g = load_graph(a.graph)
    v = simplex.maximize_proper_probability(g, a.q, restarts=a.restarts, seed=a.seed)
    return {"graph": a.graph, "q": a.q, "restarts": a.restarts, "seed": a.seed}, v.to_json(), True


def cmd_schur_scan(a):
    g = load_graph(a.graph)
    v = simplex.schur_concavity_scan(g, a.q, samples=a.samples, seed=a.seed)
    return {"graph": a.graph, "q": a.q, "samples": a.samples, "seed": a.seed}, v.to_json(), True


def cmd_scan(a):
    g = load_graph(a.graph)
    ks = range(g.m + 1) if a.k == "all" else [int(a.k)]
    rows = [mono.p_uniform_scan(g, a.q, k, a.denominator, max_states=a.max_states).to_json() for k in ks]
    res = {"scans": rows, "uniform_max_all": all(r["is_uniform_max_on_grid"] for r in rows)}
    return {"graph": a.graph, "q": a.q, "k": a.k, "denominator": a.denominator}, res, True


def _csf(a):
    g = load_graph(a.graph)
    return g, symfunc.chromatic_symmetric_function(g, a.q, max_states=a.max_states)


def cmd_csf(a):
    g, f = _csf(a)
    return {"graph": a.graph, "q": a.q}, f.to_json(), True


def cmd_epos(a):
    g, f = _csf(a)
    if f.degree() > a.q:
        raise UsageError(f"e-basis needs at least {f.degree()} variables; rerun with q={f.degree()}")
    coeffs = symfunc.elementary_basis(f)
    res = {
        "e_coefficients": [{"partition": list(k), "coeff": _frac(v)} for k, v in sorted(coeffs.items(), reverse=True)],
        "e_positive": all(v >= 0 for v in coeffs.values()),
        "claw_free": graphs.is_claw_free(g),
    }
    return {"graph": a.graph, "q": a.q}, res, True


def cmd_bounds(a):
    g = load_graph(a.graph)
    delta = graphs.max_degree(g)
    res = {"max_degree": delta}
    if graphs.is_connected(g) and g.n >= 1:
        res["penrose"] = cluster.penrose_check(g).to_json()
    res["coefficients"] = [r.to_json() for r in cluster.coefficient_bound_report(g, a.max_weight)]
    res["closed_forms"] = {k: _frac(v) for k, v in cluster.derived_coefficients(g).items()}
    res["published_closed_forms"] = {k: _frac(v) for k, v in cluster.published_coefficients(g).items()}
    if delta >= 1:
        res["thresholds"] = {
            "main": cluster.threshold_q_main(delta),
            "shameful": cluster.threshold_q_shameful(delta),
            "nonvanishing": cluster.threshold_q_nonvanishing(delta),
        }
    return {"graph": a.graph, "max_weight": a.max_weight}, res, True


# -- reproduce ----------------------------------------------------------------

def _check(name, ok, **detail):
    return {"check": name, "ok": bool(ok), **detail}


def reproduce_star():
    g = graphs.star(4)
    half = coloring.proper_probability(g, coloring.two_color(Fraction(1, 2)))
    skew = coloring.proper_probability(g, coloring.two_color(Fraction(1, 5)))
    return [
        _check("P(1/2,1/2) = 1/16", half == Fraction(1, 16), value=_frac(half)),
        _check("P(1/5,4/5) = 260/3125", skew == Fraction(260, 3125), value=_frac(skew)),
        _check("P(1/5,4/5) > P(1/2,1/2)", skew > half),
    ]


def reproduce_tree():
    out = []
    for k in (1, 2, 3):
        g = graphs.ternary_tree(k)
        even, odd = graphs.tree_layer_counts(g)
        p1 = Fraction(1, 2) - Fraction(1, 2 * even)
        closed = coloring.ternary_tree_closed_form(k, p1)
        brute = coloring.proper_probability(g, coloring.two_color(p1))
        half = coloring.ternary_tree_closed_form(k, Fraction(1, 2))
        out.append(_check(f"k={k}: closed form = exact probability", closed == brute,
                          even=even, odd=odd, value=_frac(closed)))
        out.append(_check(f"k={k}: P(1/2 - 1/(2N), .) > P(1/2,1/2)", closed > half,
                          ratio=float(closed / half)))
    return out


def reproduce_figure1(max_states):
    g = graphs.figure1()
    half = mono.at_most_k_probability(g, coloring.two_color(Fraction(1, 2)), 30, max_states=max_states)
    skew = mono.at_most_k_probability(g, coloring.two_color(Fraction(2, 5)), 30, max_states=max_states)
    expected = Fraction(2, 5) ** 7 * Fraction(3, 5) ** 12 + Fraction(3, 5) ** 7 * Fraction(2, 5) ** 12
    return [
        _check("claw-free", graphs.is_claw_free(g)),
        _check("P(30,(1/2,1/2)) = 2^-18", half == Fraction(1, 2 ** 18), value=_frac(half)),
        _check("P(30,(2/5,3/5)) closed form", skew == expected, value=_frac(skew)),
        _check("P(30,(2/5,3/5)) > P(30,(1/2,1/2))", skew > half),
    ]


def reproduce_birthday():
    n = coloring.minimal_birthday_n(365)
    u = Distribution.uniform(365)
    p22, p23 = coloring.birthday_probability(22, u), coloring.birthday_probability(23, u)
    return [
        _check("minimal n = 23", n == 23, value=n),
        _check("P(23) < 1/2 < P(22)", p23 < Fraction(1, 2) < p22, p22=float(p22), p23=float(p23)),
    ]


def reproduce_shameful():
    n = chromatic.minimal_mcdiarmid_n(3)
    return [_check("K_{n,n} with q=3 violates the ratio for some n", n is not None, minimal_n=n)]


def reproduce_schur51():
    s = symfunc.schur_function((5, 1), 2)
    expected = symfunc.SymmetricPolynomial(2, {(5, 1): 1, (4, 2): 1, (3, 3): 1})
    found = symfunc.schur_concavity_counterexample(s, 10)
    detail = {}
    if found:
        v, w, fv, fw = found
        detail = {"v": [_frac(x) for x in v], "w": [_frac(x) for x in w], "s(v)": _frac(fv), "s(w)": _frac(fw)}
    return [
        _check("s_(5,1)(x,y) = m51 + m42 + m33", s == expected),
        _check("v majorizes w with s(v) > s(w)", found is not None, **detail),
    ]


def reproduce_epositive():
    f1 = symfunc.SymmetricPolynomial.from_monomials(2, {(2, 0): 1, (1, 1): 4, (0, 2): 1})
    f2 = symfunc.SymmetricPolynomial.from_monomials(2, {(2, 0): 1, (0, 2): 1})
    c1, c2 = symfunc.elementary_basis(f1), symfunc.elementary_basis(f2)
    return [
        _check("x1^2+4x1x2+x2^2 = e1^2 + 2e2", c1 == {(1, 1): 1, (2,): 2}),
        _check("... is e-positive", symfunc.is_e_positive(f1)),
        _check("x1^2+x2^2 = e1^2 - 2e2", c2 == {(1, 1): 1, (2,): -2}),
        _check("... is not e-positive", not symfunc.is_e_positive(f2)),
    ]


REPRODUCE = ("star", "tree", "figure1", "birthday", "shameful", "schur51", "epositive")


def cmd_reproduce(a):
    if a.example == "figure1":
        checks = reproduce_figure1(a.max_states)
    else:
        checks = globals()[f"reproduce_{a.example}"]()
    ok = all(c["ok"] for c in checks)
    return {"example": a.example}, {"checks": checks, "all_ok": ok}, ok


# -- sweep --------------------------------------------------------------------

def sweep_rows(target: str, resolution: int):
    if resolution < 2:
        raise UsageError("resolution must be at least 2")
    form = coloring.power_sum_form(graphs.star(4))
    if target == "star_curve":
        header = ["p1", "P"]
        rows = []
        for i in range(resolution):
            p1 = Fraction(i, resolution - 1)
            rows.append([p1, coloring.evaluate_power_sum(form, coloring.two_color(p1))])
        return header, rows
    header = ["p1", "p2", "P"]
    rows = []
    for i in range(resolution):
        for j in range(resolution - i):
            p1, p2 = Fraction(i, resolution - 1), Fraction(j, resolution - 1)
            rows.append([p1, p2, coloring.evaluate_power_sum(form, (p1, p2, 1 - p1 - p2))])
    return header, rows


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format(float(x), ".12g") for x in r])
    return buf.getvalue()


def cmd_sweep(a):
    header, rows = sweep_rows(a.target, a.resolution)
    text = write_csv(header, rows)
    best = max(rows, key=lambda r: r[-1])
    res = {"rows": len(rows), "argmax": [_frac(x) for x in best[:-1]], "max": _frac(best[-1])}
    if a.out:
        try:
            Path(a.out).write_text(text)
        except OSError as e:
            raise UsageError(f"cannot write {a.out}: {e.strerror}") from None
        res["out"] = a.out
    else:
        res["csv"] = text
    return {"target": a.target, "resolution": a.resolution}, res, True


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    common.add_argument("--json", action="store_true", help="emit the full JSON run report")
    common.add_argument("--out", help="write output to this path")

    parser = argparse.ArgumentParser(prog="chromprob", description="Exact proper-coloring probabilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("graph", cmd_graph, "structural summary").add_argument("graph")
    p = add("chromatic", cmd_chromatic, "chromatic polynomial")
    p.add_argument("graph")
    p.add_argument("q", type=int, nargs="?")
    p = add("prob", cmd_prob, "P_G(p)")
    p.add_argument("graph")
    p.add_argument("dist")
    p = add("kprob", cmd_kprob, "P_G(k, p)")
    p.add_argument("graph")
    p.add_argument("dist")
    p.add_argument("k", type=int)
    p = add("distribution", cmd_distribution, "pmf of the monochromatic edge count")
    p.add_argument("graph")
    p.add_argument("dist")
    p = add("optimize", cmd_optimize, "numerical maximizer of P_G on the simplex")
    p.add_argument("graph")
    p.add_argument("q", type=int)
    p.add_argument("--restarts", type=int, default=16)
    p = add("schur-scan", cmd_schur_scan, "seeded pinching test of Schur concavity")
    p.add_argument("graph")
    p.add_argument("q", type=int)
    p.add_argument("--samples", type=int, default=200)
    p = add("scan", cmd_scan, "grid test of P-uniformity")
    p.add_argument("graph")
    p.add_argument("q", type=int)
    p.add_argument("k", help="edge tolerance or 'all'")
    p.add_argument("--denominator", type=int, default=8)
    for name, func in (("csf", cmd_csf), ("epos", cmd_epos)):
        p = add(name, func, "chromatic symmetric function" if name == "csf" else "e-positivity verdict")
        p.add_argument("graph")
        p.add_argument("q", type=int)
    p = add("bounds", cmd_bounds, "cluster-expansion diagnostics")
    p.add_argument("graph")
    p.add_argument("--max-weight", type=int, default=6)
    add("reproduce", cmd_reproduce, "re-run a worked example").add_argument("example", choices=REPRODUCE)
    p = add("sweep", cmd_sweep, "CSV data for the star(4) curves")
    p.add_argument("target", choices=("star_curve", "contour4star"))
    p.add_argument("--resolution", type=int, default=101)
    return parser


def _scalar_text(results) -> str:
    lines = []
    for key, val in results.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    start = time.perf_counter()
    try:
        inputs, results, ok = args.func(args)
    except (UsageError, graphs.GraphError, ValueError, InstanceTooLarge) as e:
        print(f"chromprob {args.command}: error: {e}", file=sys.stderr)
        return 2
    elapsed = (time.perf_counter() - start) * 1000
    if args.json:
        report = {"command": args.command, "inputs": inputs, "results": results, "timing_ms": round(elapsed, 3)}
        text = json.dumps(report, indent=2)
        if args.out and args.command != "sweep":
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    elif args.command == "sweep" and not args.out:
        sys.stdout.write(results["csv"])
    elif args.command == "reproduce":
        for c in results["checks"]:
            print(("PASS " if c["ok"] else "FAIL ") + c["check"])
    else:
        text = _scalar_text(results)
        if args.out and args.command != "sweep":
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
