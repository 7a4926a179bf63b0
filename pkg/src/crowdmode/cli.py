"""Command-line entry point: ``crowdmode <subcommand> [flags]``.

Exit codes: 0 ok, 2 usage error, 3 domain error, 4 internal invariant failure.
Data goes to stdout (or --out); diagnostics and progress go to stderr.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import estimator, exact_core, general_case, poly_lab, q_analysis, simulator
from .decimals import fixed
from .errors import DomainError, InvariantError
from .polynomial import parse_rational
from .serialize import FORMATS, render

def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _scenario(a) -> exact_core.Scenario:
    return exact_core.Scenario(a.s1, a.s2, a.s1 if a.s3 is None else a.s3)


# each handler returns (rows, obj); see serialize.render

def cmd_eval(a):
    sc = _scenario(a)
    w = exact_core.f_value(sc, a.n)
    total = exact_core.total_weight(sc)
    obj = {"s1": sc.s1, "s2": sc.s2, "s3": sc.s3, "N": a.n, "weight": str(w),
           "total": str(total), "probability": _frac(Fraction(w, total))}
    return [obj], obj


def cmd_dist(a):
    table = exact_core.distribution(_scenario(a))
    return table.to_rows(), table.to_json()


def cmd_argmax(a):
    obj = exact_core.argmax_scan(_scenario(a)).to_json()
    return [obj], obj


def cmd_g(a):
    est = estimator.g_exact(a.s1, a.s2)
    obj = est.to_json()
    obj["bracket_expression"] = estimator.bracket_expression(a.s1, a.s2, 2)
    return [obj], obj


def cmd_g_table(a):
    rows = estimator.g_table(a.s1, a.s2_min, a.s2_max)
    return rows, None


def cmd_delta_cases(a):
    cases = estimator.delta_cases(a.s1, a.s2_max, a.s2_min)
    rows = [{"s2": s2, "bracket_expression": estimator.bracket_expression(a.s1, s2, 2),
             "g": estimator.g_exact(a.s1, s2).g} for s2 in cases]
    return rows, cases


def cmd_poly(a):
    if a.reduced:
        p, r = poly_lab.reduced_pair(a.d)
        obj = {"d": a.d, "P_reduced": p.to_strings(), "R_reduced": r.to_strings()}
    else:
        res = poly_lab.q_and_r(a.d)
        obj = {"d": a.d, "P": poly_lab.p_poly(a.d).to_strings(),
               "quotient": res.quotient.to_strings(), "R": res.remainder.to_strings()}
    rows = [{"name": k, "coefficients": v} for k, v in obj.items() if k != "d"]
    return rows, obj


def cmd_ratio(a):
    x = parse_rational(a.x)
    r = poly_lab.ratio_at(a.d, x)
    obj = {"d": a.d, "x": _frac(x), "ratio": _frac(r), "in_band": Fraction(-1, 2) < r < 0}
    return [obj], obj


def _grid(a):
    lo, hi = parse_rational(a.x_min), parse_rational(a.x_max)
    if a.steps < 1 or hi < lo:
        raise DomainError("need x-max >= x-min and steps >= 1")
    return [lo + (hi - lo) * k / a.steps for k in range(a.steps + 1)]


def cmd_q_eval(a):
    if a.x is not None:
        x = parse_rational(a.x)
        v = q_analysis.q_eval(a.d, x)
        obj = {"d": a.d, "x": _frac(x), "Q": _frac(v)}
        return [obj], obj
    pts = q_analysis.q_samples(a.d, _grid(a))
    rows = [{"x": _frac(x), "Q": _frac(v) if a.exact else fixed(v, a.digits)} for x, v in pts]
    return rows, None


def cmd_q_extrema(a):
    rep = q_analysis.critical_points(a.d, a.digits)
    for note in rep.notes:
        _progress(note)
    return [rep.row()], rep.to_json()


def cmd_q_table(a):
    ds = list(range(a.d_min, a.d_max + 1, a.step))
    reports = []
    if a.workers > 1:
        reports = q_analysis.critical_table(ds, a.digits, a.workers)
    else:
        for d in ds:
            _progress(f"q-table: d={d}")
            reports.append(q_analysis.critical_points(d, a.digits))
    return [r.row() for r in reports], None


def cmd_conj2(a):
    rows = []
    for d in range(a.d_min, a.d_max + 1):
        ev = q_analysis.conj2_evidence(d, a.digits)
        rows.append({"d": d, "Q_at_threshold": ev.value})
    return rows, None


def cmd_fit_c(a):
    ds = list(range(a.d_min, a.d_max + 1, a.step))
    _progress(f"fit-c: computing x_min for d in {ds} at {a.digits} digits")
    fit = q_analysis.fit_coefficients(ds, a.k, a.digits, a.workers)
    rows = [{"i": i, "c": c} for i, c in enumerate(fit.c)]
    return rows, fit.to_json()


def cmd_general(a):
    if a.s3 is None:
        raise DomainError("general needs --s3")
    obj = general_case.general_report(a.s1, a.s2, a.s3, a.digits).to_json()
    return [obj], obj


def cmd_d8(a):
    pairs = [(a.s1, a.s3)] if a.s1 is not None else [(4, 12), (12, 20)]
    rows = []
    for s1, s3 in pairs:
        if s3 is None:
            raise DomainError("d8 needs --s3 together with --s1")
        rows += [r.to_dict() for r in general_case.d8_table(s1, s3, range(a.s2_min, a.s2_max + 1), a.digits)]
    return rows, None


def cmd_simulate(a):
    cfg = simulator.SampleConfig(_scenario(a), a.trials, a.seed)
    res = simulator.sample_distribution(cfg, a.workers)
    rows = [{"N": n, "count": c} for n, c in res.counts.items()]
    return rows, res.to_json()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crowdmode", description="Exact most-likely union sizes for three overlapping sets.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, digits=10):
        # no shared parent parser: argparse would share the --digits action
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=FORMATS, default="json")
        sp.add_argument("--out", help="write data here instead of stdout")
        sp.add_argument("--digits", type=int, default=digits)
        sp.set_defaults(func=func)
        return sp

    def sizes(sp, s2=True):
        sp.add_argument("--s1", type=int, required=True)
        if s2:
            sp.add_argument("--s2", type=int, required=True)
        sp.add_argument("--s3", type=int, help="defaults to s1")

    sp = add("eval", cmd_eval, "weight f(N) of one overlap value")
    sizes(sp)
    sp.add_argument("--n", type=int, required=True)
    sizes(add("dist", cmd_dist, "full exact distribution of N"))
    sizes(add("argmax", cmd_argmax, "exact maximizing N and union mode"))

    sp = add("g", cmd_g, "closed-form g(s1, s2) with its exact correction")
    sp.add_argument("--s1", type=int, required=True)
    sp.add_argument("--s2", type=int, required=True)

    sp = add("g-table", cmd_g_table, "compressed table of g(s1, s2) over a range of s2")
    sp.add_argument("--s1", type=int, default=15)
    sp.add_argument("--s2-min", type=int, default=1)
    sp.add_argument("--s2-max", type=int, default=600)

    sp = add("delta-cases", cmd_delta_cases, "s2 values where the correction is 1")
    sp.add_argument("--s1", type=int, default=15)
    sp.add_argument("--s2-min", type=int, default=1)
    sp.add_argument("--s2-max", type=int, default=600)

    sp = add("poly", cmd_poly, "P_d, the quotient and R_d (or the reduced pair)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--reduced", action="store_true")

    sp = add("ratio", cmd_ratio, "exact R_d(x)/P_d(x)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--x", required=True, help="integer or p/q")

    sp = add("q-eval", cmd_q_eval, "Q_d at a point, or sampled on a grid")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--x", help="single point (integer or p/q)")
    sp.add_argument("--x-min", default="0")
    sp.add_argument("--x-max", default="100")
    sp.add_argument("--steps", type=int, default=200)
    sp.add_argument("--exact", action="store_true", help="print Q as exact rationals")

    sp = add("q-extrema", cmd_q_extrema, "certified extrema of Q_d on (0, inf)")
    sp.add_argument("--d", type=int, required=True)

    sp = add("q-table", cmd_q_table, "extrema table over a range of d")
    sp.add_argument("--d-min", type=int, default=5)
    sp.add_argument("--d-max", type=int, default=61)
    sp.add_argument("--step", type=int, default=2)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("conj2", cmd_conj2, "Q_d at (d + sqrt(d+2))/2")
    sp.add_argument("--d-min", type=int, default=5)
    sp.add_argument("--d-max", type=int, default=31)

    sp = add("fit-c", cmd_fit_c, "fit the series coefficients of x_min(d)", digits=80)
    sp.add_argument("--d-min", type=int, default=51)
    sp.add_argument("--d-max", type=int, default=151)
    sp.add_argument("--step", type=int, default=10)
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--workers", type=int, default=1)

    sizes(add("general", cmd_general, "exact argmax and closed-form estimate for s1 != s3", digits=8))

    sp = add("d8", cmd_d8, "actual vs closed-form N (defaults reproduce both published blocks)", digits=8)
    sp.add_argument("--s1", type=int)
    sp.add_argument("--s3", type=int)
    sp.add_argument("--s2-min", type=int, default=4)
    sp.add_argument("--s2-max", type=int, default=20)

    sp = add("simulate", cmd_simulate, "seeded Monte Carlo check of the distribution")
    sizes(sp)
    sp.add_argument("--trials", type=int, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 1:
        parser.error("--digits must be positive")
    try:
        rows, obj = args.func(args)
        text = render(rows, obj, args.format)
    except DomainError as exc:
        print(f"crowdmode: domain error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"crowdmode: invariant failure: {exc}", file=sys.stderr)
        return 4
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
