"""Batch command-line interface.

Every subcommand reads rationals as 'p/q' strings (inline flags or JSON
parameter files), emits a JSON report, and uses the exit code to state
its verdict: 0 for success / verdict-true / residual below tolerance,
1 for verdict-false or an exceeded tolerance, 2 for input errors.  The
environment variable OKUBO_PRECISION overrides the default float
comparison tolerance of 1e-10.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import accessory, dotsenko_fateev as df, hgsystem, sampling, series, \
    verify
from .errors import InputError, OkuboError
from .exact import matrix_from_json, to_fraction

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2


def _tolerance() -> float:
    raw = os.environ.get("OKUBO_PRECISION", "1e-10")
    try:
        return float(raw)
    except ValueError as exc:
        raise InputError(f"bad OKUBO_PRECISION value {raw!r}") from exc


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _emit(report: dict, out: str = None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _hg_params(args) -> hgsystem.HGParams:
    if not args.params:
        raise InputError("this command needs --params FILE")
    return hgsystem.HGParams.from_json(_load_json(args.params))


def _df_params(args) -> df.DFParams:
    if args.params:
        return df.DFParams.from_json(_load_json(args.params))
    if all(getattr(args, k) is not None for k in ("a", "b", "c", "g")):
        return df.DFParams(to_fraction(args.a), to_fraction(args.b),
                           to_fraction(args.c), to_fraction(args.g))
    raise InputError("need --params FILE or all of --a --b --c --g")


def _abcd(args) -> tuple:
    vals = (args.a, args.b, args.c, args.d)
    if any(v is None for v in vals):
        raise InputError("need all of --a --b --c --d")
    return tuple(to_fraction(v) for v in vals)


def _system_from_args(args) -> hgsystem.OkuboSystem:
    if args.chart:
        chart = accessory.AccessoryChart.from_json(_load_json(args.chart))
        return accessory.okubo_from_chart(chart)
    if args.params:
        _, system = hgsystem.build_okubo_system(_hg_params(args))
        return system
    if args.a is not None:
        _, system = accessory.solve_accessory(*_abcd(args), args.branch)
        return system
    raise InputError("need --chart, --params, or --a/--b/--c/--d")


# --------------------------------------------------------------------------
# subcommand handlers: each returns (report dict, exit code)
# --------------------------------------------------------------------------

def cmd_build_product(args):
    p = _hg_params(args)
    sys_ = hgsystem.build_product_system(p)
    return {"params": p.to_json(),
            "residue_at_0": sys_.residue_at_0.to_strings(),
            "residue_at_1": sys_.residue_at_1.to_strings(),
            "infinity_exponents": [str(e) for e in
                                   hgsystem.infinity_exponents(p)]}, EXIT_OK


def cmd_build_okubo(args):
    p = _hg_params(args)
    gauge, system = hgsystem.build_okubo_system(p)
    return {"params": p.to_json(),
            "gauge": gauge.to_strings(),
            "coeff": system.coeff.to_strings(),
            "exponents": {"a": str(system.a), "b": str(system.b),
                          "c": str(system.c), "d": str(system.d)}}, EXIT_OK


def cmd_recover_chart(args):
    if not args.matrix:
        raise InputError("recover-chart needs --matrix FILE")
    matrix = matrix_from_json(_load_json(args.matrix))
    a, b, c, d = _abcd(args)
    diag, chart = accessory.recover_chart(matrix, a, b, c, d)
    return {"diag": diag.to_strings(),
            "chart": chart.to_json()}, EXIT_OK


def cmd_solve_accessory(args):
    a, b, c, d = _abcd(args)
    scale = to_fraction(args.scale)
    chart, system = accessory.solve_accessory(a, b, c, d, args.branch, scale)
    return {"chart": chart.to_json(),
            "coeff": system.coeff.to_strings(),
            "branch": args.branch}, EXIT_OK


def cmd_check_same(args):
    if not args.chart:
        raise InputError("check-same needs --chart FILE")
    chart = accessory.AccessoryChart.from_json(_load_json(args.chart))
    verdict = accessory.substantially_same(chart, args.pair)
    report = verdict.to_json()
    return report, EXIT_OK if verdict.verdict else EXIT_FALSE


def cmd_verify_realize(args):
    p = _hg_params(args)
    report = accessory.realize_product_system(p)
    return report.to_json(), EXIT_OK if report.verdict else EXIT_FALSE


def cmd_series(args):
    system = _system_from_args(args)
    sols = series.local_series(system, args.base, args.index, args.terms,
                               args.mode)
    return {"base": args.base, "index": args.index, "mode": args.mode,
            "solutions": [s.to_json() for s in sols]}, EXIT_OK


def cmd_residual(args):
    system = _system_from_args(args)
    sols = series.local_series(system, args.base, args.index, args.terms,
                               args.mode)
    rng = sampling.rng_for(args.seed)
    tol = _tolerance()
    reports = []
    worst = 0.0
    for sol in sols:
        samples = [_disc_sample(rng, args.base) for _ in range(8)]
        rep = series.residual_report(system, sol, samples)
        worst = max(worst, rep.max_residual)
        reports.append(rep.to_json())
    return ({"base": args.base, "index": args.index,
             "tolerance": format(tol, ".17g"),
             "max_residual": format(worst, ".17g"),
             "reports": reports},
            EXIT_OK if worst <= tol else EXIT_FALSE)


def _disc_sample(rng, base: str) -> complex:
    if base == "0":
        return sampling.sample_disc(rng, 0.1, 0.55, 2.4)
    if base == "1":
        return 1 + sampling.sample_disc(rng, 0.1, 0.55, 2.4)
    return 1 + sampling.sample_disc(rng, 1.8, 3.0, 2.4)


def cmd_v_vector(args):
    p = _hg_params(args)
    x = args.x
    direct = series.contiguous_product_vector(p, x, args.terms)
    via = series.v_via_transform(p, x, args.terms)
    scale = max(1.0, float(np.max(np.abs(via))))
    gap = float(np.max(np.abs(direct - via))) / scale
    tol = _tolerance()
    cf = lambda z: [format(z.real, ".17g"), format(z.imag, ".17g")]
    return ({"x": format(x, ".17g"),
             "direct": [cf(z) for z in direct],
             "via_transform": [cf(z) for z in via],
             "relative_gap": format(gap, ".17g"),
             "tolerance": format(tol, ".17g")},
            EXIT_OK if gap <= tol else EXIT_FALSE)


def cmd_df_build(args):
    params = _df_params(args)
    c0, c1 = df.df_residues(params)
    shifts = df.shifted_eigenvalues(params)
    return {"params": params.to_json(),
            "c0": c0.to_strings(), "c1": c1.to_strings(),
            "shifted_eigenvalues": {k: [str(x) for x in v]
                                    for k, v in shifts.items()}}, EXIT_OK


def cmd_df_reduce(args):
    if args.params:
        data = _load_json(args.params)
        if "alpha1" in data:
            hg = hgsystem.HGParams.from_json(data)
        else:
            hg = df.DFParams.from_json(data).induced_hg()
    else:
        hg = _df_params(args).induced_hg()
    k0, k1 = df.euler_reduce(hg)
    return {"params": hg.to_json(),
            "k0": k0.to_strings(), "k1": k1.to_strings()}, EXIT_OK


def cmd_df_verify(args):
    params = _df_params(args)
    report = df.check_df_transformation(params)
    return report.to_json(), EXIT_OK if report.verdict else EXIT_FALSE


def cmd_df_solve(args):
    params = _df_params(args)
    x, nodes = args.x, args.nodes
    if args.params:
        # the parameter file may carry the evaluation point and node count
        data = _load_json(args.params)
        if x is None and "x" in data:
            x = float(data["x"])
        if "nodes" in data and nodes == 128:
            nodes = int(data["nodes"])
    if x is None:
        raise InputError("df-solve needs --x in (0, 1)")
    spec = df.EulerTransformSpec(mu=params.g / 2, nodes=nodes)
    report = df.df_integral_solution(params, x, spec)
    out = report.to_json()
    out["params"] = params.to_json()
    out["x"] = format(x, ".17g")
    tol = max(_tolerance(), 1e-6)
    out["tolerance"] = format(tol, ".17g")
    return out, EXIT_OK if report.residual <= tol else EXIT_FALSE


def cmd_verify_all(args):
    report, times = verify.verify_all(args.seed)
    for crit in report["criteria"]:
        status = "PASS" if crit["passed"] else "FAIL"
        print(f"{status} {crit['name']:32s} {times[crit['name']]:8.2f}s  "
              f"{crit['detail']}")
    print(f"{'PASS' if report['all_passed'] else 'FAIL'} overall "
          f"({times['total']:.1f}s, seed {report['seed']})")
    if args.out:
        _emit(report, args.out)
    return None, EXIT_OK if report["all_passed"] else EXIT_FALSE


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="okubo",
        description="Okubo normal form systems for hypergeometric products: "
                    "exact identity checks and series numerics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--out", help="write the JSON report to this file")
        p.add_argument("--params", help="JSON parameter file")
        p.add_argument("--chart", help="JSON chart file")
        p.add_argument("--matrix", help="JSON matrix file")
        p.add_argument("--a")
        p.add_argument("--b")
        p.add_argument("--c")
        p.add_argument("--d")
        p.add_argument("--g")
        p.add_argument("--scale", default="1")
        p.add_argument("--branch", default="auto",
                       choices=["via-r4", "via-r3", "auto"])
        p.add_argument("--pair", default="1-inf",
                       choices=["1-inf", "0-inf"])
        p.add_argument("--base", default="1", choices=["0", "1", "inf"])
        p.add_argument("--index", type=int, default=0)
        p.add_argument("--terms", type=int, default=80)
        p.add_argument("--mode", default="float", choices=["exact", "float"])
        p.add_argument("--x", type=float)
        p.add_argument("--nodes", type=int, default=128)
        p.add_argument("--seed", type=int, default=0)
        return p

    add("build-product", cmd_build_product,
        help="residue matrices of the product system")
    add("build-okubo", cmd_build_okubo,
        help="gauge the product system into Okubo form")
    add("recover-chart", cmd_recover_chart,
        help="normalize a coefficient matrix into chart form")
    add("solve-accessory", cmd_solve_accessory,
        help="solve the obstructions for the special accessory values")
    add("check-same", cmd_check_same,
        help="decide whether the reduced difference systems match")
    add("verify-realize", cmd_verify_realize,
        help="check the diagonal conjugation onto the product system")
    add("series", cmd_series, help="build a local series solution")
    add("residual", cmd_residual,
        help="residual of a local series inside its disc")
    add("v-vector", cmd_v_vector,
        help="contiguous product vector, both computation paths")
    add("df-build", cmd_df_build, help="size-three residue matrices")
    add("df-reduce", cmd_df_reduce,
        help="Euler-shift reduction to size three")
    add("df-verify", cmd_df_verify,
        help="verify the size-three conjugation identities")
    add("df-solve", cmd_df_solve,
        help="integral solution of the size-three system")
    add("verify-all", cmd_verify_all,
        help="run the full exact and numeric verification suites")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args)
    except OkuboError as exc:
        _emit(exc.as_json(), getattr(args, "out", None))
        return EXIT_INPUT
    if report is not None:
        _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
