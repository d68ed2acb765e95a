"""Command-line front end: deterministic JSON/CSV emission for solves,
sweeps, trace constants, comparisons, rate fits, concentration reports, and
the closed-form self-test.

Exit codes: 0 success, 2 validation error, 3 solver non-convergence,
4 failed self-test assertion.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import closedform, experiments, oracles
from .geometry import HalfLine, Sector, domain_from_json
from .quotient import SolverConfig, solve_domain
from .trace import (
    BracketError,
    FitError,
    extension_lower_bound,
    trace_constant,
    trace_expansion_slope,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NONCONVERGED = 3
EXIT_SELFTEST = 4

_CONFIG_KEYS = {f.name for f in dataclasses.fields(SolverConfig)}


def _round12(obj):
    """Round all floats to 12 significant digits for stable, diff-able output."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def emit_json(obj, path: str | None) -> None:
    text = json.dumps(_round12(obj), indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_csv(header: list[str], rows, path: str | None) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_domain(text: str):
    text = text.strip()
    if not text.startswith("{"):
        # bare kind shorthand for parameter-free domains
        if text == "halfline":
            return HalfLine()
        raise ValueError(f"domain must be JSON or 'halfline', got {text!r}")
    return domain_from_json(json.loads(text))


def _parse_floats(text: str) -> list[float]:
    vals = [float(x) for x in text.split(",") if x.strip()]
    if not vals:
        raise ValueError("empty list")
    return vals


def _solver_config(args) -> SolverConfig:
    overrides = {}
    if getattr(args, "n_nodes", None) is not None:
        overrides["n_nodes"] = args.n_nodes
    if getattr(args, "max_iter", None) is not None:
        overrides["max_iter"] = args.max_iter
    return SolverConfig(**overrides)


def _load_config_file(path: str, parser_defaults: dict) -> dict:
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError("config file must hold a JSON object")
    unknown = set(obj) - set(parser_defaults)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return obj


def _closed_form_lambda(domain, p: float, alpha: float) -> float | None:
    if isinstance(domain, HalfLine):
        return closedform.half_line_eigenvalue(p, alpha)
    if isinstance(domain, Sector):
        return closedform.sector_eigenvalue(domain.theta, p, alpha)
    return None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_solve(args) -> int:
    domain = _parse_domain(args.domain)
    closed = _closed_form_lambda(domain, args.p, args.alpha)
    if closed is not None:
        emit_json({"eigenvalue": closed, "residual": 0.0, "iterations": 0,
                   "converged": True, "closed_form": True}, args.output)
        return EXIT_OK
    sol = solve_domain(domain, args.p, args.alpha, _solver_config(args), far=args.far)
    emit_json(sol.to_json_dict(), args.output)
    if args.profile_csv:
        emit_csv(["t", "u"], sol.profile_rows(), args.profile_csv)
    return EXIT_OK if sol.converged else EXIT_NONCONVERGED


def _cmd_sweep(args) -> int:
    domain = _parse_domain(args.domain)
    alphas = _parse_floats(args.alphas)
    closed = _closed_form_lambda(domain, args.p, alphas[0])
    if closed is not None:
        rows = [
            (a, _closed_form_lambda(domain, args.p, a), 0.0, True) for a in alphas
        ]
        emit_csv(["alpha", "lambda", "residual", "converged"], rows, args.output)
        return EXIT_OK
    sweep = experiments.alpha_sweep(
        domain, args.p, alphas, _solver_config(args), warm_start=args.jobs == 1
    )
    emit_csv(["alpha", "lambda", "residual", "converged"], sweep.rows(), args.output)
    return EXIT_OK if sweep.all_converged else EXIT_NONCONVERGED


def _cmd_trace(args) -> int:
    domain = _parse_domain(args.domain)
    res = trace_constant(domain, args.p, args.tol, _solver_config(args))
    emit_json(res.to_json_dict(), args.output)
    return EXIT_OK


def _cmd_trace_slope(args) -> int:
    domain = _parse_domain(args.domain)
    mus = _parse_floats(args.mus)
    fit = trace_expansion_slope(domain, args.p, mus, args.tol, _solver_config(args))
    emit_csv(["mu", "S"], fit.rows(), args.output)
    emit_json(
        {
            "s_inf": fit.s_inf,
            "slope": fit.slope,
            "reference_s_inf": fit.reference_s_inf,
            "reference_slope": fit.reference_slope,
        },
        args.fit_output,
    )
    return EXIT_OK


def _cmd_compare(args) -> int:
    cmp = experiments.isoperimetric_compare(
        args.rho, args.r, args.p, args.alpha, args.nu, _solver_config(args)
    )
    emit_json(cmp.to_json_dict(), args.output)
    return EXIT_OK


def _cmd_rates(args) -> int:
    domain = _parse_domain(args.domain)
    alphas = _parse_floats(args.alphas)
    sweep = experiments.alpha_sweep(domain, args.p, alphas, _solver_config(args))
    if not sweep.all_converged:
        print("sweep contains non-converged rows", file=sys.stderr)
        return EXIT_NONCONVERGED
    from .geometry import curvature_data

    cd = curvature_data(domain)
    fit = experiments.fit_remainder_rate(sweep, cd.h_max, cd.nu)
    emit_json(fit.to_json_dict(), args.output)
    return EXIT_OK


def _cmd_concentration(args) -> int:
    domain = _parse_domain(args.domain)
    sol = solve_domain(domain, args.p, args.alpha, _solver_config(args))
    if not sol.converged:
        print("solver did not converge", file=sys.stderr)
        return EXIT_NONCONVERGED
    report = experiments.concentration_report(sol, domain, args.p, args.alpha)
    emit_json(report.to_json_dict(), args.output)
    return EXIT_OK


def selftest_checks(seed: int = 0, samples: int = 100_000):
    """Closed-form oracle suite plus the elementary-inequality property test.

    Yields (name, passed, detail) triples.
    """
    cf = closedform
    cases = [
        ("halfline p=2 a=1", cf.half_line_eigenvalue(2, 1), -1.0, 1e-12),
        ("halfline p=3 a=4", cf.half_line_eigenvalue(3, 4), -16.0, 1e-9),
        ("halfline a=0", cf.half_line_eigenvalue(1.7, 0.0), 0.0, 0.0),
        ("minimizer t=0", float(cf.half_line_minimizer(2, 1, 0.0)), 1.0, 1e-12),
        ("minimizer p=2 a=2 t=1", float(cf.half_line_minimizer(2, 2, 1.0)),
         math.exp(-2.0), 1e-12),
        ("minimizer p=3 a=4 t=.5", float(cf.half_line_minimizer(3, 4, 0.5)),
         math.exp(-1.0), 1e-12),
        ("sector pi/4 p=2 a=1", cf.sector_eigenvalue(math.pi / 4, 2, 1), -2.0, 1e-12),
        ("sector 2pi/3 p=2 a=1", cf.sector_eigenvalue(2 * math.pi / 3, 2, 1), -1.0, 1e-12),
        ("aux constant p=2", cf.aux_inequality_constant(2.0), 2.0, 1e-12),
        ("aux constant p=1.5", cf.aux_inequality_constant(1.5), (0.75) ** -0.5, 1e-12),
        ("asymptote ball", cf.leading_asymptote(2, 10, 1.0, 2), -110.0, 1e-9),
        ("halfspace S p=2", cf.halfspace_trace_constant(2.0), 1.0, 1e-12),
        ("halfspace S p=3", cf.halfspace_trace_constant(3.0), 2.0 ** (-2.0 / 3.0), 1e-12),
        ("extension equal S p=2", extension_lower_bound(1.0, 1.0, 2.0),
         math.sqrt(2.0), 1e-12),
        ("bessel ball a=10", oracles.ball_eigenvalue_p2(1.0, 2, 10.0),
         -110.52808919302394, 1e-9),
    ]
    for name, got, want, tol in cases:
        ok = abs(got - want) <= tol + 1e-15 * abs(want)
        yield name, ok, f"got {got!r}, want {want!r}"

    # sector ordering: sharp sectors sit strictly below the half-plane value
    thetas = np.linspace(0.05, math.pi / 2 - 0.01, 25)
    ok = all(
        cf.sector_eigenvalue(th, p, 1.3) <= cf.half_line_eigenvalue(p, 1.3) + 1e-15
        for th in thetas
        for p in (1.5, 2.0, 3.0)
    )
    yield "sector below half-plane", ok, "ordering over theta grid"

    # (a+b)^p <= (1+eps) a^p + c(p) eps^(1-p) b^p on random samples
    rng = np.random.default_rng(seed)
    for p in (1.2, 1.5, 2.0, 3.0, 5.0):
        a = 10.0 ** rng.uniform(-3, 3, samples)
        b = 10.0 ** rng.uniform(-3, 3, samples)
        eps = rng.uniform(0.0, 1.0, samples)
        eps = np.clip(eps, 1e-12, 1.0 - 1e-12)
        c = cf.aux_inequality_constant(p)
        lhs = (a + b) ** p
        rhs = (1.0 + eps) * a**p + c * eps ** (1.0 - p) * b**p
        violations = int(np.sum(lhs > rhs * (1 + 1e-13)))
        yield (
            f"power inequality p={p}",
            violations == 0,
            f"{violations} violations in {samples} samples",
        )


def _cmd_selftest(args) -> int:
    failed = 0
    for name, ok, detail in selftest_checks(seed=args.seed):
        status = "ok" if ok else "FAIL"
        print(f"[{status}] {name}" + ("" if ok else f": {detail}"))
        if not ok:
            failed += 1
    if failed:
        print(f"{failed} selftest check(s) failed", file=sys.stderr)
        return EXIT_SELFTEST
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_solver_args(sp) -> None:
    sp.add_argument("--n-nodes", type=int, default=None, help="grid size override")
    sp.add_argument("--max-iter", type=int, default=None, help="iteration cap override")
    sp.add_argument("--jobs", type=int, default=1,
                    help="parallelism degree (default 1 keeps warm-started sweeps deterministic)")
    sp.add_argument("--output", default=None, help="output path (default stdout)")


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    ap = argparse.ArgumentParser(
        prog="robinlab",
        description="Robin p-Laplacian eigenvalue laboratory",
    )
    ap.add_argument("--config", default=None,
                    help="JSON file with defaults for the subcommand's flags")
    sub = ap.add_subparsers(dest="command", required=True)
    registry = {}

    sp = sub.add_parser("solve", help="single principal eigenvalue")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--far", choices=("neumann", "dirichlet"), default="neumann")
    sp.add_argument("--profile-csv", default=None, help="write (t,u) profile CSV here")
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("sweep", help="eigenvalues over an alpha list")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--alphas", required=True, help="comma-separated, increasing")
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("trace", help="trace constant via bisection")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-8)
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_trace)

    sp = sub.add_parser("trace-slope", help="expanding-domain trace expansion")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--mus", required=True, help="comma-separated scale factors")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--fit-output", default=None, help="fit JSON path (default stdout)")
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_trace_slope)

    sp = sub.add_parser("compare", help="equal-volume ball vs shell")
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--nu", type=int, default=2)
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_compare)

    sp = sub.add_parser("rates", help="remainder rate fit over a sweep")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--alphas", required=True)
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_rates)

    sp = sub.add_parser("concentration", help="boundary-layer diagnostics")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    _add_solver_args(sp)
    sp.set_defaults(func=_cmd_concentration)

    sp = sub.add_parser("selftest", help="closed-form oracle and inequality suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_selftest)

    for name, action in sub.choices.items():
        registry[name] = action
    return ap, registry


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    ap, registry = build_parser()
    try:
        # apply --config values as subcommand defaults before the real parse,
        # so explicit command-line flags keep the last word
        if "--config" in argv:
            i = argv.index("--config")
            if i + 1 >= len(argv):
                print("error: --config needs a path", file=sys.stderr)
                return EXIT_VALIDATION
            config_path = argv[i + 1]
            del argv[i : i + 2]
            command = next((tok for tok in argv if not tok.startswith("-")), None)
            if command not in registry:
                print(f"error: unknown or missing subcommand {command!r}", file=sys.stderr)
                return EXIT_VALIDATION
            sp = registry[command]
            valid = {a.dest for a in sp._actions}
            overrides = _load_config_file(config_path, {k: None for k in valid})
            sp.set_defaults(**overrides)
            for action in sp._actions:
                if action.dest in overrides:
                    action.required = False
        try:
            args = ap.parse_args(argv)
        except SystemExit as exc:
            return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (BracketError, FitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED


if __name__ == "__main__":
    sys.exit(main())
