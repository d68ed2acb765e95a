"""Acceptance suite: one test per acceptance criterion, each printing a
pass/fail line. Run with ``pytest -v tests/test_acceptance.py`` (add ``-s``
to see the summary lines of passing criteria too)."""

import math
import time

import numpy as np
import pytest

from robinlab.closedform import half_line_eigenvalue, halfspace_trace_constant
from robinlab.experiments import alpha_sweep, concentration_report, fit_remainder_rate, isoperimetric_compare
from robinlab.geometry import Ball, HalfLine, ModelLayer, Shell
from robinlab.oracles import ball_eigenvalue_p2, shell_eigenvalue_p2
from robinlab.quotient import (
    SolverConfig,
    halfline_eigenvalue,
    model_layer_eigenvalue,
    radial_eigenvalue,
    solve_domain,
)
from robinlab.trace import trace_constant, trace_expansion_slope

# every converged solve the suite performs lands here; criterion 8 audits it
RECORDED_SOLVES: list[tuple[str, float, float, float]] = []


def _record(label: str, p: float, alpha: float, sol) -> None:
    assert sol.converged, f"{label}: solver did not converge"
    RECORDED_SOLVES.append((label, p, alpha, sol.eigenvalue))


def _report(num: int, message: str) -> None:
    print(f"[PASS] criterion {num:02d}: {message}")


@pytest.fixture(scope="module", autouse=True)
def _warm_kernels():
    # trigger one tiny solve so JIT compilation does not bill any criterion
    halfline_eigenvalue(2.0, 1.0, SolverConfig(n_nodes=64))


def _grid_rule(p: float):
    """Node counts along the dyadic sweeps of criteria 3-4.

    The two-term remainder decays with alpha for p < 2, so resolving it
    needs grids that refine with alpha; growth exponents are calibrated so
    the discretization error stays a decreasing fraction of alpha.
    """
    if p < 2.0:
        return lambda a: 2000 * (a / 20.0) ** 1.5
    if p == 2.0:
        return lambda a: 2000 * (a / 20.0) ** 0.5
    return lambda a: 2000


def test_criterion_01_halfline_oracle():
    t0 = time.perf_counter()
    cfg = SolverConfig(n_nodes=4000)
    worst = 0.0
    for p in (1.5, 2.0, 3.0):
        for alpha in (1.0, 4.0, 16.0):
            sol = halfline_eigenvalue(p, alpha, cfg)
            _record("halfline", p, alpha, sol)
            exact = half_line_eigenvalue(p, alpha)
            rel = abs(sol.eigenvalue - exact) / abs(exact)
            worst = max(worst, rel)
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-3, f"worst half-line relative error {worst:.3e}"
    assert elapsed < 5.0, f"half-line oracle batch took {elapsed:.2f}s"
    _report(1, f"half-line oracle worst rel err {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_radial_oracle_p2():
    cfg = SolverConfig(n_nodes=3000)
    worst = 0.0
    for alpha in (1.0, 10.0, 100.0):
        sol = radial_eigenvalue(Ball(1.0, 2), 2.0, alpha, cfg)
        _record("ball", 2.0, alpha, sol)
        oracle = ball_eigenvalue_p2(1.0, 2, alpha)
        worst = max(worst, abs(sol.eigenvalue - oracle) / abs(oracle))
    for alpha in (1.0, 10.0, 100.0):
        sol = radial_eigenvalue(Shell(0.75, 1.25, 2), 2.0, alpha, cfg)
        _record("shell", 2.0, alpha, sol)
        oracle = shell_eigenvalue_p2(0.75, 1.25, 2, alpha)
        worst = max(worst, abs(sol.eigenvalue - oracle) / abs(oracle))
    assert worst <= 1e-4, f"worst radial-vs-shooting relative error {worst:.3e}"
    _report(2, f"p=2 radial oracle worst rel err {worst:.2e}")


DYADIC = (20.0, 40.0, 80.0, 160.0, 320.0)


def test_criterion_03_main_asymptotics():
    for p in (1.5, 2.0, 3.0):
        sweep = alpha_sweep(Ball(1.0, 2), p, DYADIC, SolverConfig(),
                            grid_rule=_grid_rule(p))
        ratios = []
        for a, lam, _, conv in sweep.rows():
            assert conv
            RECORDED_SOLVES.append((f"ball-sweep p={p}", p, a, lam))
            q = p / (p - 1.0)
            ratios.append(abs(lam + (p - 1.0) * a**q + a) / a)
        assert all(b < a for a, b in zip(ratios, ratios[1:])), (
            f"p={p}: normalized remainder not strictly decreasing: {ratios}"
        )
        assert ratios[-1] <= 0.1, f"p={p}: endpoint remainder ratio {ratios[-1]:.3g}"
    _report(3, "normalized remainder strictly decreasing, endpoint <= 0.1, p in {1.5,2,3}")


# fitted once from this solver's dyadic sweep (max observed 0.078, 2x headroom)
MODEL_REMAINDER_C = 0.15


def test_criterion_04_model_problem_expansion():
    t0 = time.perf_counter()
    p, kappas, delta = 2.0, (1.0, 1.0), 0.25
    rows = []
    for a in DYADIC:
        n = int(_grid_rule(p)(a))
        sol = model_layer_eigenvalue(p, a, kappas, delta, SolverConfig(n_nodes=n))
        _record("modellayer", p, a, sol)
        rows.append((a, abs(sol.eigenvalue + a * a + 2.0 * a)))
    for a, rem in rows:
        bound = MODEL_REMAINDER_C * math.sqrt(a) * math.log(a)
        assert rem <= bound, f"remainder {rem:.4g} above C sqrt(a) log(a) = {bound:.4g} at a={a}"
    x = np.log([a for a, _ in rows])
    y = np.log([r for _, r in rows])
    slope = float(np.polyfit(x, y, 1)[0])
    elapsed = time.perf_counter() - t0
    assert slope < 1.0, f"model remainder log-log slope {slope:.3f}"
    assert elapsed < 60.0, f"model problem sweep took {elapsed:.2f}s"
    _report(4, f"model remainder below C*sqrt(a)*log(a) with C={MODEL_REMAINDER_C}, "
               f"slope {slope:.3f} < 1, {elapsed:.1f}s")


def test_criterion_05_remainder_rate_reference_band():
    """Appendix-C reference band for the fitted p=2 remainder exponent.

    The remainder of the disc tends to the constant 1/2 (its curvature is
    constant, so the rate term of the general bound never activates); the
    fitted slope is therefore near 0 and the stated band [0.3, 0.7] around
    the reference exponent 1/2 cannot be met by an accurate solver. The o(alpha)
    theorem itself (slope < 1) is asserted in the sibling test below. See the
    decisions ledger for the full analysis.
    """
    alphas = [10.0 * 2**k for k in range(8)]  # 10 .. 1280, two decades
    sweep = alpha_sweep(Ball(1.0, 2), 2.0, alphas, SolverConfig(),
                        grid_rule=lambda a: 2000 * max(1.0, a / 20.0) ** 0.5)
    fit = fit_remainder_rate(sweep, h_max=1.0, nu=2)
    print(f"criterion 05: fitted slope {fit.slope:.4f}, reference exponent "
          f"{fit.reference_exponent}, remainders {[f'{r:.4g}' for r in fit.remainders]}")
    assert 0.3 <= fit.slope <= 0.7, (
        f"fitted remainder slope {fit.slope:.4f} outside [0.3, 0.7]: the disc's "
        "remainder approaches the constant 1/2, so its log-log slope is ~0; "
        "the band presumes a domain whose mean curvature peaks at a point"
    )
    _report(5, f"fitted slope {fit.slope:.3f} in [0.3, 0.7]")


def test_criterion_05_remainder_is_little_o_of_alpha():
    alphas = [10.0 * 2**k for k in range(8)]
    sweep = alpha_sweep(Ball(1.0, 2), 2.0, alphas, SolverConfig(),
                        grid_rule=lambda a: 2000 * max(1.0, a / 20.0) ** 0.5)
    fit = fit_remainder_rate(sweep, h_max=1.0, nu=2)
    assert fit.slope < 1.0
    _report(5, f"o(alpha) theorem: fitted slope {fit.slope:.3f} < 1 "
               f"(reference exponent {fit.reference_exponent})")


def test_criterion_06_isoperimetric_comparison():
    for p in (1.5, 2.0, 3.0):
        cmp = isoperimetric_compare(1.0, 0.75, p, 100.0, 2, SolverConfig(n_nodes=3000))
        RECORDED_SOLVES.append(("iso-ball", p, 100.0, cmp.lambda_ball))
        RECORDED_SOLVES.append(("iso-shell", p, 100.0, cmp.lambda_shell))
        assert cmp.shell.R == pytest.approx(1.25)
        assert cmp.lambda_ball < cmp.lambda_shell, f"p={p}: ordering violated"
        assert cmp.predicted_gap == pytest.approx(20.0)
        assert 0.5 * 20.0 <= cmp.gap <= 2.0 * 20.0, f"p={p}: gap {cmp.gap:.3f} not within 2x of 20"
    _report(6, "ball < shell at alpha=100 with gap within 2x of the prediction 20")


def test_criterion_07_trace_constants():
    for p in (1.5, 2.0, 3.0):
        res = trace_constant(HalfLine(), p, tol=1e-9)
        exact = halfspace_trace_constant(p)
        assert abs(res.constant - exact) <= 1e-6, f"p={p}: half-line S off by {abs(res.constant - exact):.2e}"
    fit = trace_expansion_slope(Ball(1.0, 2), 2.0, [8.0, 16.0, 32.0, 64.0],
                                tol=1e-7, config=SolverConfig(n_nodes=2000))
    assert fit.s_inf == pytest.approx(1.0, rel=0.02), f"fitted S_inf {fit.s_inf:.4f}"
    assert fit.slope == pytest.approx(0.5, rel=0.10), f"fitted slope {fit.slope:.4f}"
    _report(7, f"half-line S exact to 1e-6; ball fit S_inf={fit.s_inf:.4f} (2% of 1), "
               f"slope={fit.slope:.4f} (10% of 0.5)")


def test_criterion_09_elementary_inequality():
    from robinlab.closedform import aux_inequality_constant

    rng = np.random.default_rng(0)
    n = 100_000
    total_violations = 0
    for p in (1.2, 1.5, 2.0, 3.0, 5.0):
        a = 10.0 ** rng.uniform(-3, 3, n)
        b = 10.0 ** rng.uniform(-3, 3, n)
        eps = np.clip(rng.uniform(0.0, 1.0, n), 1e-12, 1 - 1e-12)
        c = aux_inequality_constant(p)
        lhs = (a + b) ** p
        rhs = (1.0 + eps) * a**p + c * eps ** (1.0 - p) * b**p
        total_violations += int(np.sum(lhs > rhs * (1 + 1e-13)))
    assert total_violations == 0, f"{total_violations} inequality violations"
    _report(9, "power inequality: 0 violations in 5x100000 samples")


def test_criterion_10_concentration():
    # half-line decay rate
    sol = solve_domain(HalfLine(), 2.0, 10.0, SolverConfig(n_nodes=2000))
    _record("halfline", 2.0, 10.0, sol)
    rep = concentration_report(sol, HalfLine(), 2.0, 10.0)
    assert rep.decay_slope == pytest.approx(-10.0, rel=0.10), f"decay slope {rep.decay_slope:.3f}"

    # shell localization integral strictly decreasing
    shell = Shell(0.75, 1.25, 2)
    ells = []
    for alpha in (25.0, 50.0, 100.0):
        s = solve_domain(shell, 2.0, alpha, SolverConfig(n_nodes=3000))
        _record("shell", 2.0, alpha, s)
        r = concentration_report(s, shell, 2.0, alpha)
        ells.append(r.localization_integral)
    assert all(b < a for a, b in zip(ells, ells[1:])), f"ell not strictly decreasing: {ells}"

    # boundary-layer mass at alpha >= 50 on the suite domains
    suite = [
        (HalfLine(), {}),
        (Ball(1.0, 2), {}),
        (Shell(0.75, 1.25, 2), {}),
        (ModelLayer((1.0, 1.0), 0.25), {}),
    ]
    for domain, _ in suite:
        for alpha in (50.0, 100.0):
            s = solve_domain(domain, 2.0, alpha, SolverConfig(n_nodes=2000))
            _record(domain.kind, 2.0, alpha, s)
            r = concentration_report(s, domain, 2.0, alpha)
            assert r.mass_fractions[10.0] >= 0.99, (
                f"{domain.kind} alpha={alpha}: m(10)={r.mass_fractions[10.0]:.6f}"
            )
    _report(10, f"decay slope {rep.decay_slope:.2f}; ell strictly decreasing "
                f"({ells[0]:.1e} > {ells[1]:.1e} > {ells[2]:.1e}); m(10) >= 0.99")


def test_criterion_11_scaling_identity():
    worst = 0.0
    for p in (1.5, 2.0, 3.0):
        for mu in (2.0, 4.0):
            alpha = 10.0
            scaled_sol = radial_eigenvalue(Ball(mu, 2), p, alpha, SolverConfig(n_nodes=2000))
            base_sol = radial_eigenvalue(
                Ball(1.0, 2), p, mu ** (p - 1.0) * alpha, SolverConfig(n_nodes=2000)
            )
            _record("scaled-ball", p, alpha, scaled_sol)
            _record("unit-ball", p, mu ** (p - 1.0) * alpha, base_sol)
            rel = abs(scaled_sol.eigenvalue * mu**p - base_sol.eigenvalue) / abs(
                base_sol.eigenvalue
            )
            worst = max(worst, rel)
    assert worst <= 1e-3, f"scaling identity worst rel err {worst:.3e}"
    _report(11, f"scaling identity worst rel err {worst:.2e}")


def test_criterion_08_upper_bound_audit():
    # runs after all other criteria: every converged solve the suite recorded
    # must respect the Lipschitz upper bound
    assert len(RECORDED_SOLVES) >= 40, "audit pool unexpectedly small"
    violations = []
    for label, p, alpha, lam in RECORDED_SOLVES:
        bound = half_line_eigenvalue(p, alpha) + 1e-6 * abs(lam)
        if lam > bound:
            violations.append((label, p, alpha, lam, bound))
    assert not violations, f"upper-bound violations: {violations}"
    _report(8, f"upper bound holds across {len(RECORDED_SOLVES)} recorded solves")
