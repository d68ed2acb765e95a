"""Sweeps, asymptotic-rate fits, isoperimetric comparisons, and eigenfunction
concentration diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .closedform import leading_asymptote
from .geometry import Ball, Domain, Shell, curvature_data
from .quotient import EigenSolution, SolverConfig, layer_rate, solve_domain
from .trace import FitError

__all__ = [
    "SweepResult",
    "RateFit",
    "ConcentrationReport",
    "IsoperimetricComparison",
    "alpha_sweep",
    "fit_remainder_rate",
    "isoperimetric_compare",
    "concentration_report",
]

MASS_WINDOW_FACTORS = (1.0, 2.0, 5.0, 10.0)


@dataclass(frozen=True)
class SweepResult:
    """Tabulated (alpha, lambda) rows of a single-domain sweep."""

    domain: Domain
    p: float
    alphas: tuple[float, ...]
    lambdas: tuple[float, ...]
    residuals: tuple[float, ...]
    converged: tuple[bool, ...]
    config: SolverConfig

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.alphas, self.alphas[1:])):
            raise ValueError("sweep alphas must be strictly increasing")
        conv_lams = [l for l, c in zip(self.lambdas, self.converged) if c]
        if any(b >= a for a, b in zip(conv_lams, conv_lams[1:])):
            raise ValueError("eigenvalues must decrease strictly along converged rows")

    @property
    def all_converged(self) -> bool:
        return all(self.converged)

    def rows(self):
        return zip(self.alphas, self.lambdas, self.residuals, self.converged)


@dataclass(frozen=True)
class RateFit:
    """Log-log slope of the remainder after removing the two leading terms."""

    slope: float
    intercept: float
    reference_exponent: float
    fit_residual: float
    alphas: tuple[float, ...]
    remainders: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "reference_exponent": self.reference_exponent,
            "fit_residual": self.fit_residual,
        }


@dataclass(frozen=True)
class IsoperimetricComparison:
    """Equal-volume ball vs shell eigenvalues at one Robin parameter."""

    ball: Ball
    shell: Shell
    p: float
    alpha: float
    lambda_ball: float
    lambda_shell: float
    predicted_gap: float

    @property
    def gap(self) -> float:
        return self.lambda_shell - self.lambda_ball

    def to_json_dict(self) -> dict:
        return {
            "rho": self.ball.rho,
            "r": self.shell.r,
            "R": self.shell.R,
            "nu": self.ball.nu,
            "p": self.p,
            "alpha": self.alpha,
            "lambda_ball": self.lambda_ball,
            "lambda_shell": self.lambda_shell,
            "gap": self.gap,
            "predicted_gap": self.predicted_gap,
        }


@dataclass(frozen=True)
class ConcentrationReport:
    """Boundary-layer mass fractions, pointwise decay rate, localization
    integral (shell only), and weighted tail integrals of a minimizer."""

    beta: float
    mass_fractions: dict
    decay_slope: float
    decay_window: tuple[float, float]
    localization_integral: float | None
    agmon_ratios: dict
    truncated_window: bool

    def to_json_dict(self) -> dict:
        return {
            "beta": self.beta,
            "mass_fractions": {str(k): v for k, v in self.mass_fractions.items()},
            "decay_slope": self.decay_slope,
            "decay_window": list(self.decay_window),
            "localization_integral": self.localization_integral,
            "agmon_ratios": {str(k): v for k, v in self.agmon_ratios.items()},
            "truncated_window": self.truncated_window,
        }


def alpha_sweep(
    domain: Domain,
    p: float,
    alphas,
    config: SolverConfig | None = None,
    warm_start: bool = True,
    grid_rule=None,
) -> SweepResult:
    """One converged solve per alpha, optionally warm-started along the sweep.

    ``grid_rule`` maps alpha to a node count; resolving remainders that decay
    with alpha needs finer grids at larger alpha than the fixed default.
    """
    config = config or SolverConfig()
    alphas = [float(a) for a in alphas]
    if any(a <= 0 for a in alphas):
        raise ValueError("sweep alphas must be positive")
    lams, residuals, flags = [], [], []
    prev_nodes = prev_u = None
    from dataclasses import replace

    for a in alphas:
        cfg = config
        if grid_rule is not None:
            cfg = replace(config, n_nodes=int(grid_rule(a)))
        init = None
        if warm_start and prev_nodes is not None:
            nodes_c, u_c = prev_nodes, prev_u
            init = lambda nodes: np.interp(nodes, nodes_c, u_c)
        sol = solve_domain(domain, p, a, cfg, init=init)
        lams.append(sol.eigenvalue)
        residuals.append(sol.residual)
        flags.append(sol.converged)
        if sol.converged:
            prev_nodes, prev_u = sol.problem.grid.nodes, sol.u
    return SweepResult(
        domain, p, tuple(alphas), tuple(lams), tuple(residuals), tuple(flags), config
    )


def remainder_exponent_reference(p: float) -> float:
    """1 - kappa with the smooth-domain remainder exponent kappa:
    2/(p+2) for p <= 2 and 1/(2(p-1)) for p > 2."""
    kappa = 2.0 / (p + 2.0) if p <= 2.0 else 1.0 / (2.0 * (p - 1.0))
    return 1.0 - kappa


def fit_remainder_rate(
    sweep: SweepResult,
    h_max: float,
    nu: int,
    residual_threshold: float = 1.0,
) -> RateFit:
    """Least-squares slope of log |lambda + (p-1) a^(p/(p-1)) + (nu-1) H a|
    against log alpha over the converged sweep rows.

    The slope must come out below one (the remainder is little-o of alpha);
    a slope of at least one or an RMS log-residual above the threshold
    rejects the fit.
    """
    rows = [
        (a, lam)
        for a, lam, _, conv in sweep.rows()
        if conv
    ]
    if len(rows) < 4:
        raise FitError("need at least 4 converged rows for a rate fit")
    alphas = np.array([a for a, _ in rows])
    if alphas[-1] / alphas[0] < 100.0:
        raise FitError("rate fit needs alphas spanning at least two decades")
    rem = np.array(
        [abs(lam - leading_asymptote(sweep.p, a, h_max, nu)) for a, lam in rows]
    )
    if np.any(rem == 0.0):
        raise FitError("zero remainder encountered; nothing to fit")
    x = np.log(alphas)
    y = np.log(rem)
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    slope, intercept = float(coef[0]), float(coef[1])
    resid = float(np.sqrt(np.mean((y - A @ coef) ** 2)))
    if resid > residual_threshold:
        raise FitError(f"log-log fit residual {resid:.3g} above threshold")
    if slope >= 1.0:
        raise FitError(f"fitted remainder slope {slope:.3g} is not o(alpha)")
    return RateFit(
        slope=slope,
        intercept=intercept,
        reference_exponent=remainder_exponent_reference(sweep.p),
        fit_residual=resid,
        alphas=tuple(float(a) for a in alphas),
        remainders=tuple(float(r) for r in rem),
    )


def isoperimetric_compare(
    rho: float,
    r: float,
    p: float,
    alpha: float,
    nu: int,
    config: SolverConfig | None = None,
) -> IsoperimetricComparison:
    """Radial eigenvalues of the equal-volume ball and shell.

    R is fixed by R^nu - r^nu = rho^nu; the first-order prediction for the
    gap is (nu-1)(1/rho - 1/R) alpha.
    """
    if not 0 < r:
        raise ValueError("inner radius must be positive")
    R = (rho**nu + r**nu) ** (1.0 / nu)
    ball = Ball(rho, nu)
    shell = Shell(r, R, nu)
    config = config or SolverConfig()
    sol_ball = solve_domain(ball, p, alpha, config)
    sol_shell = solve_domain(shell, p, alpha, config)
    if not (sol_ball.converged and sol_shell.converged):
        raise RuntimeError("isoperimetric comparison requires converged solves")
    predicted = (nu - 1.0) * (1.0 / rho - 1.0 / R) * alpha
    return IsoperimetricComparison(
        ball, shell, p, alpha, sol_ball.eigenvalue, sol_shell.eigenvalue, predicted
    )


def concentration_report(
    solution: EigenSolution,
    domain: Domain,
    p: float,
    alpha: float,
) -> ConcentrationReport:
    """Boundary-concentration diagnostics of a converged, normalized minimizer.

    Mass fractions m(a) within distance a/beta of the Robin boundary for
    a in {1, 2, 5, 10}; pointwise decay slope of log u over [2/beta, 10/beta]
    from the dominant Robin endpoint; for shells the discrete localization
    integral (H_max - H_inner) weighted inner-layer mass; and the Agmon-type
    tail integrals relative to alpha^(2p/(p-1)).
    """
    if not solution.converged:
        raise ValueError("concentration diagnostics need a converged solution")
    if alpha <= 0:
        raise ValueError("concentration diagnostics need alpha > 0")
    spec = solution.problem
    beta = layer_rate(p, alpha)
    t = spec.grid.nodes
    mid = spec.grid.midpoints
    h = spec.grid.cell_widths
    u = solution.u
    um = 0.5 * (u[:-1] + u[1:])
    mass = np.abs(um) ** p * spec.w_mid * h
    total = float(mass.sum())
    dist_mid = spec.distance_to_robin(mid)
    dist_nodes = spec.distance_to_robin(t)

    fractions = {}
    for a in MASS_WINDOW_FACTORS:
        fractions[a] = float(mass[dist_mid <= a / beta].sum() / total)

    # decay fit on the side of the dominant (max u) Robin endpoint
    ends = spec.robin_endpoints
    peak = t[int(np.argmax(u))]
    dominant = min(ends, key=lambda e: abs(e - peak))
    side_dist = np.abs(t - dominant)
    lo, hi = 2.0 / beta, 10.0 / beta
    window = (side_dist >= lo) & (side_dist <= hi) & (u > 0)
    # keep only the monotone stretch facing the dominant endpoint
    if len(ends) == 2:
        other = max(ends, key=lambda e: abs(e - peak))
        window &= np.abs(t - other) > np.abs(t - dominant)
    truncated = float(side_dist.max()) < hi
    if window.sum() >= 2:
        A = np.vstack([side_dist[window], np.ones(int(window.sum()))]).T
        coef, *_ = np.linalg.lstsq(A, np.log(u[window]), rcond=None)
        decay_slope = float(coef[0])
    else:
        decay_slope = math.nan
        truncated = True

    ell = None
    if isinstance(domain, Shell):
        cd = curvature_data(domain)
        inner_mass = float(mass[np.abs(mid - domain.r) <= 5.0 / beta].sum() / total)
        ell = (cd.h_max - cd.h_components[0]) * inner_mass

    # Agmon tail integrals, evaluated in log space to avoid overflow
    q = p / (p - 1.0)
    tau = (p - 1.0) ** (1.0 / p) * beta
    s = np.diff(u) / h
    dens = (np.abs(s) ** p + alpha**q * np.abs(um) ** p) * spec.w_mid * h
    agmon = {}
    with np.errstate(divide="ignore"):
        log_dens = np.where(dens > 0, np.log(np.where(dens > 0, dens, 1.0)), -np.inf)
    for a in MASS_WINDOW_FACTORS:
        sel = dist_mid > a / beta
        expo = tau * dist_mid[sel] + log_dens[sel]
        finite = expo[np.isfinite(expo)]
        if len(finite) == 0:
            agmon[a] = 0.0
            continue
        peak_e = float(finite.max())
        val = math.exp(peak_e - q * 2.0 * math.log(alpha)) * float(
            np.exp(finite - peak_e).sum()
        )
        agmon[a] = val
    return ConcentrationReport(
        beta=beta,
        mass_fractions=fractions,
        decay_slope=decay_slope,
        decay_window=(lo, hi),
        localization_integral=ell,
        agmon_ratios=agmon,
        truncated_window=truncated,
    )
