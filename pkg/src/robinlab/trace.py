"""Best trace constants S(Omega, p, p) from the implicit equation
Lambda(Omega, p, S) = -1, their expanding-domain slopes, and extension-norm
lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .closedform import (
    half_line_eigenvalue,
    halfspace_trace_constant,
    sector_eigenvalue,
    trace_slope_reference,
)
from .geometry import Ball, Domain, HalfLine, Interval, Sector, Shell, curvature_data, scaled
from .quotient import SolverConfig, solve_domain

__all__ = [
    "TraceResult",
    "TraceExpansion",
    "BracketError",
    "FitError",
    "trace_constant",
    "trace_expansion_slope",
    "extension_lower_bound",
]


class BracketError(RuntimeError):
    """Bisection bracket construction failed; carries the endpoint values."""

    def __init__(self, alpha_lo, lam_lo, alpha_hi, lam_hi):
        super().__init__(
            f"no sign change: Lambda({alpha_lo})={lam_lo}, Lambda({alpha_hi})={lam_hi}"
        )
        self.endpoints = ((alpha_lo, lam_lo), (alpha_hi, lam_hi))


class FitError(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceResult:
    """Trace constant located by bisection: Lambda(Omega, p, S) = -1."""

    constant: float
    bracket: tuple[float, float]
    iterations: int
    lambda_at_constant: float
    tolerance: float

    def __post_init__(self):
        if not self.constant > 0:
            raise ValueError("trace constant must be positive")
        if abs(self.lambda_at_constant + 1.0) > self.tolerance:
            raise ValueError("bisection returned without meeting its tolerance")

    def to_json_dict(self) -> dict:
        return {
            "constant": self.constant,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "lambda_at_constant": self.lambda_at_constant,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class TraceExpansion:
    """Least-squares fit S(mu) ~ s_inf - slope/mu over an expanding family."""

    mus: tuple[float, ...]
    constants: tuple[float, ...]
    s_inf: float
    slope: float
    reference_s_inf: float
    reference_slope: float

    def rows(self):
        return zip(self.mus, self.constants)


def _lambda_evaluator(domain: Domain, p: float, config: SolverConfig):
    """alpha -> Lambda(domain, p, alpha); warm-starts the mesh solver across
    calls by carrying the previous minimizer profile."""
    if isinstance(domain, HalfLine):
        return lambda alpha: half_line_eigenvalue(p, alpha)
    if isinstance(domain, Sector):
        return lambda alpha: sector_eigenvalue(domain.theta, p, alpha)

    state: dict = {"nodes": None, "u": None}

    def ev(alpha: float) -> float:
        init = None
        if state["nodes"] is not None:
            sol_nodes, sol_u = state["nodes"], state["u"]
            # previous minimizer, transplanted onto the new alpha's grid
            init = lambda nodes: np.interp(nodes, sol_nodes, sol_u)
        sol = solve_domain(domain, p, alpha, config, init=init)
        state["nodes"] = sol.problem.grid.nodes
        state["u"] = sol.u
        return sol.eigenvalue

    return ev


def trace_constant(
    domain: Domain,
    p: float,
    tol: float = 1e-8,
    config: SolverConfig | None = None,
) -> TraceResult:
    """Bisection on alpha -> Lambda(domain, p, alpha) + 1.

    The lower bracket alpha=0 gives Lambda=0 > -1 always; the upper bracket
    starts at four times the half-space inversion of the leading term and
    doubles until Lambda < -1. The map is strictly decreasing, so the root
    is unique.
    """
    config = config or SolverConfig()
    lam = _lambda_evaluator(domain, p, config)
    alpha_lo, f_lo = 0.0, 1.0  # Lambda(0) + 1 = 1
    alpha_hi = 4.0 * halfspace_trace_constant(p)
    f_hi = lam(alpha_hi) + 1.0
    doublings = 0
    while f_hi > 0.0:
        alpha_hi *= 2.0
        f_hi = lam(alpha_hi) + 1.0
        doublings += 1
        if doublings > 60:
            raise BracketError(alpha_lo, f_lo - 1.0, alpha_hi, f_hi - 1.0)
    iterations = 0
    alpha_mid, f_mid = alpha_hi, f_hi
    for _ in range(200):
        # the bracket must stay sign-separated at every step
        assert f_lo > 0.0 >= f_hi or f_hi < 0.0 < f_lo
        alpha_mid = 0.5 * (alpha_lo + alpha_hi)
        f_mid = lam(alpha_mid) + 1.0
        iterations += 1
        if abs(f_mid) <= tol:
            break
        if f_mid > 0.0:
            alpha_lo, f_lo = alpha_mid, f_mid
        else:
            alpha_hi, f_hi = alpha_mid, f_mid
    else:
        raise BracketError(alpha_lo, f_lo - 1.0, alpha_hi, f_hi - 1.0)
    return TraceResult(
        constant=alpha_mid,
        bracket=(alpha_lo, alpha_hi),
        iterations=iterations,
        lambda_at_constant=f_mid - 1.0,
        tolerance=tol,
    )


def trace_expansion_slope(
    domain: Domain,
    p: float,
    mu_list,
    tol: float = 1e-8,
    config: SolverConfig | None = None,
    monotone_tol: float = 1e-6,
) -> TraceExpansion:
    """Compute S(mu * Omega, p, p) along mu_list and fit S ~ s_inf - slope/mu.

    References: s_inf = (p-1)^((1-p)/p) and slope = (p-1)^((2-p)/p)
    (nu-1) H_max / p. Rejects non-monotone S sequences beyond tolerance.
    """
    mus = [float(m) for m in mu_list]
    if len(mus) < 3 or any(b <= a for a, b in zip(mus, mus[1:])):
        raise ValueError("need at least 3 strictly increasing scale factors")
    constants = []
    for mu in mus:
        res = trace_constant(scaled(domain, mu), p, tol, config)
        constants.append(res.constant)
    diffs = np.diff(constants)
    if np.any(diffs < -monotone_tol) and np.any(diffs > monotone_tol):
        raise FitError(f"trace constants not monotone in mu: {constants}")
    A = np.vstack([np.ones(len(mus)), 1.0 / np.asarray(mus)]).T
    coef, *_ = np.linalg.lstsq(A, np.asarray(constants), rcond=None)
    s_inf, slope = float(coef[0]), float(-coef[1])
    try:
        cd = curvature_data(domain)
        ref_slope = trace_slope_reference(p, cd.nu, cd.h_max)
    except ValueError:
        ref_slope = math.nan
    return TraceExpansion(
        mus=tuple(mus),
        constants=tuple(constants),
        s_inf=s_inf,
        slope=slope,
        reference_s_inf=halfspace_trace_constant(p),
        reference_slope=ref_slope,
    )


def extension_lower_bound(s_omega: float, s_complement: float, p: float) -> float:
    """(1 + S(Omega^c)/S(Omega))^(1/p), the extension-operator norm bound."""
    if s_omega <= 0 or s_complement < 0:
        raise ValueError("trace constants must be positive (complement may tend to 0)")
    if p <= 1:
        raise ValueError(f"exponent must satisfy p > 1, got {p}")
    return (1.0 + s_complement / s_omega) ** (1.0 / p)
