"""Discrete weighted p-Rayleigh quotients with Robin boundary terms.

Discretization: piecewise-linear elements on a boundary-layer-graded mesh,
midpoint quadrature for both the gradient and the mass integral. The
discrete quotient is exactly p-homogeneous.

Minimization: descent on the quotient with a Newton-type direction built
from the linearized stiffness/mass pencil shifted just below the current
quotient value, Armijo backtracking, projection onto the nonnegative cone,
and renormalization after every accepted step.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import math

import numpy as np

from . import _kernels
from .geometry import (
    Ball,
    Domain,
    HalfLine,
    Interval,
    ModelLayer,
    Sector,
    Shell,
    curvature_data,
    weight_from_curvatures,
)

__all__ = [
    "Grid1D",
    "ProblemSpec",
    "SolverConfig",
    "EigenSolution",
    "QuotientEvaluator",
    "build_layer_grid",
    "assemble",
    "minimize",
    "euler_lagrange_residual",
    "model_layer_eigenvalue",
    "halfline_eigenvalue",
    "interval_eigenvalue",
    "radial_eigenvalue",
    "solve_domain",
    "default_initializer",
    "perturbation_spread",
    "layer_rate",
]

# The discrete gradient degenerates as p -> 1 and stiffens for very large p
# beyond what the default step control handles; reject outside this band.
P_MIN = 1.01
P_MAX = 20.0


def layer_rate(p: float, alpha: float) -> float:
    """beta = alpha^(1/(p-1)), the inverse boundary-layer width."""
    return alpha ** (1.0 / (p - 1.0))


def _check_p(p: float) -> None:
    if not (P_MIN < p < P_MAX):
        raise ValueError(f"exponent p={p} outside supported range ({P_MIN}, {P_MAX})")


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid1D:
    """Strictly increasing nodes over [a, b] with boundary-layer grading."""

    nodes: np.ndarray
    layer_fraction: float
    layer_width: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or len(nodes) < 2:
            raise ValueError("grid needs at least two nodes")
        if not np.all(np.diff(nodes) > 0):
            raise ValueError("grid nodes must be strictly increasing")

    @property
    def cell_widths(self) -> np.ndarray:
        return np.diff(self.nodes)

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    @property
    def span(self) -> tuple[float, float]:
        return float(self.nodes[0]), float(self.nodes[-1])


def _graded_cells(length: float, ncells: int, strength: float) -> np.ndarray:
    """Cell widths on [0, length], smallest first, exponential grading."""
    if ncells <= 0:
        return np.zeros(0)
    s = np.linspace(0.0, 1.0, ncells + 1)
    if strength < 1e-12:
        pts = length * s
    else:
        pts = length * np.expm1(strength * s) / math.expm1(strength)
    return np.diff(pts)


def _match_strength(length: float, ncells: int, h_first: float) -> float:
    """Grading strength whose first cell on [0, length] has width ~h_first."""
    if ncells <= 0 or h_first * ncells >= length:
        return 0.0
    lo, hi = 1e-9, 60.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        h0 = length * math.expm1(mid / ncells) / math.expm1(mid)
        if h0 > h_first:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def build_layer_grid(
    length: float,
    beta: float,
    n: int,
    robin_left: bool,
    robin_right: bool,
    layer_fraction: float = 0.5,
    layer_width_factor: float = 5.0,
    strength: float = 4.0,
) -> Grid1D:
    """Graded mesh on [0, length] clustering nodes near each Robin endpoint.

    The layer at each Robin end has width min(layer_width_factor/beta,
    length/(2*#robin)) and receives layer_fraction of the nodes split evenly
    between the Robin ends; the bulk cells grow geometrically away from the
    layers. All lengths enter as ratios, so the construction commutes with
    dilations of the domain.
    """
    if n < 8:
        raise ValueError(f"grid size too small: {n}")
    nr = int(robin_left) + int(robin_right)
    ell = 0.0
    if nr == 0 or beta <= 0 or not math.isfinite(beta):
        h = np.full(n, length / n)
    else:
        ell = min(layer_width_factor / beta, length / (2.0 * nr))
        nl = max(int(math.ceil(layer_fraction * n / nr)), 4)
        bulk_len = length - nr * ell
        nbulk = n - nr * nl
        if robin_left and robin_right:
            left = _graded_cells(ell, nl, strength)
            right = _graded_cells(ell, nl, strength)
            nb1 = nbulk // 2
            nb2 = nbulk - nb1
            half = bulk_len / 2.0
            b1 = _graded_cells(half, nb1, _match_strength(half, nb1, left[-1]))
            b2 = _graded_cells(half, nb2, _match_strength(half, nb2, right[-1]))
            h = np.concatenate([left, b1, b2[::-1], right[::-1]])
        elif robin_left:
            left = _graded_cells(ell, nl, strength)
            b = _graded_cells(bulk_len, nbulk, _match_strength(bulk_len, nbulk, left[-1]))
            h = np.concatenate([left, b])
        else:
            right = _graded_cells(ell, nl, strength)
            b = _graded_cells(bulk_len, nbulk, _match_strength(bulk_len, nbulk, right[-1]))
            h = np.concatenate([b[::-1], right[::-1]])
    nodes = np.concatenate(([0.0], np.cumsum(h)))
    nodes *= length / nodes[-1]
    nodes[0] = 0.0
    nodes[-1] = length
    return Grid1D(nodes, layer_fraction, ell)


# ---------------------------------------------------------------------------
# problem specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemSpec:
    """A discretized weighted quotient: grid, midpoint weights, exponent,
    Robin data, and far-endpoint condition.

    ``sigma_left``/``sigma_right`` are the boundary surface-measure factors;
    zero means no Robin term at that endpoint. ``dirichlet_right`` (or left)
    pins the endpoint value to zero, realizing the Dirichlet cap of the
    truncated-layer bracketing.
    """

    grid: Grid1D
    w_mid: np.ndarray
    p: float
    alpha: float
    sigma_left: float = 0.0
    sigma_right: float = 0.0
    dirichlet_left: bool = False
    dirichlet_right: bool = False

    def __post_init__(self):
        w = np.asarray(self.w_mid, dtype=float)
        object.__setattr__(self, "w_mid", w)
        _check_p(self.p)
        if self.alpha < 0:
            raise ValueError(f"Robin coefficient must be >= 0, got {self.alpha}")
        if len(w) != len(self.grid.nodes) - 1:
            raise ValueError("weight array must hold one value per cell midpoint")
        if not np.all(w > 0) or not np.all(np.isfinite(w)):
            raise ValueError("midpoint weights must be positive and finite")
        if self.sigma_left < 0 or self.sigma_right < 0:
            raise ValueError("boundary weights must be nonnegative")
        if self.sigma_left == 0 and self.sigma_right == 0 and self.alpha > 0:
            raise ValueError("alpha > 0 requires at least one Robin endpoint")
        if (self.dirichlet_left and self.sigma_left) or (
            self.dirichlet_right and self.sigma_right
        ):
            raise ValueError("an endpoint cannot be both Robin and Dirichlet")

    @property
    def robin_endpoints(self) -> tuple[float, ...]:
        ends = []
        if self.sigma_left:
            ends.append(float(self.grid.nodes[0]))
        if self.sigma_right:
            ends.append(float(self.grid.nodes[-1]))
        return tuple(ends)

    @property
    def beta(self) -> float:
        return layer_rate(self.p, self.alpha) if self.alpha > 0 else 0.0

    def distance_to_robin(self, t: np.ndarray) -> np.ndarray:
        """Distance to the nearest Robin endpoint (the boundary proxy)."""
        ends = self.robin_endpoints
        if not ends:
            return np.zeros_like(np.asarray(t, dtype=float))
        d = np.full_like(np.asarray(t, dtype=float), np.inf)
        for e in ends:
            d = np.minimum(d, np.abs(np.asarray(t, dtype=float) - e))
        return d


@dataclass(frozen=True)
class SolverConfig:
    """Iteration, tolerance, and grid parameters for the quotient minimizer."""

    max_iter: int = 2000
    quotient_tol: float = 1e-10
    residual_factor: float = 1e-6
    armijo_init: float = 1.0
    armijo_shrink: float = 0.5
    armijo_c1: float = 1e-4
    max_backtracks: int = 60
    n_nodes: int = 2000
    layer_fraction: float = 0.5
    layer_width_factor: float = 5.0
    grading_strength: float = 4.0
    halfline_truncation: float = 30.0

    def __post_init__(self):
        if self.quotient_tol <= 0 or self.residual_factor <= 0:
            raise ValueError("tolerances must be positive")
        if not 0 < self.armijo_shrink < 1:
            raise ValueError("Armijo shrink factor must lie in (0, 1)")
        if self.armijo_init <= 0 or self.armijo_c1 <= 0:
            raise ValueError("Armijo parameters must be positive")
        if self.max_iter < 1 or self.n_nodes < 8:
            raise ValueError("iteration / grid sizes too small")


@dataclass(frozen=True)
class EigenSolution:
    """Converged (or best) eigenpair of a discrete quotient.

    ``u`` is nonnegative and normalized so the discrete p-mass equals one;
    ``eigenvalue`` equals the discrete quotient at ``u`` exactly.
    """

    eigenvalue: float
    u: np.ndarray
    residual: float
    iterations: int
    converged: bool
    problem: ProblemSpec

    def to_json_dict(self) -> dict:
        return {
            "eigenvalue": self.eigenvalue,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
        }

    def profile_rows(self):
        """(t, u) pairs for CSV output."""
        return zip(self.problem.grid.nodes.tolist(), self.u.tolist())


# ---------------------------------------------------------------------------
# evaluator
# ---------------------------------------------------------------------------

class QuotientEvaluator:
    """Evaluates J, N, R = J/N, gradients, and Euler-Lagrange residual rows
    for nodal vectors on a fixed ProblemSpec. Immutable after assembly."""

    def __init__(self, spec: ProblemSpec):
        self.spec = spec
        self.nodes = spec.grid.nodes
        self.h = spec.grid.cell_widths
        self.w_mid = spec.w_mid
        self.p = spec.p
        self.alpha = spec.alpha
        self.sig_left = spec.sigma_left
        self.sig_right = spec.sigma_right
        self.dir_left = spec.dirichlet_left
        self.dir_right = spec.dirichlet_right

    # -- constraints -------------------------------------------------------

    def apply_constraints(self, u: np.ndarray) -> np.ndarray:
        if self.dir_left:
            u[0] = 0.0
        if self.dir_right:
            u[-1] = 0.0
        return u

    def _mask_constrained(self, g: np.ndarray) -> np.ndarray:
        if self.dir_left:
            g[0] = 0.0
        if self.dir_right:
            g[-1] = 0.0
        return g

    # -- energies ----------------------------------------------------------

    def energy(self, u: np.ndarray) -> tuple[float, float]:
        return _kernels.energy(
            u, self.h, self.w_mid, self.p, self.alpha, self.sig_left, self.sig_right
        )

    def quotient(self, u: np.ndarray) -> float:
        J, N = self.energy(u)
        if N == 0.0:
            raise ValueError("quotient undefined: input has zero discrete p-mass")
        return J / N

    def normalize(self, u: np.ndarray) -> np.ndarray:
        _, N = self.energy(u)
        if N == 0.0:
            raise ValueError("cannot normalize: zero discrete p-mass")
        return u / N ** (1.0 / self.p)

    def gradient_rows(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return _kernels.grad_rows(
            u, self.h, self.w_mid, self.p, self.alpha, self.sig_left, self.sig_right
        )

    # -- Euler-Lagrange residual --------------------------------------------

    def residual_rows(self, u: np.ndarray, lam: float) -> np.ndarray:
        """Discrete residual of (|u'|^{p-2} u' w)' + lam |u|^{p-2} u w = 0,
        integrated against the nodal hat functions, including the natural
        Robin / Neumann boundary rows. Dirichlet-pinned rows are zeroed."""
        gJ, gN = self.gradient_rows(u)
        r = (gJ - lam * gN) / self.p
        return self._mask_constrained(r)

    def residual_norm(self, u: np.ndarray, lam: float) -> float:
        return float(np.sum(np.abs(self.residual_rows(u, lam))))

    # -- descent direction ---------------------------------------------------

    def _direction(self, u: np.ndarray, lam: float, g: np.ndarray) -> np.ndarray:
        """Newton-type direction from the linearized pencil K_u - tau*M_u,
        tau slightly below the current quotient; the shift is escalated until
        the tridiagonal factorization is positive definite."""
        p = self.p
        cstiff, cmass = _kernels.pencil_coeffs(u, self.h, self.w_mid, p)
        n1 = len(u)
        rob0 = (
            self.alpha * self.sig_left * (abs(u[0]) + 1e-300) ** (p - 2.0)
            if self.sig_left
            else 0.0
        )
        robN = (
            self.alpha * self.sig_right * (abs(u[-1]) + 1e-300) ** (p - 2.0)
            if self.sig_right
            else 0.0
        )
        rhs = g / (p * (p - 1.0))
        margin = 0.02 * (abs(lam) + 1.0)
        for _ in range(14):
            tau = lam - margin
            di = np.zeros(n1)
            di[:-1] += cstiff - tau * cmass
            di[1:] += cstiff - tau * cmass
            di[0] -= rob0
            di[-1] -= robN
            off = -cstiff - tau * cmass
            lo = off
            up = off.copy()
            b = rhs
            if self.dir_right:
                di[-1] = 1.0
                lo = lo.copy()
                lo[-1] = 0.0
                up[-1] = 0.0
                b = b.copy()
                b[-1] = 0.0
            if self.dir_left:
                di[0] = 1.0
                up = up.copy()
                up[0] = 0.0
                lo = lo.copy()
                lo[0] = 0.0
                b = b.copy()
                b[0] = 0.0
            ok, d = _kernels.tridiag_spd_solve(lo, di, up, b)
            if ok and np.all(np.isfinite(d)):
                return d
            margin *= 8.0
        # fall back to a scaled gradient step
        return g / (abs(lam) + 1.0)


def assemble(spec: ProblemSpec) -> QuotientEvaluator:
    """Build the quotient evaluator for a problem specification."""
    return QuotientEvaluator(spec)


def default_initializer(spec: ProblemSpec) -> np.ndarray:
    """u0(t) = exp(-beta * dist(t, nearest Robin endpoint)), beta = alpha^(1/(p-1))."""
    beta = spec.beta
    d = spec.distance_to_robin(spec.grid.nodes)
    if beta <= 0:
        return np.ones_like(spec.grid.nodes)
    return np.exp(-beta * d)


def scaled_layer_initializer(spec: ProblemSpec, h_components: tuple[float, float]) -> np.ndarray:
    """Two-endpoint initializer whose bump amplitudes follow the boundary
    layer transfer: the endpoint with smaller mean curvature starts at the
    amplitude the dominant endpoint's tail reaches there. Resolves the
    exponentially small secondary layer of shells without descent having to
    traverse many orders of magnitude."""
    beta = spec.beta
    t = spec.grid.nodes
    a, b = float(t[0]), float(t[-1])
    if beta <= 0:
        return np.ones_like(t)
    h_left, h_right = h_components
    transfer = math.exp(-beta * (b - a))
    amp_left, amp_right = 1.0, 1.0
    if h_left < h_right:
        amp_left = transfer
    elif h_right < h_left:
        amp_right = transfer
    return amp_left * np.exp(-beta * (t - a)) + amp_right * np.exp(-beta * (b - t))


def _newton_polish(evaluator, config, u, lam, res):
    """Local phase: full Newton steps on the stationarity system, accepted
    while the residual norm contracts. Near the minimizer the quotient sits
    on a float64 plateau (energy decrements ~ (du)^2 fall below resolution),
    but the residual stays well conditioned, so it drives the last stretch."""
    p = evaluator.p
    target = config.residual_factor * abs(lam)
    for _ in range(40):
        if res <= target:
            break
        gJ, gN = evaluator.gradient_rows(u)
        g = gJ - lam * gN
        evaluator._mask_constrained(g)
        d = evaluator._direction(u, lam, g)
        stepped = np.maximum(u - d, 0.0)
        evaluator.apply_constraints(stepped)
        _, Nc = evaluator.energy(stepped)
        if Nc <= 0.0:
            break
        cand = evaluator.normalize(stepped)
        lam_c = evaluator.quotient(cand)
        res_c = evaluator.residual_norm(cand, lam_c)
        if not math.isfinite(res_c) or res_c > 0.9 * res:
            break
        u, lam, res = cand, lam_c, res_c
        target = config.residual_factor * abs(lam)
    return u, lam, res


def minimize(
    evaluator: QuotientEvaluator,
    config: SolverConfig,
    init=None,
) -> EigenSolution:
    """Minimize the discrete quotient; returns the best iterate found.

    ``init`` may be a nodal array, a callable mapping grid nodes to a nodal
    array (used for warm starts across grids), or None for the default
    exponential-layer initializer.

    Converged means both: the relative quotient decrease over the last
    iteration fell below ``quotient_tol`` and the L1 Euler-Lagrange residual
    fell below ``residual_factor * |lambda|``. On non-convergence the best
    iterate is returned with converged=False; callers must check the flag.
    """
    spec = evaluator.spec
    if init is None:
        init = default_initializer(spec)
    elif callable(init):
        init = init(spec.grid.nodes)
    u = np.array(init, dtype=float, copy=True)
    if u.shape != spec.grid.nodes.shape:
        raise ValueError("initializer shape does not match the grid")
    if not np.any(u):
        raise ValueError("initializer must not be identically zero")

    if spec.alpha == 0.0:
        # the infimum 0 is attained by constants
        u = np.ones_like(u)
        evaluator.apply_constraints(u)
        if spec.dirichlet_left or spec.dirichlet_right:
            # constants are excluded by the cap; fall through to descent
            pass
        else:
            u = evaluator.normalize(u)
            return EigenSolution(0.0, u, 0.0, 0, True, spec)

    np.maximum(u, 0.0, out=u)
    evaluator.apply_constraints(u)
    u = evaluator.normalize(u)
    lam = evaluator.quotient(u)

    p = evaluator.p
    converged = False
    rel_dec = math.inf
    res = math.inf
    iters = 0
    for it in range(config.max_iter):
        iters = it + 1
        gJ, gN = evaluator.gradient_rows(u)
        g = gJ - lam * gN
        evaluator._mask_constrained(g)
        res = float(np.sum(np.abs(g))) / p
        if rel_dec <= config.quotient_tol:
            if res > config.residual_factor * abs(lam):
                u, lam, res = _newton_polish(evaluator, config, u, lam, res)
            converged = res <= config.residual_factor * abs(lam)
            break

        d = evaluator._direction(u, lam, g)
        gd = float(np.dot(g, d))
        if not math.isfinite(gd) or gd <= 0.0:
            d = g / (abs(lam) + 1.0)
            gd = float(np.dot(g, d))

        s = config.armijo_init
        accepted = None
        lam_new = lam
        for _ in range(config.max_backtracks):
            cand = np.maximum(u - s * d, 0.0)
            evaluator.apply_constraints(cand)
            Jc, Nc = evaluator.energy(cand)
            if Nc > 0.0:
                lc = Jc / Nc
                if lc <= lam - config.armijo_c1 * s * gd:
                    accepted = cand
                    lam_new = lc
                    break
            s *= config.armijo_shrink
        if accepted is None:
            # no admissible decrease left at this precision
            rel_dec = 0.0
            if res > config.residual_factor * abs(lam):
                u, lam, res = _newton_polish(evaluator, config, u, lam, res)
            converged = res <= config.residual_factor * abs(lam)
            break
        rel_dec = (lam - lam_new) / max(abs(lam_new), 1e-300)
        u = evaluator.normalize(accepted)
        lam = evaluator.quotient(u)

    res = evaluator.residual_norm(u, lam)
    return EigenSolution(lam, u, res, iters, converged, spec)


def euler_lagrange_residual(solution: EigenSolution, spec: ProblemSpec | None = None) -> float:
    """L1 norm of the discrete Euler-Lagrange residual of a solution,
    interior rows plus Robin/Neumann boundary defects."""
    spec = spec or solution.problem
    ev = QuotientEvaluator(spec)
    return ev.residual_norm(solution.u, solution.eigenvalue)


def perturbation_spread(
    evaluator: QuotientEvaluator,
    config: SolverConfig,
    init: np.ndarray,
    seed: int = 0,
    trials: int = 3,
    amplitude: float = 0.2,
) -> float:
    """Max |lambda_i - lambda_0| over random multiplicative perturbations of
    the initializer; a large spread flags possible non-uniqueness."""
    base = minimize(evaluator, config, init)
    rng = np.random.default_rng(seed)
    spread = 0.0
    for _ in range(trials):
        noisy = init * (1.0 + amplitude * rng.uniform(-1.0, 1.0, size=init.shape))
        sol = minimize(evaluator, config, np.abs(noisy))
        spread = max(spread, abs(sol.eigenvalue - base.eigenvalue))
    return spread


# ---------------------------------------------------------------------------
# problem builders
# ---------------------------------------------------------------------------

def _grid_for(
    length: float,
    p: float,
    alpha: float,
    config: SolverConfig,
    robin_left: bool,
    robin_right: bool,
) -> Grid1D:
    beta = layer_rate(p, alpha) if alpha > 0 else 0.0
    return build_layer_grid(
        length,
        beta,
        config.n_nodes,
        robin_left,
        robin_right,
        layer_fraction=config.layer_fraction,
        layer_width_factor=config.layer_width_factor,
        strength=config.grading_strength,
    )


def model_layer_eigenvalue(
    p: float,
    alpha: float,
    kappas,
    delta: float,
    config: SolverConfig | None = None,
    far: str = "neumann",
    init=None,
) -> EigenSolution:
    """Eigenvalue of the 1D layer model: weight prod(1 - kappa_j t) on
    (0, delta), Robin at t=0 with unit boundary weight, free (Neumann) or
    zero-capped (Dirichlet) far endpoint."""
    _check_p(p)
    config = config or SolverConfig()
    if far not in ("neumann", "dirichlet"):
        raise ValueError(f"far condition must be 'neumann' or 'dirichlet', got {far!r}")
    profile = weight_from_curvatures(kappas, delta)
    grid = _grid_for(delta, p, alpha, config, robin_left=True, robin_right=False)
    w = profile(grid.midpoints)
    spec = ProblemSpec(
        grid,
        w,
        p,
        alpha,
        sigma_left=1.0,
        dirichlet_right=(far == "dirichlet"),
    )
    return minimize(assemble(spec), config, init)


def halfline_eigenvalue(
    p: float,
    alpha: float,
    config: SolverConfig | None = None,
    init=None,
) -> EigenSolution:
    """Half-line problem truncated at L = halfline_truncation / beta with a
    free far endpoint; the truncation error is exponentially small."""
    _check_p(p)
    config = config or SolverConfig()
    if alpha <= 0:
        raise ValueError("half-line truncation needs alpha > 0")
    beta = layer_rate(p, alpha)
    L = config.halfline_truncation / beta
    grid = _grid_for(L, p, alpha, config, robin_left=True, robin_right=False)
    spec = ProblemSpec(grid, np.ones(len(grid.nodes) - 1), p, alpha, sigma_left=1.0)
    return minimize(assemble(spec), config, init)


def interval_eigenvalue(
    p: float,
    alpha: float,
    delta: float,
    config: SolverConfig | None = None,
    init=None,
) -> EigenSolution:
    """Flat slab of thickness delta with Robin conditions at both ends."""
    _check_p(p)
    config = config or SolverConfig()
    grid = _grid_for(delta, p, alpha, config, robin_left=True, robin_right=True)
    spec = ProblemSpec(
        grid, np.ones(len(grid.nodes) - 1), p, alpha, sigma_left=1.0, sigma_right=1.0
    )
    return minimize(assemble(spec), config, init)


def radial_eigenvalue(
    domain: Ball | Shell,
    p: float,
    alpha: float,
    config: SolverConfig | None = None,
    init=None,
) -> EigenSolution:
    """Radial quotient on a ball or shell with weight r^(nu-1).

    For the ball the inner endpoint r=0 carries no boundary term (the weight
    vanishes) and no derivative condition is imposed. The result is an upper
    bound for the full eigenvalue and is reported as the radial value.
    """
    _check_p(p)
    config = config or SolverConfig()
    if isinstance(domain, Ball):
        grid = _grid_for(domain.rho, p, alpha, config, robin_left=False, robin_right=True)
        r = grid.nodes
        w = grid.midpoints ** (domain.nu - 1)
        spec = ProblemSpec(grid, w, p, alpha, sigma_right=domain.rho ** (domain.nu - 1))
    elif isinstance(domain, Shell):
        grid0 = _grid_for(
            domain.R - domain.r, p, alpha, config, robin_left=True, robin_right=True
        )
        grid = Grid1D(domain.r + grid0.nodes, grid0.layer_fraction, grid0.layer_width)
        w = grid.midpoints ** (domain.nu - 1)
        spec = ProblemSpec(
            grid,
            w,
            p,
            alpha,
            sigma_left=domain.r ** (domain.nu - 1),
            sigma_right=domain.R ** (domain.nu - 1),
        )
        if init is None and alpha > 0:
            cd = curvature_data(domain)
            init = scaled_layer_initializer(spec, (cd.h_components[0], cd.h_components[1]))
    else:
        raise ValueError(f"radial solve needs a ball or shell, got {domain!r}")
    return minimize(assemble(spec), config, init)


def solve_domain(
    domain: Domain,
    p: float,
    alpha: float,
    config: SolverConfig | None = None,
    far: str = "neumann",
    init=None,
) -> EigenSolution:
    """Dispatch a single eigenvalue solve by domain kind."""
    if isinstance(domain, (Ball, Shell)):
        return radial_eigenvalue(domain, p, alpha, config, init)
    if isinstance(domain, HalfLine):
        return halfline_eigenvalue(p, alpha, config, init)
    if isinstance(domain, Interval):
        return interval_eigenvalue(p, alpha, domain.delta, config, init)
    if isinstance(domain, ModelLayer):
        return model_layer_eigenvalue(p, alpha, domain.kappas, domain.delta, config, far, init)
    if isinstance(domain, Sector):
        raise ValueError("sectors are served by closed-form evaluation only")
    raise ValueError(f"cannot solve domain {domain!r}")
