"""Independent p=2 oracles: Bessel secular equations for radial problems and
a direct tridiagonal eigensolve of the discrete pencil.

These never touch the descent solver, so they can certify it.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq
from scipy.special import ive, kve

from .geometry import Ball, Shell
from .quotient import ProblemSpec, QuotientEvaluator

__all__ = [
    "ball_eigenvalue_p2",
    "shell_eigenvalue_p2",
    "ball_trace_constant_p2",
    "radial_eigenvalue_p2",
    "discrete_p2_eigenpair",
]


def _ball_secular(k: float, rho: float, nu: int, alpha: float) -> float:
    # u(r) = r^-m I_m(k r), m=(nu-2)/2; Robin at rho: u'(rho) = alpha u(rho)
    # reduces to k I_{m+1}(k rho) = alpha I_m(k rho); scaled Bessels for stability
    m = 0.5 * (nu - 2)
    x = k * rho
    return k * ive(m + 1, x) / ive(m, x) - alpha


def ball_eigenvalue_p2(rho: float, nu: int, alpha: float) -> float:
    """Principal radial eigenvalue of the ball at p=2 from the modified
    Bessel secular equation; lambda = -k^2."""
    if alpha == 0:
        return 0.0
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    hi = alpha + (nu - 1) / rho + 10.0
    while _ball_secular(hi, rho, nu, alpha) < 0:
        hi *= 2.0
    k = brentq(lambda k: _ball_secular(k, rho, nu, alpha), 1e-12, hi, xtol=1e-13, rtol=8.9e-16)
    return -k * k


def _shell_determinant(k: float, r: float, R: float, nu: int, alpha: float) -> float:
    # u = c1 r^-m I_m(kr) + c2 r^-m K_m(kr); Robin at both spheres.
    # Entries scaled by e^{+-kx}; the determinant is multiplied by
    # e^{-k(R-r)} which does not change its roots.
    m = 0.5 * (nu - 2)
    a = k * ive(m + 1, k * R) - alpha * ive(m, k * R)
    b = -k * kve(m + 1, k * R) - alpha * kve(m, k * R)
    c = -k * ive(m + 1, k * r) - alpha * ive(m, k * r)
    d = k * kve(m + 1, k * r) - alpha * kve(m, k * r)
    return a * d - b * c * np.exp(-2.0 * k * (R - r))


def shell_eigenvalue_p2(r: float, R: float, nu: int, alpha: float, scan: int = 4000) -> float:
    """Principal radial eigenvalue of the shell at p=2: largest-k root of the
    two-sided Robin secular determinant; lambda = -k^2."""
    if alpha == 0:
        return 0.0
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    hi = alpha + (nu - 1) / r + 10.0
    ks = np.linspace(hi, 1e-9, scan)
    prev = _shell_determinant(ks[0], r, R, nu, alpha)
    for i in range(1, len(ks)):
        cur = _shell_determinant(ks[i], r, R, nu, alpha)
        if prev == 0.0:
            return -ks[i - 1] ** 2
        if prev * cur < 0.0:
            k = brentq(
                lambda k: _shell_determinant(k, r, R, nu, alpha),
                ks[i],
                ks[i - 1],
                xtol=1e-13,
                rtol=8.9e-16,
            )
            return -k * k
        prev = cur
    raise RuntimeError("no secular root found; widen the scan")


def radial_eigenvalue_p2(domain: Ball | Shell, alpha: float) -> float:
    if isinstance(domain, Ball):
        return ball_eigenvalue_p2(domain.rho, domain.nu, alpha)
    if isinstance(domain, Shell):
        return shell_eigenvalue_p2(domain.r, domain.R, domain.nu, alpha)
    raise ValueError(f"oracle needs a ball or shell, got {domain!r}")


def ball_trace_constant_p2(rho: float, nu: int = 2) -> float:
    """S(Ball(rho), 2, 2) = I_{m+1}(rho)/I_m(rho): setting lambda = -1 in the
    secular equation fixes k = 1 and solves for alpha."""
    m = 0.5 * (nu - 2)
    return float(ive(m + 1, rho) / ive(m, rho))


def discrete_p2_eigenpair(spec: ProblemSpec) -> tuple[float, np.ndarray]:
    """Smallest eigenpair of the exact discrete pencil K u = lambda M u at
    p=2 (same stiffness, Robin term, and midpoint mass as the evaluator),
    solved by shift-invert Lanczos. Independent of the descent loop."""
    if spec.p != 2.0:
        raise ValueError("the tridiagonal oracle is for p=2 only")
    import scipy.sparse as sp
    import scipy.sparse.linalg as spla

    h = spec.grid.cell_widths
    w = spec.w_mid
    n1 = len(spec.grid.nodes)
    k = w / h
    mm = w * h / 4.0
    diag_k = np.zeros(n1)
    diag_k[:-1] += k
    diag_k[1:] += k
    diag_k[0] -= spec.alpha * spec.sigma_left
    diag_k[-1] -= spec.alpha * spec.sigma_right
    diag_m = np.zeros(n1)
    diag_m[:-1] += mm
    diag_m[1:] += mm
    off_k = -k
    off_m = mm.copy()
    keep = np.ones(n1, dtype=bool)
    if spec.dirichlet_left:
        keep[0] = False
    if spec.dirichlet_right:
        keep[-1] = False
    idx = np.where(keep)[0]
    K = sp.diags([off_k, diag_k, off_k], [-1, 0, 1], format="csr")[idx][:, idx]
    M = sp.diags([off_m, diag_m, off_m], [-1, 0, 1], format="csr")[idx][:, idx]
    sigma = -(spec.alpha**2 + 2.0 * spec.alpha * max(w) + 1.0)
    vals, vecs = spla.eigsh(K.tocsc(), k=1, M=M.tocsc(), sigma=sigma, which="LM")
    u = np.zeros(n1)
    u[idx] = vecs[:, 0]
    if u[np.argmax(np.abs(u))] < 0:
        u = -u
    ev = QuotientEvaluator(spec)
    return float(vals[0]), ev.normalize(u)
