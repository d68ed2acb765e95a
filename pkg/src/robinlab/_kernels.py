"""Hot numeric kernels for the discrete p-Rayleigh quotient.

Each kernel exists twice: a loop form compiled with numba.njit and a
vectorized numpy fallback. Selection happens once at import time; set
``ROBINLAB_NO_NUMBA=1`` (or any nonempty value) to force the numpy path.
Both paths compute the same quantities to roundoff-level agreement (they
may differ in summation order, so results are not bit-identical between
backends).
"""

from __future__ import annotations

import os

import numpy as np

_want_numba = not os.environ.get("ROBINLAB_NO_NUMBA")

if _want_numba:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def energy_numpy(u, h, wmid, p, alpha, sig_left, sig_right):
    """Return (J, N): the p-energy minus Robin boundary term, and the p-mass.

    Piecewise-linear elements, midpoint quadrature for both integrals.
    """
    s = np.diff(u) / h
    wh = wmid * h
    J = float(np.sum(np.abs(s) ** p * wh))
    J -= alpha * (sig_left * abs(u[0]) ** p + sig_right * abs(u[-1]) ** p)
    um = 0.5 * (u[:-1] + u[1:])
    N = float(np.sum(np.abs(um) ** p * wh))
    return J, N


def grad_rows_numpy(u, h, wmid, p, alpha, sig_left, sig_right):
    """Nodal gradients (dJ/du, dN/du) of the two energy forms."""
    s = np.diff(u) / h
    flux = p * np.sign(s) * np.abs(s) ** (p - 1.0) * wmid
    gJ = np.zeros_like(u)
    gJ[1:] += flux
    gJ[:-1] -= flux
    gJ[0] -= alpha * sig_left * p * np.sign(u[0]) * abs(u[0]) ** (p - 1.0)
    gJ[-1] -= alpha * sig_right * p * np.sign(u[-1]) * abs(u[-1]) ** (p - 1.0)
    um = 0.5 * (u[:-1] + u[1:])
    mrow = 0.5 * p * np.sign(um) * np.abs(um) ** (p - 1.0) * wmid * h
    gN = np.zeros_like(u)
    gN[:-1] += mrow
    gN[1:] += mrow
    return gJ, gN


def pencil_coeffs_numpy(u, h, wmid, p):
    """Linearized stiffness/mass coefficients |s|^(p-2) w/h and |um|^(p-2) w h/4.

    Tiny slopes and midpoint values are floored at a relative 1e-14 so the
    coefficients stay finite for p < 2.
    """
    s = np.abs(np.diff(u) / h)
    smax = float(np.max(s))
    sfl = np.maximum(s, 1e-300 + 1e-14 * smax)
    cstiff = sfl ** (p - 2.0) * wmid / h
    um = np.abs(0.5 * (u[:-1] + u[1:]))
    umax = float(np.max(um))
    ufl = np.maximum(um, 1e-300 + 1e-14 * umax)
    cmass = ufl ** (p - 2.0) * wmid * h * 0.25
    return cstiff, cmass


def tridiag_spd_solve_numpy(lower, diag, upper, rhs):
    """Thomas solve of a symmetric tridiagonal system.

    Returns (ok, x); ok is False when a pivot is nonpositive, i.e. the
    matrix is not positive definite and the factorization is abandoned.
    """
    n = len(diag)
    c = np.empty(n)
    d = np.empty(n)
    m = diag[0]
    if not m > 0.0:
        return False, rhs
    c[0] = upper[0] / m
    d[0] = rhs[0] / m
    for i in range(1, n):
        m = diag[i] - lower[i - 1] * c[i - 1]
        if not m > 0.0:
            return False, rhs
        c[i] = upper[i] / m if i < n - 1 else 0.0
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / m
    x = np.empty(n)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return True, x


# ---------------------------------------------------------------------------
# numba (loop) implementations
# ---------------------------------------------------------------------------

def _energy_loop(u, h, wmid, p, alpha, sig_left, sig_right):
    n = h.shape[0]
    J = 0.0
    N = 0.0
    for i in range(n):
        s = (u[i + 1] - u[i]) / h[i]
        wh = wmid[i] * h[i]
        J += abs(s) ** p * wh
        um = 0.5 * (u[i] + u[i + 1])
        N += abs(um) ** p * wh
    J -= alpha * (sig_left * abs(u[0]) ** p + sig_right * abs(u[n]) ** p)
    return J, N


def _grad_rows_loop(u, h, wmid, p, alpha, sig_left, sig_right):
    n = h.shape[0]
    gJ = np.zeros(n + 1)
    gN = np.zeros(n + 1)
    for i in range(n):
        s = (u[i + 1] - u[i]) / h[i]
        if s >= 0.0:
            flux = p * s ** (p - 1.0) * wmid[i]
        else:
            flux = -p * (-s) ** (p - 1.0) * wmid[i]
        gJ[i + 1] += flux
        gJ[i] -= flux
        um = 0.5 * (u[i] + u[i + 1])
        if um >= 0.0:
            mrow = 0.5 * p * um ** (p - 1.0) * wmid[i] * h[i]
        else:
            mrow = -0.5 * p * (-um) ** (p - 1.0) * wmid[i] * h[i]
        gN[i] += mrow
        gN[i + 1] += mrow
    u0 = u[0]
    if u0 >= 0.0:
        gJ[0] -= alpha * sig_left * p * u0 ** (p - 1.0)
    else:
        gJ[0] += alpha * sig_left * p * (-u0) ** (p - 1.0)
    uN = u[n]
    if uN >= 0.0:
        gJ[n] -= alpha * sig_right * p * uN ** (p - 1.0)
    else:
        gJ[n] += alpha * sig_right * p * (-uN) ** (p - 1.0)
    return gJ, gN


def _pencil_coeffs_loop(u, h, wmid, p):
    n = h.shape[0]
    cstiff = np.empty(n)
    cmass = np.empty(n)
    smax = 0.0
    umax = 0.0
    for i in range(n):
        s = abs((u[i + 1] - u[i]) / h[i])
        if s > smax:
            smax = s
        um = abs(0.5 * (u[i] + u[i + 1]))
        if um > umax:
            umax = um
    sfloor = 1e-300 + 1e-14 * smax
    ufloor = 1e-300 + 1e-14 * umax
    for i in range(n):
        s = abs((u[i + 1] - u[i]) / h[i])
        if s < sfloor:
            s = sfloor
        cstiff[i] = s ** (p - 2.0) * wmid[i] / h[i]
        um = abs(0.5 * (u[i] + u[i + 1]))
        if um < ufloor:
            um = ufloor
        cmass[i] = um ** (p - 2.0) * wmid[i] * h[i] * 0.25
    return cstiff, cmass


def _tridiag_spd_solve_loop(lower, diag, upper, rhs):
    n = diag.shape[0]
    c = np.empty(n)
    d = np.empty(n)
    m = diag[0]
    if not m > 0.0:
        return False, rhs
    c[0] = upper[0] / m
    d[0] = rhs[0] / m
    for i in range(1, n):
        m = diag[i] - lower[i - 1] * c[i - 1]
        if not m > 0.0:
            return False, rhs
        if i < n - 1:
            c[i] = upper[i] / m
        else:
            c[i] = 0.0
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / m
    x = np.empty(n)
    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return True, x


if NUMBA_ENABLED:
    energy = njit(cache=True)(_energy_loop)
    grad_rows = njit(cache=True)(_grad_rows_loop)
    pencil_coeffs = njit(cache=True)(_pencil_coeffs_loop)
    tridiag_spd_solve = njit(cache=True)(_tridiag_spd_solve_loop)
else:
    energy = energy_numpy
    grad_rows = grad_rows_numpy
    pencil_coeffs = pencil_coeffs_numpy
    tridiag_spd_solve = tridiag_spd_solve_numpy
