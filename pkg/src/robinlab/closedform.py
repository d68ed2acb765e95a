"""Exact eigenvalues, trace constants, and auxiliary constants for the
explicitly solvable cases; these serve as oracles for the mesh solver."""

from __future__ import annotations

from dataclasses import dataclass
import math

__all__ = [
    "ClosedFormValue",
    "half_line_eigenvalue",
    "half_line_minimizer",
    "sector_eigenvalue",
    "aux_inequality_constant",
    "leading_asymptote",
    "halfspace_trace_constant",
    "trace_slope_reference",
    "extension_expansion_coefficient",
]


@dataclass(frozen=True)
class ClosedFormValue:
    """A closed-form number together with the name of the formula it came from."""

    value: float
    formula: str


def _check_p(p: float) -> None:
    if p <= 1.0:
        raise ValueError(f"exponent must satisfy p > 1, got {p}")


def half_line_eigenvalue(p: float, alpha: float) -> float:
    """(1-p) * alpha^(p/(p-1)): the half-line / half-space principal value."""
    _check_p(p)
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    return (1.0 - p) * alpha ** (p / (p - 1.0))


def half_line_minimizer(p: float, alpha: float, t) -> float:
    """exp(-alpha^(1/(p-1)) * t), the half-line minimizer profile."""
    _check_p(p)
    beta = alpha ** (1.0 / (p - 1.0))
    import numpy as np

    return np.exp(-beta * np.asarray(t, dtype=float))


def sector_eigenvalue(theta: float, p: float, alpha: float) -> float:
    """Principal value of the infinite planar sector of half-opening theta.

    Blunt sectors (theta >= pi/2) equal the half-plane; sharp sectors are
    strictly lower with the effective Robin parameter alpha/sin(theta).
    """
    _check_p(p)
    if not 0 < theta < math.pi:
        raise ValueError(f"sector angle must lie in (0, pi), got {theta}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if theta >= math.pi / 2:
        return half_line_eigenvalue(p, alpha)
    return (1.0 - p) * (alpha / math.sin(theta)) ** (p / (p - 1.0))


def aux_inequality_constant(p: float) -> float:
    """c(p) = max{(1 - 2^(1/(1-p)))^(1-p), 1}, the constant in
    (a+b)^p <= (1+eps) a^p + c(p) eps^(1-p) b^p for eps in (0,1), a,b >= 0."""
    _check_p(p)
    return max((1.0 - 2.0 ** (1.0 / (1.0 - p))) ** (1.0 - p), 1.0)


def leading_asymptote(p: float, alpha: float, h_max: float, nu: int) -> float:
    """-(p-1) alpha^(p/(p-1)) - (nu-1) H_max alpha: the two-term large-alpha
    expansion of the principal eigenvalue."""
    _check_p(p)
    if nu < 2:
        raise ValueError(f"dimension must be >= 2, got {nu}")
    return -(p - 1.0) * alpha ** (p / (p - 1.0)) - (nu - 1.0) * h_max * alpha


def halfspace_trace_constant(p: float) -> float:
    """S(half-space, p, p) = (p-1)^((1-p)/p)."""
    _check_p(p)
    return (p - 1.0) ** ((1.0 - p) / p)


def trace_slope_reference(p: float, nu: int, h_max: float) -> float:
    """Coefficient of mu^-1 in the expanding-domain trace constant:
    (p-1)^((2-p)/p) (nu-1) H_max / p."""
    _check_p(p)
    return (p - 1.0) ** ((2.0 - p) / p) * (nu - 1.0) * h_max / p


def extension_expansion_coefficient(p: float, nu: int, h_max: float, h_min: float) -> float:
    """Coefficient of mu^-1 in the extension-norm lower bound:
    (p-1)^(1/p) (nu-1) (H_max + H_min) / (2^((p-1)/p) p^2)."""
    _check_p(p)
    return (
        (p - 1.0) ** (1.0 / p)
        * (nu - 1.0)
        * (h_max + h_min)
        / (2.0 ** ((p - 1.0) / p) * p * p)
    )
