"""Domain descriptors, curvature data, and the boundary-layer volume weight.

All geometry objects are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

__all__ = [
    "HalfLine",
    "Interval",
    "Ball",
    "Shell",
    "Sector",
    "ModelLayer",
    "Domain",
    "CurvatureData",
    "WeightProfile",
    "weight_from_curvatures",
    "radial_weight",
    "curvature_data",
    "scaled",
    "domain_to_json",
    "domain_from_json",
]

# Positivity of the weight prod(1 - kappa*t) is only guaranteed while
# t*max|kappa| stays below 1; we cap at 1/2 so each factor sits in [1/2, 3/2].
MAX_CURVATURE_DEPTH = 0.5


@dataclass(frozen=True)
class HalfLine:
    """The half-line (0, inf) with a Robin condition at t=0."""

    kind = "halfline"


@dataclass(frozen=True)
class Interval:
    """Flat slab of thickness ``delta`` with Robin conditions at both ends."""

    delta: float
    kind = "interval"

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"interval length must be positive, got {self.delta}")


@dataclass(frozen=True)
class Ball:
    """Ball of radius ``rho`` in dimension ``nu`` (Robin on the sphere)."""

    rho: float
    nu: int
    kind = "ball"

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"ball radius must be positive, got {self.rho}")
        if self.nu < 2:
            raise ValueError(f"ball dimension must be >= 2, got {self.nu}")


@dataclass(frozen=True)
class Shell:
    """Spherical shell r < |x| < R in dimension ``nu`` (Robin on both spheres)."""

    r: float
    R: float
    nu: int
    kind = "shell"

    def __post_init__(self):
        if not 0 < self.r < self.R:
            raise ValueError(f"shell radii must satisfy 0 < r < R, got r={self.r}, R={self.R}")
        if self.nu < 2:
            raise ValueError(f"shell dimension must be >= 2, got {self.nu}")


@dataclass(frozen=True)
class Sector:
    """Infinite planar sector of half-opening ``theta`` in (0, pi).

    Served exclusively by closed-form evaluation; it carries no mesh.
    """

    theta: float
    kind = "sector"

    def __post_init__(self):
        if not 0 < self.theta < math.pi:
            raise ValueError(f"sector angle must lie in (0, pi), got {self.theta}")


@dataclass(frozen=True)
class ModelLayer:
    """One-dimensional boundary-layer model on (0, delta).

    Robin condition at t=0, volume weight prod_j (1 - kappa_j * t) built from
    the principal curvatures ``kappas`` of the flattened boundary.
    """

    kappas: tuple[float, ...]
    delta: float
    kind = "modellayer"

    def __post_init__(self):
        object.__setattr__(self, "kappas", tuple(float(k) for k in self.kappas))
        if not self.delta > 0:
            raise ValueError(f"layer depth must be positive, got {self.delta}")
        kmax = max((abs(k) for k in self.kappas), default=0.0)
        if self.delta * kmax > MAX_CURVATURE_DEPTH:
            raise ValueError(
                f"layer depth too large: delta*max|kappa| = {self.delta * kmax:.4g} > "
                f"{MAX_CURVATURE_DEPTH} (weight positivity not guaranteed)"
            )


Domain = HalfLine | Interval | Ball | Shell | Sector | ModelLayer


@dataclass(frozen=True)
class CurvatureData:
    """Mean-curvature summary of a domain boundary.

    ``h_components`` lists the (constant) mean curvature of each Robin
    boundary component with respect to the outward normal, ordered to match
    the solver's endpoint ordering (left endpoint first for shells).
    """

    h_components: tuple[float, ...]
    h_max: float
    h_min: float
    nu: int

    @property
    def m_max(self) -> float:
        """(nu-1) * H_max, the curvature coefficient of the eigenvalue expansion."""
        return (self.nu - 1) * self.h_max


def curvature_data(domain: Domain) -> CurvatureData:
    """Mean curvature per boundary component, outward-normal convention.

    The inner sphere of a shell has negative mean curvature (the outward
    normal of the domain points toward the center there), so a shell's
    maximum mean curvature is 1/R.
    """
    if isinstance(domain, Ball):
        h = 1.0 / domain.rho
        return CurvatureData((h,), h, h, domain.nu)
    if isinstance(domain, Shell):
        h_in = -1.0 / domain.r
        h_out = 1.0 / domain.R
        return CurvatureData((h_in, h_out), h_out, h_in, domain.nu)
    if isinstance(domain, ModelLayer):
        nu = len(domain.kappas) + 1
        h = sum(domain.kappas) / max(len(domain.kappas), 1)
        return CurvatureData((h,), h, h, nu)
    if isinstance(domain, (HalfLine, Interval)):
        return CurvatureData((0.0,), 0.0, 0.0, 2)
    raise ValueError(f"no curvature data for domain kind {domain.kind!r}")


@dataclass(frozen=True)
class WeightProfile:
    """Polynomial volume weight t -> prod_j (1 - kappa_j t) on [0, delta].

    ``coeffs`` are ascending power coefficients; coeffs[0] == 1 and
    -coeffs[1] equals the curvature sum M.
    """

    coeffs: tuple[float, ...]
    delta: float

    def __post_init__(self):
        if abs(self.coeffs[0] - 1.0) > 1e-12:
            raise ValueError("weight must equal 1 at t=0")
        lo, hi = self.range_on_layer()
        if lo < 0.5 - 1e-12 or hi > 2.0 + 1e-12:
            raise ValueError(
                f"weight leaves [1/2, 2] on [0, {self.delta}]: range [{lo:.4g}, {hi:.4g}]"
            )

    @property
    def curvature_sum(self) -> float:
        """M = sum of principal curvatures = -phi'(0)."""
        return -self.coeffs[1] if len(self.coeffs) > 1 else 0.0

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), self.coeffs)

    def range_on_layer(self, samples: int = 1025) -> tuple[float, float]:
        ts = np.linspace(0.0, self.delta, samples)
        vals = self(ts)
        return float(vals.min()), float(vals.max())


def weight_from_curvatures(kappas, delta: float) -> WeightProfile:
    """Expand prod_j (1 - kappa_j t) into a WeightProfile on [0, delta].

    Rejects delta * max|kappa| > 1/2, where the positivity of the weight is
    no longer guaranteed.
    """
    kappas = tuple(float(k) for k in kappas)
    if not delta > 0:
        raise ValueError(f"layer depth must be positive, got {delta}")
    kmax = max((abs(k) for k in kappas), default=0.0)
    if delta * kmax > MAX_CURVATURE_DEPTH:
        raise ValueError(
            f"delta*max|kappa| = {delta * kmax:.4g} exceeds {MAX_CURVATURE_DEPTH}"
        )
    coeffs = np.array([1.0])
    for k in kappas:
        coeffs = np.convolve(coeffs, np.array([1.0, -k]))
    return WeightProfile(tuple(coeffs), delta)


def radial_weight(domain: Ball | Shell, r: float) -> float:
    """Radial volume element r^(nu-1) at radius r inside the domain."""
    if isinstance(domain, Ball):
        lo, hi = 0.0, domain.rho
    elif isinstance(domain, Shell):
        lo, hi = domain.r, domain.R
    else:
        raise ValueError(f"radial weight needs a ball or shell, got {domain.kind!r}")
    if not lo <= r <= hi:
        raise ValueError(f"radius {r} outside radial range [{lo}, {hi}]")
    return float(r ** (domain.nu - 1))


def scaled(domain: Domain, mu: float) -> Domain:
    """The dilated domain mu * Omega."""
    if not mu > 0:
        raise ValueError(f"scale factor must be positive, got {mu}")
    if isinstance(domain, HalfLine):
        return domain
    if isinstance(domain, Interval):
        return Interval(mu * domain.delta)
    if isinstance(domain, Ball):
        return Ball(mu * domain.rho, domain.nu)
    if isinstance(domain, Shell):
        return Shell(mu * domain.r, mu * domain.R, domain.nu)
    if isinstance(domain, Sector):
        return domain
    if isinstance(domain, ModelLayer):
        return ModelLayer(tuple(k / mu for k in domain.kappas), mu * domain.delta)
    raise ValueError(f"cannot scale domain kind {domain.kind!r}")


def domain_to_json(domain: Domain) -> dict:
    if isinstance(domain, HalfLine):
        return {"kind": "halfline"}
    if isinstance(domain, Interval):
        return {"kind": "interval", "delta": domain.delta}
    if isinstance(domain, Ball):
        return {"kind": "ball", "rho": domain.rho, "nu": domain.nu}
    if isinstance(domain, Shell):
        return {"kind": "shell", "r": domain.r, "R": domain.R, "nu": domain.nu}
    if isinstance(domain, Sector):
        return {"kind": "sector", "theta": domain.theta}
    if isinstance(domain, ModelLayer):
        return {"kind": "modellayer", "kappas": list(domain.kappas), "delta": domain.delta}
    raise ValueError(f"unknown domain {domain!r}")


def domain_from_json(obj: dict) -> Domain:
    """Parse a domain from its JSON object form; unknown keys are rejected."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"domain JSON must be an object with a 'kind' field, got {obj!r}")
    kind = obj["kind"]
    fields_by_kind = {
        "halfline": set(),
        "interval": {"delta"},
        "ball": {"rho", "nu"},
        "shell": {"r", "R", "nu"},
        "sector": {"theta"},
        "modellayer": {"kappas", "delta"},
    }
    if kind not in fields_by_kind:
        raise ValueError(f"unknown domain kind {kind!r}")
    expected = fields_by_kind[kind]
    extra = set(obj) - expected - {"kind"}
    missing = expected - set(obj)
    if extra:
        raise ValueError(f"unknown keys for domain {kind!r}: {sorted(extra)}")
    if missing:
        raise ValueError(f"missing keys for domain {kind!r}: {sorted(missing)}")
    if kind == "halfline":
        return HalfLine()
    if kind == "interval":
        return Interval(float(obj["delta"]))
    if kind == "ball":
        return Ball(float(obj["rho"]), int(obj["nu"]))
    if kind == "shell":
        return Shell(float(obj["r"]), float(obj["R"]), int(obj["nu"]))
    if kind == "sector":
        return Sector(float(obj["theta"]))
    return ModelLayer(tuple(float(k) for k in obj["kappas"]), float(obj["delta"]))
