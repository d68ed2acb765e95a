import math

import numpy as np
import pytest

from robinlab.closedform import halfspace_trace_constant, trace_slope_reference
from robinlab.geometry import Ball, HalfLine, Interval, Sector, Shell
from robinlab.oracles import ball_trace_constant_p2
from robinlab.quotient import SolverConfig
from robinlab.trace import (
    FitError,
    extension_lower_bound,
    trace_constant,
    trace_expansion_slope,
)

CFG = SolverConfig(n_nodes=1500)


class TestTraceConstant:
    @pytest.mark.parametrize("p,val", [(2.0, 1.0), (3.0, 2.0 ** (-2.0 / 3.0))])
    def test_halfline_closed_form_path(self, p, val):
        res = trace_constant(HalfLine(), p, tol=1e-10)
        assert res.constant == pytest.approx(val, abs=1e-6)

    def test_sector_path(self):
        # sharp sector: Lambda = (1-p)(a/sin)^q = -1 at a = sin(theta)*S_halfspace
        theta = math.pi / 4
        res = trace_constant(Sector(theta), 2.0, tol=1e-10)
        assert res.constant == pytest.approx(math.sin(theta), abs=1e-6)

    def test_ball_vs_bessel_inversion(self):
        res = trace_constant(Ball(8.0, 2), 2.0, tol=1e-7, config=CFG)
        assert res.constant == pytest.approx(ball_trace_constant_p2(8.0), abs=2e-5)
        assert res.constant < halfspace_trace_constant(2.0)

    def test_reevaluation_invariant(self):
        res = trace_constant(Ball(4.0, 2), 2.0, tol=1e-6, config=CFG)
        assert abs(res.lambda_at_constant + 1.0) <= 2 * res.tolerance


class TestTraceExpansion:
    def test_ball_p2_slope(self):
        fit = trace_expansion_slope(Ball(1.0, 2), 2.0, [8.0, 16.0, 32.0, 64.0],
                                    tol=1e-7, config=CFG)
        assert fit.s_inf == pytest.approx(1.0, rel=0.02)
        assert fit.slope == pytest.approx(0.5, rel=0.10)
        assert fit.reference_slope == pytest.approx(0.5)

    def test_flat_slab_slope_vanishes(self):
        fit = trace_expansion_slope(Interval(1.0), 2.0, [8.0, 16.0, 32.0],
                                    tol=1e-8, config=CFG)
        assert fit.s_inf == pytest.approx(1.0, rel=0.02)
        assert abs(fit.slope) <= 0.02

    def test_needs_increasing_mus(self):
        with pytest.raises(ValueError, match="increasing"):
            trace_expansion_slope(Ball(1.0, 2), 2.0, [8.0, 4.0, 16.0])

    def test_complement_proxy_sign(self):
        # extension-norm slope assembled from ball and exterior-proxy runs
        # must be positive for a ball (H_max + H_min = 2/rho > 0)
        mus = [8.0, 16.0, 32.0]
        ball_fit = trace_expansion_slope(Ball(1.0, 2), 2.0, mus, tol=1e-7, config=CFG)
        proxy_fit = trace_expansion_slope(Shell(1.0, 7.0, 2), 2.0, mus, tol=1e-7,
                                          config=CFG)
        # E(mu)^p = 1 + S_c/S_o ~ 2 + (slope_o - slope_c)/S_inf * mu^-1
        assembled = ball_fit.slope - proxy_fit.slope
        from robinlab.closedform import extension_expansion_coefficient

        reference = extension_expansion_coefficient(2.0, 2, 1.0, 1.0)
        assert assembled > 0
        assert math.copysign(1.0, assembled) == math.copysign(1.0, reference)


class TestExtensionBound:
    def test_halfspace_identity(self):
        assert extension_lower_bound(1.0, 1.0, 2.0) == pytest.approx(math.sqrt(2.0))

    def test_p3(self):
        assert extension_lower_bound(0.63, 0.63, 3.0) == pytest.approx(2 ** (1 / 3))

    def test_complement_vanishes(self):
        assert extension_lower_bound(1.0, 0.0, 2.0) == pytest.approx(1.0)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            extension_lower_bound(0.0, 1.0, 2.0)
