"""Fractional integrals and derivatives against closed-form references."""

import math

import numpy as np
import pytest
from scipy.special import gamma

from fracpath.fraccalc import (
    rl_integral_left,
    rl_integral_right,
    wm_derivative_left,
    wm_derivative_right,
)
from fracpath.grids import LEFT_CONSTANT, SampledPath, make_uniform_grid


def _line(n=513, T=1.0):
    g = make_uniform_grid(T, n)
    return SampledPath(g, g.times)


def _const(n=513, c=1.0):
    g = make_uniform_grid(1.0, n)
    return SampledPath(g, np.full(n, c))


def test_left_integral_of_constant_is_power():
    # I^alpha 1 = t^alpha / Gamma(alpha + 1), exact for piecewise-linear input
    for alpha in (0.3, 0.5, 0.8):
        out = rl_integral_left(_const(), alpha)
        t = out.grid.times
        np.testing.assert_allclose(
            out.values, t**alpha / gamma(alpha + 1.0), rtol=1e-12, atol=1e-14
        )


def test_left_integral_of_line_is_power():
    # I^alpha t = t^(alpha+1) / Gamma(alpha + 2)
    alpha = 0.5
    out = rl_integral_left(_line(), alpha)
    t = out.grid.times
    np.testing.assert_allclose(
        out.values, t**1.5 / gamma(2.5), rtol=1e-12, atol=1e-14
    )


def test_right_integral_mirrors_left():
    # for g(t) = T - t the right integral at t equals the left integral
    # of the identity at T - t
    alpha = 0.4
    g = make_uniform_grid(1.0, 257)
    flipped = SampledPath(g, 1.0 - g.times)
    out = rl_integral_right(flipped, alpha)
    ref = rl_integral_left(_line(257), alpha)
    np.testing.assert_allclose(out.values, ref.values[::-1], rtol=1e-12, atol=1e-14)


def test_half_derivative_of_identity_power_rule():
    # D^0.5 t = 2 sqrt(t / pi)
    x = _line(2049)
    d = wm_derivative_left(x, 0.5, 0.0)
    t = x.grid.times[1:]
    ref = 2.0 * np.sqrt(t / math.pi)
    err = np.abs(d.values[1:] - ref)
    assert np.max(err / ref) < 1e-3
    assert abs(d.values[-1] - 2.0 / gamma(0.5)) < 1e-4


def test_derivative_inverts_integral_on_smooth_input():
    g = make_uniform_grid(1.0, 1025)
    x = SampledPath(g, np.sin(3.0 * g.times) + g.times)
    alpha = 0.4
    ix = rl_integral_left(x, alpha)
    back = wm_derivative_left(ix, alpha, 0.0)
    sl = slice(8, -1)  # skip the first nodes where both sides are tiny
    rel = np.max(np.abs(back.values[sl] - x.values[sl]) / np.max(np.abs(x.values)))
    assert rel < 1e-2


def test_derivative_is_linear():
    g = make_uniform_grid(1.0, 257)
    rng = np.random.default_rng(0)
    a = SampledPath(g, np.cumsum(rng.standard_normal(257)) * 0.05)
    b = SampledPath(g, np.cumsum(rng.standard_normal(257)) * 0.05)
    combo = SampledPath(g, 2.0 * a.values - 3.0 * b.values)
    da = wm_derivative_left(a, 0.3, float(a.values[0])).values
    db = wm_derivative_left(b, 0.3, float(b.values[0])).values
    dc = wm_derivative_left(combo, 0.3, float(combo.values[0])).values
    np.testing.assert_allclose(dc[1:], 2.0 * da[1:] - 3.0 * db[1:], rtol=1e-9)


def test_right_derivative_of_line_power_rule():
    # with g(T) subtracted, D_right^alpha (t - T) = -(T-t)^(1-alpha)/Gamma(2-alpha)
    # times Gamma(2)/..., checked against the exact kernel value
    alpha = 0.5
    g = make_uniform_grid(1.0, 2049)
    x = SampledPath(g, g.times)
    d = wm_derivative_right(x, alpha, 1.0)
    t = g.times[:-1]
    ref = -((1.0 - t) ** (1.0 - alpha)) * 2.0 / np.sqrt(math.pi)
    err = np.abs(d.values[:-1] - ref)
    assert np.max(err / np.abs(ref).max()) < 1e-3


def test_left_constant_path_has_singular_right_derivative():
    g = make_uniform_grid(1.0, 65)
    vals = (g.times >= 0.5).astype(float)
    x = SampledPath(g, vals, LEFT_CONSTANT)
    d = wm_derivative_right(x, 0.5, 1.0)
    assert np.any(~np.isfinite(d.values))


def test_order_validation():
    with pytest.raises(ValueError):
        wm_derivative_left(_line(65), 1.0, 0.0)
    with pytest.raises(ValueError):
        rl_integral_left(_line(65), 0.0)


def test_refinement_improves_accuracy_on_curved_input():
    # D^alpha t^2 at t = 1 is Gamma(3)/Gamma(3-alpha); the piecewise-linear
    # sample of t^2 carries a discretization error that refinement shrinks
    alpha = 0.5
    ref = 2.0 / gamma(2.5)
    errs = []
    for n in (129, 513):
        g = make_uniform_grid(1.0, n)
        x = SampledPath(g, g.times**2)
        d = wm_derivative_left(x, alpha, 0.0)
        errs.append(abs(d.values[-1] - ref))
    assert errs[1] < errs[0]
    assert errs[1] < 1e-4
