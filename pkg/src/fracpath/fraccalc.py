"""Fractional Riemann-Liouville integrals and Weyl-Marchaud derivatives.

Both operator families integrate the power kernel in closed form against
the path's interpolant on every cell, so the singularity at s = t needs
no cutoff: on the cell touching t the interpolant's own increment makes
the integrand integrable and the closed form is applied with a zero
constant term.

All operators are real-valued. The complex phase carried by right-sided
operators in the underlying calculus is excluded here and accounted for
as a single overall sign in the Stieltjes integral module.

Cost is O(n^2); node values are accumulated in row blocks over cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from .grids import Grid, SampledPath, LEFT_CONSTANT, PIECEWISE_LINEAR

__all__ = [
    "FracDerivative",
    "rl_integral_left",
    "rl_integral_right",
    "wm_derivative_left",
    "wm_derivative_right",
]

_ROW_BLOCK = 256

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class FracDerivative:
    """Nodal values of a one-sided Weyl-Marchaud derivative.

    The endpoint node (t=0 for the left side, t=T for the right) carries a
    signed infinity sentinel when the subtracted path does not vanish
    there, making the defining integral divergent.
    """

    grid: Grid
    values: np.ndarray
    order: float
    side: str
    endpoint_value: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _cell_coeffs(path: SampledPath):
    """(c, m) with the interpolant equal to c + m*s on each cell."""
    a = path.grid.times[:-1]
    m = path.cell_slopes()
    if path.interp_rule == LEFT_CONSTANT:
        return path.values[1:].copy(), m
    return path.values[:-1] - m * a, m


def _check_alpha(alpha: float, closed_right: bool):
    hi_ok = alpha <= 1.0 if closed_right else alpha < 1.0
    if not (0.0 < alpha and hi_ok):
        raise ValueError("order must be in (0,1)" + ("]" if closed_right else ""))


def rl_integral_left(path: SampledPath, alpha: float) -> SampledPath:
    """Left fractional integral (1/Gamma(a)) int_0^t f(s)(t-s)^(a-1) ds,
    exact for the interpolant."""
    _check_alpha(alpha, closed_right=True)
    t = path.grid.times
    a, b = t[:-1], t[1:]
    c, m = _cell_coeffs(path)
    n = t.size
    out = np.zeros(n)
    ga = _gamma(alpha)
    for lo in range(1, n, _ROW_BLOCK):
        hi = min(lo + _ROW_BLOCK, n)
        tk = t[lo:hi, None]
        ncell = hi - 1  # cells fully left of every node in the block rows vary
        with np.errstate(invalid="ignore"):
            A = tk - a[None, :ncell]
            B = tk - b[None, :ncell]
            P = c[None, :ncell] + m[None, :ncell] * tk
            contrib = P * (A**alpha - B**alpha) / alpha - m[None, :ncell] * (
                A ** (alpha + 1.0) - B ** (alpha + 1.0)
            ) / (alpha + 1.0)
        mask = np.arange(ncell)[None, :] < np.arange(lo, hi)[:, None]
        out[lo:hi] = np.sum(np.where(mask, contrib, 0.0), axis=1) / ga
    return SampledPath(path.grid, out, PIECEWISE_LINEAR)


def rl_integral_right(path: SampledPath, alpha: float) -> SampledPath:
    """Right fractional integral (1/Gamma(a)) int_t^T f(s)(s-t)^(a-1) ds,
    magnitude part only (no phase factor)."""
    _check_alpha(alpha, closed_right=True)
    t = path.grid.times
    a, b = t[:-1], t[1:]
    c, m = _cell_coeffs(path)
    n = t.size
    out = np.zeros(n)
    ga = _gamma(alpha)
    for lo in range(0, n - 1, _ROW_BLOCK):
        hi = min(lo + _ROW_BLOCK, n - 1)
        tk = t[lo:hi, None]
        with np.errstate(invalid="ignore"):
            A = b[None, lo:] - tk
            B = a[None, lo:] - tk
            P = c[None, lo:] + m[None, lo:] * tk
            contrib = P * (A**alpha - B**alpha) / alpha + m[None, lo:] * (
                A ** (alpha + 1.0) - B ** (alpha + 1.0)
            ) / (alpha + 1.0)
        mask = np.arange(lo, n - 1)[None, :] >= np.arange(lo, hi)[:, None]
        out[lo:hi] = np.sum(np.where(mask, contrib, 0.0), axis=1) / ga
    return SampledPath(path.grid, out, PIECEWISE_LINEAR)


def wm_derivative_left(path: SampledPath, alpha: float, f_a_plus: float = 0.0) -> FracDerivative:
    """Left Weyl-Marchaud derivative of the path minus f_a_plus:

    (1/Gamma(1-a)) ( w(t)/t^a + a int_0^t (w(t)-w(s)) (t-s)^(-1-a) ds ),
    w = f - f_a_plus. The node at t=0 is 0 when w(0) = 0, otherwise a
    signed infinity sentinel.
    """
    _check_alpha(alpha, closed_right=False)
    t = path.grid.times
    v = path.values
    a, b = t[:-1], t[1:]
    h = b - a
    c, m = _cell_coeffs(path)
    n = t.size
    g1 = _gamma(1.0 - alpha)
    out = np.empty(n)

    w0 = v[0] - f_a_plus
    out[0] = 0.0 if w0 == 0.0 else math.copysign(math.inf, w0)

    # adjacent cell (the one ending at t_k): the interpolant reaches w(t_k)
    # at the cell's right edge, so the constant term vanishes identically
    adj = m * h ** (1.0 - alpha) / (1.0 - alpha)

    for lo in range(1, n, _ROW_BLOCK):
        hi = min(lo + _ROW_BLOCK, n)
        tk = t[lo:hi, None]
        vk = v[lo:hi, None]
        ncell = hi - 1
        with np.errstate(invalid="ignore", divide="ignore"):
            A = tk - a[None, :ncell]
            B = tk - b[None, :ncell]
            C = vk - c[None, :ncell] - m[None, :ncell] * tk
            contrib = C * (B**-alpha - A**-alpha) / alpha + m[None, :ncell] * (
                A ** (1.0 - alpha) - B ** (1.0 - alpha)
            ) / (1.0 - alpha)
        mask = np.arange(ncell)[None, :] < np.arange(lo, hi)[:, None] - 1
        inner = np.sum(np.where(mask, contrib, 0.0), axis=1) + adj[lo - 1 : hi - 1]
        wk = v[lo:hi] - f_a_plus
        out[lo:hi] = (wk / t[lo:hi] ** alpha + alpha * inner) / g1

    return FracDerivative(path.grid, out, alpha, LEFT, float(out[0]))


def wm_derivative_right(path: SampledPath, alpha: float, g_b_minus: float = 0.0) -> FracDerivative:
    """Right Weyl-Marchaud derivative of the path minus g_b_minus,
    magnitude form (no phase factor):

    (1/Gamma(1-a)) ( w(t)/(T-t)^a + a int_t^T (w(t)-w(s)) (s-t)^(-1-a) ds ).

    Left-constant paths jump immediately to the right of interior nodes,
    which makes the singular integral diverge there; such nodes carry
    signed infinity sentinels.
    """
    _check_alpha(alpha, closed_right=False)
    t = path.grid.times
    v = path.values
    a, b = t[:-1], t[1:]
    h = b - a
    c, m = _cell_coeffs(path)
    n = t.size
    g1 = _gamma(1.0 - alpha)
    out = np.empty(n)

    wT = v[-1] - g_b_minus
    out[-1] = 0.0 if wT == 0.0 else math.copysign(math.inf, wT)

    if path.interp_rule == LEFT_CONSTANT:
        # w(t_k) - interpolant just right of t_k = v_k - v_{k+1}
        c_adj = v[:-1] - v[1:]
    else:
        c_adj = np.zeros(n - 1)
    adj = np.where(
        c_adj == 0.0,
        -m * h ** (1.0 - alpha) / (1.0 - alpha),
        np.copysign(np.inf, np.where(c_adj == 0.0, 1.0, c_adj)),
    )

    for lo in range(0, n - 1, _ROW_BLOCK):
        hi = min(lo + _ROW_BLOCK, n - 1)
        tk = t[lo:hi, None]
        vk = v[lo:hi, None]
        with np.errstate(invalid="ignore", divide="ignore"):
            A = b[None, lo:] - tk
            B = a[None, lo:] - tk
            C = vk - c[None, lo:] - m[None, lo:] * tk
            contrib = C * (B**-alpha - A**-alpha) / alpha - m[None, lo:] * (
                A ** (1.0 - alpha) - B ** (1.0 - alpha)
            ) / (1.0 - alpha)
        mask = np.arange(lo, n - 1)[None, :] > np.arange(lo, hi)[:, None]
        inner = np.sum(np.where(mask, contrib, 0.0), axis=1) + adj[lo:hi]
        wk = v[lo:hi] - g_b_minus
        out[lo:hi] = (wk / (t[-1] - t[lo:hi]) ** alpha + alpha * inner) / g1

    return FracDerivative(path.grid, out, alpha, RIGHT, float(out[-1]))
