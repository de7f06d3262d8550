"""Right-continuous functions of locally finite variation.

A function is represented as an anchor value at 0, a finite list of jumps
with the right-continuous convention, a named absolutely continuous part
carrying its own derivative, and an optional clamp window that truncates
the function outside [-k, k].

Mollification smooths against the scaled bump density
phi(u) = C exp(-1/(u(1-u))) on (0, 1); its symmetry makes half-mass test
points exact. The jump part of a mollified function is evaluated through
a precomputed table of the bump's distribution function, the absolutely
continuous part by adaptive quadrature split at the known breakpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

__all__ = [
    "BVFunction",
    "JordanPair",
    "MollifiedFunction",
    "total_variation",
    "jordan_decompose",
    "truncate",
    "mollify",
    "d1_constant",
    "AC_FORMULAS",
]


def _ramp_value(x):
    return np.clip(2.0 * (np.asarray(x, dtype=float) + 0.25), 0.0, 1.0) - 0.5


def _ramp_deriv(x):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 0.25, 2.0, 0.0)


# id -> (value with value(0) = 0, derivative, derivative breakpoints)
AC_FORMULAS = {
    "zero": (lambda x: np.zeros_like(np.asarray(x, dtype=float)),
             lambda x: np.zeros_like(np.asarray(x, dtype=float)), ()),
    "identity": (lambda x: np.asarray(x, dtype=float),
                 lambda x: np.ones_like(np.asarray(x, dtype=float)), ()),
    "square": (lambda x: np.asarray(x, dtype=float) ** 2,
               lambda x: 2.0 * np.asarray(x, dtype=float), ()),
    "sine": (np.sin, np.cos, ()),
    "ramp": (_ramp_value, _ramp_deriv, (-0.25, 0.25)),
}


@dataclass(frozen=True)
class BVFunction:
    """f(x) = base + F(clip(x)) + sum of jump sizes arrived by clip(x).

    jumps: tuple of (location, size), strictly increasing locations,
    right-continuous convention (the jump value is attained at its
    location). ac: key into AC_FORMULAS. base: the value f(0).
    lipschitz_window: optional (eps, constant) declaring |f'| <= constant
    on (-eps, eps). clip: optional (lo, hi) clamp window.
    """

    jumps: tuple = ()
    ac: str = "zero"
    base: float = 0.0
    lipschitz_window: tuple | None = None
    clip: tuple | None = None

    def __post_init__(self):
        jumps = tuple((float(a), float(b)) for a, b in self.jumps)
        locs = [a for a, _ in jumps]
        if locs != sorted(locs) or len(set(locs)) != len(locs):
            raise ValueError("jump locations must be strictly increasing")
        object.__setattr__(self, "jumps", jumps)
        if self.ac not in AC_FORMULAS:
            raise ValueError(f"unknown ac formula {self.ac!r}")
        if self.lipschitz_window is not None:
            eps, const = self.lipschitz_window
            if eps <= 0 or const < 0:
                raise ValueError("lipschitz_window must be (eps > 0, constant >= 0)")
            object.__setattr__(self, "lipschitz_window", (float(eps), float(const)))
        if self.clip is not None:
            lo, hi = self.clip
            if not lo < 0 < hi:
                raise ValueError("clip window must contain 0")
            object.__setattr__(self, "clip", (float(lo), float(hi)))

    def _window(self):
        if self.clip is None:
            return -np.inf, np.inf
        return self.clip

    def _genuine_jumps(self):
        """Jumps that survive the clamp: lo < loc <= hi."""
        lo, hi = self._window()
        return [(a, s) for a, s in self.jumps if lo < a <= hi]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self._window()
        y = np.clip(x, lo, hi)
        fval, _, _ = AC_FORMULAS[self.ac]
        out = self.base + fval(y)
        for loc, size in self.jumps:
            out = out + size * ((loc <= y).astype(float) - float(loc <= 0.0))
        return out if out.ndim else float(out)

    def to_json(self) -> dict:
        d = {
            "jumps": [{"loc": a, "size": s} for a, s in self.jumps],
            "ac": self.ac,
            "base": self.base,
        }
        if self.lipschitz_window is not None:
            d["lipschitz_window"] = {
                "eps": self.lipschitz_window[0],
                "constant": self.lipschitz_window[1],
            }
        if self.clip is not None:
            d["clip"] = {"lo": self.clip[0], "hi": self.clip[1]}
        return d

    @classmethod
    def from_json(cls, d: dict) -> "BVFunction":
        known = {"jumps", "ac", "base", "lipschitz_window", "clip"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown BVFunction keys: {sorted(unknown)}")
        jumps = tuple((j["loc"], j["size"]) for j in d.get("jumps", ()))
        lw = d.get("lipschitz_window")
        clip = d.get("clip")
        return cls(
            jumps=jumps,
            ac=d.get("ac", "zero"),
            base=d.get("base", 0.0),
            lipschitz_window=None if lw is None else (lw["eps"], lw["constant"]),
            clip=None if clip is None else (clip["lo"], clip["hi"]),
        )


def _abs_deriv_integral(f: BVFunction, a: float, b: float) -> float:
    """int_a^b |f'_ac| restricted to the clamp window."""
    lo, hi = f._window()
    aa, bb = max(a, lo), min(b, hi)
    if not aa < bb:
        return 0.0
    _, deriv, kinks = AC_FORMULAS[f.ac]
    if f.ac == "zero":
        return 0.0
    pts = sorted(k for k in kinks if aa < k < bb)
    val, _ = integrate.quad(
        lambda z: abs(float(deriv(z))), aa, bb, points=pts or None, limit=200
    )
    return val


def total_variation(f: BVFunction, a: float, b: float) -> float:
    """Variation-measure mass mu_f(a, b] = |ac'| integral + jump sizes."""
    if not a < b:
        raise ValueError("need a < b")
    lo, hi = f._window()
    jump_part = sum(abs(s) for loc, s in f._genuine_jumps() if max(a, lo) < loc <= min(b, hi))
    return jump_part + _abs_deriv_integral(f, a, b)


def _variation_total(f: BVFunction) -> float:
    """Total variation over the whole line; +inf when unbounded."""
    jump_part = sum(abs(s) for _, s in f._genuine_jumps())
    if f.ac == "zero":
        return jump_part
    lo, hi = f._window()
    kinks = AC_FORMULAS[f.ac][2]
    if not np.isfinite(lo):
        # unclamped: finite only for derivatives of bounded support
        if kinks:
            lo, hi = min(kinks), max(kinks)
        else:
            return np.inf
    return jump_part + _abs_deriv_integral(f, lo, hi)


@dataclass(frozen=True)
class JordanPair:
    """Decomposition f = base + plus - minus with both parts non-decreasing,
    right-continuous and vanishing at 0."""

    plus: object
    minus: object
    base: float


def jordan_decompose(f: BVFunction) -> JordanPair:
    lo, hi = f._window()
    _, deriv, kinks = AC_FORMULAS[f.ac]

    def signed_part(sign):
        def part(t):
            t = np.asarray(t, dtype=float)
            y = np.clip(t, lo, hi)
            out = np.zeros_like(y)
            for loc, size in f.jumps:
                if sign * size > 0:
                    out = out + abs(size) * ((loc <= y).astype(float) - float(loc <= 0.0))
            if f.ac != "zero":
                flat = np.atleast_1d(y)
                acc = np.empty_like(flat)
                for i, yy in enumerate(flat):
                    a, b = min(0.0, yy), max(0.0, yy)
                    pts = sorted(k for k in kinks if a < k < b)
                    q, _ = integrate.quad(
                        lambda z: max(sign * float(deriv(z)), 0.0),
                        a, b, points=pts or None, limit=200,
                    )
                    acc[i] = q if yy >= 0.0 else -q
                out = out + acc.reshape(y.shape)
            return out if out.ndim else float(out)

        return part

    return JordanPair(signed_part(+1), signed_part(-1), f.base)


def truncate(f: BVFunction, k: float) -> BVFunction:
    """Clamp f to its values on [-k, k]: constant f(-k) below, f(k) above.

    A jump exactly at -k is flattened away (the right-continuous value is
    already attained there); a jump exactly at +k survives.
    """
    if not k > 0:
        raise ValueError("k must be positive")
    lo, hi = f._window()
    return replace(f, clip=(max(lo, -k), min(hi, k)))


# Bump mollifier phi(u) = C exp(-1/(u(1-u))) on (0, 1).
_BUMP_STATE: dict = {}


def _bump_setup():
    if _BUMP_STATE:
        return _BUMP_STATE
    raw = lambda u: np.exp(-1.0 / (u * (1.0 - u)))
    mass, _ = integrate.quad(raw, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13)
    c = 1.0 / mass
    u = np.linspace(0.0, 1.0, 16385)
    pdf = np.zeros_like(u)
    inner = (u > 0.0) & (u < 1.0)
    pdf[inner] = c * raw(u[inner])
    cdf = integrate.cumulative_trapezoid(pdf, u, initial=0.0)
    cdf /= cdf[-1]
    # symmetrize so that the half-mass point is exactly 1/2
    cdf = 0.5 * (cdf + 1.0 - cdf[::-1])
    _BUMP_STATE.update({"c": c, "u": u, "cdf": cdf})
    return _BUMP_STATE


def bump_pdf(u):
    """The fixed mollifier density phi, vectorized, zero outside (0, 1)."""
    st = _bump_setup()
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inner = (u > 0.0) & (u < 1.0)
    out[inner] = st["c"] * np.exp(-1.0 / (u[inner] * (1.0 - u[inner])))
    return out if out.ndim else float(out)


def bump_cdf(u):
    """Distribution function of the mollifier, from the precomputed table."""
    st = _bump_setup()
    u = np.asarray(u, dtype=float)
    out = np.interp(u, st["u"], st["cdf"], left=0.0, right=1.0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class MollifiedFunction:
    """Smooth approximation f_n(x) = E f(x - xi/n), xi ~ bump on [0, 1]."""

    source: BVFunction
    n: int

    def _breaks(self):
        lo, hi = self.source._window()
        _, _, kinks = AC_FORMULAS[self.source.ac]
        pts = [k for k in kinks]
        if np.isfinite(lo):
            pts += [lo, hi]
        return pts

    def _ac_integral(self, x: float, use_deriv: bool) -> float:
        f = self.source
        if f.ac == "zero":
            return 0.0
        lo, hi = f._window()
        fval, deriv, _ = AC_FORMULAS[f.ac]
        n = self.n

        if use_deriv:
            def integrand(u):
                y = x - u / n
                if not lo < y < hi:
                    return 0.0
                return float(deriv(y)) * bump_pdf(u)
        else:
            def integrand(u):
                y = min(max(x - u / n, lo), hi)
                return float(fval(y)) * bump_pdf(u)

        pts = sorted({n * (x - k) for k in self._breaks() if 0.0 < n * (x - k) < 1.0})
        val, _ = integrate.quad(integrand, 0.0, 1.0, points=pts or None, limit=200)
        return val

    def value(self, x):
        f = self.source
        x = np.asarray(x, dtype=float)
        lo, _ = f._window()
        const = f.base
        out = np.full(x.shape, 0.0)
        for loc, size in f.jumps:
            if loc <= lo:
                const += size * (1.0 - float(loc <= 0.0))
            elif loc <= f._window()[1]:
                out = out + size * bump_cdf(self.n * (x - loc))
                const -= size * float(loc <= 0.0)
            else:
                const -= size * float(loc <= 0.0)
        if f.ac != "zero":
            flat = np.atleast_1d(x)
            acc = np.array([self._ac_integral(float(xx), False) for xx in flat])
            out = out + acc.reshape(x.shape)
        out = out + const
        return out if out.ndim else float(out)

    __call__ = value

    def derivative(self, x):
        f = self.source
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for loc, size in f._genuine_jumps():
            out = out + size * self.n * bump_pdf(self.n * (x - loc))
        if f.ac != "zero":
            flat = np.atleast_1d(x)
            acc = np.array([self._ac_integral(float(xx), True) for xx in flat])
            out = out + acc.reshape(x.shape)
        return out if out.ndim else float(out)


def mollify(f: BVFunction, n: int) -> MollifiedFunction:
    """Smoothing at scale 1/n; increasing f yields increasing f_n, and
    f_n -> f pointwise at continuity points."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return MollifiedFunction(f, int(n))


def d1_constant(f: BVFunction, p: float, eps: float = 0.0) -> float:
    """V(f)^p, plus (sup_{|x|<eps} |f'|)^p when a positive eps is supplied.

    The sup is taken from the declared Lipschitz window; asking for eps > 0
    without one (or beyond its reach) is an error.
    """
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if eps < 0.0:
        raise ValueError("eps must be >= 0")
    v = _variation_total(f)
    if eps == 0.0:
        return v**p
    if f.lipschitz_window is None:
        raise ValueError("eps > 0 requires a declared lipschitz_window")
    w_eps, w_const = f.lipschitz_window
    if eps > w_eps:
        raise ValueError("eps exceeds the declared Lipschitz window")
    return v**p + w_const**p
