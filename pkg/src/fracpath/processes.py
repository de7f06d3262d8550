"""Deterministic and random Hölder-continuous path generation.

Fractional Brownian motion is sampled exactly in distribution on uniform
grids via circulant embedding of the fractional Gaussian noise covariance
(Davies-Harte), falling back to a dense Cholesky factorization of the fBm
covariance matrix when the embedding is not positive semidefinite.

Reproducibility: all randomness is drawn from the counter-based Philox
(4x64) generator keyed by ``(seed, replicate)``, so every replicate has
its own stream and regeneration is bit-identical regardless of ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Grid, SampledPath, PIECEWISE_LINEAR

__all__ = ["ProcessSpec", "sample_path", "fbm_covariance", "rng_for", "DETERMINISTIC_FORMULAS"]

# Relative tolerance on the most negative circulant eigenvalue before the
# embedding is declared non-PSD and the Cholesky fallback kicks in.
_EMBEDDING_TOL = 1e-8


class GenerationError(RuntimeError):
    """Raised when no exact sampling scheme is available for a spec."""


DETERMINISTIC_FORMULAS = {
    "line": lambda t: t,
    "zero": lambda t: np.zeros_like(t),
    "one": lambda t: np.ones_like(t),
    "square": lambda t: t**2,
    "sine": lambda t: np.sin(t),
    "one-minus-t": lambda t: 1.0 - t,
}


@dataclass(frozen=True)
class ProcessSpec:
    """Specification of a path law.

    kind: 'fbm', 'fou' or 'deterministic'.
    hurst: Hurst index in (0,1) for fbm/fou.
    formula: named formula id for deterministic kinds.
    mean_reversion, scale: fOU parameters (dX = -k X dt + sigma dB^H).
    seed: 64-bit base seed; replicate selects the substream.
    """

    kind: str
    hurst: float = 0.5
    formula: str = "line"
    mean_reversion: float = 1.0
    scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("fbm", "fou", "deterministic"):
            raise ValueError(f"unknown process kind {self.kind!r}")
        if self.kind in ("fbm", "fou") and not 0.0 < self.hurst < 1.0:
            raise ValueError("hurst must be in (0,1)")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.kind == "deterministic" and self.formula not in DETERMINISTIC_FORMULAS:
            raise ValueError(f"unknown formula {self.formula!r}")

    def to_json(self) -> dict:
        d = {"kind": self.kind, "seed": self.seed}
        if self.kind == "deterministic":
            d["formula"] = self.formula
        else:
            d["hurst"] = self.hurst
        if self.kind == "fou":
            d["mean_reversion"] = self.mean_reversion
            d["scale"] = self.scale
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ProcessSpec":
        known = {"kind", "seed", "formula", "hurst", "mean_reversion", "scale"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown ProcessSpec keys: {sorted(unknown)}")
        return cls(**d)


def rng_for(seed: int, replicate: int = 0) -> np.random.Generator:
    """Counter-based generator for one (seed, replicate) stream."""
    key = np.array([seed % 2**64, replicate % 2**64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def fbm_covariance(s, t, hurst: float):
    """R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    h2 = 2.0 * hurst
    return 0.5 * (np.abs(s) ** h2 + np.abs(t) ** h2 - np.abs(t - s) ** h2)


def _fgn_circulant(n_steps: int, hurst: float, rng: np.random.Generator):
    """One realization of unit-step fractional Gaussian noise, or None if the
    circulant embedding has significantly negative eigenvalues."""
    h2 = 2.0 * hurst
    k = np.arange(n_steps)
    acf = 0.5 * (np.abs(k + 1) ** h2 + np.abs(k - 1) ** h2 - 2.0 * k**h2)
    # first row of the 2m-circulant embedding, m = n_steps
    row = np.concatenate([acf, [0.0], acf[:0:-1]])
    eig = np.fft.fft(row).real
    if eig.min() < -_EMBEDDING_TOL * eig.max():
        return None
    eig = np.clip(eig, 0.0, None)
    m = n_steps
    z = np.zeros(2 * m, dtype=complex)
    z[0] = rng.standard_normal() * np.sqrt(2.0)
    z[m] = rng.standard_normal() * np.sqrt(2.0)
    re = rng.standard_normal(m - 1)
    im = rng.standard_normal(m - 1)
    z[1:m] = re + 1j * im
    z[m + 1 :] = np.conj(z[1:m][::-1])
    w = np.fft.ifft(np.sqrt(eig) * z) * np.sqrt(2 * m)
    return w[:m].real / np.sqrt(2.0)


def _fbm_values(grid: Grid, hurst: float, rng: np.random.Generator) -> np.ndarray:
    if not grid.uniform:
        raise GenerationError("exact fBm sampling requires a uniform grid")
    n_steps = grid.n - 1
    dt = grid.T / n_steps
    fgn = _fgn_circulant(n_steps, hurst, rng)
    if fgn is not None:
        incr = fgn * dt**hurst
        return np.concatenate([[0.0], np.cumsum(incr)])
    # dense Cholesky fallback on the interior nodes
    t = grid.times[1:]
    cov = fbm_covariance(t[:, None], t[None, :], hurst)
    try:
        chol = np.linalg.cholesky(cov + 1e-14 * np.eye(n_steps))
    except np.linalg.LinAlgError as exc:
        raise GenerationError("both circulant embedding and Cholesky failed") from exc
    x = chol @ rng.standard_normal(n_steps)
    return np.concatenate([[0.0], x])


def sample_path(spec: ProcessSpec, grid: Grid, replicate: int = 0) -> SampledPath:
    """One realization of the process on the grid.

    Identical (spec, grid, replicate) always yields bit-identical values.
    """
    if spec.kind == "deterministic":
        vals = DETERMINISTIC_FORMULAS[spec.formula](grid.times)
        return SampledPath(grid, vals, PIECEWISE_LINEAR)

    rng = rng_for(spec.seed, replicate)
    if spec.kind == "fbm":
        vals = _fbm_values(grid, spec.hurst, rng)
        return SampledPath(grid, vals, PIECEWISE_LINEAR)

    # fOU: Euler scheme driven by exact fBm increments, started at 0.
    bh = _fbm_values(grid, spec.hurst, rng)
    dt = np.diff(grid.times)
    db = np.diff(bh)
    x = np.zeros(grid.n)
    for i in range(grid.n - 1):
        x[i + 1] = x[i] - spec.mean_reversion * x[i] * dt[i] + spec.scale * db[i]
    return SampledPath(grid, x, PIECEWISE_LINEAR)
