"""Time grids and sampled paths on [0, T]."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid",
    "SampledPath",
    "make_uniform_grid",
    "path_to_csv",
    "path_from_csv",
]

# Interpolation rules for SampledPath.
PIECEWISE_LINEAR = "piecewise-linear"
LEFT_CONSTANT = "left-constant"

_FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class Grid:
    """Strictly increasing time grid with times[0] = 0 and times[-1] = T."""

    times: np.ndarray
    uniform: bool = field(init=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size < 2:
            raise ValueError("grid needs at least 2 nodes")
        if t[0] != 0.0:
            raise ValueError("grid must start at 0")
        steps = np.diff(t)
        if np.any(steps <= 0):
            raise ValueError("grid times must be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "times", t)
        h = steps[0]
        object.__setattr__(
            self, "uniform", bool(np.all(np.abs(steps - h) <= 4 * np.finfo(float).eps * h))
        )

    @property
    def T(self) -> float:
        return float(self.times[-1])

    @property
    def n(self) -> int:
        return self.times.size

    def __eq__(self, other):
        return isinstance(other, Grid) and np.array_equal(self.times, other.times)

    def __hash__(self):
        return hash(self.times.tobytes())


@dataclass(frozen=True)
class SampledPath:
    """Real function on [0, T] given by nodal values plus an interpolation rule.

    With ``interp_rule='left-constant'`` the path takes the value
    ``values[i]`` on the half-open cell (times[i-1], times[i]], which makes
    it right-continuous between nodes.
    """

    grid: Grid
    values: np.ndarray
    interp_rule: str = PIECEWISE_LINEAR

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.times.shape:
            raise ValueError("values and grid must have the same length")
        if self.interp_rule not in (PIECEWISE_LINEAR, LEFT_CONSTANT):
            raise ValueError(f"unknown interp_rule {self.interp_rule!r}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def cell_reps(self) -> np.ndarray:
        """Representative value of the interpolant on each cell (length n-1)."""
        v = self.values
        if self.interp_rule == LEFT_CONSTANT:
            return v[1:]
        return 0.5 * (v[:-1] + v[1:])

    def cell_slopes(self) -> np.ndarray:
        """Slope of the interpolant on each cell; zero for left-constant paths."""
        if self.interp_rule == LEFT_CONSTANT:
            return np.zeros(self.grid.n - 1)
        return np.diff(self.values) / np.diff(self.grid.times)

    def __call__(self, t):
        """Evaluate the interpolant at times t."""
        t = np.asarray(t, dtype=float)
        tt, v = self.grid.times, self.values
        if self.interp_rule == PIECEWISE_LINEAR:
            out = np.interp(t, tt, v)
        else:
            # value on (t_{i-1}, t_i] is v[i]; value at 0 is v[0]
            idx = np.searchsorted(tt, t, side="left")
            idx = np.clip(idx, 0, v.size - 1)
            out = v[idx]
        return out if out.ndim else float(out)

    def map(self, func) -> "SampledPath":
        """Apply func to the nodal values, keeping grid and rule."""
        return SampledPath(self.grid, func(self.values), self.interp_rule)


def make_uniform_grid(T: float, n: int) -> Grid:
    """Uniform grid of n nodes spanning [0, T]."""
    if not T > 0:
        raise ValueError("T must be positive")
    if n < 2:
        raise ValueError("need at least 2 nodes")
    return Grid(np.linspace(0.0, T, n))


def path_to_csv(path: SampledPath) -> str:
    """Serialize a path as 't,value' CSV with 17 significant digits."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "value"])
    for t, v in zip(path.grid.times, path.values):
        w.writerow([_FLOAT_FMT % t, _FLOAT_FMT % v])
    return buf.getvalue()


def path_from_csv(text: str, interp_rule: str = PIECEWISE_LINEAR) -> SampledPath:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["t", "value"]:
        raise ValueError("expected header row 't,value'")
    data = np.array([[float(a), float(b)] for a, b in rows[1:]])
    return SampledPath(Grid(data[:, 0]), data[:, 1], interp_rule)
