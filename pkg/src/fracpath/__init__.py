"""Pathwise fractional Stieltjes integration of Hölder-continuous paths
composed with discontinuous finite-variation evaluation functions."""

from .bv import BVFunction, JordanPair, MollifiedFunction, d1_constant, jordan_decompose, mollify, total_variation, truncate
from .fraccalc import FracDerivative, rl_integral_left, rl_integral_right, wm_derivative_left, wm_derivative_right
from .grids import Grid, SampledPath, make_uniform_grid, path_from_csv, path_to_csv
from .processes import ProcessSpec, fbm_covariance, rng_for, sample_path
from .seminorms import (
    BoundReport,
    SeminormParams,
    check_holder_gagliardo_bounds,
    gagliardo_seminorm,
    holder_seminorm,
    w1_norm_left,
    winf_norm_right,
)
from .zs import TaggedPartition, ZSResult, dyadic_partition, interpolate_path, interpolation_error_norm, rs_error_bound, rs_sum, zs_integral

__version__ = "0.1.0"
