"""Grids, sampled paths and CSV round-trips."""

import numpy as np
import pytest

from fracpath.grids import (
    Grid,
    LEFT_CONSTANT,
    PIECEWISE_LINEAR,
    SampledPath,
    make_uniform_grid,
    path_from_csv,
    path_to_csv,
)


def test_grid_requires_increasing_times_from_zero():
    with pytest.raises(ValueError):
        Grid(np.array([0.0, 0.5, 0.5, 1.0]))
    with pytest.raises(ValueError):
        Grid(np.array([0.1, 0.5, 1.0]))
    with pytest.raises(ValueError):
        Grid(np.array([0.0]))


def test_uniform_flag():
    assert make_uniform_grid(1.0, 9).uniform
    g = Grid(np.array([0.0, 0.1, 0.5, 1.0]))
    assert not g.uniform


def test_grid_properties_and_equality():
    g = make_uniform_grid(2.0, 5)
    assert g.T == 2.0
    assert g.n == 5
    assert g == make_uniform_grid(2.0, 5)
    assert g != make_uniform_grid(2.0, 9)


def test_piecewise_linear_evaluation():
    g = make_uniform_grid(1.0, 3)
    x = SampledPath(g, np.array([0.0, 1.0, 0.0]))
    assert x.interp_rule == PIECEWISE_LINEAR
    assert x(0.25) == pytest.approx(0.5)
    assert x(0.75) == pytest.approx(0.5)
    np.testing.assert_allclose(x(np.array([0.0, 0.5, 1.0])), [0.0, 1.0, 0.0])


def test_left_constant_evaluation_uses_right_endpoint_of_cell():
    g = make_uniform_grid(1.0, 3)
    x = SampledPath(g, np.array([5.0, 1.0, 2.0]), LEFT_CONSTANT)
    # on (0, 0.5] the value is the node value at 0.5
    assert x(0.25) == 1.0
    assert x(0.5) == 1.0
    assert x(0.75) == 2.0
    assert x(1.0) == 2.0


def test_cell_slopes_and_map():
    g = make_uniform_grid(1.0, 3)
    x = SampledPath(g, np.array([0.0, 1.0, 3.0]))
    np.testing.assert_allclose(x.cell_slopes(), [2.0, 4.0])
    y = x.map(lambda v: 2.0 * v)
    np.testing.assert_allclose(y.values, [0.0, 2.0, 6.0])
    assert y.grid == x.grid


def test_path_value_length_must_match_grid():
    g = make_uniform_grid(1.0, 4)
    with pytest.raises(ValueError):
        SampledPath(g, np.zeros(3))


def test_csv_roundtrip_is_exact():
    g = Grid(np.array([0.0, 0.1, 0.30000000000000004, 1.0]))
    x = SampledPath(g, np.array([0.0, np.pi, -1.0 / 3.0, 1e-17]))
    back = path_from_csv(path_to_csv(x))
    np.testing.assert_array_equal(back.grid.times, g.times)
    np.testing.assert_array_equal(back.values, x.values)


def test_csv_roundtrip_preserves_interp_rule_choice():
    g = make_uniform_grid(1.0, 3)
    x = SampledPath(g, np.array([0.0, 1.0, 2.0]), LEFT_CONSTANT)
    back = path_from_csv(path_to_csv(x), interp_rule=LEFT_CONSTANT)
    assert back.interp_rule == LEFT_CONSTANT
