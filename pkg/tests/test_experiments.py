"""Experiment harness behavior at smoke scale; full-scale runs live in
the acceptance suite."""

import math

import numpy as np
import pytest

from fracpath.bv import BVFunction
from fracpath.experiments import (
    RateConfig,
    apriori_bound_sweep,
    composite_gagliardo_bound_check,
    fit_loglog_slope,
    holder_singular_check,
    interpolation_decay_check,
    ito_check,
    mollify_convergence,
    pathwise_inequality_sweep,
    rate_experiment,
    singularity_bound_check,
    sufficient_variability_check,
    weak_continuity_check,
)
from fracpath.grids import SampledPath, make_uniform_grid
from fracpath.processes import ProcessSpec, sample_path


def test_fit_loglog_slope_recovers_power_law():
    mesh = np.array([1.0, 0.5, 0.25, 0.125, 0.0625])
    err = 3.0 * mesh**0.7
    assert fit_loglog_slope(mesh, err) == pytest.approx(0.7, rel=1e-10)
    # fewer than 4 usable points gives no fit
    assert fit_loglog_slope(mesh[:3], err[:3]) is None
    assert fit_loglog_slope(mesh, np.zeros(5)) is None


def test_rate_config_defaults_and_warnings():
    f = BVFunction(jumps=((0.5, 1.0),), base=0.0)
    cfg = RateConfig(f=f)
    assert cfg.alpha == pytest.approx(0.7)
    assert cfg.beta == pytest.approx(0.7)
    assert cfg.lam == pytest.approx(0.95 * 0.7 * 2.0)
    assert 0.0 < cfg.theta_value() < 1.0
    with pytest.warns(UserWarning):
        RateConfig(f=f, h1=0.4, h2=0.4)


def test_rate_experiment_smoke_positive_slope():
    f = BVFunction(jumps=((0.5, 1.0),), base=0.0)
    cfg = RateConfig(f=f, levels=(3, 4, 5, 6), replicates=3, seed=1)
    report = rate_experiment(cfg)
    assert report.fitted_rate is not None and report.fitted_rate > 0.0
    assert report.passed["exclusions"]
    assert len(report.records) == 3 * 4


def test_ito_check_smoke_residuals_shrink():
    report = ito_check(
        BVFunction(ac="square"),
        ProcessSpec("fbm", hurst=0.75, seed=0),
        levels=(6, 8, 10),
        replicates=5,
    )
    med = report.summary["median_residual"]
    assert med["10"] < med["6"]


def test_ito_check_warns_on_jumpy_function():
    with pytest.warns(UserWarning):
        ito_check(
            BVFunction(jumps=((0.5, 1.0),), ac="square"),
            ProcessSpec("fbm", hurst=0.75, seed=0),
            levels=(5, 6, 7, 8),
            replicates=1,
        )


def test_mollify_convergence_smoke():
    f = BVFunction(jumps=((0.0, 1.0),), base=1.0)
    report = mollify_convergence(
        f, ProcessSpec("fbm", hurst=0.75, seed=0), theta=0.3,
        n_list=(4, 64), replicates=5, level=7,
    )
    med = report.summary["median_seminorm"]
    assert med["64"] < med["4"]


def test_singularity_bound_check_smoke():
    spec = ProcessSpec("fbm", hurst=0.75, seed=0)
    report = singularity_bound_check(spec, 0.5, (0.0, 0.3), n_samples=10**5,
                                     path_replicates=3, path_level=6)
    assert report.passed["all_hold"]
    kinds = {rec["kind"] for rec in report.records}
    assert kinds == {"marginal", "integrated"}
    with pytest.raises(ValueError):
        singularity_bound_check(spec, 1.0)


def test_weak_continuity_check_smoke():
    f = BVFunction(jumps=((1.0, 1.0),), base=0.0)
    report = weak_continuity_check(f, 2.0, 2.0, 0.0, sigma_list=(0.2,),
                                   replicates=10**4)
    assert report.passed["all_hold"]
    with pytest.raises(ValueError):
        weak_continuity_check(f, 3.0, 2.0, 0.0)


def test_holder_singular_check_on_line():
    g = make_uniform_grid(1.0, 257)
    x = SampledPath(g, g.times)
    lhs, rhs = holder_singular_check(x, 1.0, 0.4, 0.5, 1.0)
    # exact value: int_0^0.5 (1-s)^(-1.4) ds
    exact = ((1.0 - 0.5) ** -0.4 - 1.0) / 0.4
    assert lhs == pytest.approx(exact, rel=1e-10)
    assert lhs <= rhs
    with pytest.raises(ValueError):
        holder_singular_check(x, 1.0, 0.4, 1.5, 1.0)  # needs y < x(t)


def test_sufficient_variability_on_explicit_path():
    g = make_uniform_grid(1.0, 129)
    x = SampledPath(g, g.times)
    # r = theta/alpha = 0.5: int_0^1 |t - 1/2|^(-1/2) dt = 2 sqrt(2)
    report = sufficient_variability_check(x, 0.3, 0.6, (0.5,))
    assert report.summary["sup"] == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-10)
    assert report.passed["all_finite"]


def test_sufficient_variability_flags_stuck_path():
    g = make_uniform_grid(1.0, 33)
    flat = SampledPath(g, np.zeros(33))
    report = sufficient_variability_check(flat, 0.3, 0.6, (0.0,))
    assert not report.passed["all_finite"]


def test_composite_gagliardo_bound_smoke():
    g = make_uniform_grid(1.0, 257)
    x = sample_path(ProcessSpec("fbm", hurst=0.75, seed=2), g, replicate=0)
    med = float(np.median(x.values))
    f = BVFunction(jumps=((med, 1.0),), base=float(med <= 0.0))
    pair = composite_gagliardo_bound_check(f, x, 0.7, 0.3, 1.0)
    assert pair.holds
    assert pair.lhs > 0.0


def test_apriori_bound_sweep_smoke():
    report = apriori_bound_sweep(n_instances=8, seed=0, level=6)
    assert report.passed["zero_violations"]
    assert report.summary["finite_instances"] > 0


def test_pathwise_inequality_sweep_smoke():
    report = pathwise_inequality_sweep(seeds=3, level=6)
    assert report.passed["zero_violations"]


def test_interpolation_decay_smoke_and_regime_validation():
    f = BVFunction(ac="identity")
    spec = ProcessSpec("fbm", hurst=0.75, seed=0)
    report = interpolation_decay_check(f, spec, levels=(3, 4, 5, 6),
                                      replicates=3)
    assert report.fitted_rate is not None and report.fitted_rate > 0.0
    with pytest.raises(ValueError):
        interpolation_decay_check(f, spec, p=3.0, delta=2.0)
    with pytest.raises(ValueError):
        interpolation_decay_check(f, spec, theta=0.95)
