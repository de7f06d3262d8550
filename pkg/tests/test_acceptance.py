"""Full-scale verification suite.

Each test exercises one contract of the library at its stated tolerance:
integral identities, fractional-calculus oracles, invariance of the
value in the order split, Monte Carlo inequality sweeps, convergence
rates and artifact determinism. These run at full replicate counts and
dominate the suite's runtime.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy.special import gamma

from fracpath.bv import BVFunction
from fracpath.cli import main as cli_main
from fracpath.experiments import (
    RateConfig,
    apriori_bound_sweep,
    interpolation_decay_check,
    ito_check,
    mollify_convergence,
    pathwise_inequality_sweep,
    rate_experiment,
    singularity_bound_check,
    weak_continuity_check,
)
from fracpath.fraccalc import rl_integral_left, wm_derivative_left
from fracpath.grids import LEFT_CONSTANT, SampledPath, make_uniform_grid
from fracpath.processes import ProcessSpec, sample_path
from fracpath.zs import zs_integral


def test_integral_of_one_against_line_is_one():
    start = time.monotonic()
    g = make_uniform_grid(1.0, 2049)
    one = SampledPath(g, np.ones(g.n))
    line = SampledPath(g, g.times)
    res = zs_integral(one, line, 0.5, compute_bound=False)
    elapsed = time.monotonic() - start
    assert res.value == pytest.approx(1.0, abs=1e-3)
    assert elapsed < 1.0


def test_half_derivative_power_rule_and_inversion():
    start = time.monotonic()
    g = make_uniform_grid(1.0, 2049)
    line = SampledPath(g, g.times)
    d = wm_derivative_left(line, 0.5, 0.0)
    assert abs(d.values[-1] - 2.0 / gamma(0.5)) < 1e-4

    smooth = SampledPath(g, np.sin(3.0 * g.times) + g.times)
    back = wm_derivative_left(rl_integral_left(smooth, 0.5), 0.5, 0.0)
    sl = slice(8, -1)
    rel = np.max(np.abs(back.values[sl] - smooth.values[sl])) / np.max(
        np.abs(smooth.values)
    )
    assert rel < 1e-2
    assert time.monotonic() - start < 5.0


def test_value_invariant_under_order_split():
    # step evaluation of one fBm path integrated against the same path:
    # the value must not depend on how the fractional order is split
    g = make_uniform_grid(1.0, 2**12 + 1)
    spec = ProcessSpec("fbm", hurst=0.75, seed=42)
    x = sample_path(spec, g, replicate=1)  # this path crosses the level 0.5
    f = BVFunction(jumps=((0.5, 1.0),), base=0.0)
    assert np.min(x.values) < 0.5 < np.max(x.values)
    integrand = SampledPath(g, np.asarray(f(x.values)), LEFT_CONSTANT)
    vals = {
        th: zs_integral(integrand, x, th, compute_bound=False).value
        for th in (0.3, 0.5)
    }
    scale = max(abs(v) for v in vals.values())
    assert abs(vals[0.3] - vals[0.5]) <= 1e-2 * scale


def test_apriori_bound_never_violated():
    report = apriori_bound_sweep(n_instances=200, seed=0)
    assert report.summary["finite_instances"] > 0
    assert report.passed["zero_violations"]


def test_change_of_variables_residuals():
    start = time.monotonic()
    report = ito_check(
        BVFunction(ac="square"),
        ProcessSpec("fbm", hurst=0.75, seed=0),
        levels=(9, 10, 11, 12),
        replicates=100,
    )
    elapsed = time.monotonic() - start
    finest = [rec["residual"] for rec in report.records if rec["level"] == 12]
    assert len(finest) == 100
    frac_small = np.mean([r < 5e-2 for r in finest])
    assert frac_small >= 0.90
    assert report.passed["median_decreasing"]
    assert elapsed < 300.0


def test_convergence_rate_slope():
    start = time.monotonic()
    f = BVFunction(jumps=((0.5, 1.0),), base=0.0, lipschitz_window=(0.25, 0.0))
    cfg = RateConfig(f=f, h1=0.75, h2=0.75, levels=(4, 5, 6, 7, 8, 9, 10),
                     replicates=100, seed=0)
    report = rate_experiment(cfg)
    elapsed = time.monotonic() - start
    assert report.passed["exclusions"]
    assert report.fitted_rate is not None
    assert report.fitted_rate >= 0.35
    assert elapsed < 1800.0


def test_interpolation_error_decay_rate():
    report = interpolation_decay_check(
        BVFunction(ac="identity"),
        ProcessSpec("fbm", hurst=0.75, seed=0),
        replicates=100,
    )
    predicted = report.predicted["exponent"]
    assert report.fitted_rate is not None
    assert report.fitted_rate >= 0.8 * predicted


def test_inverse_moment_of_gaussian_bounded():
    start = time.monotonic()
    spec = ProcessSpec("fbm", hurst=0.75, seed=0)
    report = singularity_bound_check(spec, 0.5, (0.0,), n_samples=10**6)
    elapsed = time.monotonic() - start
    rec = report.records[0]
    # E|Z|^(-1/2) = 2^(3/4) Gamma(1/4) / (2 sqrt(2 pi)) for standard Z
    assert 1.70 <= rec["lhs"] <= 1.74
    assert rec["rhs"] == pytest.approx(1.0 + 4.0 / math.sqrt(2.0 * math.pi), rel=1e-12)
    assert rec["lhs"] <= rec["rhs"]
    assert elapsed < 10.0


def test_pathwise_inequality_sweeps_clean():
    report = pathwise_inequality_sweep(seeds=50)
    assert report.passed["zero_violations"]


def test_mollified_composition_seminorm_decreases():
    f = BVFunction(jumps=((0.0, 1.0),), base=1.0)
    report = mollify_convergence(
        f, ProcessSpec("fbm", hurst=0.75, seed=0), theta=0.3,
        n_list=(4, 16, 64, 256), replicates=100,
    )
    assert report.passed["median_decreasing"]


def test_weak_continuity_bound_across_noise_levels():
    f = BVFunction(jumps=((1.0, 1.0),), base=0.0)
    report = weak_continuity_check(
        f, 2.0, 2.0, 0.0, sigma_list=(0.2, 0.1, 0.05), replicates=10**5
    )
    # strict domination, without leaning on the sampling-error slack
    assert report.passed["all_hold"]


def test_rerun_artifacts_byte_identical(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "f": "indicator:0.0", "theta": 0.3, "n_list": [4, 32],
        "replicates": 5, "level": 7,
    }))
    outs = []
    for tag in ("one", "two"):
        out_dir = tmp_path / tag
        rc = cli_main(["mollify", "--config", str(cfg), "--seed", "3",
                       "--out-dir", str(out_dir)])
        assert rc in (0, 2)
        outs.append(out_dir)
    capsys.readouterr()
    for name in ("mollify_seed3.json", "mollify_seed3.csv", "mollify_seed3.png"):
        a = (outs[0] / name).read_bytes()
        b = (outs[1] / name).read_bytes()
        assert a == b, f"{name} differs between identical runs"
