"""Command-line entry point.

Subcommands: generate, seminorm, integrate, rs-sweep, rate, ito,
mollify, bounds. Stochastic commands are fully determined by their
config plus seed; reports land as JSON + CSV + figure files in the
output directory, with timestamps confined to sidecar metadata.

Exit status: 0 when everything passes, 2 when a run completes but an
assertion-style check fails, 1 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bv import BVFunction
from .experiments import (
    RateConfig,
    apriori_bound_sweep,
    ito_check,
    mollify_convergence,
    pathwise_inequality_sweep,
    rate_experiment,
    singularity_bound_check,
    weak_continuity_check,
)
from .grids import SampledPath, LEFT_CONSTANT, make_uniform_grid, path_from_csv, path_to_csv
from .processes import DETERMINISTIC_FORMULAS, ProcessSpec, sample_path
from .reporting import write_report
from .seminorms import gagliardo_seminorm, holder_seminorm, w1_norm_left, winf_norm_right
from .zs import zs_integral

__all__ = ["main"]

_G = "%.17g"


class CLIError(Exception):
    """Usage or configuration problem; maps to exit status 1."""


def _check_keys(d: dict, allowed: set, required=(), where: str = "config"):
    for k in d:
        if k not in allowed:
            raise CLIError(f"unknown key {k!r} in {where}")
    for k in required:
        if k not in d:
            raise CLIError(f"missing required key {k!r} in {where}")


def _bv_from_arg(spec) -> BVFunction:
    """BVFunction from a name ('identity', 'indicator:0.5', ...) or a
    JSON object following the BVFunction schema."""
    if isinstance(spec, dict):
        try:
            return BVFunction.from_json(spec)
        except (KeyError, ValueError, TypeError) as exc:
            raise CLIError(f"bad evaluation-function config: {exc}") from exc
    name = str(spec)
    if name in ("identity", "square", "sine", "ramp"):
        return BVFunction(ac=name)
    if name == "zero":
        return BVFunction()
    if name == "one":
        return BVFunction(base=1.0)
    if name.startswith("indicator:"):
        loc = float(name.split(":", 1)[1])
        return BVFunction(jumps=((loc, 1.0),), base=float(loc <= 0.0))
    raise CLIError(f"unknown evaluation function {name!r}")


def _process_path(name: str, grid, hurst: float, seed: int, replicate: int) -> SampledPath:
    if name in DETERMINISTIC_FORMULAS:
        spec = ProcessSpec("deterministic", formula=name)
        return sample_path(spec, grid)
    if name in ("fbm", "fou"):
        spec = ProcessSpec(name, hurst=hurst, seed=seed)
        return sample_path(spec, grid, replicate=replicate)
    raise CLIError(f"unknown process {name!r}")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CLIError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CLIError("config must be a JSON object")
    return cfg


def _finish(report, args, default_name: str) -> int:
    out_dir = Path(args.out_dir)
    paths = write_report(report, out_dir, default_name)
    print(f"report: {paths['json']}")
    if report.fitted_rate is not None:
        print(f"fitted slope: {_G % report.fitted_rate}")
    for key, val in report.predicted.items():
        print(f"predicted {key}: {_G % val}")
    for key, ok in report.passed.items():
        print(f"{key}: {'pass' if ok else 'FAIL'}")
    return 0 if all(report.passed.values()) else 2


def _cmd_generate(args) -> int:
    grid = make_uniform_grid(args.T, args.n + 1)
    if args.kind == "deterministic":
        spec = ProcessSpec("deterministic", formula=args.formula)
    else:
        spec = ProcessSpec(args.kind, hurst=args.H, seed=args.seed)
    path = sample_path(spec, grid, replicate=args.replicate)
    text = path_to_csv(path)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_seminorm(args) -> int:
    path = path_from_csv(Path(args.input).read_text(), interp_rule=args.rule)
    out = {
        "holder": holder_seminorm(path, args.alpha),
        "gagliardo": gagliardo_seminorm(path, args.theta, args.p),
        "w1": w1_norm_left(path, args.theta),
        "winf": winf_norm_right(path, args.theta),
    }
    for k, v in out.items():
        print(f"{k}: {_G % v}")
    return 0


def _cmd_integrate(args) -> int:
    f = _bv_from_arg(args.f)
    grid = make_uniform_grid(args.T, args.n + 1)
    X = _process_path(args.X, grid, args.H1, args.seed, 2 * args.replicate)
    Y = _process_path(args.Y, grid, args.H2, args.seed, 2 * args.replicate + 1)
    rule = LEFT_CONSTANT if f.jumps else X.interp_rule
    integrand = SampledPath(grid, np.asarray(f(X.values), dtype=float), rule)
    res = zs_integral(integrand, Y, args.theta, compute_bound=not args.no_bound)
    print(f"value: {_G % res.value}")
    if not args.no_bound:
        print(f"w1_norm: {_G % res.w1_norm}")
        print(f"winf_norm: {_G % res.winf_norm}")
        print(f"apriori_bound: {_G % res.apriori_bound}")
        if math.isfinite(res.apriori_bound) and abs(res.value) > res.apriori_bound:
            print("bound: FAIL")
            return 2
    return 0


_RATE_KEYS = {"f", "h1", "h2", "levels", "replicates", "theta", "tag_rule",
              "alpha", "beta", "delta", "lam", "seed", "T", "coupled"}


def _rate_config(cfg: dict, args, default_replicates: int) -> RateConfig:
    _check_keys(cfg, _RATE_KEYS, required=("f",))
    cfg = dict(cfg)
    cfg["f"] = _bv_from_arg(cfg["f"])
    if "levels" in cfg:
        cfg["levels"] = tuple(int(n) for n in cfg["levels"])
    cfg.setdefault("replicates", default_replicates)
    if args.seed is not None:
        cfg["seed"] = args.seed
    return RateConfig(**cfg)


def _cmd_rate(args) -> int:
    cfg = _rate_config(_load_config(args.config), args, default_replicates=100)
    report = rate_experiment(cfg)
    return _finish(report, args, f"rate_seed{cfg.seed}")


def _cmd_rs_sweep(args) -> int:
    cfg = _rate_config(_load_config(args.config), args, default_replicates=1)
    report = rate_experiment(cfg)
    for rec in report.records:
        print(f"level {rec['level']:2d}  mesh {_G % rec['mesh']}  error {_G % rec['error']}")
    return _finish(report, args, f"rs-sweep_seed{cfg.seed}")


def _cmd_ito(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(cfg, {"f", "x", "levels", "theta", "replicates"})
    f = _bv_from_arg(cfg.get("f", "square"))
    xs = cfg.get("x", {"kind": "fbm", "hurst": 0.75, "seed": 0})
    if args.seed is not None:
        xs = dict(xs, seed=args.seed)
    spec = ProcessSpec.from_json(xs)
    report = ito_check(
        f, spec,
        levels=tuple(cfg.get("levels", (9, 10, 11, 12))),
        theta=float(cfg.get("theta", 0.5)),
        replicates=int(cfg.get("replicates", 100)),
    )
    return _finish(report, args, f"ito_seed{spec.seed}")


def _cmd_mollify(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(cfg, {"f", "x", "theta", "p", "n_list", "replicates", "level"})
    f = _bv_from_arg(cfg.get("f", "indicator:0.0"))
    xs = cfg.get("x", {"kind": "fbm", "hurst": 0.75, "seed": 0})
    if args.seed is not None:
        xs = dict(xs, seed=args.seed)
    spec = ProcessSpec.from_json(xs)
    report = mollify_convergence(
        f, spec,
        theta=float(cfg.get("theta", 0.3)),
        p=float(cfg.get("p", 1.0)),
        n_list=tuple(cfg.get("n_list", (4, 16, 64, 256))),
        replicates=int(cfg.get("replicates", 100)),
        level=int(cfg.get("level", 9)),
    )
    return _finish(report, args, f"mollify_seed{spec.seed}")


def _cmd_bounds(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(cfg, {"checks", "seeds", "hurst", "level", "theta", "alpha",
                      "n_samples", "sigma_list", "replicates"})
    checks = cfg.get("checks", ["apriori", "pathwise", "singularity", "weak-continuity"])
    seed = args.seed if args.seed is not None else 0
    status = 0
    for check in checks:
        if check == "apriori":
            report = apriori_bound_sweep(
                n_instances=int(cfg.get("seeds", 200)), seed=seed,
                level=int(cfg.get("level", 8)), hurst=float(cfg.get("hurst", 0.75)),
                theta=float(cfg.get("theta", 0.3)))
        elif check == "pathwise":
            report = pathwise_inequality_sweep(
                seeds=int(cfg.get("seeds", 50)), hurst=float(cfg.get("hurst", 0.75)),
                level=int(cfg.get("level", 8)), alpha=float(cfg.get("alpha", 0.7)),
                theta=float(cfg.get("theta", 0.3)), base_seed=seed)
        elif check == "singularity":
            spec = ProcessSpec("fbm", hurst=float(cfg.get("hurst", 0.75)), seed=seed)
            report = singularity_bound_check(
                spec, 0.5, (0.0,), n_samples=int(cfg.get("n_samples", 10**6)))
        elif check == "weak-continuity":
            f = BVFunction(jumps=((1.0, 1.0),), base=0.0)
            report = weak_continuity_check(
                f, 2.0, 2.0, 0.0,
                sigma_list=tuple(cfg.get("sigma_list", (0.2, 0.1, 0.05))),
                replicates=int(cfg.get("replicates", 10**5)), seed=seed)
        else:
            raise CLIError(f"unknown bounds check {check!r}")
        rc = _finish(report, args, f"bounds-{check}_seed{seed}")
        status = max(status, rc)
    return status


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracpath",
                                description="pathwise fractional Stieltjes integration toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a path and emit CSV")
    g.add_argument("--kind", choices=("fbm", "fou", "deterministic"), required=True)
    g.add_argument("--H", type=float, default=0.5, help="Hurst index")
    g.add_argument("--formula", default="line")
    g.add_argument("--n", type=int, required=True, help="number of grid steps")
    g.add_argument("--T", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--replicate", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=_cmd_generate)

    s = sub.add_parser("seminorm", help="seminorms and W-norms of a CSV path")
    s.add_argument("--input", required=True)
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--alpha", type=float, default=0.5)
    s.add_argument("--p", type=float, default=1.0)
    s.add_argument("--rule", choices=("piecewise-linear", "left-constant"),
                   default="piecewise-linear")
    s.set_defaults(func=_cmd_seminorm)

    i = sub.add_parser("integrate", help="integral of f(X) against Y")
    i.add_argument("--f", default="identity")
    i.add_argument("--X", default="line")
    i.add_argument("--Y", default="line")
    i.add_argument("--theta", type=float, default=0.5)
    i.add_argument("--n", type=int, default=2048)
    i.add_argument("--T", type=float, default=1.0)
    i.add_argument("--H1", type=float, default=0.75)
    i.add_argument("--H2", type=float, default=0.75)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--replicate", type=int, default=0)
    i.add_argument("--no-bound", action="store_true")
    i.set_defaults(func=_cmd_integrate)

    for name, func, help_text in (
        ("rs-sweep", _cmd_rs_sweep, "Riemann-Stieltjes sums across dyadic levels"),
        ("rate", _cmd_rate, "Monte Carlo convergence-rate experiment"),
        ("ito", _cmd_ito, "change-of-variables residual experiment"),
        ("mollify", _cmd_mollify, "mollification convergence experiment"),
        ("bounds", _cmd_bounds, "inequality and bound check suites"),
    ):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("--config", default=None)
        c.add_argument("--seed", type=int, default=None)
        c.add_argument("--out-dir", default="reports")
        c.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; exit code 2 is reserved
        # for assertion failures here, so remap
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
