"""Report persistence: schema-versioned JSON, flat CSV and figures.

Numeric artifacts (JSON, CSV) are byte-deterministic for a fixed config
and seed; wall-clock metadata lives only in a sidecar file so re-runs
can be compared with a plain byte diff. The report path also renders
matplotlib figures next to the delimited output for experiments that
carry a per-level series.
"""

from __future__ import annotations

import csv
import datetime
import json
import math
from pathlib import Path

import numpy as np

from .experiments import ExperimentReport

__all__ = ["SCHEMA_VERSION", "write_report", "render_figures"]

SCHEMA_VERSION = 1

_FLOAT_FMT = "%.17g"


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_report(report: ExperimentReport, out_dir, name: str | None = None) -> dict:
    """Persist a report as {name}.json + {name}.csv (+ sidecar metadata).

    Returns the paths written. The JSON and CSV bytes depend only on the
    report contents; timestamps go to {name}.meta.json.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if name is None:
        seed = report.seeds[0] if report.seeds else 0
        name = f"{report.experiment}_seed{seed}"

    payload = {"schema_version": SCHEMA_VERSION}
    payload.update(_jsonify(report.to_json()))
    json_path = out / f"{name}.json"
    json_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")

    csv_path = out / f"{name}.csv"
    cols: list = []
    for rec in report.records:
        for k in rec:
            if k not in cols:
                cols.append(k)
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for rec in report.records:
            row = []
            for k in cols:
                v = rec.get(k, "")
                if isinstance(v, (float, np.floating)):
                    v = _FLOAT_FMT % v
                row.append(v)
            w.writerow(row)

    meta_path = out / f"{name}.meta.json"
    meta_path.write_text(json.dumps({
        "written_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "report": name,
    }, indent=2) + "\n")

    figures = render_figures(report, out, name)
    return {"json": json_path, "csv": csv_path, "meta": meta_path, "figures": figures}


def _series(report: ExperimentReport, xkey: str, ykey: str):
    """Aggregate records into per-x mean/median series."""
    xs = sorted({rec[xkey] for rec in report.records if xkey in rec})
    med, mean = [], []
    for x in xs:
        vals = [rec[ykey] for rec in report.records
                if rec.get(xkey) == x and math.isfinite(rec.get(ykey, math.nan))]
        if not vals:
            return None
        med.append(float(np.median(vals)))
        mean.append(float(np.mean(vals)))
    return np.asarray(xs, dtype=float), np.asarray(med), np.asarray(mean)


def render_figures(report: ExperimentReport, out_dir, name: str) -> list:
    """Render the experiment's headline trend as a PNG, if it has one."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    spec = {
        "rate": ("mesh", "error", "log", "mesh", "|RS - reference|"),
        "interpolation-decay": ("mesh", "norm", "log", "mesh", "interpolation-error norm"),
        "ito": ("level", "residual", "linear", "dyadic level", "identity residual"),
        "mollify": ("n", "seminorm", "loglin", "smoothing scale n", "difference seminorm"),
    }.get(report.experiment)
    if spec is None or not report.records:
        return []
    xkey, ykey, mode, xlabel, ylabel = spec
    agg = _series(report, xkey, ykey)
    if agg is None:
        return []
    xs, med, mean = agg

    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    if mode == "log":
        ax.loglog(xs, mean, "o-", label="mean")
        ax.loglog(xs, med, "s--", label="median", alpha=0.7)
        if report.fitted_rate is not None:
            ref = mean[0] * (xs / xs[0]) ** report.fitted_rate
            ax.loglog(xs, ref, "k:", label=f"slope {report.fitted_rate:.3f}")
    elif mode == "loglin":
        ax.semilogy(np.log2(xs), med, "o-", label="median")
        ax.set_xlabel("log2 " + xlabel)
    else:
        ax.semilogy(xs, med, "o-", label="median")
    ax.set_xlabel(ax.get_xlabel() or xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)
    ax.set_title(report.experiment)
    fig.tight_layout()
    fig_path = out / f"{name}.png"
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    return [fig_path]
