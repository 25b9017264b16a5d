"""Machine-readable reports and figure rendering.

Verification runs serialize to a versioned JSON schema; tabulations go
to CSV with a header row.  When asked, the report path also renders a
matplotlib figure next to the delimited output (kernel profiles for
tabulations, convergence traces for verification runs).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, is_dataclass

SCHEMA_VERSION = 1

_RC = {
    "figure.figsize": (7.0, 4.4),
    "figure.dpi": 110,
    "savefig.dpi": 160,
    "savefig.bbox": "tight",
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 9,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "lines.linewidth": 1.2,
}


def _mpl():
    import matplotlib
    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt
    for k, v in _RC.items():
        plt.rcParams[k] = v
    return plt


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if is_dataclass(v) and not isinstance(v, type):
        return {kk: _jsonable(vv) for kk, vv in asdict(v).items()}
    if isinstance(v, dict):
        return {kk: _jsonable(vv) for kk, vv in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def verification_json(command: str, params: dict, result: dict,
                      tolerances: dict, passed: bool) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "params": _jsonable(params),
        "result": _jsonable(result),
        "tolerances": _jsonable(tolerances),
        "pass": bool(passed),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def kernel_csv(rows) -> str:
    """rows of (x, value: complex, route, est_error) -> CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["x", "re_h", "im_h", "route", "est_error"])
    for (x, v, route, err) in rows:
        w.writerow([repr(float(x)), repr(v.real), repr(v.imag), route,
                    repr(float(err))])
    return buf.getvalue()


def eval_csv(label: str, entries) -> str:
    """entries of (name, complex value) -> two-column CSV."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["quantity", "re", "im"])
    for (name, v) in entries:
        v = complex(v)
        w.writerow([name, repr(v.real), repr(v.imag)])
    return buf.getvalue()


def render_kernel_figure(rows, path: str, title: str) -> None:
    """Kernel tabulation plot alongside the CSV."""
    plt = _mpl()
    xs = [float(r[0]) for r in rows]
    re = [r[1].real for r in rows]
    im = [r[1].imag for r in rows]
    fig, ax = plt.subplots()
    ax.plot(xs, re, label="Re")
    if any(abs(v) > 1e-14 for v in im):
        ax.plot(xs, im, label="Im", alpha=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("kernel value")
    ax.set_title(title)
    ax.legend()
    fig.savefig(path)
    plt.close(fig)


def render_trace_figure(trace, lhs: complex, path: str, title: str) -> None:
    """Convergence-trace plot: |lhs - rhs(N)| against truncation N."""
    plt = _mpl()
    ns = [t[0] for t in trace]
    errs = [max(t[2], 1e-18) for t in trace]
    fig, ax = plt.subplots()
    ax.loglog(ns, errs, "o-")
    ax.set_xlabel("truncation N")
    ax.set_ylabel("|lhs - rhs(N)|")
    ax.set_title(title)
    fig.savefig(path)
    plt.close(fig)
