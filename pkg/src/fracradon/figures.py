"""Optional figure rendering for reports and sweeps.

matplotlib is imported lazily and pinned to the Agg backend so the CLI can
run headless; nothing in this module executes unless figures were asked for.
"""

from __future__ import annotations

import math


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_report_figure(reports, path) -> str:
    """Bar chart of both sides of each report, annotated with the verdict.

    A log scale is used when the sides span more than two decades, which is
    common once distance factors and gamma constants start multiplying.
    """
    plt = _plt()
    reports = list(reports)
    labels = []
    for r in reports:
        q = r.inputs.get("q")
        tag = f"{r.check}"
        if r.inputs.get("n") not in (None, ""):
            tag += f" n={r.inputs['n']}"
        if q not in (None, ""):
            tag += f" q={q:g}"
        labels.append(tag)
    lhs = [r.lhs for r in reports]
    rhs = [r.rhs for r in reports]
    idx = range(len(reports))

    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(reports)), 4.2))
    width = 0.38
    ax.bar([i - width / 2 for i in idx], lhs, width, label="left side", color="#2b6cb0")
    ax.bar([i + width / 2 for i in idx], rhs, width, label="right side", color="#c05621")
    finite = [v for v in lhs + rhs if v and not math.isnan(v)]
    if finite and max(finite) / max(min(finite), 1e-300) > 100.0:
        ax.set_yscale("log")
    for i, r in enumerate(reports):
        verdict = "n/a" if r.passed is None else ("pass" if r.passed else "FAIL")
        top = max(r.lhs if not math.isnan(r.lhs) else 0.0, r.rhs if not math.isnan(r.rhs) else 0.0)
        ax.annotate(verdict, (i, top), ha="center", va="bottom", fontsize=8)
    ax.set_xticks(list(idx))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("value")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def render_value_figure(xs, values, path, xlabel="q", errors=None, title=None) -> str:
    """Line plot of a swept scalar (order sweep, direction scan) with an
    optional shaded error band."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, values, marker="o", ms=3, lw=1.2, color="#2b6cb0")
    if errors is not None:
        lo = [v - e for v, e in zip(values, errors)]
        hi = [v + e for v, e in zip(values, errors)]
        ax.fill_between(xs, lo, hi, alpha=0.25, color="#2b6cb0", lw=0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("value")
    if title:
        ax.set_title(title, fontsize=10)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
