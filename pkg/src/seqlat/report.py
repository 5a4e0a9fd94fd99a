"""Deterministic report emission: JSON, CSV, and SVG figures.

All floats are printed with 12 significant digits; JSON keys are sorted, so
identical inputs yield byte-identical files.  Curve-like results (K-curves,
growth tables) additionally render as matplotlib figures written next to
the delimited output.
"""

from __future__ import annotations

import csv
import io
import json
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

SIG_DIGITS = 12


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _round_floats(obj.to_json())
    if hasattr(obj, "tolist"):
        return _round_floats(obj.tolist())
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _round_floats(obj.item())
    return obj


def canonical_json(obj) -> str:
    """Sorted-key JSON with 12-significant-digit floats."""
    return json.dumps(_round_floats(obj), sort_keys=True, indent=2) + "\n"


def write_json(obj, path) -> str:
    text = canonical_json(obj)
    with open(path, "w") as fh:
        fh.write(text)
    return str(path)


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def write_csv(header, rows, path) -> str:
    with open(path, "w") as fh:
        fh.write(rows_to_csv(header, rows))
    return str(path)


def _save_svg(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return str(path)


def plot_kcurve(result: dict, path) -> str:
    """Line plot of one K-curve on log-x axes."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(result["ts"], result["values"], marker=".", lw=1.2)
    ax.set_xscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("K(t)")
    ax.set_title("K-functional")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    return _save_svg(fig, path)


def plot_growth(result: dict, path, label="empirical constant") -> str:
    """Log-log plot of a (size, constant) growth table."""
    table = result.get("per_n") or []
    fig, ax = plt.subplots(figsize=(6, 4))
    if table:
        ns = [row[0] for row in table]
        vals = [row[1] for row in table]
        ax.plot(ns, vals, marker="o", lw=1.2, label=label)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.legend()
    ax.set_xlabel("family size n")
    ax.set_ylabel("constant")
    ax.set_title("growth of the empirical constant")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    return _save_svg(fig, path)


def result_csv(result: dict) -> tuple:
    """Header and rows for the delimited form of a known result type."""
    rtype = result.get("type")
    if rtype == "kcurve":
        return ["t", "value"], list(zip(result["ts"], result["values"]))
    if "per_n" in result:
        return ["n", "constant"], [tuple(r) for r in result["per_n"]]
    if "checks" in result:
        return (
            ["id", "status", "tolerance"],
            [(c["id"], c["status"], c["tolerance"]) for c in result["checks"]],
        )
    # generic flat dict falls back to key/value rows
    flat = _round_floats(result)
    return ["key", "value"], [(k, json.dumps(v, sort_keys=True))
                              for k, v in sorted(flat.items())]


def emit_report(result: dict, fmt: str, out_base) -> list:
    """Write a result as JSON, CSV, or SVG (with CSV alongside).

    ``out_base`` is the output path without extension; the list of written
    files is returned.  Unknown result shapes degrade to key/value tables.
    """
    written = []
    if fmt == "json":
        written.append(write_json(result, f"{out_base}.json"))
        return written
    header, rows = result_csv(result)
    written.append(write_csv(header, rows, f"{out_base}.csv"))
    if fmt == "svg":
        if result.get("type") == "kcurve":
            written.append(plot_kcurve(result, f"{out_base}.svg"))
        elif "per_n" in result:
            written.append(plot_growth(result, f"{out_base}.svg"))
        else:
            fig, ax = plt.subplots(figsize=(6, 4))
            ax.axis("off")
            ax.text(0.05, 0.95, "\n".join(str(r) for r in rows[:40]) or "empty",
                    va="top", family="monospace", fontsize=7)
            written.append(_save_svg(fig, f"{out_base}.svg"))
    return written
