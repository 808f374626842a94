"""Figures for suite reports, written next to the CSV/JSON output."""

from __future__ import annotations

import os
from collections import defaultdict
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .scroll import expected_quadrics  # noqa: E402


def plot_quadric_dims(rows: Sequence[dict], path: str) -> str:
    """Measured quadric-space dimensions against d, with the expected counts as lines."""
    ok = [r for r in rows if not r.get("error")]
    ds = sorted({r["d"] for r in ok})
    fig, ax = plt.subplots(figsize=(6, 4))
    for key, kind, marker in (("q_C", "C", "o"), ("q_S", "S", "s"), ("q_V", "V", "^")):
        ax.plot(ds, [expected_quadrics(kind, d) for d in ds], color="0.7", lw=1)
        ax.scatter([r["d"] for r in ok], [r[key] for r in ok], marker=marker, label=key, zorder=3)
    ax.plot(ds, [(d - 5) * (d - 6) // 2 for d in ds], color="0.7", lw=1)
    ax.scatter([r["d"] for r in ok], [r["q_overlap"] for r in ok], marker="x", label="q_overlap", zorder=3)
    ax.set_xticks(ds)
    ax.set_xlabel("d")
    ax.set_ylabel("dimension of quadric space")
    ax.set_title("Quadric space dimensions (grey: expected)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_runtime(rows: Sequence[dict], path: str) -> str:
    """Mean wall time per cell against d, one line per prime."""
    acc: dict[int, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in rows:
        acc[r["p"]][r["d"]].append(float(r.get("ms") or 0))
    fig, ax = plt.subplots(figsize=(6, 4))
    for p in sorted(acc):
        ds = sorted(acc[p])
        ax.plot(ds, [sum(acc[p][d]) / len(acc[p][d]) for d in ds], marker="o", label=f"p = {p}")
    ax.set_xticks(sorted({r["d"] for r in rows}))
    ax.set_xlabel("d")
    ax.set_ylabel("mean time per instance (ms)")
    ax.set_title("Suite runtime")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_suite_figures(rows: Sequence[dict], outdir: str, stem: str = "suite") -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    return [
        plot_quadric_dims(rows, os.path.join(outdir, f"{stem}_quadric_dims.png")),
        plot_runtime(rows, os.path.join(outdir, f"{stem}_runtime.png")),
    ]
