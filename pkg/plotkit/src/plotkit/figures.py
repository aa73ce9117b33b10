"""Render the three experiment figure families from ctchaos CSV outputs.

This layer is a pure view: it never recomputes gap ratios or OTOC values,
only averages columns that are already present.  Re-rendering the same CSV
bytes with the same spec produces an identical figure.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

POISSON_GUIDE = 0.39
WIGNER_DYSON_GUIDE = 0.60

FIGURES = ("spectrum-depth", "spectrum-arch", "otoc-compare")

_REQUIRED_COLUMNS = {
    "spectrum-depth": ("n", "heat_depth", "mean_r", "instance"),
    "spectrum-arch": ("n", "arch", "mean_r", "instance"),
    "otoc-compare": ("n", "blocks", "depth", "re_f", "second_t_depth", "instance"),
}


class PlotkitError(ValueError):
    """Bad figure spec or CSV input; message names the file and column."""


@dataclass
class FigureSpec:
    figure: str
    in_path: str | Path
    out_path: str | Path
    guide_lines: bool = True
    per_instance: bool = True
    dpi: int = 150

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise PlotkitError(f"unknown figure {self.figure!r}; choose from {FIGURES}")


def resolve_csv(spec: FigureSpec) -> Path:
    """Accept either the CSV itself or the experiment output directory."""
    path = Path(spec.in_path)
    if path.is_dir():
        path = path / f"{spec.figure.replace('-', '_')}.csv"
    if not path.exists():
        raise PlotkitError(f"{path}: input CSV not found")
    return path


def load_rows(path: Path, figure: str) -> list[dict]:
    required = _REQUIRED_COLUMNS[figure]
    with open(path) as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in required:
            if column not in header:
                raise PlotkitError(f"{path}: missing column {column!r}")
        rows = list(reader)
    if not rows:
        raise PlotkitError(
            f"{path}: no data rows (expected columns {', '.join(required)})"
        )
    return rows


def _mean_stderr(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values)
    stderr = float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size > 1 else 0.0
    return float(arr.mean()), stderr


def _draw_guides(ax) -> None:
    ax.axhline(POISSON_GUIDE, color="tab:gray", linestyle=":", linewidth=1.2,
               label=f"Poisson ({POISSON_GUIDE})")
    ax.axhline(WIGNER_DYSON_GUIDE, color="tab:red", linestyle="--", linewidth=1.2,
               label=f"Wigner-Dyson ({WIGNER_DYSON_GUIDE})")


def _spectrum_groups(rows, x_column):
    """{n: {x: [mean_r per instance]}} keeping x values in file order."""
    groups: dict[int, dict] = {}
    for row in rows:
        n = int(row["n"])
        key = row[x_column]
        groups.setdefault(n, {}).setdefault(key, []).append(float(row["mean_r"]))
    return groups


def _build_spectrum_figure(spec: FigureSpec, rows, x_column, x_label):
    fig, ax = plt.subplots(figsize=(6.0, 4.0), layout="constrained")
    groups = _spectrum_groups(rows, x_column)
    numeric = x_column == "heat_depth"
    for n in sorted(groups):
        points = groups[n]
        keys = sorted(points, key=(int if numeric else str))
        x = [int(k) for k in keys] if numeric else np.arange(len(keys))
        means, errors = zip(*(_mean_stderr(points[k]) for k in keys))
        ax.errorbar(x, means, yerr=errors, marker="o", capsize=3, label=f"n = {n}")
        if not numeric:
            ax.set_xticks(np.arange(len(keys)), keys)
    if spec.guide_lines:
        _draw_guides(ax)
    if numeric:
        ax.set_xticks(sorted({int(row[x_column]) for row in rows}))
    ax.set_xlabel(x_label)
    ax.set_ylabel("mean gap ratio")
    ax.set_ylim(0.0, 1.0)
    ax.legend(loc="lower right", fontsize=8)
    return fig


def _build_otoc_figure(spec: FigureSpec, rows):
    block_values = sorted({int(row["blocks"]) for row in rows})
    fig, axes = plt.subplots(
        1, len(block_values), figsize=(5.0 * len(block_values), 4.0),
        sharey=True, layout="constrained", squeeze=False,
    )
    for ax, blocks in zip(axes[0], block_values):
        sub = [row for row in rows if int(row["blocks"]) == blocks]
        by_instance: dict[int, list[tuple[int, float]]] = {}
        for row in sub:
            by_instance.setdefault(int(row["instance"]), []).append(
                (int(row["depth"]), float(row["re_f"]))
            )
        if spec.per_instance:
            for points in by_instance.values():
                points.sort()
                ax.plot(*zip(*points), color="tab:blue", alpha=0.25, linewidth=0.8)
        by_depth: dict[int, list[float]] = {}
        for row in sub:
            by_depth.setdefault(int(row["depth"]), []).append(float(row["re_f"]))
        depths = sorted(by_depth)
        ax.plot(depths, [np.mean(by_depth[d]) for d in depths],
                color="tab:blue", linewidth=2.0, label="mean Re F")
        for t2 in sorted({int(row["second_t_depth"]) for row in sub}):
            ax.axvline(t2, color="red", linestyle=":", linewidth=1.2)
        ax.axhline(0.0, color="black", linewidth=0.6)
        ax.set_title(f"{blocks}-block")
        ax.set_xlabel("circuit depth (layers)")
        ax.set_ylim(-1.05, 1.05)
        ax.legend(loc="upper right", fontsize=8)
    axes[0][0].set_ylabel("Re F")
    return fig


def build_figure(spec: FigureSpec):
    """The matplotlib Figure for a spec; render() saves it to disk."""
    rows = load_rows(resolve_csv(spec), spec.figure)
    if spec.figure == "spectrum-depth":
        return _build_spectrum_figure(spec, rows, "heat_depth", "entanglement heating depth units")
    if spec.figure == "spectrum-arch":
        return _build_spectrum_figure(spec, rows, "arch", "heating architecture")
    return _build_otoc_figure(spec, rows)


def render(spec: FigureSpec) -> Path:
    """Write the figure image and return its path."""
    figure = build_figure(spec)
    out_path = Path(spec.out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        figure.savefig(out_path, dpi=spec.dpi, metadata={"Software": "plotkit"})
    finally:
        plt.close(figure)
    return out_path
