"""Reproducible experiment orchestration and result persistence.

Each experiment fans out over (n, instance, ...) cells whose random streams
are keyed purely by the master seed and the cell coordinates, so results are
byte-identical across reruns and across worker counts.  Rows are written to
one CSV, aggregates to a JSON summary, and the generating config to a JSON
manifest (whose wall-time field is the only non-reproducible output).
"""
from __future__ import annotations

import csv
import dataclasses
import json
import multiprocessing
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .arch import BlockPlan, HeatingKind, HeatingSpec, assemble_experiment_circuit
from .causal import check_cover, matchings_from_circuit
from .circuits import parse as parse_circuit
from .circuits import serialize
from .otoc import OtocConfig, default_otoc_operators, otoc_depth_sweep
from .rng import RngTree, stream_generator
from .sim import GateKind, MAX_QUBITS, PAULI_KINDS
from .spectrum import (
    Ensemble,
    gue_level_spectrum,
    level_spacing_ratios,
    poisson_level_spectrum,
    reference_mean,
    run_spectrum_trial,
)

DEFAULT_MASTER_SEED = 2

SPECTRUM_EXPERIMENTS = ("spectrum-depth", "spectrum-arch")
EXPERIMENTS = SPECTRUM_EXPERIMENTS + ("otoc-compare",)

ARCH_NAMES = {kind.value: kind for kind in HeatingKind}

SPECTRUM_HEADER = [
    "instance", "n", "arch", "blocks", "heat_depth",
    "mean_r", "excluded_count", "total_pairs", "seed",
]
OTOC_HEADER = [
    "instance", "n", "arch", "blocks", "depth",
    "re_f", "im_f", "second_t_depth", "v_op", "w_op", "seed",
]
REFERENCE_HEADER = ["ensemble", "mean_ratio"]
HISTOGRAM_HEADER = ["ensemble", "bin_center", "bin_width", "density"]


class ConfigError(ValueError):
    """Invalid experiment configuration; reported before any computation."""


@dataclass
class ExperimentConfig:
    experiment: str
    n_list: tuple[int, ...]
    instances: int
    master_seed: int = DEFAULT_MASTER_SEED
    arch: str = HeatingKind.CAUSAL_RANDOM.value
    blocks: int = 4
    heat_depth: int = 1
    t_count: int | None = None
    v_op: str | None = None
    w_op: str | None = None
    stride: int = 2
    jobs: int = 0
    out_dir: str = "results"
    dump_circuits: bool = False

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.instances < 1:
            raise ConfigError("instances must be >= 1")
        if not self.n_list:
            raise ConfigError("n_list must not be empty")
        for n in self.n_list:
            if not 2 <= n <= MAX_QUBITS:
                raise ConfigError(f"qubit count {n} outside [2, {MAX_QUBITS}]")
        if self.arch not in ARCH_NAMES:
            raise ConfigError(f"unknown arch {self.arch!r}; choose from {sorted(ARCH_NAMES)}")
        if self.blocks not in (4, 5):
            raise ConfigError("blocks must be 4 or 5")
        if self.heat_depth < 1:
            raise ConfigError("heat_depth must be >= 1")
        if self.stride < 1:
            raise ConfigError("stride must be >= 1")
        if self.arch == HeatingKind.BITONIC.value:
            for n in self.n_list:
                if n & (n - 1):
                    raise ConfigError(f"bitonic architecture needs a power-of-two n, got {n}")
        for n in self.n_list:
            if self.t_count is not None and self.t_count > n:
                raise ConfigError(f"t_count {self.t_count} exceeds n={n}")
        for label, op in (("v_op", self.v_op), ("w_op", self.w_op)):
            if op is not None:
                parse_pauli_op(op)  # raises ConfigError on bad syntax


def parse_pauli_op(text: str) -> tuple[GateKind, int]:
    """Parse "Z:0" style operator labels."""
    try:
        name, _, qubit = text.partition(":")
        kind = GateKind(name.strip().upper())
        if kind not in PAULI_KINDS:
            raise ValueError
        return kind, int(qubit)
    except (ValueError, KeyError):
        raise ConfigError(f"bad Pauli operator {text!r}; expected like 'Z:0'") from None


def format_pauli_op(op: tuple[GateKind, int]) -> str:
    return f"{op[0].value}:{op[1]}"


def _heating_spec(arch: str, heat_depth: int) -> HeatingSpec:
    return HeatingSpec(ARCH_NAMES[arch], heat_depth)


def _block_plan(config: ExperimentConfig, arch: str, blocks: int, heat_depth: int) -> BlockPlan:
    return BlockPlan(blocks, _heating_spec(arch, heat_depth), t_layer_size=config.t_count)


def _cell_tree(config: ExperimentConfig, *coords) -> RngTree:
    tree = RngTree(config.master_seed).child(config.experiment)
    for coord in coords:
        tree = tree.child(coord)
    return tree


# ---------------------------------------------------------------------------
# cell execution (top-level functions so worker processes can pickle them)
# ---------------------------------------------------------------------------

def _spectrum_cell(args) -> dict:
    config, arch, blocks, heat_depth, n, instance = args
    plan = _block_plan(config, arch, blocks, heat_depth)
    tree = _cell_tree(config, arch, f"blocks{blocks}", f"depth{heat_depth}", f"n{n}", instance)
    stats = run_spectrum_trial(n, plan, tree)
    row = {
        "instance": instance,
        "n": n,
        "arch": arch,
        "blocks": blocks,
        "heat_depth": heat_depth,
        "mean_r": stats.mean_r,
        "excluded_count": stats.excluded_count,
        "total_pairs": stats.total_pairs,
        "seed": config.master_seed,
    }
    if config.dump_circuits:
        circuit = assemble_experiment_circuit(n, plan, tree)
        row["_circuit"] = serialize(circuit)
    return row


def _otoc_cell(args) -> list[dict]:
    config, arch, blocks, heat_depth, n, instance = args
    plan = _block_plan(config, arch, blocks, heat_depth)
    v = parse_pauli_op(config.v_op) if config.v_op else default_otoc_operators(n)[0]
    w = parse_pauli_op(config.w_op) if config.w_op else default_otoc_operators(n)[1]
    otoc_config = OtocConfig(v, w, plan, config.stride)
    tree = _cell_tree(config, f"blocks{blocks}", f"n{n}", instance)
    trace = otoc_depth_sweep(n, otoc_config, tree)
    rows = []
    for depth, re_f, im_f in zip(trace.depths, trace.re_f, trace.im_f):
        rows.append({
            "instance": instance,
            "n": n,
            "arch": arch,
            "blocks": blocks,
            "depth": depth,
            "re_f": re_f,
            "im_f": im_f,
            "second_t_depth": trace.second_t_layer_depth,
            "v_op": format_pauli_op(v),
            "w_op": format_pauli_op(w),
            "seed": config.master_seed,
        })
    if config.dump_circuits:
        circuit = assemble_experiment_circuit(n, plan, tree)
        rows[0]["_circuit"] = serialize(circuit)
    return rows


def _run_cells(fn, cells, jobs: int):
    if jobs <= 0:
        jobs = os.cpu_count() or 1
    if jobs == 1 or len(cells) <= 1:
        return [fn(cell) for cell in cells]
    with multiprocessing.get_context("fork").Pool(min(jobs, len(cells))) as pool:
        return pool.map(fn, cells)


# ---------------------------------------------------------------------------
# experiment drivers
# ---------------------------------------------------------------------------

def _spectrum_cells(config: ExperimentConfig):
    if config.experiment == "spectrum-depth":
        # sweep cover multipliers 1..heat_depth at fixed architecture
        combos = [
            (config.arch, config.blocks, depth)
            for depth in range(1, config.heat_depth + 1)
        ]
    else:  # spectrum-arch: sweep the three architectures at fixed unit depth
        combos = [(arch, config.blocks, config.heat_depth) for arch in sorted(ARCH_NAMES)]
    cells = []
    for arch, blocks, depth in combos:
        for n in config.n_list:
            if arch == HeatingKind.BITONIC.value and n & (n - 1):
                continue  # bitonic exists only for power-of-two registers
            for instance in range(config.instances):
                cells.append((config, arch, blocks, depth, n, instance))
    return cells


def _otoc_cells(config: ExperimentConfig):
    cells = []
    for blocks in (4, 5):
        for n in config.n_list:
            for instance in range(config.instances):
                cells.append((config, config.arch, blocks, config.heat_depth, n, instance))
    return cells


def _mean_and_stderr(values) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return float("nan"), float("nan")
    stderr = float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size > 1 else 0.0
    return float(arr.mean()), stderr


def _spectrum_summary(rows) -> list[dict]:
    groups: dict[tuple, list[float]] = {}
    for row in rows:
        key = (row["n"], row["arch"], row["blocks"], row["heat_depth"])
        groups.setdefault(key, []).append(row["mean_r"])
    summary = []
    for (n, arch, blocks, depth), values in sorted(groups.items(), key=lambda kv: repr(kv[0])):
        mean, stderr = _mean_and_stderr(values)
        summary.append({
            "n": n, "arch": arch, "blocks": blocks, "heat_depth": depth,
            "instances": len(values), "mean_r": mean, "std_error": stderr,
        })
    return summary


def _otoc_summary(rows) -> list[dict]:
    groups: dict[tuple, dict] = {}
    for row in rows:
        key = (row["n"], row["blocks"])
        group = groups.setdefault(key, {"by_depth": {}, "post_t2": {}})
        group["by_depth"].setdefault(row["depth"], []).append(row["re_f"])
        if row["depth"] >= row["second_t_depth"]:
            group["post_t2"].setdefault(row["instance"], []).append(abs(row["re_f"]))
    summary = []
    for (n, blocks), group in sorted(groups.items()):
        per_instance = [float(np.mean(v)) for _, v in sorted(group["post_t2"].items())]
        mean, stderr = _mean_and_stderr(per_instance)
        summary.append({
            "n": n,
            "blocks": blocks,
            "depth_mean_re_f": [
                {"depth": d, "mean_re_f": float(np.mean(v)), "instances": len(v)}
                for d, v in sorted(group["by_depth"].items())
            ],
            "post_t2_mean_abs_re_f": mean,
            "post_t2_std_error": stderr,
            "post_t2_per_instance": per_instance,
        })
    return summary


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[column] for column in header])


def _write_json(path: Path, payload) -> None:
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _dump_circuits(out_dir: Path, config: ExperimentConfig, rows) -> None:
    circuits_dir = out_dir / "circuits"
    circuits_dir.mkdir(exist_ok=True)
    for row in rows:
        text = row.pop("_circuit", None)
        if text is not None:
            depth = row.get("heat_depth", config.heat_depth)
            name = (
                f"{config.experiment}_{row['arch']}_b{row['blocks']}"
                f"_d{depth}_n{row['n']}_i{row['instance']}.txt"
            )
            (circuits_dir / name).write_text(text)


def run_experiment(config: ExperimentConfig) -> dict[str, Path]:
    """Run one experiment grid and write CSV + summary + manifest files."""
    config.validate()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.time()

    if config.experiment in SPECTRUM_EXPERIMENTS:
        cells = _spectrum_cells(config)
        rows = _run_cells(_spectrum_cell, cells, config.jobs)
        rows.sort(key=lambda r: (r["arch"], r["blocks"], r["heat_depth"], r["n"], r["instance"]))
        header, summary = SPECTRUM_HEADER, _spectrum_summary(rows)
    else:
        cells = _otoc_cells(config)
        nested = _run_cells(_otoc_cell, cells, config.jobs)
        rows = [row for cell_rows in nested for row in cell_rows]
        rows.sort(key=lambda r: (r["blocks"], r["n"], r["instance"], r["depth"]))
        header, summary = OTOC_HEADER, _otoc_summary(rows)

    _dump_circuits(out_dir, config, rows)
    stem = config.experiment.replace("-", "_")
    paths = {
        "csv": out_dir / f"{stem}.csv",
        "summary": out_dir / f"{stem}_summary.json",
        "manifest": out_dir / f"{stem}_manifest.json",
    }
    _write_csv(paths["csv"], header, rows)
    _write_json(paths["summary"], summary)
    _write_json(paths["manifest"], {
        "config": dataclasses.asdict(config),
        "version": __version__,
        "wall_time_s": round(time.time() - started, 3),
        "rows": len(rows),
    })
    return paths


# ---------------------------------------------------------------------------
# check-cover and reference-curve emission
# ---------------------------------------------------------------------------

def check_cover_report(circuit_text: str, max_pairs: int = 50) -> dict:
    """CoverReport of a serialized circuit as a JSON-ready dict."""
    circuit = parse_circuit(circuit_text)
    report = check_cover(matchings_from_circuit(circuit))
    return {
        "covered": report.covered,
        "cover_depth": report.cover_depth,
        "uncovered_pairs": [list(pair) for pair in report.uncovered_pairs[:max_pairs]],
        "uncovered_total": len(report.uncovered_pairs),
    }


def emit_reference_curves(
    out_dir: str | Path,
    master_seed: int = DEFAULT_MASTER_SEED,
    histograms: bool = True,
    poisson_samples: int = 4000,
    poisson_levels: int = 64,
    gue_samples: int = 150,
    gue_dim: int = 128,
    bins: int = 40,
) -> dict[str, Path]:
    """Write guide-line constants and Monte-Carlo gap-ratio histograms."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {"means": out_dir / "reference_means.csv"}
    mean_rows = [
        {"ensemble": Ensemble.POISSON.value, "mean_ratio": reference_mean(Ensemble.POISSON)},
        {"ensemble": Ensemble.GUE.value, "mean_ratio": reference_mean(Ensemble.GUE)},
    ]
    _write_csv(paths["means"], REFERENCE_HEADER, mean_rows)
    if not histograms:
        return paths

    edges = np.linspace(0.0, 1.0, bins + 1)
    centers = (edges[:-1] + edges[1:]) / 2.0
    width = edges[1] - edges[0]
    histogram_rows = []
    for ensemble, draw, samples, size in (
        (Ensemble.POISSON, poisson_level_spectrum, poisson_samples, poisson_levels),
        (Ensemble.GUE, gue_level_spectrum, gue_samples, gue_dim),
    ):
        rng = stream_generator(master_seed, "reference-curves", ensemble.value)
        ratios = np.concatenate([
            level_spacing_ratios(draw(size, rng)).r_values for _ in range(samples)
        ])
        density, _ = np.histogram(ratios, bins=edges, density=True)
        for center, value in zip(centers, density):
            histogram_rows.append({
                "ensemble": ensemble.value,
                "bin_center": round(float(center), 12),
                "bin_width": round(float(width), 12),
                "density": float(value),
            })
    paths["histograms"] = out_dir / "ratio_histograms.csv"
    _write_csv(paths["histograms"], HISTOGRAM_HEADER, histogram_rows)
    return paths
