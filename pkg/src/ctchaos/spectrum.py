"""Entanglement-spectrum level statistics.

The adjacent-gap ratio of a descending eigenvalue list is
min(d_k, d_{k+1}) / max(d_k, d_{k+1}) with d_k the k-th spacing.  Its
ensemble mean separates integrable from chaotic spectra: about 0.39 for
Poisson statistics, about 0.60 for the GUE (Wigner-Dyson).  Degenerate
spacing pairs give 0/0 and are excluded rather than fabricated; stabilizer
states make them common.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .arch import BlockPlan, assemble_experiment_circuit
from .circuits import Circuit
from .rng import RngTree
from .sim import StateVector, apply_circuit, entanglement_spectrum

POISSON_MEAN_RATIO = 0.39
GUE_MEAN_RATIO = 0.60

DEGENERACY_EPSILON = 1e-12


class Ensemble(enum.Enum):
    POISSON = "poisson"
    GUE = "gue"


def reference_mean(ensemble: Ensemble | str) -> float:
    """Guide-line constant for the given ensemble (quoted precision)."""
    ensemble = Ensemble(ensemble) if isinstance(ensemble, str) else ensemble
    return POISSON_MEAN_RATIO if ensemble is Ensemble.POISSON else GUE_MEAN_RATIO


@dataclass
class SpectrumStats:
    """Eigenvalues plus their adjacent-gap ratios; mean_r is nan when empty."""

    eigenvalues: np.ndarray
    r_values: np.ndarray
    excluded_count: int
    mean_r: float

    @property
    def total_pairs(self) -> int:
        return len(self.r_values) + self.excluded_count

    @property
    def excluded_fraction(self) -> float:
        total = self.total_pairs
        return self.excluded_count / total if total else 0.0


def level_spacing_ratios(eigenvalues, epsilon: float = DEGENERACY_EPSILON) -> SpectrumStats:
    """Adjacent-gap ratios of a descending eigenvalue list.

    Spacing pairs whose larger member falls below epsilon are counted in
    excluded_count and omitted from r_values.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size < 3:
        raise ValueError(f"need at least 3 eigenvalues, got {lam.size}")
    if np.any(np.diff(lam) > 0):
        raise ValueError("eigenvalues must be sorted in descending order")
    spacings = lam[:-1] - lam[1:]
    first, second = spacings[:-1], spacings[1:]
    larger = np.maximum(first, second)
    keep = larger >= epsilon
    ratios = np.minimum(first, second)[keep] / larger[keep]
    excluded = int(np.count_nonzero(~keep))
    mean_r = float(ratios.mean()) if ratios.size else float("nan")
    return SpectrumStats(lam, ratios, excluded, mean_r)


# ---------------------------------------------------------------------------
# synthetic reference ensembles (Monte-Carlo oracles and plot guides)
# ---------------------------------------------------------------------------

def poisson_level_spectrum(n_levels: int, rng: np.random.Generator) -> np.ndarray:
    """Descending levels with i.i.d. unit-exponential spacings."""
    spacings = rng.exponential(1.0, size=n_levels - 1)
    levels = np.concatenate(([0.0], np.cumsum(spacings)))
    return levels[::-1].copy()


def gue_level_spectrum(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Descending eigenvalues of one GUE matrix of the given dimension."""
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    hermitian = (a + a.conj().T) / 2.0
    return np.linalg.eigvalsh(hermitian)[::-1].copy()


def ensemble_mean_ratio(
    ensemble: Ensemble | str,
    samples: int,
    size: int,
    rng: np.random.Generator,
) -> float:
    """Grand mean gap ratio over Monte-Carlo samples of the given ensemble."""
    ensemble = Ensemble(ensemble) if isinstance(ensemble, str) else ensemble
    draw = poisson_level_spectrum if ensemble is Ensemble.POISSON else gue_level_spectrum
    total = 0.0
    count = 0
    for _ in range(samples):
        stats = level_spacing_ratios(draw(size, rng))
        total += float(stats.r_values.sum())
        count += stats.r_values.size
    return total / count


# ---------------------------------------------------------------------------
# experiment trials
# ---------------------------------------------------------------------------

def spectrum_stats_of_state(state: StateVector, partition_size: int | None = None) -> SpectrumStats:
    k = state.n_qubits // 2 if partition_size is None else partition_size
    return level_spacing_ratios(entanglement_spectrum(state, k))


def run_spectrum_trial(
    n: int,
    plan: BlockPlan,
    streams: RngTree,
    partition_size: int | None = None,
    record_boundaries: bool = False,
):
    """Assemble, simulate from |0...0>, and measure at the end of the circuit.

    With record_boundaries=True also returns (label, stats) measured after
    each block, as (final_stats, boundary_list).
    """
    circuit = assemble_experiment_circuit(n, plan, streams)
    state = StateVector.zero(n)
    if not record_boundaries:
        apply_circuit(state, circuit)
        return spectrum_stats_of_state(state, partition_size)

    boundaries = []
    starts = list(circuit.block_marks) + [(circuit.n_layers, None)]
    for (start, label), (end, _) in zip(starts, starts[1:]):
        apply_circuit(state, Circuit(circuit.n_qubits, circuit.layers[start:end]))
        boundaries.append((label, spectrum_stats_of_state(state, partition_size)))
    return boundaries[-1][1], boundaries
