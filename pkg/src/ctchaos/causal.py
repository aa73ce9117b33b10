"""Causal cover of matching sequences.

A circuit's two-qubit interaction schedule abstracts to a sequence of
matchings E_1, E_2, ... on the qubit set.  An ordered pair (u, v) is causally
covered when a path u = i_1, i_2, ..., i_m = v exists whose consecutive edges
sit in strictly increasing steps; the sequence is covered when every ordered
pair is.  Edges are undirected and a single edge covers both orders of its
endpoints (operator spreading through a CNOT is bidirectional).

The checker maintains one reach set per source vertex and sweeps the steps
once.  Within a step the edges are vertex-disjoint, so no within-step
chaining is possible and the update order does not matter.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, CliffordLayerPolicy, Layer, sample_clifford_layer_pair

# Safety cap for the generate-until-covered loop; random matchings cover an
# n <= 22 register in far fewer steps, so hitting this indicates a bug.
MAX_LAYERS_PER_ROUND = 10_000

Edge = tuple[int, int]


@dataclass(frozen=True)
class MatchingSequence:
    """Steps of vertex-disjoint undirected edges; edges stored as (min, max)."""

    n_vertices: int
    steps: tuple[frozenset[Edge], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "steps",
            tuple(frozenset((min(u, v), max(u, v)) for u, v in step) for step in self.steps),
        )
        if self.n_vertices < 1:
            raise ValueError("need at least one vertex")
        for t, step in enumerate(self.steps):
            seen: set[int] = set()
            for u, v in step:
                if u == v:
                    raise ValueError(f"step {t}: self-loop on vertex {u}")
                if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                    raise ValueError(f"step {t}: edge ({u}, {v}) outside vertex range")
                if u in seen or v in seen:
                    raise ValueError(f"step {t}: edges are not vertex-disjoint")
                seen.update((u, v))


@dataclass
class CoverReport:
    covered: bool
    uncovered_pairs: list[Edge]
    cover_depth: int | None


def matchings_from_circuit(circuit: Circuit) -> MatchingSequence:
    """One step per layer, one edge per two-qubit gate; single-qubit gates ignored."""
    steps = tuple(
        frozenset(gate.qubits for gate in layer.gates if len(gate.qubits) == 2)
        for layer in circuit.layers
    )
    return MatchingSequence(circuit.n_qubits, steps)


def _apply_step(reach: np.ndarray, edges) -> None:
    """Grow reach sets by one step: reach[u, b] |= reach[u, a] and vice versa."""
    for a, b in edges:
        col_a = reach[:, a].copy()
        reach[:, a] |= reach[:, b]
        reach[:, b] |= col_a


def check_cover(ms: MatchingSequence) -> CoverReport:
    n = ms.n_vertices
    reach = np.eye(n, dtype=bool)
    cover_depth: int | None = 0 if reach.all() else None
    for t, step in enumerate(ms.steps):
        _apply_step(reach, step)
        if cover_depth is None and reach.all():
            cover_depth = t + 1
    uncovered = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and not reach[u, v]
    ]
    return CoverReport(covered=not uncovered, uncovered_pairs=uncovered, cover_depth=cover_depth)


def extend_until_covered(
    n: int,
    policy: CliffordLayerPolicy,
    rng: np.random.Generator,
    multiplier: int = 1,
) -> Circuit:
    """Append random Clifford layer pairs until causally covered, `multiplier` times.

    Each round appends freshly sampled (CNOT layer, single-qubit layer) pairs
    until the matchings of that round alone cover every ordered pair; the
    rounds are concatenated.  Cover probability is monotone in the number of
    random matchings, so the loop terminates (a blown safety cap means the
    sampler is broken, not bad luck).
    """
    if n < 2:
        raise ValueError("causal cover needs at least two qubits")
    if multiplier < 1:
        raise ValueError("multiplier must be positive")
    layers: list[Layer] = []
    for _ in range(multiplier):
        reach = np.eye(n, dtype=bool)
        added = 0
        while not reach.all():
            if added >= MAX_LAYERS_PER_ROUND:
                raise RuntimeError(
                    f"no causal cover after {added} layer pairs on {n} qubits; "
                    "layer sampler is not mixing"
                )
            cnot_layer, single_layer = sample_clifford_layer_pair(n, policy, rng)
            layers.extend((cnot_layer, single_layer))
            _apply_step(reach, (gate.qubits for gate in cnot_layer.gates))
            added += 1
    return Circuit(n, tuple(layers))
