"""Interferometric out-of-time-order correlator measurement.

An ancilla control qubit prepared in (|0> + |1>)/sqrt(2) steers five
operations on the n-qubit system: V conditioned on the ancilla being |1>,
the circuit prefix U, the probe W, the inverse prefix, and V conditioned on
the ancilla being |0>.  The two ancilla branches then hold V W_t |psi> and
W_t V |psi> with W_t = U^dag W U, so the ancilla X and Y expectations read
off the real and imaginary parts of <W_t^dag V^dag W_t V> without reversing
the physical system.  Only the real part feeds the experiments; the
imaginary part is recorded anyway.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arch import BlockPlan, assemble_experiment_circuit, second_t_layer_depth
from .circuits import Circuit, dagger
from .rng import RngTree
from .sim import (
    ControlPolarity,
    Gate,
    GateKind,
    PAULI_KINDS,
    StateVector,
    apply_circuit,
    apply_gate,
    controlled_pauli,
    h,
    pauli_expectation,
)

PauliOp = tuple[GateKind, int]


@dataclass(frozen=True)
class OtocConfig:
    """Butterfly pair, measurement stride, and the block plan to sweep."""

    v_operator: PauliOp
    w_operator: PauliOp
    plan: BlockPlan
    measure_every_layers: int = 2

    def __post_init__(self):
        for name, (kind, qubit) in (("v", self.v_operator), ("w", self.w_operator)):
            if kind not in PAULI_KINDS:
                raise ValueError(f"{name}_operator must be a Pauli (X, Y, Z), got {kind}")
            if qubit < 0:
                raise ValueError(f"{name}_operator qubit index must be nonnegative")
        if self.v_operator[1] == self.w_operator[1]:
            raise ValueError("v and w must act on different qubits")
        if self.measure_every_layers < 1:
            raise ValueError("measure_every_layers must be positive")


def default_otoc_operators(n: int) -> tuple[PauliOp, PauliOp]:
    """Maximally separated butterfly pair: V = Z on qubit 0, W = X on qubit n-1."""
    return (GateKind.Z, 0), (GateKind.X, n - 1)


@dataclass
class OtocTrace:
    depths: list[int]
    re_f: list[float]
    im_f: list[float]
    second_t_layer_depth: int

    def post_t2_abs_re(self) -> np.ndarray:
        """|Re F| at every depth at or past the second T-layer."""
        values = [
            abs(re)
            for depth, re in zip(self.depths, self.re_f)
            if depth >= self.second_t_layer_depth
        ]
        return np.array(values)


def otoc_at_depth(circuit_prefix: Circuit, config: OtocConfig) -> complex:
    """F = <X_C> + i <Y_C> after the five-operation protocol on one prefix.

    The system starts in |0...0> (state preparation layers belong to the
    prefix itself); the ancilla is appended as qubit n.
    """
    n = circuit_prefix.n_qubits
    v_kind, v_qubit = config.v_operator
    w_kind, w_qubit = config.w_operator
    if v_qubit >= n or w_qubit >= n:
        raise ValueError(f"operator qubits {v_qubit}, {w_qubit} out of range for {n} qubits")
    ancilla = n
    state = StateVector.zero(n + 1)
    apply_gate(state, h(ancilla))
    apply_gate(state, controlled_pauli(v_kind, ancilla, v_qubit, ControlPolarity.ON_ONE))
    apply_circuit(state, circuit_prefix)
    apply_gate(state, Gate(w_kind, (w_qubit,)))
    apply_circuit(state, dagger(circuit_prefix))
    apply_gate(state, controlled_pauli(v_kind, ancilla, v_qubit, ControlPolarity.ON_ZERO))
    return complex(
        pauli_expectation(state, GateKind.X, ancilla),
        pauli_expectation(state, GateKind.Y, ancilla),
    )


def measurement_depths(circuit: Circuit, stride: int) -> list[int]:
    """Stride multiples plus every block boundary, 0, and the full depth."""
    depths = set(range(0, circuit.n_layers + 1, stride))
    depths.update(index for index, _ in circuit.block_marks)
    depths.update((0, circuit.n_layers, second_t_layer_depth(circuit)))
    return sorted(depths)


def otoc_depth_sweep(n: int, config: OtocConfig, streams: RngTree) -> OtocTrace:
    """Re/Im F at every measured prefix depth of the assembled plan circuit."""
    circuit = assemble_experiment_circuit(n, config.plan, streams)
    t2_depth = second_t_layer_depth(circuit)
    depths = measurement_depths(circuit, config.measure_every_layers)
    re_f: list[float] = []
    im_f: list[float] = []
    for depth in depths:
        f = otoc_at_depth(circuit.prefix(depth), config)
        re_f.append(f.real)
        im_f.append(f.imag)
    return OtocTrace(depths, re_f, im_f, t2_depth)
