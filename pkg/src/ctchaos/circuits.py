"""Layered circuit representation, dagger, random Clifford layers, text format.

Layers are parallel time steps: within one layer no qubit may appear in more
than one gate, so the two-qubit gates of a layer always form a matching.
Circuits are immutable after construction and safe to share.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import stream_generator
from .sim import (
    MAX_QUBITS,
    ControlPolarity,
    Gate,
    GateKind,
    cnot,
)


class CircuitParseError(ValueError):
    """Raised on malformed circuit text; message carries the line number."""


@dataclass(frozen=True)
class Layer:
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        seen: set[int] = set()
        for gate in self.gates:
            for q in gate.qubits:
                if q in seen:
                    raise ValueError(f"qubit {q} appears in more than one gate of a layer")
                seen.add(q)

    def qubits_used(self) -> frozenset[int]:
        return frozenset(q for gate in self.gates for q in gate.qubits)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    layers: tuple[Layer, ...] = ()
    block_marks: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "block_marks", tuple(self.block_marks))
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        for layer in self.layers:
            for gate in layer.gates:
                if any(q >= self.n_qubits for q in gate.qubits):
                    raise ValueError(
                        f"gate {gate.kind.value} on {gate.qubits} out of range "
                        f"for {self.n_qubits} qubits"
                    )
        previous = -1
        for index, label in self.block_marks:
            if index <= previous:
                raise ValueError("block mark layer indices must be strictly increasing")
            if not 0 <= index < len(self.layers):
                raise ValueError(f"block mark index {index} outside circuit of {len(self.layers)} layers")
            previous = index

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def prefix(self, depth: int) -> "Circuit":
        """The circuit truncated to its first `depth` layers."""
        if not 0 <= depth <= len(self.layers):
            raise ValueError(f"depth {depth} outside [0, {len(self.layers)}]")
        marks = tuple((i, lab) for i, lab in self.block_marks if i < depth)
        return Circuit(self.n_qubits, self.layers[:depth], marks)

    def block_start(self, label: str) -> int:
        """Layer index at which the named block begins."""
        for index, lab in self.block_marks:
            if lab == label:
                return index
        raise KeyError(f"no block mark labelled {label!r}")


def dagger(circuit: Circuit) -> Circuit:
    """Inverse circuit: layers reversed, gate order reversed, gates inverted.

    Block marks are carried along by the index involution i -> L-1-i so that
    dagger(dagger(c)) == c; a daggered mark no longer points at a block start
    and is not meaningful on its own.
    """
    layers = tuple(
        Layer(tuple(gate.inverse() for gate in reversed(layer.gates)))
        for layer in reversed(circuit.layers)
    )
    last = len(circuit.layers) - 1
    marks = tuple(sorted((last - i, lab) for i, lab in circuit.block_marks))
    return Circuit(circuit.n_qubits, layers, marks)


@dataclass(frozen=True)
class CliffordLayerPolicy:
    """How random Clifford layer pairs are drawn.

    cnot_pair_fraction sets how many qubits engage in CNOTs per layer
    (floor(fraction * n / 2) pairs); single_qubit_choices is the menu for the
    dressing layer; rng_seed is the fallback stream when no generator is
    passed explicitly.
    """

    cnot_pair_fraction: float = 1.0
    single_qubit_choices: tuple[GateKind, ...] = (GateKind.H, GateKind.S)
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.cnot_pair_fraction <= 1.0:
            raise ValueError(f"cnot_pair_fraction must be in [0, 1], got {self.cnot_pair_fraction}")
        if not self.single_qubit_choices:
            raise ValueError("single_qubit_choices must be nonempty")
        allowed = {GateKind.H, GateKind.S}
        if not set(self.single_qubit_choices) <= allowed:
            raise ValueError("single_qubit_choices must be a subset of {H, S}")


def sample_clifford_layer_pair(
    n: int,
    policy: CliffordLayerPolicy,
    rng: np.random.Generator | None = None,
) -> tuple[Layer, Layer]:
    """One CNOT layer over a uniform random matching plus one H/S dressing layer.

    The matching engages floor(cnot_pair_fraction * n / 2) pairs; each pair
    becomes a CNOT with uniformly random control/target orientation.  Every
    qubit independently receives a uniform draw from single_qubit_choices.
    """
    if n < 2:
        raise ValueError("need at least two qubits to sample CNOT layers")
    if rng is None:
        rng = stream_generator(policy.rng_seed, "clifford-layer-pair")
    n_pairs = int(policy.cnot_pair_fraction * n / 2)
    order = rng.permutation(n)
    flips = rng.integers(0, 2, size=n_pairs)
    cnots = []
    for i in range(n_pairs):
        a, b = int(order[2 * i]), int(order[2 * i + 1])
        cnots.append(cnot(b, a) if flips[i] else cnot(a, b))
    picks = rng.integers(0, len(policy.single_qubit_choices), size=n)
    singles = tuple(Gate(policy.single_qubit_choices[int(p)], (q,)) for q, p in enumerate(picks))
    return Layer(tuple(cnots)), Layer(singles)


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------
# Line-oriented: header `qubits N`, a `layer` line per layer, one gate per
# line as `KIND q0 [q1] [polarity]`, block marks as `# block: LABEL` placed
# before the layer they annotate.  Controlled Paulis serialize their Pauli in
# the kind token: CPX / CPY / CPZ, polarity on1 / on0.

_PLAIN_TOKENS = {
    GateKind.H: "H",
    GateKind.S: "S",
    GateKind.SDG: "SDG",
    GateKind.T: "T",
    GateKind.TDG: "TDG",
    GateKind.X: "X",
    GateKind.Y: "Y",
    GateKind.Z: "Z",
    GateKind.CNOT: "CNOT",
    GateKind.SWAP: "SWAP",
}
_TOKEN_TO_KIND = {tok: kind for kind, tok in _PLAIN_TOKENS.items()}
_CP_TOKENS = {GateKind.X: "CPX", GateKind.Y: "CPY", GateKind.Z: "CPZ"}
_TOKEN_TO_CP = {tok: pauli for pauli, tok in _CP_TOKENS.items()}
_POLARITY_TOKENS = {ControlPolarity.ON_ONE: "on1", ControlPolarity.ON_ZERO: "on0"}
_TOKEN_TO_POLARITY = {tok: pol for pol, tok in _POLARITY_TOKENS.items()}


def _gate_line(gate: Gate) -> str:
    if gate.kind is GateKind.CPAULI:
        token = _CP_TOKENS[gate.pauli]
        pol = _POLARITY_TOKENS[gate.control_polarity]
        return f"{token} {gate.qubits[0]} {gate.qubits[1]} {pol}"
    parts = [_PLAIN_TOKENS[gate.kind]] + [str(q) for q in gate.qubits]
    return " ".join(parts)


def serialize(circuit: Circuit) -> str:
    marks = dict(circuit.block_marks)
    lines = [f"qubits {circuit.n_qubits}"]
    for index, layer in enumerate(circuit.layers):
        if index in marks:
            lines.append(f"# block: {marks[index]}")
        lines.append("layer")
        lines.extend(_gate_line(gate) for gate in layer.gates)
    return "\n".join(lines) + "\n"


def _parse_gate_line(tokens: list[str], line_no: int) -> Gate:
    token = tokens[0].upper()
    try:
        if token in _TOKEN_TO_CP:
            if len(tokens) != 4:
                raise ValueError(f"{token} expects `control target polarity`")
            control, target = int(tokens[1]), int(tokens[2])
            polarity = _TOKEN_TO_POLARITY.get(tokens[3].lower())
            if polarity is None:
                raise ValueError(f"unknown polarity token {tokens[3]!r}")
            return Gate(GateKind.CPAULI, (control, target), polarity, _TOKEN_TO_CP[token])
        kind = _TOKEN_TO_KIND.get(token)
        if kind is None:
            raise ValueError(f"unknown gate kind {tokens[0]!r}")
        qubits = tuple(int(tok) for tok in tokens[1:])
        return Gate(kind, qubits)
    except ValueError as exc:
        raise CircuitParseError(f"line {line_no}: {exc}") from None


def parse(text: str) -> Circuit:
    """Inverse of serialize; errors report the offending line number."""
    n_qubits: int | None = None
    layers: list[Layer] = []
    current: list[Gate] | None = None
    marks: list[tuple[int, str]] = []
    pending_label: str | None = None

    def close_layer():
        nonlocal current
        if current is not None:
            try:
                layers.append(Layer(tuple(current)))
            except ValueError as exc:
                raise CircuitParseError(f"layer {len(layers)}: {exc}") from None
        current = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("block:"):
                pending_label = body[len("block:"):].strip()
            continue
        tokens = line.split()
        if tokens[0].lower() == "qubits":
            if n_qubits is not None:
                raise CircuitParseError(f"line {line_no}: duplicate qubits header")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise CircuitParseError(f"line {line_no}: malformed header, expected `qubits N`")
            n_qubits = int(tokens[1])
            continue
        if n_qubits is None:
            raise CircuitParseError(f"line {line_no}: `qubits N` header must come first")
        if tokens[0].lower() == "layer":
            close_layer()
            current = []
            if pending_label is not None:
                marks.append((len(layers), pending_label))
                pending_label = None
            continue
        if current is None:
            raise CircuitParseError(f"line {line_no}: gate before any `layer` line")
        gate = _parse_gate_line(tokens, line_no)
        if any(q >= n_qubits for q in gate.qubits):
            raise CircuitParseError(
                f"line {line_no}: qubit index out of range for {n_qubits} qubits"
            )
        current.append(gate)

    if n_qubits is None:
        raise CircuitParseError("line 1: missing `qubits N` header")
    close_layer()
    try:
        return Circuit(n_qubits, tuple(layers), tuple(marks))
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from None
