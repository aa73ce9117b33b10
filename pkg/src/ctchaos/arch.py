"""Deterministic entanglement-heating architectures and experiment assembly.

Three heating constructions share one interface: a bitonic sorting network's
comparator schedule, two-step routing of random cyclic permutations, and
random Clifford layers extended until causally covered.  On top of these sit
the four-block and five-block experiment circuits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .causal import MatchingSequence, _apply_step, extend_until_covered, MAX_LAYERS_PER_ROUND
from .circuits import Circuit, CliffordLayerPolicy, Layer
from .rng import RngTree
from .sim import Gate, GateKind, cnot, h, t


class HeatingKind(enum.Enum):
    CAUSAL_RANDOM = "causal-random"
    BITONIC = "bitonic"
    CYCLIC_PERMUTATION = "cyclic-perm"


class SwapStyle(enum.Enum):
    THREE_CNOT = "three-cnot"
    SINGLE_CNOT = "single-cnot"


@dataclass(frozen=True)
class HeatingSpec:
    """One heating block: which construction, how deep, and its layer policy.

    depth_units is the causal-cover multiplier for CAUSAL_RANDOM and the
    number of repetitions of the base network otherwise.  swap_style picks
    how routing swaps become CNOTs (canonical 3-CNOT identity by default).
    """

    kind: HeatingKind
    depth_units: int = 1
    policy: CliffordLayerPolicy = field(default_factory=CliffordLayerPolicy)
    swap_style: SwapStyle = SwapStyle.THREE_CNOT

    def __post_init__(self):
        if self.depth_units < 1:
            raise ValueError("depth_units must be positive")


@dataclass(frozen=True)
class BlockPlan:
    """Block structure of one experiment circuit.

    t_layer_size counts T gates in the middle T-layer (None means all n).
    init_t_layer=False drops the initialization T gates, which together with
    t_layer_size=0 gives the pure-Clifford control run; the T-layers are
    still emitted as (possibly empty) layers so block boundaries keep their
    meaning.
    """

    block_count: int
    heating: HeatingSpec
    t_layer_size: int | None = None
    init_t_layer: bool = True

    def __post_init__(self):
        if self.block_count not in (4, 5):
            raise ValueError(f"block_count must be 4 or 5, got {self.block_count}")
        if self.t_layer_size is not None and self.t_layer_size < 0:
            raise ValueError("t_layer_size must be nonnegative")


# Block labels used in Circuit.block_marks.  Both plans contain exactly two
# T-layers; BLOCK_T2 is the one the OTOC red line refers to (in the
# four-block plan the first T-layer lives inside BLOCK_INIT).
BLOCK_INIT = "init"
BLOCK_PRE_HEAT = "pre-heat"
BLOCK_T1 = "t-layer-1"
BLOCK_HEAT1 = "heat-1"
BLOCK_T2 = "t-layer-2"
BLOCK_HEAT2 = "heat-2"


# ---------------------------------------------------------------------------
# bitonic sorting network
# ---------------------------------------------------------------------------

def build_bitonic_comparators(n: int) -> list[list[tuple[int, int, bool]]]:
    """Comparator stages (low, high, ascending) of the bitonic sorter on n wires.

    Standard iterative schedule: merge blocks of size 2, 4, ..., n; within a
    block pass, strides run n_block/2 down to 1 and stage s pairs i with
    i XOR stride.  For n = 2**k this yields k(k+1)/2 stages, each a perfect
    matching.
    """
    k = n.bit_length() - 1
    if n < 2 or (1 << k) != n:
        raise ValueError(f"bitonic network needs a power-of-two size >= 2, got {n}")
    stages = []
    block = 2
    while block <= n:
        stride = block // 2
        while stride >= 1:
            stage = []
            for i in range(n):
                j = i ^ stride
                if j > i:
                    stage.append((i, j, (i & block) == 0))
            stages.append(stage)
            stride //= 2
        block *= 2
    return stages


def build_bitonic_matchings(n: int) -> MatchingSequence:
    """The comparator schedule with directions dropped, one step per stage."""
    steps = tuple(
        frozenset((lo, hi) for lo, hi, _ in stage) for stage in build_bitonic_comparators(n)
    )
    return MatchingSequence(n, steps)


# ---------------------------------------------------------------------------
# two-step routing of cyclic permutations
# ---------------------------------------------------------------------------

def decompose_cyclic_two_step(perm) -> tuple[frozenset[tuple[int, int]], frozenset[tuple[int, int]]]:
    """Two matchings (O, E) of disjoint transpositions with E after O realizing perm.

    Writing the single cycle as c_0 -> c_1 -> ... -> c_{n-1} -> c_0, the
    rotation j -> j+1 factors into the reflections j -> -j and j -> 1-j of
    the n-gon; conjugating by the cycle labelling gives
    O = {(c_i, c_{-i mod n})} and E = {(c_i, c_{1-i mod n})}, fixed points
    dropped.  Applying all swaps of O and then all swaps of E maps every
    vertex to its image under perm.
    """
    n = len(perm)
    if n < 2:
        raise ValueError("need a permutation of at least two elements")
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    cycle = [0]
    v = perm[0]
    while v != 0:
        cycle.append(v)
        v = perm[v]
        if len(cycle) > n:
            raise ValueError("not a permutation of 0..n-1")
    if len(cycle) != n:
        raise ValueError("permutation is not a single n-cycle")

    def reflection_pairs(shift: int) -> frozenset[tuple[int, int]]:
        pairs = set()
        for i in range(n):
            j = (shift - i) % n
            if i < j:
                u, v = cycle[i], cycle[j]
                pairs.add((min(u, v), max(u, v)))
        return frozenset(pairs)

    return reflection_pairs(0), reflection_pairs(1)


def random_cyclic_permutation(n: int, rng: np.random.Generator) -> tuple[int, ...]:
    """A uniform random single n-cycle, as the image list perm[i]."""
    order = [int(q) for q in rng.permutation(n)]
    perm = [0] * n
    for i in range(n):
        perm[order[i]] = order[(i + 1) % n]
    return tuple(perm)


# ---------------------------------------------------------------------------
# heating blocks
# ---------------------------------------------------------------------------

def _random_orientation_cnots(pairs, rng: np.random.Generator) -> list[Gate]:
    gates = []
    for a, b in pairs:
        if rng.integers(0, 2):
            a, b = b, a
        gates.append(cnot(a, b))
    return gates


def _dressing_layer(qubits, choices, rng: np.random.Generator) -> Layer:
    picks = rng.integers(0, len(choices), size=len(qubits))
    return Layer(tuple(Gate(choices[int(p)], (q,)) for q, p in zip(qubits, picks)))


def _routing_cnot_layers(matching, style: SwapStyle, rng: np.random.Generator) -> list[Layer]:
    """CNOT layers realizing a matching of swaps.

    THREE_CNOT follows the pattern of the identity
    swap(u,v) = CNOT(u,v) CNOT(v,u) CNOT(u,v) across three consecutive layers
    (three gates on one pair cannot share a layer); SINGLE_CNOT keeps one
    randomly oriented CNOT per pair.  The heating block dresses every one of
    these layers with H/S, which is what makes the pattern entangling rather
    than a literal qubit permutation.
    """
    pairs = sorted(matching)
    if not pairs:
        return [Layer(())]
    if style is SwapStyle.SINGLE_CNOT:
        return [Layer(tuple(_random_orientation_cnots(pairs, rng)))]
    return [
        Layer(tuple(cnot(a, b) for a, b in pairs)),
        Layer(tuple(cnot(b, a) for a, b in pairs)),
        Layer(tuple(cnot(a, b) for a, b in pairs)),
    ]


def build_heating_block(n: int, spec: HeatingSpec, rng: np.random.Generator) -> Circuit:
    """One entanglement-heating block as a circuit on n qubits.

    CAUSAL_RANDOM delegates to extend_until_covered.  BITONIC turns every
    comparator stage into a randomly oriented CNOT layer dressed with H/S on
    the comparator endpoints.  CYCLIC_PERMUTATION routes fresh random cyclic
    permutations through their two-step matchings, every CNOT layer followed
    by an all-qubit H/S layer; repetitions are appended past depth_units
    until the realized matchings are causally covered.
    """
    choices = spec.policy.single_qubit_choices
    if spec.kind is HeatingKind.CAUSAL_RANDOM:
        return extend_until_covered(n, spec.policy, rng, spec.depth_units)

    if spec.kind is HeatingKind.BITONIC:
        stages = build_bitonic_comparators(n)
        layers: list[Layer] = []
        for _ in range(spec.depth_units):
            for stage in stages:
                pairs = [(lo, hi) for lo, hi, _ in stage]
                layers.append(Layer(tuple(_random_orientation_cnots(pairs, rng))))
                participants = sorted(q for pair in pairs for q in pair)
                layers.append(_dressing_layer(participants, choices, rng))
        return Circuit(n, tuple(layers))

    # CYCLIC_PERMUTATION
    if n < 2:
        raise ValueError("routing needs at least two qubits")
    layers = []
    reach = np.eye(n, dtype=bool)
    repetitions = 0
    while repetitions < spec.depth_units or not reach.all():
        if repetitions >= MAX_LAYERS_PER_ROUND:
            raise RuntimeError("cyclic routing failed to reach causal cover")
        perm = random_cyclic_permutation(n, rng)
        for matching in decompose_cyclic_two_step(perm):
            for cnot_layer in _routing_cnot_layers(matching, spec.swap_style, rng):
                layers.append(cnot_layer)
                layers.append(_dressing_layer(range(n), choices, rng))
            _apply_step(reach, matching)
        repetitions += 1
    return Circuit(n, tuple(layers))


# ---------------------------------------------------------------------------
# experiment circuits
# ---------------------------------------------------------------------------

def _t_layer(n: int, count: int) -> Layer:
    return Layer(tuple(t(q) for q in range(count)))


def assemble_experiment_circuit(n: int, plan: BlockPlan, streams: RngTree) -> Circuit:
    """The full experiment circuit with block marks at every block start.

    Four blocks: T-state initialization (H layer then T layer), heating,
    middle T-layer, final heating.  Five blocks: a causally covered random
    Clifford block first, so the first T-layer acts on an entangled state,
    then the same four-block tail with the initialization H layer replaced
    by a plain n-qubit T-layer.
    """
    t2_size = n if plan.t_layer_size is None else plan.t_layer_size
    if t2_size > n:
        raise ValueError(f"t_layer_size {t2_size} exceeds {n} qubits")
    layers: list[Layer] = []
    marks: list[tuple[int, str]] = []

    def add_block(label: str, block_layers) -> None:
        marks.append((len(layers), label))
        layers.extend(block_layers)

    if plan.block_count == 4:
        init = [
            Layer(tuple(h(q) for q in range(n))),
            _t_layer(n, n if plan.init_t_layer else 0),
        ]
        add_block(BLOCK_INIT, init)
    else:
        pre_spec = HeatingSpec(HeatingKind.CAUSAL_RANDOM, 1, plan.heating.policy)
        pre = build_heating_block(n, pre_spec, streams.child(BLOCK_PRE_HEAT).generator())
        add_block(BLOCK_PRE_HEAT, pre.layers)
        add_block(BLOCK_T1, [_t_layer(n, n if plan.init_t_layer else 0)])

    heat1 = build_heating_block(n, plan.heating, streams.child(BLOCK_HEAT1).generator())
    add_block(BLOCK_HEAT1, heat1.layers)
    add_block(BLOCK_T2, [_t_layer(n, t2_size)])
    heat2 = build_heating_block(n, plan.heating, streams.child(BLOCK_HEAT2).generator())
    add_block(BLOCK_HEAT2, heat2.layers)
    return Circuit(n, tuple(layers), tuple(marks))


def second_t_layer_depth(circuit: Circuit) -> int:
    """Prefix length that just includes the second T-layer."""
    return circuit.block_start(BLOCK_T2) + 1


def count_t_gates(circuit: Circuit) -> int:
    return sum(
        1
        for layer in circuit.layers
        for gate in layer.gates
        if gate.kind in (GateKind.T, GateKind.TDG)
    )
