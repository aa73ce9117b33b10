"""Deterministic Clifford+T chaos experiments: simulation, architectures, diagnostics."""

from .arch import (
    BlockPlan,
    HeatingKind,
    HeatingSpec,
    SwapStyle,
    assemble_experiment_circuit,
    build_bitonic_comparators,
    build_bitonic_matchings,
    build_heating_block,
    count_t_gates,
    decompose_cyclic_two_step,
    random_cyclic_permutation,
    second_t_layer_depth,
)
from .causal import (
    CoverReport,
    MatchingSequence,
    check_cover,
    extend_until_covered,
    matchings_from_circuit,
)
from .circuits import (
    Circuit,
    CircuitParseError,
    CliffordLayerPolicy,
    Layer,
    dagger,
    parse,
    sample_clifford_layer_pair,
    serialize,
)
from .otoc import (
    OtocConfig,
    OtocTrace,
    default_otoc_operators,
    otoc_at_depth,
    otoc_depth_sweep,
)
from .rng import RngTree, stream_generator
from .sim import (
    ControlPolarity,
    Gate,
    GateKind,
    StateVector,
    apply_circuit,
    apply_gate,
    entanglement_spectrum,
    pauli_expectation,
    prepare_t_state_product,
)
from .spectrum import (
    Ensemble,
    SpectrumStats,
    ensemble_mean_ratio,
    gue_level_spectrum,
    level_spacing_ratios,
    poisson_level_spectrum,
    reference_mean,
    run_spectrum_trial,
)

__version__ = "0.1.0"
