import numpy as np
import pytest

from ctchaos.causal import (
    MatchingSequence,
    check_cover,
    extend_until_covered,
    matchings_from_circuit,
)
from ctchaos.circuits import Circuit, CliffordLayerPolicy, Layer
from ctchaos.rng import stream_generator
from ctchaos.sim import cnot, h, t

from oracles import brute_force_covered_pairs
from test_circuits import fig1_circuit


def random_matching_sequence(n, n_steps, rng):
    steps = []
    for _ in range(n_steps):
        order = rng.permutation(n)
        n_pairs = int(rng.integers(0, n // 2 + 1))
        steps.append(
            frozenset(
                (int(order[2 * i]), int(order[2 * i + 1])) for i in range(n_pairs)
            )
        )
    return MatchingSequence(n, tuple(steps))


def assert_matches_brute_force(ms):
    report = check_cover(ms)
    expected = brute_force_covered_pairs(ms)
    all_pairs = {
        (u, v) for u in range(ms.n_vertices) for v in range(ms.n_vertices) if u != v
    }
    assert set(report.uncovered_pairs) == all_pairs - expected
    assert report.covered == (expected == all_pairs)


class TestMatchingSequence:
    def test_rejects_overlapping_edges(self):
        with pytest.raises(ValueError):
            MatchingSequence(4, (frozenset({(0, 1), (1, 2)}),))

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            MatchingSequence(4, (frozenset({(2, 2)}),))

    def test_normalizes_edge_order(self):
        ms = MatchingSequence(4, (frozenset({(3, 1)}),))
        assert ms.steps[0] == frozenset({(1, 3)})


class TestMatchingsFromCircuit:
    def test_single_qubit_gates_give_empty_steps(self):
        circuit = Circuit(3, (Layer((h(0), t(1))), Layer((h(2),))))
        ms = matchings_from_circuit(circuit)
        assert ms.steps == (frozenset(), frozenset())

    def test_fig1_steps(self):
        ms = matchings_from_circuit(fig1_circuit())
        assert ms.steps == (
            frozenset({(1, 2), (3, 4)}),
            frozenset({(2, 5)}),
            frozenset({(4, 5)}),
        )

    def test_parallel_cnots_in_one_step(self):
        circuit = Circuit(4, (Layer((cnot(0, 1), cnot(2, 3))),))
        assert matchings_from_circuit(circuit).steps == (frozenset({(0, 1), (2, 3)}),)


class TestCheckCover:
    def test_fig1_verdicts(self):
        # vertices keep the figure's 1-based labels; vertex 0 sits idle
        ms = matchings_from_circuit(fig1_circuit())
        report = check_cover(ms)
        assert not report.covered
        assert (1, 4) not in report.uncovered_pairs
        assert (2, 4) not in report.uncovered_pairs
        assert (4, 2) in report.uncovered_pairs

    def test_fig1_verdicts_zero_based(self):
        ms = MatchingSequence(
            5,
            (
                frozenset({(0, 1), (2, 3)}),
                frozenset({(1, 4)}),
                frozenset({(3, 4)}),
            ),
        )
        report = check_cover(ms)
        assert not report.covered
        assert (0, 3) not in report.uncovered_pairs
        assert (1, 3) not in report.uncovered_pairs
        assert (3, 1) in report.uncovered_pairs
        assert_matches_brute_force(ms)

    def test_single_edge_covers_both_orders(self):
        ms = MatchingSequence(2, (frozenset({(0, 1)}),))
        report = check_cover(ms)
        assert report.covered
        assert report.cover_depth == 1

    def test_brickwork_covered(self):
        ms = MatchingSequence(
            4,
            (
                frozenset({(0, 1), (2, 3)}),
                frozenset({(1, 2), (3, 0)}),
                frozenset({(0, 1), (2, 3)}),
            ),
        )
        report = check_cover(ms)
        assert report.covered
        assert_matches_brute_force(ms)

    def test_trivial_single_vertex(self):
        report = check_cover(MatchingSequence(1, ()))
        assert report.covered
        assert report.cover_depth == 0

    def test_cover_depth_is_first_covering_prefix(self):
        ms = MatchingSequence(
            2, (frozenset(), frozenset({(0, 1)}), frozenset({(0, 1)}))
        )
        assert check_cover(ms).cover_depth == 2

    def test_agrees_with_brute_force_on_500_random_sequences(self):
        rng = np.random.default_rng(1234)
        for _ in range(500):
            n = int(rng.integers(2, 9))
            n_steps = int(rng.integers(0, 9))
            assert_matches_brute_force(random_matching_sequence(n, n_steps, rng))

    def test_monotone_under_extension(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            ms = random_matching_sequence(6, 6, rng)
            if not check_cover(ms).covered:
                continue
            extended = MatchingSequence(
                6, ms.steps + random_matching_sequence(6, 3, rng).steps
            )
            assert check_cover(extended).covered

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = 7
            ms = random_matching_sequence(n, 5, rng)
            relabel = [int(v) for v in rng.permutation(n)]
            mapped = MatchingSequence(
                n,
                tuple(
                    frozenset((relabel[u], relabel[v]) for u, v in step)
                    for step in ms.steps
                ),
            )
            assert check_cover(mapped).covered == check_cover(ms).covered


class TestExtendUntilCovered:
    def test_two_qubits_three_rounds(self):
        circuit = extend_until_covered(
            2, CliffordLayerPolicy(), stream_generator(3, "n2"), multiplier=3
        )
        # each round needs exactly one layer pair on two qubits
        assert circuit.n_layers == 6
        assert check_cover(matchings_from_circuit(circuit)).covered

    def test_seeded_output_is_covered(self):
        circuit = extend_until_covered(
            8, CliffordLayerPolicy(), stream_generator(5, "n8"), multiplier=1
        )
        report = check_cover(matchings_from_circuit(circuit))
        assert report.covered
        assert report.cover_depth is not None

    def test_multiplier_extends_same_stream(self):
        once = extend_until_covered(
            8, CliffordLayerPolicy(), stream_generator(5, "m"), multiplier=1
        )
        twice = extend_until_covered(
            8, CliffordLayerPolicy(), stream_generator(5, "m"), multiplier=2
        )
        assert twice.n_layers >= once.n_layers
        assert twice.layers[: once.n_layers] == once.layers
        # each round independently covers
        head = matchings_from_circuit(
            Circuit(8, twice.layers[: once.n_layers])
        )
        tail = matchings_from_circuit(Circuit(8, twice.layers[once.n_layers:]))
        assert check_cover(head).covered
        assert check_cover(tail).covered

    def test_rejects_single_qubit(self):
        with pytest.raises(ValueError):
            extend_until_covered(1, CliffordLayerPolicy(), stream_generator(0, "x"))

    def test_unmixing_policy_hits_diagnostic_cap(self):
        policy = CliffordLayerPolicy(cnot_pair_fraction=0.0)
        with pytest.raises(RuntimeError, match="not mixing"):
            extend_until_covered(4, policy, stream_generator(0, "stuck"))
