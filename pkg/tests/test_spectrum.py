import math

import numpy as np
import pytest

from ctchaos.arch import BlockPlan, HeatingKind, HeatingSpec
from ctchaos.rng import RngTree, stream_generator
from ctchaos.spectrum import (
    Ensemble,
    ensemble_mean_ratio,
    gue_level_spectrum,
    level_spacing_ratios,
    poisson_level_spectrum,
    reference_mean,
    run_spectrum_trial,
)


class TestLevelSpacingRatios:
    def test_three_levels_by_hand(self):
        stats = level_spacing_ratios([0.5, 0.3, 0.2])
        np.testing.assert_allclose(stats.r_values, [0.5])
        assert stats.mean_r == pytest.approx(0.5)
        assert stats.excluded_count == 0

    def test_flat_spectrum_fully_excluded(self):
        stats = level_spacing_ratios([0.25, 0.25, 0.25, 0.25])
        assert stats.r_values.size == 0
        assert stats.excluded_count == 2
        assert math.isnan(stats.mean_r)

    def test_ratios_in_unit_interval(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            stats = level_spacing_ratios(poisson_level_spectrum(20, rng))
            assert np.all(stats.r_values >= 0.0)
            assert np.all(stats.r_values <= 1.0)

    def test_scale_invariance(self):
        rng = np.random.default_rng(1)
        levels = poisson_level_spectrum(40, rng)
        base = level_spacing_ratios(levels)
        # power-of-two factors scale floats exactly; general factors to rounding
        np.testing.assert_array_equal(
            base.r_values, level_spacing_ratios(levels * 4.0).r_values
        )
        np.testing.assert_allclose(
            base.r_values, level_spacing_ratios(levels * 3.7).r_values, rtol=1e-12
        )

    def test_unsorted_input_rejected(self):
        with pytest.raises(ValueError, match="descending"):
            level_spacing_ratios([0.1, 0.2, 0.7])

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            level_spacing_ratios([0.6, 0.4])

    def test_partial_degeneracy_counts_excluded(self):
        stats = level_spacing_ratios([0.4, 0.3, 0.3, 0.0])
        # spacings (0.1, 0, 0.3): pair 1 and pair 2 both have a nonzero max
        assert stats.excluded_count == 0
        np.testing.assert_allclose(stats.r_values, [0.0, 0.0])


class TestReferenceMeans:
    def test_quoted_constants(self):
        assert reference_mean(Ensemble.POISSON) == 0.39
        assert reference_mean(Ensemble.GUE) == 0.60
        assert reference_mean("poisson") == 0.39
        assert reference_mean("gue") == 0.60

    def test_poisson_oracle_near_quoted_value(self):
        rng = stream_generator(11, "poisson-mc")
        mean = ensemble_mean_ratio(Ensemble.POISSON, samples=20_000, size=32, rng=rng)
        # i.i.d. exponential spacings give 2 ln 2 - 1 = 0.3863
        assert mean == pytest.approx(0.386, abs=0.005)
        assert mean == pytest.approx(0.39, abs=0.01)

    def test_gue_oracle_near_quoted_value(self):
        rng = stream_generator(11, "gue-mc")
        mean = ensemble_mean_ratio(Ensemble.GUE, samples=200, size=256, rng=rng)
        assert mean == pytest.approx(0.60, abs=0.015)

    def test_spectra_are_descending(self):
        rng = stream_generator(0, "shape")
        assert np.all(np.diff(poisson_level_spectrum(16, rng)) <= 0)
        assert np.all(np.diff(gue_level_spectrum(32, rng)) <= 0)


class TestSpectrumTrials:
    def test_pure_clifford_control_is_degenerate(self):
        plan = BlockPlan(
            4,
            HeatingSpec(HeatingKind.CAUSAL_RANDOM, 1),
            t_layer_size=0,
            init_t_layer=False,
        )
        flagged = 0
        for instance in range(5):
            stats = run_spectrum_trial(8, plan, RngTree(99).child(instance))
            if stats.excluded_fraction >= 0.5:
                flagged += 1
        assert flagged == 5

    def test_t_gates_lift_degeneracy(self):
        plan = BlockPlan(4, HeatingSpec(HeatingKind.CAUSAL_RANDOM, 1))
        stats = run_spectrum_trial(8, plan, RngTree(4).child(0))
        assert stats.excluded_fraction < 0.5
        assert 0.0 < stats.mean_r < 1.0

    def test_boundary_recording(self):
        plan = BlockPlan(4, HeatingSpec(HeatingKind.CAUSAL_RANDOM, 1))
        final, boundaries = run_spectrum_trial(
            8, plan, RngTree(5).child(0), record_boundaries=True
        )
        labels = [label for label, _ in boundaries]
        assert labels == ["init", "heat-1", "t-layer-2", "heat-2"]
        np.testing.assert_array_equal(
            final.eigenvalues, boundaries[-1][1].eigenvalues
        )

    def test_sizes_8_12_16_agree_qualitatively(self):
        # instance-averaged mean ratios across sizes stay within a 0.05 band
        plan = BlockPlan(4, HeatingSpec(HeatingKind.CAUSAL_RANDOM, 1))
        averages = []
        for n, instances in ((8, 10), (12, 6), (16, 4)):
            tree = RngTree(2024).child("size-scan").child(n)
            values = [
                run_spectrum_trial(n, plan, tree.child(i)).mean_r
                for i in range(instances)
            ]
            averages.append(float(np.mean(values)))
        assert max(averages) - min(averages) < 0.05
