"""Experiment harness tests: averaging, seeding, determinism, curve metrics."""

import numpy as np
import pytest

from wlkaf.errors import ConfigError, InvalidInputError, KernelOverflowError
from wlkaf.filters import NoveltyParams
from wlkaf.harness import (
    MSE_FLOOR_DB,
    ArmConfig,
    ExperimentConfig,
    LearningCurve,
    run_experiment,
    samples_to_reach,
    steady_state_mse,
)
from wlkaf.kernels import DirectKernel, KernelSpec, RealSubKernel


def diag_spec(gr, gj):
    return KernelSpec(
        k_rr=RealSubKernel.gaussian(gr),
        k_jj=RealSubKernel.gaussian(gj),
        k_rj=RealSubKernel.zero(),
        k_jr=RealSubKernel.zero(),
    )


def tiny_config(arms=None, trials=2, samples=120, seed=900, scenario="soft_binary"):
    if arms is None:
        arms = (
            ArmConfig(name="acklms", algorithm="acklms", mu=0.5,
                      kernel=DirectKernel("real_gaussian", 1.0)),
            ArmConfig(name="gcklms", algorithm="gcklms", mu=0.5,
                      kernel=diag_spec(0.59, 1.63)),
        )
    return ExperimentConfig(
        scenario=scenario,
        arms=arms,
        trials=trials,
        samples_per_trial=samples,
        snr_db=15.0,
        novelty=NoveltyParams(0.15, 0.2),
        base_seed=seed,
    )


def make_curve(db_values):
    v = np.asarray(db_values, dtype=float)
    return LearningCurve(
        mse_db=v,
        mse_re_db=v - 1.0,
        mse_im_db=v + 1.0,
        dict_size_mean=np.arange(1.0, len(v) + 1.0),
    )


class TestConfigValidation:
    def test_unknown_scenario(self):
        with pytest.raises(ConfigError, match="unknown scenario"):
            tiny_config(scenario="medium_circular")

    def test_duplicate_arm_names(self):
        a = ArmConfig(name="x", algorithm="cklms2", mu=0.1,
                      kernel=DirectKernel("complex_gaussian", 10.0))
        with pytest.raises(ConfigError, match="unique"):
            tiny_config(arms=(a, a))

    def test_trials_and_samples_bounds(self):
        with pytest.raises(ConfigError, match="trials"):
            tiny_config(trials=0)
        with pytest.raises(ConfigError, match="samples_per_trial"):
            tiny_config(samples=0)

    def test_process_samples_must_be_square(self):
        with pytest.raises(ConfigError, match="perfect square"):
            tiny_config(scenario="random_process", samples=120)
        # 121 = 11^2 is fine
        cfg = tiny_config(scenario="random_process", samples=121)
        assert cfg.samples_per_trial == 121

    def test_arms_normalized_to_tuple(self):
        a = ArmConfig(name="x", algorithm="cklms2", mu=0.1,
                      kernel=DirectKernel("complex_gaussian", 10.0))
        cfg = tiny_config(arms=[a])
        assert isinstance(cfg.arms, tuple)

    def test_composite_oracle_needs_spec(self):
        with pytest.raises(ConfigError, match="four-sub-kernel"):
            ArmConfig(name="o", algorithm="composite-oracle", mu=0.25,
                      kernel=DirectKernel("real_gaussian", 1.0))

    def test_base_seed_type(self):
        with pytest.raises(ConfigError, match="base_seed"):
            tiny_config(seed=1.5)

    def test_curve_length_check(self):
        with pytest.raises(InvalidInputError, match="one length"):
            LearningCurve(
                mse_db=np.zeros(3),
                mse_re_db=np.zeros(3),
                mse_im_db=np.zeros(2),
                dict_size_mean=np.zeros(3),
            )


class TestRunExperiment:
    def test_shapes_and_names(self):
        cfg = tiny_config()
        curves = run_experiment(cfg)
        assert set(curves) == {"acklms", "gcklms"}
        for curve in curves.values():
            assert len(curve) == cfg.samples_per_trial
            assert np.all(np.isfinite(curve.mse_db))
            assert np.all(curve.mse_db >= MSE_FLOOR_DB)
            assert np.all(np.diff(curve.dict_size_mean) >= 0)
            assert curve.dict_size_mean[-1] <= cfg.samples_per_trial

    def test_bit_exact_determinism(self):
        a = run_experiment(tiny_config())
        b = run_experiment(tiny_config())
        for name in a:
            assert np.array_equal(a[name].mse_db, b[name].mse_db)
            assert np.array_equal(a[name].mse_re_db, b[name].mse_re_db)
            assert np.array_equal(a[name].mse_im_db, b[name].mse_im_db)
            assert np.array_equal(a[name].dict_size_mean, b[name].dict_size_mean)

    def test_seed_changes_output(self):
        a = run_experiment(tiny_config(seed=900))
        b = run_experiment(tiny_config(seed=901))
        assert not np.array_equal(a["gcklms"].mse_db, b["gcklms"].mse_db)

    def test_trial_seeds_are_base_plus_t(self):
        # a 3-trial run must equal the linear-power average of three
        # independent 1-trial runs seeded base, base+1, base+2
        multi = run_experiment(tiny_config(trials=3, seed=910))
        acc = {}
        for t in range(3):
            single = run_experiment(tiny_config(trials=1, seed=910 + t))
            for name, curve in single.items():
                lin = 10.0 ** (curve.mse_db / 10.0)
                acc[name] = acc.get(name, 0.0) + lin
        for name, curve in multi.items():
            expect = 10.0 * np.log10(acc[name] / 3.0)
            assert np.allclose(curve.mse_db, expect, rtol=1e-9, atol=1e-9)

    def test_arm_subset_does_not_change_data(self):
        # trial data is generated before any arm runs, so dropping an arm
        # must not perturb the remaining one
        both = run_experiment(tiny_config())
        solo_arm = (
            ArmConfig(name="gcklms", algorithm="gcklms", mu=0.5,
                      kernel=diag_spec(0.59, 1.63)),
        )
        alone = run_experiment(tiny_config(arms=solo_arm))
        assert np.array_equal(both["gcklms"].mse_db, alone["gcklms"].mse_db)

    def test_snr_affects_curves(self):
        lo = tiny_config()
        hi = ExperimentConfig(
            scenario=lo.scenario, arms=lo.arms, trials=lo.trials,
            samples_per_trial=lo.samples_per_trial, snr_db=50.0,
            novelty=lo.novelty, base_seed=lo.base_seed,
        )
        a = run_experiment(lo)
        b = run_experiment(hi)
        assert steady_state_mse(b["gcklms"], 0.2) < steady_state_mse(a["gcklms"], 0.2)

    def test_process_scenario_runs(self):
        arms = (
            ArmConfig(name="g", algorithm="gcklms", mu=0.25,
                      kernel=diag_spec(1.62, 0.59)),
        )
        cfg = ExperimentConfig(
            scenario="random_process", arms=arms, trials=1,
            samples_per_trial=64, snr_db=15.0, novelty=None, base_seed=5,
        )
        curves = run_experiment(cfg)
        assert len(curves["g"]) == 64
        # without sparsification the dictionary grows one entry per step
        assert np.array_equal(curves["g"].dict_size_mean, np.arange(1.0, 65.0))

    def test_errors_carry_trial_and_arm(self):
        arms = (
            ArmConfig(name="bad", algorithm="cklms2", mu=0.25,
                      kernel=DirectKernel("complex_gaussian", 0.05)),
        )
        cfg = ExperimentConfig(
            scenario="random_process", arms=arms, trials=1,
            samples_per_trial=64, snr_db=15.0, novelty=None, base_seed=5,
        )
        with pytest.raises(KernelOverflowError, match="trial 0, arm 'bad'"):
            run_experiment(cfg)

    def test_thread_env_validation(self, monkeypatch):
        monkeypatch.setenv("WLKAF_THREADS", "abc")
        with pytest.raises(ConfigError, match="WLKAF_THREADS"):
            run_experiment(tiny_config(trials=2, samples=10))

    def test_thread_env_accepted(self, monkeypatch):
        monkeypatch.setenv("WLKAF_THREADS", "2")
        curves = run_experiment(tiny_config(trials=2, samples=40))
        monkeypatch.delenv("WLKAF_THREADS")
        again = run_experiment(tiny_config(trials=2, samples=40))
        assert np.array_equal(curves["gcklms"].mse_db, again["gcklms"].mse_db)


class TestSteadyStateMse:
    def test_tail_selection(self):
        curve = make_curve([0.0, -10.0, -20.0, -30.0])
        assert steady_state_mse(curve, 0.5) == pytest.approx(-25.0)
        assert steady_state_mse(curve, 1.0) == pytest.approx(-15.0)
        # a tail that rounds to zero samples still uses at least one
        assert steady_state_mse(curve, 0.1) == pytest.approx(-30.0)

    def test_components(self):
        curve = make_curve([-10.0, -20.0])
        assert steady_state_mse(curve, 0.5, component="re") == pytest.approx(-21.0)
        assert steady_state_mse(curve, 0.5, component="im") == pytest.approx(-19.0)

    def test_validation(self):
        curve = make_curve([-10.0, -20.0])
        with pytest.raises(InvalidInputError, match="tail_fraction"):
            steady_state_mse(curve, 0.0)
        with pytest.raises(InvalidInputError, match="tail_fraction"):
            steady_state_mse(curve, 1.5)
        with pytest.raises(InvalidInputError, match="component"):
            steady_state_mse(curve, 0.5, component="abs")
        empty = LearningCurve(np.zeros(0), np.zeros(0), np.zeros(0), np.zeros(0))
        with pytest.raises(InvalidInputError, match="empty"):
            steady_state_mse(empty, 0.5)


class TestSamplesToReach:
    def test_trailing_mean_crossing(self):
        curve = make_curve([0.0, 0.0, 0.0, 0.0, -10.0, -10.0, -10.0])
        # window-2 means: 0, 0, 0, 0, -5, -10, -10
        assert samples_to_reach(curve, -4.0, window=2) == 4
        assert samples_to_reach(curve, -9.0, window=2) == 5

    def test_partial_warmup(self):
        curve = make_curve([-50.0, -50.0, -50.0])
        assert samples_to_reach(curve, -20.0, window=100) == 0

    def test_strictly_below(self):
        curve = make_curve([-10.0, -10.0])
        assert samples_to_reach(curve, -10.0, window=1) is None

    def test_never_reached(self):
        curve = make_curve([0.0, -1.0, -2.0])
        assert samples_to_reach(curve, -50.0) is None

    def test_window_validation(self):
        curve = make_curve([0.0])
        with pytest.raises(InvalidInputError, match="window"):
            samples_to_reach(curve, -10.0, window=0)


class TestDbFloor:
    def test_floor_constant(self):
        assert MSE_FLOOR_DB == -120.0

    def test_zero_error_floors_not_infinite(self):
        # a perfectly predicted (all-zero-error) trial must floor at
        # -120 dB rather than emit -inf
        from wlkaf.harness import _to_db

        out = _to_db(np.zeros(4))
        assert np.all(out == -120.0)
        assert np.all(np.isfinite(out))

    def test_floor_only_clips_below(self):
        from wlkaf.harness import _to_db

        assert _to_db(np.array([1.0]))[0] == 0.0
        assert _to_db(np.array([1e-13]))[0] == -120.0
        assert _to_db(np.array([1e-11]))[0] == pytest.approx(-110.0)
