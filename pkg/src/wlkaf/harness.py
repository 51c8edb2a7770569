"""Multi-trial experiment orchestration and learning-curve reduction.

A run is described by an :class:`ExperimentConfig`: a scenario (which
nonlinear channel and source, or the 2-D filtered process), a list of
filter arms, trial/sample counts, SNR, optional novelty sparsification,
and a base seed.  Every arm inside a trial sees bit-identical data; trial
``t`` derives all of its randomness from ``base_seed + t``, so runs are
reproducible sample for sample regardless of how trials are scheduled.

Squared errors are averaged pointwise across trials in the linear domain
and only then converted to dB (floored at -120 dB).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import ConfigError, InvalidInputError, WlkafError
from .filters import KLMSFilter, NoveltyParams
from .kernels import DirectKernel, KernelSpec
from .signals import (
    SignalSource,
    add_awgn,
    apply_channel,
    equalizer_frames,
    filtered_process,
    soft_channel,
    strong_channel,
    training_pairs,
)

__all__ = [
    "SCENARIOS",
    "EQUALIZER_TAPS",
    "EQUALIZER_DELAY",
    "MSE_FLOOR_DB",
    "ArmConfig",
    "ExperimentConfig",
    "LearningCurve",
    "run_experiment",
    "steady_state_mse",
    "samples_to_reach",
]

SCENARIOS = (
    "soft_circular",
    "soft_noncircular",
    "strong_circular",
    "strong_noncircular",
    "soft_binary",
    "random_process",
)

# Equalizer geometry used throughout the channel experiments.
EQUALIZER_TAPS = 5
EQUALIZER_DELAY = 2

MSE_FLOOR_DB = -120.0
_MSE_FLOOR_LINEAR = 10.0 ** (MSE_FLOOR_DB / 10.0)


@dataclass(frozen=True)
class ArmConfig:
    """One filter entry in an experiment: a name, an algorithm, and its knobs."""

    name: str
    algorithm: str
    mu: float
    kernel: KernelSpec | DirectKernel

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise ConfigError("arm name must be a nonempty string")
        if self.algorithm == "composite-oracle" and not isinstance(self.kernel, KernelSpec):
            raise ConfigError(
                f"arm {self.name!r}: composite-oracle requires the four-sub-kernel kernel form"
            )


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one experiment."""

    scenario: str
    arms: tuple
    trials: int
    samples_per_trial: int
    snr_db: float
    novelty: NoveltyParams | None
    base_seed: int

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")
        arms = tuple(self.arms)
        object.__setattr__(self, "arms", arms)
        if not arms:
            raise ConfigError("need at least one arm")
        if not all(isinstance(a, ArmConfig) for a in arms):
            raise ConfigError("arms must be ArmConfig instances")
        names = [a.name for a in arms]
        if len(set(names)) != len(names):
            raise ConfigError(f"arm names must be unique, got {names}")
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ConfigError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.samples_per_trial, (int, np.integer)) or self.samples_per_trial < 1:
            raise ConfigError(
                f"samples_per_trial must be an integer >= 1, got {self.samples_per_trial!r}"
            )
        if self.scenario == "random_process":
            g = math.isqrt(self.samples_per_trial)
            if g * g != self.samples_per_trial or g < 2:
                raise ConfigError(
                    "random_process samples_per_trial must be a perfect square "
                    f"(grid size squared), got {self.samples_per_trial}"
                )
        if not isinstance(self.base_seed, (int, np.integer)):
            raise ConfigError(f"base_seed must be an integer, got {self.base_seed!r}")


@dataclass
class LearningCurve:
    """Trial-averaged error curves for one arm, in dB."""

    mse_db: np.ndarray
    mse_re_db: np.ndarray
    mse_im_db: np.ndarray
    dict_size_mean: np.ndarray

    def __post_init__(self):
        n = len(self.mse_db)
        if any(len(v) != n for v in (self.mse_re_db, self.mse_im_db, self.dict_size_mean)):
            raise InvalidInputError("curve series must share one length")

    def __len__(self) -> int:
        return len(self.mse_db)


_CHANNEL_SETUPS = {
    "soft_circular": (soft_channel, SignalSource.circular()),
    "soft_noncircular": (soft_channel, SignalSource.noncircular(rho=0.1)),
    "strong_circular": (strong_channel, SignalSource.circular()),
    "strong_noncircular": (strong_channel, SignalSource.noncircular(rho=0.1)),
    "soft_binary": (soft_channel, SignalSource.binary()),
}


def _child_seeds(trial_seed: int):
    """Derive independent integer seeds (source, noise, order) for one trial."""
    state = np.random.SeedSequence(trial_seed).generate_state(3, np.uint64)
    return tuple(int(v) for v in state)


def _trial_data(cfg: ExperimentConfig, trial_seed: int):
    """Build the (inputs, targets) every arm of one trial trains on."""
    seed_source, seed_noise, seed_order = _child_seeds(trial_seed)
    if cfg.scenario == "random_process":
        grid = math.isqrt(cfg.samples_per_trial)
        field = filtered_process(grid, seed_source)
        inputs, clean = training_pairs(field)
        noisy = add_awgn(clean, cfg.snr_db, seed_noise)
        order = np.random.default_rng(seed_order).permutation(noisy.size)
        return inputs[order], noisy[order]
    channel_factory, source = _CHANNEL_SETUPS[cfg.scenario]
    n = cfg.samples_per_trial
    sent = source.draw(n + EQUALIZER_DELAY, seed_source)
    received = add_awgn(apply_channel(channel_factory(), sent), cfg.snr_db, seed_noise)
    frames, _ = equalizer_frames(received, EQUALIZER_TAPS, EQUALIZER_DELAY)
    return frames[:n], sent[:n]


def _run_trial(cfg: ExperimentConfig, t: int):
    """Run every arm of trial ``t`` on shared data; returns per-arm error arrays."""
    inputs, targets = _trial_data(cfg, cfg.base_seed + t)
    out = []
    for arm in cfg.arms:
        try:
            filt = KLMSFilter(arm.algorithm, arm.kernel, arm.mu, novelty=cfg.novelty)
            trace = filt.run_sequence(inputs, targets)
        except WlkafError as exc:
            raise type(exc)(f"trial {t}, arm {arm.name!r}: {exc}") from exc
        out.append(
            (
                trace.sq_error,
                trace.sq_error_re,
                trace.sq_error_im,
                trace.dict_sizes.astype(float),
            )
        )
    return out


def _worker_count(trials: int) -> int:
    workers = min(trials, os.cpu_count() or 1)
    cap = os.environ.get("WLKAF_THREADS")
    if cap is not None:
        try:
            cap_n = int(cap)
        except ValueError as exc:
            raise ConfigError(f"WLKAF_THREADS must be an integer, got {cap!r}") from exc
        workers = min(workers, max(1, cap_n))
    return max(1, workers)


def _to_db(mean_sq: np.ndarray) -> np.ndarray:
    return 10.0 * np.log10(np.maximum(mean_sq, _MSE_FLOOR_LINEAR))


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run all trials of ``cfg`` and return arm-name -> LearningCurve.

    Trials may execute in parallel processes (bounded by the
    ``WLKAF_THREADS`` environment variable); accumulation happens in trial
    order either way, so results are identical to a serial run.
    """
    n = cfg.samples_per_trial
    sums = [
        [np.zeros(n), np.zeros(n), np.zeros(n), np.zeros(n)] for _ in range(len(cfg.arms))
    ]
    workers = _worker_count(cfg.trials)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trial_results = pool.map(partial(_run_trial, cfg), range(cfg.trials))
            _accumulate(sums, trial_results)
    else:
        _accumulate(sums, (_run_trial(cfg, t) for t in range(cfg.trials)))

    curves = {}
    for arm, (sq, sq_re, sq_im, size) in zip(cfg.arms, sums):
        curves[arm.name] = LearningCurve(
            mse_db=_to_db(sq / cfg.trials),
            mse_re_db=_to_db(sq_re / cfg.trials),
            mse_im_db=_to_db(sq_im / cfg.trials),
            dict_size_mean=size / cfg.trials,
        )
    return curves


def _accumulate(sums, trial_results):
    for per_arm in trial_results:
        for acc, arrays in zip(sums, per_arm):
            for slot, arr in zip(acc, arrays):
                slot += arr


def steady_state_mse(curve: LearningCurve, tail_fraction: float, component: str = "total") -> float:
    """Mean of the dB curve over its final ``tail_fraction`` of samples.

    ``component`` selects the combined (``"total"``), real-part (``"re"``)
    or imaginary-part (``"im"``) series.
    """
    if not (0.0 < tail_fraction <= 1.0):
        raise InvalidInputError(f"tail_fraction must be in (0, 1], got {tail_fraction!r}")
    series = {"total": curve.mse_db, "re": curve.mse_re_db, "im": curve.mse_im_db}.get(component)
    if series is None:
        raise InvalidInputError(f"component must be total/re/im, got {component!r}")
    if len(series) == 0:
        raise InvalidInputError("cannot take the steady state of an empty curve")
    k = max(1, int(round(tail_fraction * len(series))))
    return float(np.mean(series[-k:]))


def samples_to_reach(curve: LearningCurve, level_db: float, window: int = 100):
    """First index whose trailing ``window``-sample mean dips below ``level_db``.

    The window is truncated at the start of the curve (a partial mean), so
    a curve that begins below the level reports index 0.  Returns ``None``
    if the level is never reached.
    """
    if window < 1:
        raise InvalidInputError(f"window must be >= 1, got {window!r}")
    v = curve.mse_db
    n = len(v)
    if n == 0:
        return None
    c = np.cumsum(v)
    ma = np.empty(n)
    head = min(window, n)
    ma[:head] = c[:head] / np.arange(1, head + 1)
    if n > window:
        ma[window:] = (c[window:] - c[:-window]) / window
    hits = np.nonzero(ma < level_db)[0]
    return int(hits[0]) if hits.size else None
