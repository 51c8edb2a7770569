"""Named experiment presets with the benchmark hyperparameters.

Each preset pins every knob of one published comparison: which channel and
source, which filter arms with which kernel widths and step sizes, the
SNR, and the sparsification thresholds.  Desk scale keeps runs in the
minutes range; ``full=True`` switches to the original trial/sample counts.
"""

from __future__ import annotations

from .errors import ConfigError
from .filters import NoveltyParams
from .harness import ArmConfig, ExperimentConfig
from .kernels import DirectKernel, KernelSpec, RealSubKernel

__all__ = ["PRESET_NAMES", "get_preset", "preset_summary", "DEFAULT_BASE_SEED"]

DEFAULT_BASE_SEED = 1234

# Novelty thresholds used by every channel-equalization experiment.
_NOVELTY = NoveltyParams(delta1=0.15, delta2=0.2)

# (trials, samples) at desk scale and at the original full scale.
_SCALE = {
    "soft_circular": ((20, 3000), (100, 5000)),
    "soft_noncircular": ((20, 3000), (100, 5000)),
    "strong_circular": ((20, 3000), (100, 5000)),
    "strong_noncircular": ((20, 3000), (100, 5000)),
    "soft_binary": ((20, 4000), (100, 10000)),
    "random_process": ((20, 10000), (100, 10000)),
}


def _diag_spec(gamma_r: float, gamma_j: float) -> KernelSpec:
    return KernelSpec(
        k_rr=RealSubKernel.gaussian(gamma_r),
        k_jj=RealSubKernel.gaussian(gamma_j),
        k_rj=RealSubKernel.zero(),
        k_jr=RealSubKernel.zero(),
    )


def _channel_arms(gamma_cg: float, mu_cg: float, gamma_rg: float, mu_rg: float,
                  gamma_r: float, gamma_j: float, mu_g: float):
    return (
        ArmConfig("cklms2", "cklms2", mu_cg, DirectKernel("complex_gaussian", gamma_cg)),
        ArmConfig("acklms_cg", "acklms", mu_cg, DirectKernel("complex_gaussian", gamma_cg)),
        ArmConfig("acklms_rg", "acklms", mu_rg, DirectKernel("real_gaussian", gamma_rg)),
        ArmConfig("gcklms", "gcklms", mu_g, _diag_spec(gamma_r, gamma_j)),
    )


def _soft_gaussian_arms():
    return _channel_arms(
        gamma_cg=10.0, mu_cg=1 / 8, gamma_rg=5.0, mu_rg=1 / 10,
        gamma_r=6.5, gamma_j=5.5, mu_g=1 / 7,
    )


def _strong_gaussian_arms():
    return _channel_arms(
        gamma_cg=15.0, mu_cg=1 / 6, gamma_rg=5.0, mu_rg=1 / 10,
        gamma_r=5.0, gamma_j=3.0, mu_g=1 / 7,
    )


def _binary_arms():
    sweep = tuple(
        ArmConfig(
            f"acklms_rg_{gamma}", "acklms", 0.5, DirectKernel("real_gaussian", gamma)
        )
        for gamma in (0.5, 1.0, 1.52)
    )
    return sweep + (ArmConfig("gcklms", "gcklms", 0.5, _diag_spec(0.59, 1.63)),)


def _process_arms():
    coupled = KernelSpec(
        k_rr=RealSubKernel.gaussian(1.73),
        k_jj=RealSubKernel.gaussian(0.58),
        k_rj=RealSubKernel.scaled(1.11, 0.09),
        k_jr=RealSubKernel.scaled(1.11, 0.09),
    )
    return (
        ArmConfig("gcklms_v009", "gcklms", 1 / 4, coupled),
        ArmConfig("gcklms_v0", "gcklms", 1 / 4, _diag_spec(1.62, 0.59)),
        ArmConfig("acklms_rg", "acklms", 1 / 2, DirectKernel("real_gaussian", 0.76)),
    )


_ARM_BUILDERS = {
    "soft_circular": _soft_gaussian_arms,
    "soft_noncircular": _soft_gaussian_arms,
    "strong_circular": _strong_gaussian_arms,
    "strong_noncircular": _strong_gaussian_arms,
    "soft_binary": _binary_arms,
    "random_process": _process_arms,
}

PRESET_NAMES = tuple(_ARM_BUILDERS)


def get_preset(name: str, full: bool = False) -> ExperimentConfig:
    """Build the named preset at desk scale (or ``full`` original scale)."""
    if name not in _ARM_BUILDERS:
        raise ConfigError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        )
    trials, samples = _SCALE[name][1 if full else 0]
    return ExperimentConfig(
        scenario=name,
        arms=_ARM_BUILDERS[name](),
        trials=trials,
        samples_per_trial=samples,
        snr_db=15.0,
        novelty=None if name == "random_process" else _NOVELTY,
        base_seed=DEFAULT_BASE_SEED,
    )


def preset_summary(name: str) -> str:
    """One line describing a preset, for CLI listings."""
    cfg = get_preset(name)
    arms = ", ".join(a.name for a in cfg.arms)
    return (
        f"{name}: {cfg.trials} trials x {cfg.samples_per_trial} samples, "
        f"SNR {cfg.snr_db:g} dB, arms [{arms}]"
    )
