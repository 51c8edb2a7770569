"""Built-in equivalence checks between the filter formulations.

Each check co-runs two transcriptions of the same mathematics on identical
random data and reports the worst prediction deviation:

* the widely-linear filter against its composite (stacked real) twin,
  mapped back through the augmented transform — the master oracle;
* the reduction of the widely-linear filter to each published baseline
  when its kernel structure collapses accordingly.

These are executable forms of the reduction table: the baselines fall out
of the general filter, they are not reimplementations of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import composite_to_augmented
from .filters import KLMSFilter
from .kernels import DirectKernel, KernelSpec, RealSubKernel

__all__ = [
    "CheckResult",
    "check_oracle_equivalence",
    "check_cklms2_reduction",
    "check_acklms_forms",
    "check_acklms_as_gcklms",
    "run_selftest",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _random_steps(rng: np.random.Generator, steps: int, dim: int):
    """Standard complex Gaussian inputs and targets."""
    x = (rng.standard_normal((steps, dim)) + 1j * rng.standard_normal((steps, dim))) / np.sqrt(2)
    y = (rng.standard_normal(steps) + 1j * rng.standard_normal(steps)) / np.sqrt(2)
    return x, y


def _random_spec(rng: np.random.Generator) -> KernelSpec:
    """A random symmetric kernel spec (k_rj = k_jr) with coupled channels."""
    off = RealSubKernel.scaled(
        gamma=float(rng.uniform(1.0, 3.0)), scale=float(rng.uniform(-0.3, 0.3))
    )
    return KernelSpec(
        k_rr=RealSubKernel.gaussian(float(rng.uniform(1.0, 3.0))),
        k_jj=RealSubKernel.gaussian(float(rng.uniform(1.0, 3.0))),
        k_rj=off,
        k_jr=off,
    )


def check_oracle_equivalence(steps: int = 1000, dim: int = 5, seed: int = 7) -> CheckResult:
    """Widely-linear predictions vs the composite-form filter, every step.

    Both filters evolve independently from the same kernel spec and data;
    the composite prediction is mapped through the augmented transform
    before comparison, pinning the 2*mu/mu factor relation between the
    two formulations.
    """
    rng = np.random.default_rng(seed)
    spec = _random_spec(rng)
    xs, ys = _random_steps(rng, steps, dim)
    f_aug = KLMSFilter("gcklms", spec, mu=0.1)
    f_comp = KLMSFilter("composite-oracle", spec, mu=0.1)
    worst = 0.0
    for x, y in zip(xs, ys):
        pred_aug, _, _ = f_aug.update(x, y)
        mapped = composite_to_augmented(f_comp.predict_composite(x)).val
        f_comp.update(x, y)
        worst = max(worst, abs(pred_aug - mapped))
    return CheckResult("gcklms-vs-composite-oracle", worst, 1e-10)


def check_cklms2_reduction(steps: int = 500, dim: int = 5, seed: int = 11) -> CheckResult:
    """gCKLMS with the complex Gaussian kernel and pk = 0 collapses to CKLMS2.

    The kernel width is kept well above the input spread: the complex
    Gaussian's diagonal grows like exp(4*sum(Im x^2)/gamma^2), and a small
    gamma would push the effective step size into divergence.
    """
    rng = np.random.default_rng(seed)
    xs, ys = _random_steps(rng, steps, dim)
    kernel = DirectKernel("complex_gaussian", 4.0)
    f_general = KLMSFilter("gcklms", kernel, mu=0.05)
    f_baseline = KLMSFilter("cklms2", kernel, mu=0.05)
    worst = 0.0
    for x, y in zip(xs, ys):
        pred_g, _, _ = f_general.update(x, y)
        pred_b, _, _ = f_baseline.update(x, y)
        worst = max(worst, abs(pred_g - pred_b))
    return CheckResult("gcklms-reduces-to-cklms2", worst, 1e-12)


def check_acklms_forms(steps: int = 500, dim: int = 5, seed: int = 13) -> CheckResult:
    """The conjugate-sum and 2*Re{k} transcriptions of ACKLMS coincide.

    The two forms are read from one evolving state at every step; since
    they agree, the state either form would have produced is identical.
    """
    rng = np.random.default_rng(seed)
    xs, ys = _random_steps(rng, steps, dim)
    filt = KLMSFilter("acklms", DirectKernel("complex_gaussian", 4.0), mu=0.05)
    worst = 0.0
    for x, y in zip(xs, ys):
        via_conjugate_sum = filt.predict_conjugate_sum(x)
        via_real_part, _, _ = filt.update(x, y)
        worst = max(worst, abs(via_conjugate_sum - via_real_part))
    return CheckResult("acklms-two-forms", worst, 1e-12)


def check_acklms_as_gcklms(steps: int = 500, dim: int = 5, seed: int = 17) -> CheckResult:
    """gCKLMS with gamma_r = gamma_j and zero off-diagonals equals ACKLMS.

    The composed kernel is then 2*k_G, exactly the doubled real Gaussian
    the ACKLMS runs with.
    """
    rng = np.random.default_rng(seed)
    xs, ys = _random_steps(rng, steps, dim)
    gamma = 1.5
    spec = KernelSpec(
        k_rr=RealSubKernel.gaussian(gamma),
        k_jj=RealSubKernel.gaussian(gamma),
        k_rj=RealSubKernel.zero(),
        k_jr=RealSubKernel.zero(),
    )
    f_general = KLMSFilter("gcklms", spec, mu=0.2)
    f_baseline = KLMSFilter("acklms", DirectKernel("real_gaussian", gamma), mu=0.2)
    worst = 0.0
    for x, y in zip(xs, ys):
        pred_g, _, _ = f_general.update(x, y)
        pred_b, _, _ = f_baseline.update(x, y)
        worst = max(worst, abs(pred_g - pred_b))
    return CheckResult("gcklms-reduces-to-acklms", worst, 1e-12)


def run_selftest() -> list:
    """All equivalence checks, in reporting order."""
    return [
        check_oracle_equivalence(),
        check_cklms2_reduction(),
        check_acklms_forms(),
        check_acklms_as_gcklms(),
    ]
