"""Widely-linear kernel adaptive filtering.

Online kernel LMS filtering for complex-valued signals with both a kernel
and a pseudo-kernel, the baselines it generalizes, the composite-domain
twin used as an algebraic oracle, and a benchmark harness reproducing
nonlinear channel equalization and 2-D process estimation experiments.
"""

from .algebra import (
    AugmentedPair,
    CompositePair,
    augmented_to_composite,
    composite_to_augmented,
    transform_matrix,
)
from .errors import (
    ConfigError,
    DegenerateSignalError,
    InvalidInputError,
    KernelOverflowError,
    ShapeError,
    WlkafError,
)
from .filters import ALGORITHMS, DictionaryEntry, KLMSFilter, LearningTrace, NoveltyParams
from .harness import (
    ArmConfig,
    ExperimentConfig,
    LearningCurve,
    run_experiment,
    samples_to_reach,
    steady_state_mse,
)
from .kernels import (
    ComplexKernelPair,
    CompositeMatrixKernel,
    DirectKernel,
    KernelSpec,
    RealSubKernel,
    check_null_pseudo_conditions,
    complex_gaussian_pair,
    compose_kernel,
    composite_gram,
    eval_complex_gaussian,
    eval_real_gaussian,
    make_kernel_pair,
    real_gaussian_pair,
)
from .config import load_config, save_config, serialize_config
from .presets import PRESET_NAMES, get_preset
from .selftest import run_selftest
from .signals import (
    ChannelModel,
    ProcessField,
    SignalSource,
    add_awgn,
    apply_channel,
    binary_source,
    equalizer_frames,
    filtered_process,
    gaussian_source,
    soft_channel,
    strong_channel,
    training_pairs,
)

__version__ = "0.1.0"
