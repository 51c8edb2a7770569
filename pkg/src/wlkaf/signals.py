"""Signal generators for the benchmark experiments.

Covers the two nonlinear benchmark channels (FIR filter followed by a
memoryless cubic polynomial), circular/noncircular Gaussian and unbalanced
binary sources, circular AWGN at a requested SNR, equalizer frame
extraction, and a complex-filtered 2-D random process whose real and
imaginary parts are deliberately correlated.

Everything is seeded and pure: the same seed always reproduces the same
samples bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import ConfigError, DegenerateSignalError, InvalidInputError

__all__ = [
    "ChannelModel",
    "SignalSource",
    "ProcessField",
    "soft_channel",
    "strong_channel",
    "apply_channel",
    "add_awgn",
    "equalizer_frames",
    "gaussian_source",
    "binary_source",
    "filtered_process",
    "process_filter_taps",
    "training_pairs",
    "PROCESS_FILTER_ALPHA",
]

#: Continuous-domain amplitude of the process-generating filter h; the
#: discretized taps are renormalized to unit l2 norm, so this constant
#: only fixes h's shape (and the unnormalized unit test value at x=0).
PROCESS_FILTER_ALPHA = 0.0228

_CIRCULAR_RHO = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class ChannelModel:
    """Linear FIR taps followed by a memoryless cubic nonlinearity."""

    taps: tuple
    poly2: complex
    poly3: complex

    def __post_init__(self):
        if len(self.taps) == 0:
            raise InvalidInputError("channel needs at least one tap")


def soft_channel() -> ChannelModel:
    """The mild benchmark channel: 2 taps, weak polynomial terms."""
    return ChannelModel(
        taps=(-0.9 + 0.8j, 0.6 - 0.7j),
        poly2=0.1 + 0.15j,
        poly3=0.06 + 0.05j,
    )


def strong_channel() -> ChannelModel:
    """The harsh benchmark channel: 5 taps, stronger polynomial terms."""
    return ChannelModel(
        taps=(-0.9 + 0.8j, 0.6 - 0.7j, -0.4 + 0.3j, 0.3 - 0.2j, -0.1 - 0.2j),
        poly2=0.2 + 0.25j,
        poly3=0.08 + 0.09j,
    )


def apply_channel(ch: ChannelModel, s) -> np.ndarray:
    """Push samples through the channel with zero initial state.

    ``t(n) = sum_k taps[k] * s(n-k)`` (missing history treated as 0), then
    ``q(n) = t + poly2*t^2 + poly3*t^3`` with plain complex powers.
    """
    s = np.asarray(s, dtype=np.complex128)
    if s.ndim != 1 or s.size == 0:
        raise InvalidInputError("channel input must be a nonempty 1-D sequence")
    t = np.convolve(s, np.asarray(ch.taps, dtype=np.complex128))[: s.size]
    return t + ch.poly2 * t * t + ch.poly3 * t * t * t


def add_awgn(q, snr_db: float, seed: int) -> np.ndarray:
    """Add circular white Gaussian noise at ``snr_db`` relative to ``q``.

    The noise variance is set against the empirical mean power of ``q``
    (output-referenced SNR).  ``snr_db = inf`` returns the input unchanged.
    """
    q = np.asarray(q, dtype=np.complex128)
    if q.size == 0:
        raise DegenerateSignalError("cannot scale noise against an empty signal")
    if math.isnan(snr_db):
        raise InvalidInputError("snr_db must not be NaN")
    if math.isinf(snr_db):
        if snr_db > 0:
            return q.copy()
        raise InvalidInputError("snr_db must be finite or +inf")
    power = float(np.mean(q.real**2 + q.imag**2))
    if power == 0.0:
        raise DegenerateSignalError("signal power is zero; SNR is undefined")
    sigma = math.sqrt(power * 10.0 ** (-snr_db / 10.0))
    rng = np.random.default_rng(seed)
    g1 = rng.standard_normal(q.size)
    g2 = rng.standard_normal(q.size)
    return q + (sigma / math.sqrt(2.0)) * (g1 + 1j * g2)


def equalizer_frames(r, L: int, D: int):
    """Slice a received sequence into length-L equalizer input frames.

    Frame ``n`` holds ``[r(n+D), r(n+D-1), ..., r(n+D-L+1)]`` with
    out-of-range indices zero-filled, and is paired with target index
    ``n``.

    Returns
    -------
    frames : (len(r), L) complex ndarray
    target_indices : (len(r),) int ndarray
    """
    if not isinstance(L, (int, np.integer)) or L <= 0:
        raise ConfigError(f"frame length L must be a positive integer, got {L!r}")
    if not isinstance(D, (int, np.integer)) or D < 0:
        raise ConfigError(f"delay D must be a non-negative integer, got {D!r}")
    r = np.asarray(r, dtype=np.complex128)
    if r.ndim != 1:
        raise ConfigError(f"received sequence must be 1-D, got shape {r.shape}")
    if r.size < L:
        raise ConfigError(f"need at least L={L} received samples, got {r.size}")
    n = r.size
    idx = np.arange(n)[:, None] + D - np.arange(L)[None, :]
    valid = (idx >= 0) & (idx < n)
    frames = np.where(valid, r[np.clip(idx, 0, n - 1)], 0.0 + 0.0j)
    return frames, np.arange(n)


def gaussian_source(kind: str, rho: float, n: int, seed: int) -> np.ndarray:
    """Complex Gaussian source ``s = 0.7*(sqrt(1-rho^2)*X + j*rho*Y)``.

    ``rho`` balances power between the channels: ``1/sqrt(2)`` gives a
    circular signal, small values give a strongly noncircular one.
    """
    if kind not in ("circular_gaussian", "noncircular_gaussian"):
        raise InvalidInputError(f"unknown gaussian source kind {kind!r}")
    if not (0.0 <= rho <= 1.0):
        raise InvalidInputError(f"rho must lie in [0, 1], got {rho!r}")
    if kind == "circular_gaussian" and abs(rho - _CIRCULAR_RHO) > 1e-12:
        raise InvalidInputError(f"circular source requires rho = 1/sqrt(2), got {rho!r}")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    return 0.7 * (math.sqrt(1.0 - rho * rho) * x + 1j * rho * y)


def binary_source(n: int, seed: int, amp_re: float = 0.2, amp_im: float = 0.1) -> np.ndarray:
    """Unbalanced QPSK-like source: ``amp_re*X + j*amp_im*Y``, X,Y in {-1,+1}."""
    rng = np.random.default_rng(seed)
    x = 2.0 * rng.integers(0, 2, size=n) - 1.0
    y = 2.0 * rng.integers(0, 2, size=n) - 1.0
    return amp_re * x + 1j * amp_im * y


@dataclass(frozen=True)
class SignalSource:
    """A configured sample stream for the equalization experiments."""

    kind: str
    rho: float = 0.0
    amp_re: float = 0.2
    amp_im: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("circular_gaussian", "noncircular_gaussian", "unbalanced_binary"):
            raise InvalidInputError(f"unknown source kind {self.kind!r}")
        if self.kind == "circular_gaussian" and abs(self.rho - _CIRCULAR_RHO) > 1e-12:
            raise InvalidInputError("circular_gaussian fixes rho = 1/sqrt(2)")
        if self.kind != "unbalanced_binary" and not (0.0 <= self.rho <= 1.0):
            raise InvalidInputError(f"rho must lie in [0, 1], got {self.rho!r}")

    @classmethod
    def circular(cls, seed: int = 0) -> "SignalSource":
        return cls(kind="circular_gaussian", rho=_CIRCULAR_RHO, seed=seed)

    @classmethod
    def noncircular(cls, rho: float = 0.1, seed: int = 0) -> "SignalSource":
        return cls(kind="noncircular_gaussian", rho=rho, seed=seed)

    @classmethod
    def binary(cls, seed: int = 0) -> "SignalSource":
        return cls(kind="unbalanced_binary", seed=seed)

    def draw(self, n: int, seed: int | None = None) -> np.ndarray:
        """Draw ``n`` samples; ``seed`` overrides the configured one."""
        use = self.seed if seed is None else seed
        if self.kind == "unbalanced_binary":
            return binary_source(n, use, amp_re=self.amp_re, amp_im=self.amp_im)
        return gaussian_source(self.kind, self.rho, n, use)


@dataclass(frozen=True)
class ProcessField:
    """A realization of the filtered 2-D random process on its grid."""

    grid_re: np.ndarray
    grid_im: np.ndarray
    values: np.ndarray
    seed: int

    def __post_init__(self):
        if self.values.shape != (self.grid_re.size, self.grid_im.size):
            raise InvalidInputError(
                f"values shape {self.values.shape} does not match grid "
                f"{(self.grid_re.size, self.grid_im.size)}"
            )
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError("process field values must be finite")


def process_filter_taps(grid_re, grid_im) -> np.ndarray:
    """Discretize ``h(x) = alpha*(2*exp(-|x|^2/3) + j*exp(-|x|^2/0.5))``.

    Returns the raw (unnormalized) taps on the coordinate grid; callers
    that convolve with them are expected to renormalize.
    """
    xr = np.asarray(grid_re, dtype=float)[:, None]
    xj = np.asarray(grid_im, dtype=float)[None, :]
    mag2 = xr * xr + xj * xj
    return PROCESS_FILTER_ALPHA * (2.0 * np.exp(-mag2 / 3.0) + 1j * np.exp(-mag2 / 0.5))


def filtered_process(grid_points_per_axis: int, seed: int) -> ProcessField:
    """Generate one realization of the complex-filtered random process.

    An iid standard-normal real field on the uniform grid over
    ``[-5, 5]^2`` is convolved (zero-padded, same-size) with the complex
    filter taps of :func:`process_filter_taps`, rescaled to unit l2 norm.
    Both output channels are driven by the same underlying field, which is
    what correlates the real and imaginary parts of the result.
    """
    if not isinstance(grid_points_per_axis, (int, np.integer)) or grid_points_per_axis < 2:
        raise ConfigError(
            f"grid_points_per_axis must be an integer >= 2, got {grid_points_per_axis!r}"
        )
    g = int(grid_points_per_axis)
    axis = np.linspace(-5.0, 5.0, g)
    rng = np.random.default_rng(seed)
    s = rng.standard_normal((g, g))
    h = process_filter_taps(axis, axis)
    h = h / np.linalg.norm(h)
    values = fftconvolve(s, h, mode="same")
    return ProcessField(grid_re=axis, grid_im=axis, values=values, seed=int(seed))


def training_pairs(field: ProcessField):
    """Flatten a process field into filter inputs and targets (node order).

    The input for grid node (a, b) is the 1-dim vector
    ``[grid_re[a] + j*grid_im[b]]``; the target is ``values[a, b]``.
    """
    xr = field.grid_re[:, None]
    xj = field.grid_im[None, :]
    coords = (xr + 1j * xj).ravel()
    return coords[:, None], field.values.ravel()
