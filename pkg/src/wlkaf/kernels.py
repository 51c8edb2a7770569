"""Kernel catalog and composition machinery.

Two base kernels for complex-valued inputs are provided:

* the real Gaussian ``k_G(x, x') = exp(-||x - x'||^2 / gamma^2)`` using the
  complex Euclidean norm, bounded in ``(0, 1]``;
* the complex Gaussian ``exp(-(x - conj(x'))^T (x - conj(x')) / gamma^2)``
  with a plain (non-conjugating) transpose, which is unbounded and can
  overflow for strongly imaginary inputs.

A widely-linear complex kernel/pseudo-kernel pair is assembled from four
real-valued sub-kernels::

    k  = k_rr + k_jj + j*(k_jr - k_rj)
    pk = k_rr - k_jj + j*(k_jr + k_rj)

and the same four entries form the 2x2 matrix-valued kernel

    K(x, x') = [[k_rr, k_rj],
                [k_jr, k_jj]]

used by the composite (stacked real channel) form of the filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidInputError, KernelOverflowError, ShapeError

__all__ = [
    "ComplexVec",
    "as_complex_vector",
    "RealSubKernel",
    "KernelSpec",
    "DirectKernel",
    "ComplexKernelPair",
    "eval_real_gaussian",
    "eval_complex_gaussian",
    "compose_kernel",
    "complex_gaussian_pair",
    "real_gaussian_pair",
    "make_kernel_pair",
    "check_null_pseudo_conditions",
    "CompositeMatrixKernel",
    "composite_gram",
]

#: 1-D complex128 ndarray; the input type every kernel and filter consumes.
ComplexVec = np.ndarray

# Largest real exponent fed to exp() before we refuse to evaluate.  Double
# precision overflows to inf just above exp(709.78); the margin below that
# marks the evaluation as numerically meaningless rather than merely huge.
_EXP_OVERFLOW = 700.0


def as_complex_vector(x) -> ComplexVec:
    """Coerce ``x`` to a finite 1-D complex128 array (scalars become length 1)."""
    try:
        arr = np.asarray(x, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"cannot interpret input as a complex vector: {exc}") from exc
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ShapeError(f"expected a 1-D complex vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("complex vector entries must be finite")
    return arr


def _sqdist_to_rows(x: ComplexVec, centers: np.ndarray) -> np.ndarray:
    """Squared complex Euclidean distance from ``x`` to every row of ``centers``."""
    if centers.shape[0] == 0:
        return np.zeros(0)
    if centers.shape[1] == 1:
        d = centers[:, 0] - x[0]
        return d.real * d.real + d.imag * d.imag
    d = centers - x
    return (d.real * d.real + d.imag * d.imag).sum(axis=1)


@dataclass(frozen=True)
class RealSubKernel:
    """One real-valued sub-kernel: zero, Gaussian, or amplitude-scaled Gaussian.

    Parameters
    ----------
    kind : str
        One of ``"gaussian"``, ``"zero"``, ``"scaled_gaussian"``.
    gamma : float or None
        Kernel width for the Gaussian kinds (same units as the input
        amplitude).  Must be omitted for the zero kind.
    scale : float
        Amplitude multiplier for ``scaled_gaussian`` (the ``v`` knob of a
        pseudo-kernel's imaginary part); fixed to 1 for the other kinds.
    """

    kind: str
    gamma: float | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "zero", "scaled_gaussian"):
            raise InvalidInputError(f"unknown sub-kernel kind {self.kind!r}")
        if self.kind == "zero":
            if self.gamma is not None:
                raise InvalidInputError("zero sub-kernel takes no gamma")
            if self.scale != 1.0:
                raise InvalidInputError("zero sub-kernel takes no scale")
            return
        if self.gamma is None or not np.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidInputError(f"{self.kind} sub-kernel needs gamma > 0, got {self.gamma!r}")
        if self.kind == "gaussian" and self.scale != 1.0:
            raise InvalidInputError("plain gaussian has scale fixed to 1; use scaled_gaussian")
        if not np.isfinite(self.scale):
            raise InvalidInputError("sub-kernel scale must be finite")

    @classmethod
    def gaussian(cls, gamma: float) -> "RealSubKernel":
        return cls("gaussian", gamma=gamma)

    @classmethod
    def scaled(cls, gamma: float, scale: float) -> "RealSubKernel":
        return cls("scaled_gaussian", gamma=gamma, scale=scale)

    @classmethod
    def zero(cls) -> "RealSubKernel":
        return cls("zero")

    def from_sqdist(self, sq):
        """Evaluate on precomputed squared distances (scalar or array)."""
        if self.kind == "zero":
            return np.zeros_like(sq)
        out = np.exp(sq * (-1.0 / (self.gamma * self.gamma)))
        if self.kind == "scaled_gaussian":
            out = out * self.scale
        return out

    def __call__(self, x, x2) -> float:
        x = as_complex_vector(x)
        x2 = as_complex_vector(x2)
        if x.shape != x2.shape:
            raise ShapeError(f"sub-kernel arguments differ in shape: {x.shape} vs {x2.shape}")
        return float(self.from_sqdist(_sqdist_to_rows(x, x2[None, :]))[0])


@dataclass(frozen=True)
class KernelSpec:
    """The four real sub-kernels defining a widely-linear kernel pair."""

    k_rr: RealSubKernel
    k_jj: RealSubKernel
    k_rj: RealSubKernel
    k_jr: RealSubKernel

    def __post_init__(self):
        for name in ("k_rr", "k_jj", "k_rj", "k_jr"):
            if not isinstance(getattr(self, name), RealSubKernel):
                raise InvalidInputError(f"{name} must be a RealSubKernel")

    @property
    def subs(self) -> tuple:
        return (self.k_rr, self.k_jj, self.k_rj, self.k_jr)


@dataclass(frozen=True)
class DirectKernel:
    """A kernel given directly as one closed form instead of four sub-kernels.

    ``complex_gaussian`` is the kernel of the CKLMS2/ACKLMS baselines;
    ``real_gaussian`` is the real Gaussian used when those baselines run
    with ``k = 2*k_G``.  Both imply a vanishing pseudo-kernel.
    """

    kind: str
    gamma: float

    def __post_init__(self):
        if self.kind not in ("complex_gaussian", "real_gaussian"):
            raise InvalidInputError(f"unknown direct kernel kind {self.kind!r}")
        if not np.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidInputError(f"{self.kind} needs gamma > 0, got {self.gamma!r}")


@dataclass(frozen=True)
class ComplexKernelPair:
    """Complex kernel + pseudo-kernel, as scalar callables with a batch path.

    ``k`` and ``pk`` evaluate single pairs; ``eval_batch(x, centers)``
    evaluates both against every row of an ``(m, d)`` center matrix at once
    and is what the online filters call per step.
    """

    k: Callable[[ComplexVec, ComplexVec], complex]
    pk: Callable[[ComplexVec, ComplexVec], complex]
    eval_batch: Callable[[ComplexVec, np.ndarray], tuple] = field(repr=False, compare=False)


def _check_pair_dims(x: ComplexVec, centers: np.ndarray):
    if centers.ndim != 2:
        raise ShapeError(f"centers must be (m, d), got shape {centers.shape}")
    if centers.shape[0] and centers.shape[1] != x.shape[0]:
        raise ShapeError(
            f"input dim {x.shape[0]} does not match center dim {centers.shape[1]}"
        )


def _pair_from_batch(batch: Callable) -> ComplexKernelPair:
    def k(x, x2) -> complex:
        x, x2 = as_complex_vector(x), as_complex_vector(x2)
        if x.shape != x2.shape:
            raise ShapeError(f"kernel arguments differ in shape: {x.shape} vs {x2.shape}")
        kv, _ = batch(x, x2[None, :])
        return complex(kv[0])

    def pk(x, x2) -> complex:
        x, x2 = as_complex_vector(x), as_complex_vector(x2)
        if x.shape != x2.shape:
            raise ShapeError(f"kernel arguments differ in shape: {x.shape} vs {x2.shape}")
        _, pkv = batch(x, x2[None, :])
        return complex(pkv[0])

    return ComplexKernelPair(k=k, pk=pk, eval_batch=batch)


def eval_real_gaussian(x, x2, gamma: float) -> float:
    """Real Gaussian kernel for complex inputs.

    Parameters
    ----------
    x, x2 : array_like
        Complex vectors of equal dimension.
    gamma : float
        Kernel width, > 0.

    Returns
    -------
    float
        ``exp(-||x - x2||^2 / gamma^2)`` in ``(0, 1]``; equals 1 iff
        ``x == x2``.
    """
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidInputError(f"gamma must be > 0, got {gamma!r}")
    x, x2 = as_complex_vector(x), as_complex_vector(x2)
    if x.shape != x2.shape:
        raise ShapeError(f"kernel arguments differ in shape: {x.shape} vs {x2.shape}")
    return float(np.exp(-_sqdist_to_rows(x, x2[None, :])[0] / (gamma * gamma)))


def _complex_gaussian_batch(x: ComplexVec, centers: np.ndarray, gamma: float):
    """Shared split-form evaluation of the complex Gaussian against rows.

    The quadratic form ``(x - conj(c))^T (x - conj(c))`` is expanded into
    real and imaginary parts so the real exponent can be range-checked
    before any exponential is formed.
    """
    d = x - centers.conj()
    re, im = d.real, d.imag
    if centers.shape[1] == 1:
        s_re = (re * re - im * im)[:, 0]
        s_im = (2.0 * re * im)[:, 0]
    else:
        s_re = (re * re - im * im).sum(axis=1)
        s_im = (2.0 * re * im).sum(axis=1)
    inv_g2 = 1.0 / (gamma * gamma)
    exp_re = -s_re * inv_g2
    if exp_re.size and float(exp_re.max()) > _EXP_OVERFLOW:
        raise KernelOverflowError(
            "complex Gaussian exponent "
            f"{float(exp_re.max()):.1f} exceeds {_EXP_OVERFLOW:.0f} "
            f"(gamma={gamma!r}); the value would overflow double precision"
        )
    return np.exp(exp_re) * (np.cos(s_im * inv_g2) + 1j * np.sin(s_im * inv_g2))


def eval_complex_gaussian(x, x2, gamma_cg: float) -> complex:
    """Complex Gaussian kernel with a plain (non-conjugating) transpose.

    Parameters
    ----------
    x, x2 : array_like
        Complex vectors of equal dimension.
    gamma_cg : float
        Kernel width, > 0.

    Returns
    -------
    complex
        ``exp(-(x - conj(x2))^T (x - conj(x2)) / gamma_cg^2)``.  The
        magnitude can exceed 1; when the real part of the exponent passes
        700 a :class:`~wlkaf.errors.KernelOverflowError` is raised instead
        of returning inf.
    """
    if not np.isfinite(gamma_cg) or gamma_cg <= 0:
        raise InvalidInputError(f"gamma must be > 0, got {gamma_cg!r}")
    x, x2 = as_complex_vector(x), as_complex_vector(x2)
    if x.shape != x2.shape:
        raise ShapeError(f"kernel arguments differ in shape: {x.shape} vs {x2.shape}")
    return complex(_complex_gaussian_batch(x, x2[None, :], gamma_cg)[0])


def compose_kernel(spec: KernelSpec) -> ComplexKernelPair:
    """Build the complex kernel and pseudo-kernel from four sub-kernels.

    Returns a pair evaluating ``k = k_rr + k_jj + j*(k_jr - k_rj)`` and
    ``pk = k_rr - k_jj + j*(k_jr + k_rj)`` pointwise.  Identical sub-kernel
    entries are evaluated once per call.
    """
    if not isinstance(spec, KernelSpec):
        raise InvalidInputError("compose_kernel expects a KernelSpec")
    unique = tuple(dict.fromkeys(spec.subs))

    def batch(x, centers):
        _check_pair_dims(x, centers)
        sq = _sqdist_to_rows(x, centers)
        vals = {sub: sub.from_sqdist(sq) for sub in unique}
        rr, jj = vals[spec.k_rr], vals[spec.k_jj]
        rj, jr = vals[spec.k_rj], vals[spec.k_jr]
        return (rr + jj) + 1j * (jr - rj), (rr - jj) + 1j * (jr + rj)

    return _pair_from_batch(batch)


def complex_gaussian_pair(gamma: float) -> ComplexKernelPair:
    """Complex Gaussian kernel with an identically zero pseudo-kernel."""
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidInputError(f"gamma must be > 0, got {gamma!r}")

    def batch(x, centers):
        _check_pair_dims(x, centers)
        kv = _complex_gaussian_batch(x, centers, gamma)
        return kv, np.zeros(centers.shape[0], dtype=np.complex128)

    return _pair_from_batch(batch)


def real_gaussian_pair(gamma: float) -> ComplexKernelPair:
    """Real Gaussian kernel with an identically zero pseudo-kernel."""
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidInputError(f"gamma must be > 0, got {gamma!r}")
    inv_g2 = 1.0 / (gamma * gamma)

    def batch(x, centers):
        _check_pair_dims(x, centers)
        kv = np.exp(_sqdist_to_rows(x, centers) * -inv_g2)
        return kv, np.zeros(centers.shape[0])

    return _pair_from_batch(batch)


def make_kernel_pair(kernel: KernelSpec | DirectKernel) -> ComplexKernelPair:
    """Build the kernel pair for either description of a kernel."""
    if isinstance(kernel, KernelSpec):
        return compose_kernel(kernel)
    if isinstance(kernel, DirectKernel):
        if kernel.kind == "complex_gaussian":
            return complex_gaussian_pair(kernel.gamma)
        return real_gaussian_pair(kernel.gamma)
    raise InvalidInputError(f"cannot build a kernel pair from {type(kernel).__name__}")


def check_null_pseudo_conditions(spec: KernelSpec, sample_pairs, tol: float = 1e-12) -> bool:
    """Test whether the pseudo-kernel of ``spec`` vanishes on sampled pairs.

    True iff ``k_rr == k_jj`` and ``k_jr == -k_rj`` hold on every supplied
    ``(x, x2)`` pair to within ``tol``.  Used to confirm that a requested
    reduction to a pseudo-kernel-free baseline is legitimate.
    """
    pairs = list(sample_pairs)
    if not pairs:
        raise InvalidInputError("need at least one sample pair")
    for x, x2 in pairs:
        if abs(spec.k_rr(x, x2) - spec.k_jj(x, x2)) > tol:
            return False
        if abs(spec.k_jr(x, x2) + spec.k_rj(x, x2)) > tol:
            return False
    return True


class CompositeMatrixKernel:
    """The 2x2 matrix-valued kernel ``[[k_rr, k_rj], [k_jr, k_jj]]``.

    This is the composite-form twin of :func:`compose_kernel`: it carries
    exactly the same four sub-kernels, arranged as the matrix coupling the
    stacked real/imaginary output channels.
    """

    def __init__(self, spec: KernelSpec):
        if not isinstance(spec, KernelSpec):
            raise InvalidInputError("CompositeMatrixKernel expects a KernelSpec")
        self.spec = spec
        self._unique = tuple(dict.fromkeys(spec.subs))

    def entries_batch(self, x: ComplexVec, centers: np.ndarray):
        """Return (rr, rj, jr, jj) arrays against every center row."""
        _check_pair_dims(x, centers)
        sq = _sqdist_to_rows(x, centers)
        vals = {sub: sub.from_sqdist(sq) for sub in self._unique}
        s = self.spec
        return vals[s.k_rr], vals[s.k_rj], vals[s.k_jr], vals[s.k_jj]

    def entries(self, x, x2) -> np.ndarray:
        """The 2x2 kernel matrix K(x, x2)."""
        x, x2 = as_complex_vector(x), as_complex_vector(x2)
        if x.shape != x2.shape:
            raise ShapeError(f"kernel arguments differ in shape: {x.shape} vs {x2.shape}")
        rr, rj, jr, jj = (float(v[0]) for v in self.entries_batch(x, x2[None, :]))
        return np.array([[rr, rj], [jr, jj]])


def composite_gram(spec: KernelSpec, points) -> np.ndarray:
    """Assemble the 2m x 2m block Gram matrix of the matrix-valued kernel.

    Rows/columns are ordered ``[real block; imaginary block]``.  Positive
    semi-definiteness of this matrix on arbitrary point sets is what makes
    the four sub-kernels a valid composite covariance; tests probe its
    minimum eigenvalue on small random sets.
    """
    pts = np.asarray(points, dtype=np.complex128)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ShapeError(f"points must be a nonempty (m, d) array, got shape {pts.shape}")
    diff = pts[:, None, :] - pts[None, :, :]
    sq = (diff.real * diff.real + diff.imag * diff.imag).sum(axis=2)
    blocks = {sub: sub.from_sqdist(sq) for sub in dict.fromkeys(spec.subs)}
    return np.block(
        [
            [blocks[spec.k_rr], blocks[spec.k_rj]],
            [blocks[spec.k_jr], blocks[spec.k_jj]],
        ]
    )
