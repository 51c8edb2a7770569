"""Online complex kernel LMS family sharing one dictionary engine.

Four algorithms are provided, selected by name:

``gcklms``
    Widely-linear prediction with kernel and pseudo-kernel,
    ``y(i) = sum_l coeff_l * k(x(i), x_l) + conj(coeff_l) * pk(x(i), x_l)``.
``cklms2``
    Kernel sum only; the pseudo-kernel term is structurally absent.
``acklms``
    Real-kernel form ``y(i) = sum_l 2 * coeff_l * Re{k(x(i), x_l)}``.
``composite-oracle``
    The same filter computed entirely in the stacked real/imaginary
    domain with the 2x2 matrix-valued kernel, carrying the factor 2*mu of
    the composite formulation.  It exists as an independently coded twin
    of ``gcklms`` so the equivalence of the two domains is testable, and
    is never an optimization of it.

Each admitted sample appends a dictionary entry ``(x, mu*e, mu*conj(e))``;
prediction at step i always uses the pre-update dictionary (the weights
after step i-1).  An optional novelty criterion gates admission on both
distance-to-dictionary and error magnitude; rejected samples update
nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import CompositePair, composite_to_augmented
from .errors import InvalidInputError, ShapeError, WlkafError
from .kernels import (
    ComplexKernelPair,
    CompositeMatrixKernel,
    ComplexVec,
    DirectKernel,
    KernelSpec,
    _sqdist_to_rows,
    as_complex_vector,
    compose_kernel,
    make_kernel_pair,
)

__all__ = [
    "ALGORITHMS",
    "NoveltyParams",
    "DictionaryEntry",
    "LearningTrace",
    "KLMSFilter",
]

ALGORITHMS = ("gcklms", "cklms2", "acklms", "composite-oracle")

_INITIAL_CAPACITY = 64


@dataclass(frozen=True)
class NoveltyParams:
    """Novelty-criterion thresholds: admit iff the candidate is farther than
    ``delta1`` from every dictionary center AND its error magnitude exceeds
    ``delta2``."""

    delta1: float
    delta2: float

    def __post_init__(self):
        if not (np.isfinite(self.delta1) and self.delta1 > 0):
            raise InvalidInputError(f"delta1 must be > 0, got {self.delta1!r}")
        if not (np.isfinite(self.delta2) and self.delta2 > 0):
            raise InvalidInputError(f"delta2 must be > 0, got {self.delta2!r}")


@dataclass(frozen=True)
class DictionaryEntry:
    """One kernel expansion term: stored input and its error-scaled weight.

    ``coeff_conj`` always equals ``conj(coeff)``; it is stored separately
    only so the two sums of the widely-linear prediction can be exercised
    independently.
    """

    center: ComplexVec
    coeff: complex
    coeff_conj: complex


@dataclass
class LearningTrace:
    """Per-step record of one online run."""

    predictions: np.ndarray
    errors: np.ndarray
    sq_error: np.ndarray
    sq_error_re: np.ndarray
    sq_error_im: np.ndarray
    dict_sizes: np.ndarray

    def __len__(self) -> int:
        return len(self.errors)


class KLMSFilter:
    """Online filter state plus its prediction/update operations.

    Parameters
    ----------
    algorithm : str
        One of ``"gcklms"``, ``"cklms2"``, ``"acklms"``,
        ``"composite-oracle"``.
    kernel : ComplexKernelPair, KernelSpec, or DirectKernel
        The kernel to run with.  The composite oracle requires the
        four-sub-kernel :class:`~wlkaf.kernels.KernelSpec` form, since its
        2x2 matrix kernel has no meaning for a directly given kernel.
    mu : float
        Step size, > 0.
    novelty : NoveltyParams, optional
        Enable novelty-criterion sparsification.  Default: admit all.
    """

    def __init__(self, algorithm, kernel, mu, novelty=None):
        if algorithm not in ALGORITHMS:
            raise InvalidInputError(
                f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}"
            )
        if not np.isfinite(mu) or mu <= 0:
            raise InvalidInputError(f"mu must be > 0, got {mu!r}")
        if novelty is not None and not isinstance(novelty, NoveltyParams):
            raise InvalidInputError("novelty must be NoveltyParams or None")
        self.algorithm = algorithm
        self.mu = float(mu)
        self.sparsify = novelty
        self.samples_seen = 0

        self._matrix = None
        if algorithm == "composite-oracle":
            if isinstance(kernel, CompositeMatrixKernel):
                self._matrix = kernel
                self.kernel_pair = compose_kernel(kernel.spec)
            elif isinstance(kernel, KernelSpec):
                self._matrix = CompositeMatrixKernel(kernel)
                self.kernel_pair = compose_kernel(kernel)
            else:
                raise InvalidInputError(
                    "composite-oracle requires a KernelSpec (four sub-kernels)"
                )
        elif isinstance(kernel, ComplexKernelPair):
            self.kernel_pair = kernel
        elif isinstance(kernel, (KernelSpec, DirectKernel)):
            self.kernel_pair = make_kernel_pair(kernel)
        else:
            raise InvalidInputError(f"cannot build a kernel from {type(kernel).__name__}")

        self._dim = None
        self._centers = None
        self._coeff = None
        self._coeff_conj = None
        self._size = 0

    # -- dictionary access ------------------------------------------------

    @property
    def dict_size(self) -> int:
        return self._size

    @property
    def dictionary(self) -> list:
        """Snapshot of the current expansion as DictionaryEntry objects."""
        return [
            DictionaryEntry(
                center=self._centers[i].copy(),
                coeff=complex(self._coeff[i]),
                coeff_conj=complex(self._coeff_conj[i]),
            )
            for i in range(self._size)
        ]

    def _ensure_capacity(self, n: int, dim: int):
        if self._centers is None:
            cap = max(_INITIAL_CAPACITY, n)
            self._centers = np.empty((cap, dim), dtype=np.complex128)
            self._coeff = np.empty(cap, dtype=np.complex128)
            self._coeff_conj = np.empty(cap, dtype=np.complex128)
        elif n > self._centers.shape[0]:
            cap = max(2 * self._centers.shape[0], n)
            self._centers = np.resize(self._centers, (cap, dim))
            self._coeff = np.resize(self._coeff, cap)
            self._coeff_conj = np.resize(self._coeff_conj, cap)

    def _append(self, x: ComplexVec, error: complex):
        self._ensure_capacity(self._size + 1, x.shape[0])
        coeff = self.mu * error
        self._centers[self._size] = x
        self._coeff[self._size] = coeff
        self._coeff_conj[self._size] = coeff.conjugate()
        assert self._coeff_conj[self._size] == np.conj(self._coeff[self._size])
        self._size += 1

    # -- prediction --------------------------------------------------------

    def _predict_current(self, x: ComplexVec) -> complex:
        """Prediction from the current dictionary; x is assumed validated."""
        m = self._size
        if m == 0:
            return 0j
        if self.algorithm == "composite-oracle":
            re, im = self._composite_current(x)
            return complex(composite_to_augmented(CompositePair(re, im)).val)
        kv, pkv = self.kernel_pair.eval_batch(x, self._centers[:m])
        if self.algorithm == "gcklms":
            return complex(np.dot(self._coeff[:m], kv) + np.dot(self._coeff_conj[:m], pkv))
        if self.algorithm == "cklms2":
            return complex(np.dot(self._coeff[:m], kv))
        # acklms
        return complex(2.0 * np.dot(self._coeff[:m], np.real(kv)))

    def _composite_current(self, x: ComplexVec):
        m = self._size
        if m == 0:
            return 0.0, 0.0
        rr, rj, jr, jj = self._matrix.entries_batch(x, self._centers[:m])
        # coeff stores mu*e, and the composite sum carries 2*mu*e, hence
        # the bare factor 2 here.
        cr = self._coeff[:m].real
        ci = self._coeff[:m].imag
        re = 2.0 * (np.dot(rr, cr) + np.dot(rj, ci))
        im = 2.0 * (np.dot(jr, cr) + np.dot(jj, ci))
        return float(re), float(im)

    def predict(self, x) -> complex:
        """Predict the output for ``x`` from the current dictionary.

        Empty dictionary gives ``0j``.  For the composite oracle the
        stacked real result is mapped back through the augmented
        transform, so every algorithm exposes the same complex-valued
        surface.
        """
        return self._predict_current(self._check_input(x))

    def predict_composite(self, x) -> CompositePair:
        """Stacked-real prediction ``2*mu * sum_l K(x, x_l) e_comp(l)``.

        Only meaningful for ``algorithm="composite-oracle"``.
        """
        if self.algorithm != "composite-oracle":
            raise InvalidInputError(
                f"predict_composite requires the composite-oracle algorithm, not {self.algorithm!r}"
            )
        re, im = self._composite_current(self._check_input(x))
        return CompositePair(re=re, im=im)

    def predict_conjugate_sum(self, x) -> complex:
        """ACKLMS prediction written as the two-term sum ``e*k + e*conj(k)``.

        Algebraically identical to the ``2*e*Re{k}`` form the filter uses;
        kept as a literal transcription so the identity of the two
        published forms is testable rather than assumed.
        """
        if self.algorithm != "acklms":
            raise InvalidInputError("predict_conjugate_sum is an ACKLMS form")
        x = self._check_input(x)
        m = self._size
        if m == 0:
            return 0j
        kv, _ = self.kernel_pair.eval_batch(x, self._centers[:m])
        kv = np.asarray(kv, dtype=np.complex128)
        return complex(np.dot(self._coeff[:m], kv) + np.dot(self._coeff[:m], np.conj(kv)))

    # -- admission and update ----------------------------------------------

    def _admit_current(self, x: ComplexVec, error: complex) -> bool:
        if self._size == 0:
            return True
        d1 = self.sparsify.delta1
        min_sq = _sqdist_to_rows(x, self._centers[: self._size]).min()
        # ||x - c|| > delta1 compared in squared form; exact for d1 > 0.
        return bool(min_sq > d1 * d1) and bool(abs(error) > self.sparsify.delta2)

    def admit_sample(self, x, error) -> bool:
        """Apply the novelty criterion to a candidate (x, error) pair."""
        if self.sparsify is None:
            raise InvalidInputError("admit_sample needs novelty parameters configured")
        return self._admit_current(self._check_input(x), complex(error))

    def update(self, x, y) -> tuple:
        """One online step: predict with the pre-update dictionary, then admit.

        Returns ``(prediction, error, admitted)`` where
        ``error = y - prediction``.  Rejected samples change nothing but
        the sample counter.
        """
        x = self._check_input(x)
        y = complex(y)
        if not np.isfinite(y):
            raise InvalidInputError(f"target must be finite, got {y!r}")
        if self._dim is None:
            self._dim = x.shape[0]
        pred = self._predict_current(x)
        err = y - pred
        admitted = True if self.sparsify is None else self._admit_current(x, err)
        if admitted:
            self._append(x, err)
        self.samples_seen += 1
        return pred, err, admitted

    def run_sequence(self, inputs, targets) -> LearningTrace:
        """Run update() over aligned inputs/targets and record the trace."""
        X, y = self._check_sequence(inputs, targets)
        n = X.shape[0]
        preds = np.zeros(n, dtype=np.complex128)
        errs = np.zeros(n, dtype=np.complex128)
        sizes = np.zeros(n, dtype=np.int64)
        if n:
            self._ensure_capacity(self._size + n, X.shape[1])
            if self._dim is None:
                self._dim = X.shape[1]
        gated = self.sparsify is not None
        for i in range(n):
            x = X[i]
            try:
                pred = self._predict_current(x)
                err = y[i] - pred
                if not gated or self._admit_current(x, err):
                    self._append(x, err)
            except WlkafError as exc:
                raise type(exc)(f"step {i}: {exc}") from exc
            self.samples_seen += 1
            preds[i] = pred
            errs[i] = err
            sizes[i] = self._size
        sq_re = errs.real**2
        sq_im = errs.imag**2
        return LearningTrace(
            predictions=preds,
            errors=errs,
            sq_error=sq_re + sq_im,
            sq_error_re=sq_re,
            sq_error_im=sq_im,
            dict_sizes=sizes,
        )

    # -- validation ----------------------------------------------------------

    def _check_input(self, x) -> ComplexVec:
        if not (isinstance(x, np.ndarray) and x.ndim == 1 and x.dtype == np.complex128):
            x = as_complex_vector(x)
        if self._dim is not None and x.shape[0] != self._dim:
            raise ShapeError(f"input dim {x.shape[0]} does not match filter dim {self._dim}")
        return x

    def _check_sequence(self, inputs, targets):
        try:
            X = np.asarray(inputs, dtype=np.complex128)
        except (TypeError, ValueError) as exc:
            raise ShapeError(f"inputs must form a rectangular complex array: {exc}") from exc
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2:
            raise ShapeError(f"inputs must be (n, d), got shape {X.shape}")
        y = np.asarray(targets, dtype=np.complex128)
        if y.ndim != 1:
            raise ShapeError(f"targets must be 1-D, got shape {y.shape}")
        if X.shape[0] != y.shape[0]:
            raise ShapeError(f"{X.shape[0]} inputs vs {y.shape[0]} targets")
        if self._dim is not None and X.shape[0] and X.shape[1] != self._dim:
            raise ShapeError(f"step 0: input dim {X.shape[1]} does not match filter dim {self._dim}")
        bad = np.nonzero(~np.isfinite(X).all(axis=1))[0]
        if bad.size:
            raise InvalidInputError(f"step {bad[0]}: input entries must be finite")
        bad = np.nonzero(~np.isfinite(y))[0]
        if bad.size:
            raise InvalidInputError(f"step {bad[0]}: target must be finite")
        return X, y
