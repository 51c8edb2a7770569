"""Conversions between composite (stacked real) and augmented complex pairs.

A complex scalar ``z = re + j*im`` has two equivalent two-channel
representations: the *composite* vector ``[re, im]`` of real parts and the
*augmented* vector ``[z, conj(z)]``.  They are related by the linear map

    [z, conj(z)] = T @ [re, im],      T = [[1,  1j],
                                           [1, -1j]],

with ``T @ T^H = 2*I``, so the inverse map is ``0.5 * T^H``.  Keeping both
directions explicit lets a widely-linear filter expressed in one domain be
checked against its twin in the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "CompositePair",
    "AugmentedPair",
    "transform_matrix",
    "composite_to_augmented",
    "augmented_to_composite",
]


@dataclass(frozen=True)
class CompositePair:
    """Real and imaginary channels of a complex quantity, kept separate."""

    re: float
    im: float

    def __post_init__(self):
        if not (np.isfinite(self.re) and np.isfinite(self.im)):
            raise InvalidInputError("composite pair entries must be finite reals")


@dataclass(frozen=True)
class AugmentedPair:
    """A complex value bundled with its conjugate, ``[z, conj(z)]``."""

    val: complex
    conj_val: complex

    def __post_init__(self):
        if not (np.isfinite(self.val) and np.isfinite(self.conj_val)):
            raise InvalidInputError("augmented pair entries must be finite")


def transform_matrix() -> np.ndarray:
    """Return the 2x2 map T taking ``[re, im]`` to ``[z, conj(z)]``."""
    return np.array([[1.0, 1.0j], [1.0, -1.0j]])


def composite_to_augmented(pair: CompositePair) -> AugmentedPair:
    """Apply T to a composite pair."""
    z = complex(pair.re, pair.im)
    return AugmentedPair(val=z, conj_val=z.conjugate())


def augmented_to_composite(pair: AugmentedPair) -> CompositePair:
    """Apply ``0.5 * T^H``, the exact inverse of :func:`composite_to_augmented`.

    The pair must be conjugate-consistent (``conj_val == conj(val)``);
    anything else is not in the image of T over real composite vectors.
    """
    if pair.conj_val != complex(pair.val).conjugate():
        raise InvalidInputError(
            "augmented pair is not conjugate-consistent: "
            f"conj_val={pair.conj_val!r} but conj(val)={complex(pair.val).conjugate()!r}"
        )
    v, c = complex(pair.val), complex(pair.conj_val)
    return CompositePair(re=0.5 * (v.real + c.real), im=0.5 * (v.imag - c.imag))
