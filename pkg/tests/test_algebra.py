"""Round-trip and hand-value tests for the composite/augmented change of basis."""

import numpy as np
import pytest

from wlkaf.algebra import (
    AugmentedPair,
    CompositePair,
    augmented_to_composite,
    composite_to_augmented,
    transform_matrix,
)
from wlkaf.errors import InvalidInputError


def test_transform_matrix_value():
    t = transform_matrix()
    assert t.shape == (2, 2)
    assert t[0, 0] == 1 and t[0, 1] == 1j
    assert t[1, 0] == 1 and t[1, 1] == -1j


def test_transform_matrix_scaled_unitary():
    # T @ T^H = 2I, so T/sqrt(2) is unitary.
    t = transform_matrix()
    prod = t @ t.conj().T
    assert np.allclose(prod, 2.0 * np.eye(2), atol=1e-15)


def test_composite_to_augmented_hand_value():
    # (re, im) = (3, -4)  ->  val = 3 - 4j, conj_val = 3 + 4j
    pair = composite_to_augmented(CompositePair(3.0, -4.0))
    assert pair.val == 3 - 4j
    assert pair.conj_val == 3 + 4j


def test_augmented_to_composite_hand_value():
    comp = augmented_to_composite(AugmentedPair(1 + 2j, 1 - 2j))
    assert comp.re == 1.0
    assert comp.im == 2.0


def test_round_trip_many():
    rng = np.random.default_rng(42)
    for _ in range(200):
        re, im = rng.standard_normal(2)
        back = augmented_to_composite(composite_to_augmented(CompositePair(re, im)))
        assert back.re == pytest.approx(re, abs=1e-15)
        assert back.im == pytest.approx(im, abs=1e-15)


def test_augmented_consistency_enforced():
    # conj_val must be the conjugate of val
    with pytest.raises(InvalidInputError):
        augmented_to_composite(AugmentedPair(1 + 2j, 1 + 2j))


def test_non_finite_rejected():
    with pytest.raises(InvalidInputError):
        CompositePair(np.nan, 0.0)
    with pytest.raises(InvalidInputError):
        AugmentedPair(np.inf + 0j, np.inf - 0j)
