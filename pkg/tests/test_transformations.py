"""
Tests for the transformation catalog and the measure sequences.
"""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from olx.exceptions import DomainError, PreconditionError, ValidationError
from olx.measure import AtomicMeasureSpace, ConstantMeasure, MeasurableSet, SymmetricGeometricMeasure
from olx.transformations import (
    FORWARD,
    PREIMAGE,
    FiniteMap,
    Identity,
    IntegerShift,
    NaturalShift,
    forward_image_set,
    get_transformation,
    injectivity_probe,
    iter_images,
    make_transformation,
    measure_sequence,
    nonsingularity_probe,
    preimage_set,
)


@pytest.fixture
def s3_space():
    return AtomicMeasureSpace('integers', SymmetricGeometricMeasure(ratio=0.5))


@pytest.fixture
def counting_space():
    return AtomicMeasureSpace('naturals', ConstantMeasure(c=1.0))


@pytest.fixture
def finite_space():
    return AtomicMeasureSpace.finite([1.0, 2.0, 3.0], labels=['a', 'b', 'c'])


class TestShifts:
    """Shifts on ℤ and ℕ."""

    def test_integer_shift_preimage(self, s3_space):
        """τ^{-n}({0}) = {−n} for τ(i) = i + 1."""
        tau = IntegerShift(s3_space)
        assert preimage_set(tau, MeasurableSet.of(s3_space, [0]), 3).atoms == frozenset({-3})
        assert forward_image_set(tau, MeasurableSet.of(s3_space, [0]), 3).atoms == frozenset({3})

    def test_integer_shift_offset(self, s3_space):
        """Offsets scale the preimage."""
        tau = IntegerShift(s3_space, offset=-2)
        assert preimage_set(tau, MeasurableSet.of(s3_space, [1]), 2).atoms == frozenset({5})
        assert tau.inverse().offset == 2

    def test_natural_shift_empties(self, counting_space):
        """On ℕ, τ^{-6}({5}) = ∅."""
        tau = NaturalShift(counting_space)
        subset = MeasurableSet.of(counting_space, [5])
        assert preimage_set(tau, subset, 5).atoms == frozenset({0})
        assert preimage_set(tau, subset, 6).is_empty
        with pytest.raises(PreconditionError):
            tau.inverse()

    def test_domain_checks(self, s3_space, counting_space):
        """Shifts are tied to their index domain."""
        with pytest.raises(ValidationError):
            IntegerShift(counting_space)
        with pytest.raises(ValidationError):
            NaturalShift(s3_space)
        with pytest.raises(ValidationError):
            IntegerShift(s3_space, offset=1.5)

    def test_negative_power(self, s3_space):
        """n < 0 is outside the domain of the preimage."""
        with pytest.raises(DomainError):
            preimage_set(Identity(s3_space), MeasurableSet.of(s3_space, [0]), -1)

    def test_negative_forward_is_preimage(self, s3_space):
        """forward_image_set with n < 0 returns the preimage."""
        tau = IntegerShift(s3_space)
        subset = MeasurableSet.of(s3_space, [0])
        assert forward_image_set(tau, subset, -4) == preimage_set(tau, subset, 4)


class TestFiniteMap:
    """Table maps on finite domains."""

    def test_swap(self, finite_space):
        """A swap is an involutive bijection."""
        tau = FiniteMap(finite_space, {'a': 'b', 'b': 'a', 'c': 'c'})
        assert tau.is_injective
        assert preimage_set(tau, MeasurableSet.of(finite_space, ['a']), 1).atoms == frozenset({'b'})
        assert preimage_set(tau, MeasurableSet.of(finite_space, ['a']), 2).atoms == frozenset({'a'})
        assert tau.inverse().table == tau.table

    def test_collapse(self, finite_space):
        """Collisions are reported with a counterexample pair."""
        tau = FiniteMap(finite_space, {'a': 'c', 'b': 'c', 'c': 'a'})
        probe = injectivity_probe(tau)
        assert not probe
        assert probe.counterexample == ('a', 'b')
        assert preimage_set(tau, MeasurableSet.of(finite_space, ['c']), 1).atoms == frozenset({'a', 'b'})
        assert preimage_set(tau, MeasurableSet.of(finite_space, ['b']), 1).is_empty

    def test_forward_needs_injective(self, finite_space):
        """Forward images of a non-injective map are refused."""
        tau = FiniteMap(finite_space, {'a': 'c', 'b': 'c', 'c': 'a'})
        subset = MeasurableSet.of(finite_space, ['a'])
        with pytest.raises(PreconditionError):
            forward_image_set(tau, subset, 1)
        with pytest.raises(PreconditionError):
            measure_sequence(tau, subset, FORWARD, 3)
        assert forward_image_set(tau, subset, 0) == subset

    def test_must_be_total(self, finite_space):
        """Every atom needs an image."""
        with pytest.raises(ValidationError):
            FiniteMap(finite_space, {'a': 'b', 'b': 'a'})

    def test_factory_coerces_labels(self, finite_space):
        """make_transformation resolves JSON labels."""
        tau = make_transformation({'kind': 'finite_map', 'table': {'a': 'b', 'b': 'a', 'c': 'c'}}, finite_space)
        assert tau.apply('a') == 'b'
        with pytest.raises(ValidationError):
            make_transformation({'kind': 'finite_map', 'table': {'a': 'z', 'b': 'a', 'c': 'c'}}, finite_space)


class TestMeasureSequences:
    """μ(τ^{∓n}(A)) sequences."""

    def test_s3_preimage_sequence(self, s3_space):
        """μ(τ^{-n}{0}) = 2^{−n} exactly."""
        seq = measure_sequence(IntegerShift(s3_space), MeasurableSet.of(s3_space, [0]), PREIMAGE, 30)
        assert seq.horizon == 30
        assert seq.values == tuple(2.0 ** -n for n in range(31))
        assert not any(seq.null)

    def test_underflow_is_not_null(self, s3_space):
        """Masses below the double range underflow but the sets stay non-empty."""
        seq = measure_sequence(IntegerShift(s3_space), MeasurableSet.of(s3_space, [0]), FORWARD, 1200)
        assert seq.values[-1] == 0.0
        assert not seq.null[-1]

    def test_counting_null_flags(self, counting_space):
        """Preimages of {5} under shift_n vanish from n = 6 on."""
        seq = measure_sequence(NaturalShift(counting_space), MeasurableSet.of(counting_space, [5]), PREIMAGE, 8)
        assert seq.values == (1.0,) * 6 + (0.0,) * 3
        assert seq.null == (False,) * 6 + (True,) * 3

    def test_empty_set_rejected(self, s3_space):
        """Sequences need 0 < μ(A)."""
        with pytest.raises(PreconditionError):
            measure_sequence(Identity(s3_space), MeasurableSet.of(s3_space), PREIMAGE, 3)

    def test_iter_images_direction(self, s3_space):
        """Unknown directions are rejected."""
        with pytest.raises(ValidationError):
            list(iter_images(Identity(s3_space), MeasurableSet.of(s3_space, [0]), 'sideways', 2))

    def test_nonsingular(self, finite_space, s3_space):
        """Positive atom masses make every total map non-singular."""
        assert nonsingularity_probe(FiniteMap(finite_space, {'a': 'a', 'b': 'a', 'c': 'a'}))
        assert nonsingularity_probe(IntegerShift(s3_space))


class TestRegistry:
    """Transformation registry."""

    def test_unknown_kind(self):
        """Unknown kinds list the catalog."""
        with pytest.raises(ValidationError, match='Available kinds'):
            get_transformation('rotation')

    def test_params(self, s3_space):
        """to_dict carries the kind and parameters."""
        assert IntegerShift(s3_space, offset=3).to_dict() == {'kind': 'shift_z', 'offset': 3}
