"""
Tests for atomic measure spaces, simple functions and rearrangements.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from olx.exceptions import DomainError, ValidationError
from olx.measure import (
    AtomicMeasureSpace,
    ConstantMeasure,
    GeometricMeasure,
    MeasurableSet,
    SimpleFunction,
    SymmetricGeometricMeasure,
    TabulatedMeasure,
    distribution_function,
    make_atom_measure,
    measure_of,
    rearrangement,
)
from olx.utils import make_rng, random_simple_function


@pytest.fixture
def s3_space():
    return AtomicMeasureSpace('integers', SymmetricGeometricMeasure(ratio=0.5))


@pytest.fixture
def finite_space():
    return AtomicMeasureSpace.finite([1.0, 2.0, 0.5, 3.0], labels=['a', 'b', 'c', 'd'])


class TestAtomMeasures:
    """Catalog atom measures."""

    def test_geometric_masses(self):
        """μ_i = scale·ratio^i on ℕ with total scale/(1 − ratio)."""
        space = AtomicMeasureSpace('naturals', GeometricMeasure(ratio=0.25, scale=3.0))
        assert space.mass(2) == pytest.approx(3.0 / 16)
        assert space.total_measure() == pytest.approx(4.0)
        assert space.has_finite_measure

    def test_symmetric_geometric_total(self, s3_space):
        """Σ_{i∈ℤ} 2^{−|i|} = 3."""
        assert s3_space.mass(-3) == 0.125
        assert s3_space.total_measure() == pytest.approx(3.0)

    def test_counting_measure_is_infinite(self):
        """Counting measure on ℕ has infinite total mass."""
        space = AtomicMeasureSpace('naturals', ConstantMeasure(c=1.0))
        assert space.total_measure() == math.inf
        assert not space.has_finite_measure

    @pytest.mark.parametrize('ratio', [0.0, 1.0, 1.5, -0.5])
    def test_ratio_must_lie_in_unit_interval(self, ratio):
        """Summable weights need 0 < ratio < 1."""
        with pytest.raises(ValidationError):
            SymmetricGeometricMeasure(ratio=ratio)

    def test_table_measure(self):
        """Tabulated masses override the default tail formula."""
        measure = make_atom_measure({
            'kind': 'table',
            'table': {'0': 2.0, '3': 1.0},
            'default': {'kind': 'geometric', 'ratio': 0.5},
        })
        assert isinstance(measure, TabulatedMeasure)
        space = AtomicMeasureSpace('naturals', measure)
        assert space.mass(0) == 2.0
        assert space.mass(3) == 1.0
        assert space.mass(4) == 0.0625
        assert space.total_measure() == pytest.approx(2.0 + 1.0 + 1.0 - 0.125)

    def test_domain_mismatch(self):
        """A geometric measure only lives on ℕ."""
        with pytest.raises(ValidationError):
            AtomicMeasureSpace('integers', GeometricMeasure())

    def test_explicit_masses_must_match_labels(self):
        """Positional masses need one entry per atom."""
        with pytest.raises(ValidationError):
            AtomicMeasureSpace.finite([1.0, 2.0], labels=['a', 'b', 'c'])

    def test_zero_mass_rejected(self):
        """Every atom has strictly positive mass."""
        with pytest.raises(ValidationError):
            AtomicMeasureSpace.finite([1.0, 0.0])


class TestSetsAndFunctions:
    """Measurable sets and simple functions."""

    def test_set_measure(self, s3_space):
        """μ(A) sums the atom masses."""
        subset = MeasurableSet.of(s3_space, [0, 1, -1])
        assert measure_of(subset) == 2.0
        assert subset.measure == 2.0

    def test_atoms_outside_domain(self):
        """Negative atoms are not natural numbers."""
        space = AtomicMeasureSpace('naturals', ConstantMeasure())
        with pytest.raises(ValidationError):
            MeasurableSet.of(space, [-1])

    def test_coerce_atom(self, finite_space, s3_space):
        """JSON atom references resolve to labels or integers."""
        assert finite_space.coerce_atom('c') == 'c'
        assert s3_space.coerce_atom('-4') == -4
        with pytest.raises(ValidationError):
            finite_space.coerce_atom('z')
        with pytest.raises(ValidationError):
            s3_space.coerce_atom('x')

    def test_zero_values_dropped(self, s3_space):
        """Simple functions store only their support."""
        g = SimpleFunction({0: 1.0, 1: 0.0, 2: -3.0}, s3_space)
        assert g.values == {0: 1.0, 2: -3.0}
        assert g.support.atoms == frozenset({0, 2})

    def test_non_finite_value(self, s3_space):
        """Simple functions are finite valued."""
        with pytest.raises(ValidationError):
            SimpleFunction({0: math.inf}, s3_space)

    def test_arithmetic(self, s3_space):
        """Sums cancel to the zero function."""
        g = SimpleFunction({0: 1.0, 3: 2.0}, s3_space)
        assert (g - g).is_zero
        assert (2 * g).value(3) == 4.0
        assert (g + SimpleFunction({0: -1.0}, s3_space)).values == {3: 2.0}


class TestDistributionAndRearrangement:
    """Distribution function and g*."""

    def test_distribution_function(self, finite_space):
        """μ_g(λ) counts atoms with |g| > λ."""
        g = SimpleFunction({'a': 3.0, 'b': -1.0, 'c': 2.0}, finite_space)
        assert distribution_function(g, 0.0) == 3.5
        assert distribution_function(g, 1.0) == 1.5
        assert distribution_function(g, 3.0) == 0.0

    def test_negative_lambda(self, finite_space):
        """λ must be non-negative."""
        with pytest.raises(DomainError):
            distribution_function(SimpleFunction.zero(finite_space), -1.0)

    def test_rearrangement_steps(self, finite_space):
        """Levels sorted descending with cumulative masses as endpoints."""
        g = SimpleFunction({'a': 3.0, 'b': -1.0, 'c': 2.0, 'd': 1.0}, finite_space)
        profile = rearrangement(g)
        assert profile.values == (3.0, 2.0, 1.0)
        assert profile.endpoints == (1.0, 1.5, 6.5)
        assert profile(0.0) == 3.0
        assert profile(1.0) == 2.0
        assert profile(6.5) == 0.0

    def test_zero_function(self, s3_space):
        """The rearrangement of 0 is empty."""
        assert rearrangement(SimpleFunction.zero(s3_space)).is_empty

    def test_equimeasurable_random(self, s3_space, finite_space):
        """g and g* have the same distribution at every breakpoint, and g* is non-increasing."""
        rng = make_rng()
        for trial in range(500):
            space = s3_space if trial % 2 else finite_space
            g = random_simple_function(space, rng, max_atoms=12, levels=int(rng.integers(1, 6)))
            profile = rearrangement(g)
            assert all(a > b for a, b in zip(profile.values, profile.values[1:]))
            assert all(a < b for a, b in zip(profile.endpoints, profile.endpoints[1:]))
            for level in (0.0, *profile.values):
                assert profile.superlevel_measure(level) == distribution_function(g, level)

    def test_sup_form(self, s3_space):
        """g*(t) = sup{λ : μ_g(λ) > t} on a grid."""
        rng = make_rng(7)
        g = random_simple_function(s3_space, rng, max_atoms=8)
        profile = rearrangement(g)
        levels = np.array(sorted({abs(v) for v in g.values.values()} | {0.0}))
        for t in np.linspace(0.0, profile.length * 1.2, 97):
            above = [lam for lam in levels if distribution_function(g, lam) > t]
            expected = 0.0 if not above else min(
                (lam for lam in levels if lam > max(above)), default=0.0
            )
            assert profile(float(t)) == expected
