"""
Tests for the finite-horizon divergence criteria and the consistency matrix.
"""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from olx.criteria import (
    CRITERION_REGISTRY,
    CriterionStatus,
    CriterionVerdict,
    SetFamily,
    Witness,
    check_family_divergence,
    check_forward_divergence,
    check_lemma_transport,
    check_orbit_pair_criteria,
    check_orbit_ratio,
    check_preimage_divergence,
    check_separated_divergence,
    check_two_sided_divergence,
    consistency_matrix,
    get_criterion,
    level_set_family,
    orbit_index_set,
    target_value,
    transport_constants,
)
from olx.exceptions import PreconditionError, ValidationError
from olx.gauges import ConstantWeight, ExpMinusOneFunction, PowerFunction, PowerLogFunction
from olx.measure import (
    AtomicMeasureSpace,
    ConstantMeasure,
    MeasurableSet,
    SimpleFunction,
    SymmetricGeometricMeasure,
    TabulatedMeasure,
)
from olx.norms import NormContext, indicator_norm
from olx.transformations import FiniteMap, Identity, IntegerShift, NaturalShift, forward_image_set, preimage_set
from olx.utils import make_rng

T = 1e6


@pytest.fixture
def s3_space():
    return AtomicMeasureSpace('integers', SymmetricGeometricMeasure(ratio=0.5))


@pytest.fixture
def s3_ctx(s3_space):
    return NormContext(PowerFunction(p=1), ConstantWeight(), s3_space)


@pytest.fixture
def shift(s3_space):
    return IntegerShift(s3_space)


@pytest.fixture
def a0(s3_space):
    return MeasurableSet.of(s3_space, [0])


@pytest.fixture
def counting():
    space = AtomicMeasureSpace('naturals', ConstantMeasure(c=1.0))
    ctx = NormContext(PowerFunction(p=1), ConstantWeight(), space)
    return ctx, NaturalShift(space), MeasurableSet.of(space, [5])


@pytest.fixture
def collapse():
    space = AtomicMeasureSpace.finite([1.0, 2.0, 3.0], labels=['a', 'b', 'c'])
    ctx = NormContext(PowerFunction(p=2), ConstantWeight(), space)
    tau = FiniteMap(space, {'a': 'c', 'b': 'c', 'c': 'a'})
    return ctx, tau, MeasurableSet.of(space, ['a'])


class TestCriterionVerdict:
    """Verdict invariants and serialization."""

    def test_witnessed_needs_value(self):
        """A witnessed verdict must carry a witness at or above T."""
        with pytest.raises(ValidationError):
            CriterionVerdict('T23c', CriterionStatus.WITNESSED, None, 10, T)
        with pytest.raises(ValidationError):
            CriterionVerdict('T23c', CriterionStatus.WITNESSED, Witness(3, 10.0), 10, T)

    def test_unknown_id(self):
        """Only known criterion ids are accepted."""
        with pytest.raises(ValidationError):
            CriterionVerdict('T99', CriterionStatus.BOUNDED, None, 10, T)

    def test_to_dict(self, s3_ctx, shift, a0):
        """JSON verdicts carry criterion, status and witness."""
        data = check_preimage_divergence(s3_ctx, shift, a0, 40, T).to_dict()
        assert data['criterion'] == 'T23c'
        assert data['status'] == 'WitnessedDivergence'
        assert data['witness'] == {'n': 20, 'value': 1048576.0}


class TestPreimageAndForward:
    """Single-set divergence along preimages and forward images."""

    def test_s3_preimage(self, s3_ctx, shift, a0):
        """s_n = 2^n first reaches 10^6 at n = 20."""
        verdict = check_preimage_divergence(s3_ctx, shift, a0, 40, T)
        assert verdict.status is CriterionStatus.WITNESSED
        assert verdict.witness == Witness(20, 2.0 ** 20)

    def test_s3_forward(self, s3_ctx, shift, a0):
        """μ(τ^n{0}) = 2^{−n} gives the same witness forwards."""
        verdict = check_forward_divergence(s3_ctx, shift, a0, 40, T)
        assert verdict.status is CriterionStatus.WITNESSED
        assert verdict.witness.n == 20

    def test_horizon_monotone(self, s3_ctx, shift, a0):
        """A witness at N stays the same witness at every larger horizon."""
        first = check_preimage_divergence(s3_ctx, shift, a0, 20, T)
        for horizon in (21, 40, 500, 10000):
            assert check_preimage_divergence(s3_ctx, shift, a0, horizon, T).witness == first.witness

    def test_short_horizon(self, s3_ctx, shift, a0):
        """Below the witness index the verdict is bounded."""
        assert check_preimage_divergence(s3_ctx, shift, a0, 19, T).status is CriterionStatus.BOUNDED

    def test_witness_bounds_indicator_norm(self, s3_ctx, shift, a0):
        """s_n ≥ T with a non-empty preimage means ||χ_{τ^{-n}A}|| ≤ 1/T."""
        verdict = check_preimage_divergence(s3_ctx, shift, a0, 40, T)
        image = preimage_set(shift, a0, verdict.witness.n)
        assert indicator_norm(s3_ctx, image) <= 1.0 / T

    def test_identity_bounded(self, s3_ctx, s3_space, a0):
        """The identity keeps the sequence constant."""
        tau = Identity(s3_space)
        assert check_preimage_divergence(s3_ctx, tau, a0, 100, T).status is CriterionStatus.BOUNDED
        assert check_forward_divergence(s3_ctx, tau, a0, 100, T).status is CriterionStatus.BOUNDED

    def test_counting_degenerate(self, counting):
        """τ^{-6}{5} = ∅ on ℕ: divergence only through an empty preimage."""
        ctx, tau, subset = counting
        verdict = check_preimage_divergence(ctx, tau, subset, 10000, T)
        assert verdict.status is CriterionStatus.DEGENERATE
        assert verdict.witness.n == 6
        assert verdict.details['first_null_index'] == 6
        assert not verdict.is_witnessed
        assert verdict.claims_divergence

    def test_forward_needs_injective(self, collapse):
        """Forward images of a non-injective map are refused."""
        ctx, tau, subset = collapse
        with pytest.raises(PreconditionError):
            check_forward_divergence(ctx, tau, subset, 10, T)

    def test_empty_set(self, s3_ctx, shift, s3_space):
        """Criteria need 0 < μ(A)."""
        with pytest.raises(PreconditionError):
            check_preimage_divergence(s3_ctx, shift, MeasurableSet.of(s3_space), 10, T)


class TestTwoSidedAndSeparated:
    """Both directions, and the lim inf separation."""

    def test_s3_two_sided(self, s3_ctx, shift, a0):
        """Both halves witness at n = 20."""
        verdict = check_two_sided_divergence(s3_ctx, shift, a0, 40, T)
        assert verdict.status is CriterionStatus.WITNESSED
        assert verdict.witness.n == 20

    def test_counting_two_sided_degenerate(self, counting):
        """A degenerate half dominates."""
        ctx, tau, subset = counting
        assert check_two_sided_divergence(ctx, tau, subset, 100, T).status is CriterionStatus.DEGENERATE

    def test_identity_two_sided(self, s3_ctx, s3_space, a0):
        """Constant sequences are bounded."""
        verdict = check_two_sided_divergence(s3_ctx, Identity(s3_space), a0, 50, T)
        assert verdict.status is CriterionStatus.BOUNDED

    def test_s3_separated(self, s3_ctx, shift, a0):
        """s_n = 2^n ≥ 1 everywhere and diverges."""
        verdict = check_separated_divergence(s3_ctx, shift, a0, 40, T)
        assert verdict.status is CriterionStatus.POSITIVE_LIMINF
        assert verdict.is_witnessed
        assert verdict.witness.n == 20
        assert verdict.details['min_value'] == 1.0

    def test_identity_separated(self, s3_ctx, s3_space, a0):
        """lim inf > 0 without divergence is bounded."""
        verdict = check_separated_divergence(s3_ctx, Identity(s3_space), a0, 40, T)
        assert verdict.status is CriterionStatus.BOUNDED

    def test_oscillating_measure(self, s3_space):
        """μ(τ^{-n}{0}) alternating between 2^{−n} and 1 diverges with lim inf 1."""
        measure = TabulatedMeasure({-n: 1.0 for n in range(1, 60, 2)}, SymmetricGeometricMeasure(ratio=0.5))
        space = AtomicMeasureSpace('integers', measure)
        ctx = NormContext(PowerFunction(p=1), ConstantWeight(), space)
        tau = IntegerShift(space)
        subset = MeasurableSet.of(space, [0])

        expected = [1.0 if n % 2 else 2.0 ** n for n in range(41)]
        images = [preimage_set(tau, subset, n) for n in range(41)]
        assert [target_value(ctx, s.measure) for s in images] == expected

        verdict = check_separated_divergence(ctx, tau, subset, 40, T)
        assert verdict.status is CriterionStatus.POSITIVE_LIMINF
        assert verdict.witness == Witness(20, 2.0 ** 20)
        assert verdict.details['min_value'] == 1.0

        loose = check_separated_divergence(ctx, tau, subset, 40, T, delta=2.0)
        assert loose.status is CriterionStatus.LIMINF_NOT_SEPARATED

    def test_counting_separated_degenerate(self, counting):
        """The empty preimage is reported, not hidden."""
        ctx, tau, subset = counting
        assert check_separated_divergence(ctx, tau, subset, 100, T).status is CriterionStatus.DEGENERATE


class TestFamilies:
    """Family divergence and the ratio suprema."""

    def test_s3_family(self, s3_ctx, shift, s3_space):
        """A_i = {i}, i = 0..20: every set diverges and the ratio reaches 2^20 at n = i = 20."""
        family = SetFamily(tuple(MeasurableSet.of(s3_space, [i]) for i in range(21)))
        report = check_family_divergence(s3_ctx, shift, family, 100, T)
        assert report.all_witnessed
        assert [v.witness.n for v in report.per_set] == [i + 20 for i in range(21)]
        assert report.ratio.status is CriterionStatus.WITNESSED
        assert report.ratio.witness == Witness(20, 2.0 ** 20)
        assert report.ratio.details['set_index'] == 20
        assert report.ratio.details['orbit_norm'] == pytest.approx(2.0 ** 20)

    def test_small_family_ratio(self, s3_ctx, shift, s3_space):
        """With i = 0..3 the family ratio tops out at 8."""
        family = SetFamily(tuple(MeasurableSet.of(s3_space, [i]) for i in range(4)))
        report = check_family_divergence(s3_ctx, shift, family, 100, T)
        assert report.all_witnessed
        assert report.ratio.status is CriterionStatus.BOUNDED
        assert report.ratio.details['max_ratio'] == 8.0

    def test_subsequence(self, s3_ctx, shift, a0):
        """Divergence is read only along γ."""
        family = SetFamily.geometric([a0], count=8)
        verdict = check_family_divergence(s3_ctx, shift, family, 1000, T).per_set[0]
        assert verdict.witness.n == 32

    def test_identity_family(self, s3_ctx, s3_space, a0):
        """Everything stays bounded under the identity."""
        report = check_family_divergence(s3_ctx, Identity(s3_space), SetFamily((a0,)), 50, T)
        assert not report.all_witnessed
        assert report.ratio.status is CriterionStatus.BOUNDED

    def test_empty_subsequence(self, a0):
        """An empty γ is rejected."""
        with pytest.raises(PreconditionError):
            SetFamily((a0,), subsequence=())

    def test_non_increasing_subsequence(self, a0):
        """γ must be strictly increasing."""
        with pytest.raises(ValidationError):
            SetFamily((a0,), subsequence=(3, 2))

    def test_pair_cap(self, s3_ctx, shift, s3_space):
        """The ratio scan stops at the pair cap."""
        family = SetFamily(tuple(MeasurableSet.of(s3_space, [i]) for i in range(21)))
        report = check_family_divergence(s3_ctx, shift, family, 100, T, pair_cap=50)
        assert report.ratio.status is CriterionStatus.BOUNDED
        assert report.ratio.details['truncated']

    def test_level_set_family(self, s3_space):
        """A_i = {3^{i−1} ≤ |g| < 3^i} for the occupied levels."""
        g = SimpleFunction({0: 1.0, 1: 2.0, 2: 5.0, 3: -10.0, 4: 0.5}, s3_space)
        family = level_set_family(g)
        assert [s.atoms for s in family.sets] == [
            frozenset({4}), frozenset({0, 1}), frozenset({2}), frozenset({3}),
        ]
        with pytest.raises(PreconditionError):
            level_set_family(SimpleFunction.zero(s3_space))


class TestOrbitRatio:
    """Two-sided orbit ratio supremum."""

    def test_s3_pair(self, s3_ctx, shift, a0):
        """Smallest gap with ratio ≥ 10^6 is d = 20, first at p = 0."""
        verdict = check_orbit_ratio(s3_ctx, shift, a0, 25, T)
        assert verdict.status is CriterionStatus.WITNESSED
        assert verdict.witness == Witness(20, 2.0 ** 20)
        assert (verdict.details['p'], verdict.details['q']) == (0, 20)

    def test_window_zero(self, s3_ctx, shift, a0):
        """Q = 0 leaves no pairs."""
        verdict = check_orbit_ratio(s3_ctx, shift, a0, 0, T)
        assert verdict.status is CriterionStatus.BOUNDED
        assert verdict.details['pairs'] == 0

    def test_identity(self, s3_ctx, s3_space, a0):
        """All ratios are 1 under the identity."""
        assert check_orbit_ratio(s3_ctx, Identity(s3_space), a0, 25, T).status is CriterionStatus.BOUNDED

    def test_needs_injective(self, collapse):
        """The orbit ratio needs an injective map."""
        ctx, tau, subset = collapse
        with pytest.raises(PreconditionError):
            check_orbit_ratio(ctx, tau, subset, 5, T)

    def test_index_set(self, counting):
        """Empty preimages drop out of the index set."""
        ctx, tau, subset = counting
        assert sorted(orbit_index_set(tau, subset, 8)) == list(range(-5, 9))

    def test_pair_criteria(self, s3_ctx, shift, a0):
        """T22 reports the preimage divergence and the ratio together."""
        ids = [v.criterion_id for v in check_orbit_pair_criteria(s3_ctx, shift, a0, 40, 25, T)]
        assert ids == ['T22i', 'T22ii']

    def test_ratios_are_family_ratios(self, s3_ctx, shift, a0):
        """With A_q = τ^q(A), every orbit pair ratio is a family ratio."""
        window = 5
        values = {q: target_value(s3_ctx, forward_image_set(shift, a0, q).measure) for q in range(-window, window + 1)}
        pair_ratios = {values[q] / values[p] for p in values for q in values if p < q}

        family_ratios = set()
        for q in range(-window, window + 1):
            head = forward_image_set(shift, a0, q)
            for n in range(2 * window + 1):
                tail = preimage_set(shift, head, n)
                family_ratios.add(target_value(s3_ctx, head.measure) / target_value(s3_ctx, tail.measure))
        assert pair_ratios <= family_ratios


class TestLemmaTransport:
    """Δ2 transport of contraction constants."""

    def test_power_two_example(self):
        """μ(A) = 1, μ(τ^{-1}A) = 4 under s^2: k = 4 and k' = 2."""
        space = AtomicMeasureSpace.finite([1.0, 4.0], labels=['a', 'b'])
        ctx = NormContext(PowerFunction(p=2), ConstantWeight(), space)
        swap = FiniteMap(space, {'a': 'b', 'b': 'a'})
        assert transport_constants(ctx, swap, MeasurableSet.of(space, ['a']), 1) == (4.0, 2.0)

    def test_measure_preserving(self, s3_space, a0):
        """The identity gives k = k' = 1."""
        ctx = NormContext(PowerFunction(p=2), ConstantWeight(), s3_space)
        assert transport_constants(ctx, Identity(s3_space), a0, 3) == (1.0, 1.0)

    @pytest.mark.parametrize('p', [1.0, 1.5, 2.0, 3.0])
    def test_power_exact(self, s3_space, shift, p):
        """For s^p the transported constant is k^{1/p}."""
        ctx = NormContext(PowerFunction(p=p), ConstantWeight(), s3_space)
        report = check_lemma_transport(ctx, shift, trials=200, rng=make_rng())
        assert report.forward_holds and report.converse_holds
        assert report.max_exact_error <= 1e-12

    def test_power_log(self, s3_space, shift):
        """Non-homogeneous Δ2 functions still satisfy both transport bounds."""
        ctx = NormContext(PowerLogFunction(), ConstantWeight(), s3_space)
        report = check_lemma_transport(ctx, shift, trials=100, rng=make_rng(11))
        assert report.forward_holds and report.converse_holds
        assert report.max_exact_error is None

    def test_rejects_non_delta2(self, s3_space, shift):
        """e^s − 1 fails Δ2 and is refused."""
        ctx = NormContext(ExpMinusOneFunction(), ConstantWeight(), s3_space)
        with pytest.raises(PreconditionError):
            check_lemma_transport(ctx, shift, trials=5)


class TestConsistencyMatrix:
    """Cross-validation of the criteria against orbit dynamics."""

    def test_s3_all_agree(self, s3_ctx, shift, a0, s3_space):
        """On S3 every row claims divergence and agrees with the orbit search."""
        blocks = MeasurableSet.of(s3_space, [4, 16, 64, 256])
        matrix = consistency_matrix(s3_ctx, shift, a0, horizon=40, threshold=T, candidate_sets=[blocks])
        assert matrix.consistent
        assert all(row.claims for row in matrix.rows)
        assert matrix.row('c').witness_n == 20
        assert matrix.flags == {
            'finite_total_measure': True,
            'injective': True,
            'delta2': True,
            'any_degenerate': False,
        }

    def test_counting_flags_disagreement(self, counting):
        """(c) is degenerate while no semi-irregular vector exists."""
        ctx, tau, subset = counting
        matrix = consistency_matrix(ctx, tau, subset, horizon=100, threshold=T)
        assert not matrix.consistent
        assert matrix.row('c').status == 'DegenerateNullPreimage'
        assert matrix.row('c').agrees is False
        assert matrix.row('b').claims is False
        assert matrix.flags['any_degenerate']
        assert not matrix.flags['finite_total_measure']

    def test_identity_all_bounded(self, s3_ctx, s3_space, a0):
        """Nothing diverges and nothing rebounds."""
        matrix = consistency_matrix(s3_ctx, Identity(s3_space), a0, horizon=50, threshold=T, orbit_horizon=50)
        assert matrix.consistent
        assert not any(row.claims for row in matrix.rows)

    def test_non_injective_rows(self, collapse):
        """Forward rows are not applicable for a non-injective map."""
        ctx, tau, subset = collapse
        matrix = consistency_matrix(ctx, tau, subset, horizon=20, threshold=T, orbit_horizon=20)
        assert matrix.row('d').status == 'NotApplicable'
        assert matrix.row('d').agrees is None
        assert not matrix.flags['injective']

    def test_frame(self, s3_ctx, shift, a0):
        """One frame row per condition."""
        frame = consistency_matrix(s3_ctx, shift, a0, horizon=40, threshold=T).to_frame()
        assert list(frame['condition']) == ['c', 'd', 'e', 'f', 'b', 'g']


class TestRegistry:
    """Criterion registry."""

    def test_lookup(self):
        """Every --check name resolves."""
        for check_id in ('L1', 'T21', 'T22', 'T23c', 'T23d', 'T23e', 'T23f'):
            assert get_criterion(check_id) is CRITERION_REGISTRY[check_id]

    def test_unknown(self):
        """Unknown checks list the registry."""
        with pytest.raises(ValidationError, match='Available checks'):
            get_criterion('T24')

    def test_evaluate(self, s3_ctx, shift, a0):
        """Criterion objects read horizon and threshold from their config."""
        criterion = get_criterion('T23c')(horizon=40, threshold=T)
        (verdict,) = criterion.evaluate(s3_ctx, shift, a0)
        assert verdict.witness.n == 20
        assert 'n=20' in criterion.interpret(verdict)
