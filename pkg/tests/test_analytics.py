"""Closed-form quantities and their outcome averages.

The numeric reference values below were frozen from 50-digit numerical
integration of the defining Bloch-sphere averages (mpmath), computed
independently of the closed forms under test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmtradeoff import analytics
from qmtradeoff.analytics import (
    EFF_FIDELITY_AT_ONE,
    EFF_FIDELITY_AT_ZERO,
    INFO_AT_ZERO,
    averaged_quantities,
    efficiency_fidelity,
    efficiency_reversibility,
    fidelity_closed,
    fidelity_of_operator,
    information_gain,
    optimal_fidelity,
    outcome_probability_total,
    reversibility,
    tradeoff_record,
)
from qmtradeoff.errors import DomainError
from qmtradeoff.linalg import Su2Params, su2_matrix
from qmtradeoff.measurement import (
    MeasurementOperator,
    MeasurementSet,
    PureState,
    outcome_probability,
    two_outcome_family,
)

# information gain of a single outcome, frozen from the defining integral
INFO_REFERENCE = {
    0.05: 0.2751042673141615289867,
    0.25: 0.2068759128149828096346,
    0.5: 0.09005771800148928178305,
    0.75: 0.01900243197035187831937,
    0.95: 0.0006316802850312844544434,
    0.999: 2.406897067399138503965e-7,
    0.9999: 2.404732192403420093089e-9,
}

# mean operation fidelity at (lam, beta, gamma), frozen likewise
FIDELITY_REFERENCE = [
    (0.5, 0.0, 0.0, 0.9333333333333333),
    (0.5, 0.7, 1.1, 0.4112419857116757),
    (0.25, math.pi / 4, math.pi / 3, 0.4166666666666667),
    (0.8, 1.2, 0.3, 0.4186956087958388),
    (0.0, 0.4, 0.9, 0.4621329842178188),
]


class TestInformationGain:
    def test_frozen_reference_values(self):
        for lam, ref in INFO_REFERENCE.items():
            assert information_gain(lam) == pytest.approx(ref, abs=1e-12)

    def test_series_branch_accuracy(self):
        # 0.99999 is handled by the expansion about lam = 1
        assert information_gain(0.99999) == pytest.approx(
            2.404515779816443651014e-11, rel=1e-9
        )

    def test_endpoints(self):
        assert information_gain(0.0) == INFO_AT_ZERO
        assert INFO_AT_ZERO == pytest.approx(1.0 - 1.0 / (2.0 * math.log(2.0)), abs=0)
        assert information_gain(1.0) == 0.0

    def test_branches_agree_at_seam(self):
        seam = analytics.INFO_SERIES_SEAM
        for lam in (seam - 1e-9, seam, seam + 1e-9):
            direct = analytics._info_direct(lam)
            series = analytics._info_series(1.0 - lam)
            assert abs(direct - series) < 1e-12

    def test_monotone_decreasing(self):
        grid = np.linspace(0.0, 1.0, 2001)
        vals = [information_gain(x) for x in grid]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_vanishes_continuously_near_one(self):
        for eps in (1e-4, 1e-6, 1e-8):
            assert abs(information_gain(1.0 - eps)) < 10.0 * eps * abs(math.log2(eps))

    def test_domain(self):
        for bad in (-0.1, 1.1, float("nan")):
            with pytest.raises(DomainError):
                information_gain(bad)


class TestFidelity:
    def test_frozen_reference_values(self):
        for lam, beta, gamma, ref in FIDELITY_REFERENCE:
            assert fidelity_closed(lam, beta, gamma) == pytest.approx(ref, abs=1e-12)

    def test_optimal_special_points(self):
        assert optimal_fidelity(0.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert optimal_fidelity(0.5) == pytest.approx(14.0 / 15.0, abs=1e-15)
        assert optimal_fidelity(1.0) == pytest.approx(1.0, abs=0)

    def test_attained_at_no_rotation(self):
        for lam in (0.0, 0.3, 0.8, 1.0):
            assert fidelity_closed(lam, 0.0, 0.0) == pytest.approx(
                optimal_fidelity(lam), abs=1e-14
            )

    def test_floor_at_quarter_turn(self):
        for lam in (0.0, 0.3, 0.8, 1.0):
            assert fidelity_closed(lam, 0.5, math.pi / 2) == pytest.approx(
                1.0 / 3.0, abs=1e-14
            )

    def test_operator_form_matches_angles(self):
        # alpha = beta = 0 and gamma < pi/4 keep the construction unitary in
        # canonical column-phase gauge, so the angles survive refactorization.
        u = su2_matrix(Su2Params(alpha=0.0, beta=0.0, gamma=0.6, delta=1.4))
        op = MeasurementOperator(0.7 * u @ np.diag([1.0, 0.4]))
        assert fidelity_of_operator(op) == pytest.approx(
            fidelity_closed(0.4, 0.0, 0.6), abs=1e-12
        )

    def test_operator_form_consistent_with_reported_angles(self):
        from qmtradeoff.linalg import su2_params

        u = su2_matrix(Su2Params(alpha=0.2, beta=-0.9, gamma=0.6, delta=1.4))
        op = MeasurementOperator(0.7 * u @ np.diag([1.0, 0.4]))
        ang = su2_params(op.canonical.u)
        assert ang.gamma == pytest.approx(0.6, abs=1e-12)  # gauge-independent
        assert fidelity_of_operator(op) == pytest.approx(
            fidelity_closed(op.lam, ang.beta, ang.gamma), abs=1e-12
        )

    def test_operator_form_ignores_premeasurement_rotation(self):
        """A unitary applied before the back-action cannot change the
        fidelity of the canonical operator."""
        rng = np.random.default_rng(8)
        u = su2_matrix(Su2Params(alpha=0.1, beta=0.7, gamma=0.5, delta=-0.3))
        base = 0.9 * u @ np.diag([1.0, 0.35])
        ref = fidelity_of_operator(MeasurementOperator(base))
        for _ in range(10):
            w = su2_matrix(Su2Params(*rng.uniform(-math.pi, math.pi, 4)))
            assert fidelity_of_operator(MeasurementOperator(base @ w)) == pytest.approx(
                ref, abs=1e-10
            )

    def test_monotone_optimal(self):
        grid = np.linspace(0.0, 1.0, 2001)
        vals = [optimal_fidelity(x) for x in grid]
        assert all(a < b for a, b in zip(vals, vals[1:]))


class TestReversibility:
    @pytest.mark.parametrize(
        "lam,ref",
        [(0.3, 0.1651376146788991), (0.5, 0.4), (0.8, 0.7804878048780488)],
    )
    def test_reference_values(self, lam, ref):
        assert reversibility(lam) == pytest.approx(ref, abs=1e-15)

    def test_endpoints(self):
        assert reversibility(0.0) == 0.0
        assert reversibility(1.0) == pytest.approx(1.0, abs=0)

    def test_monotone_increasing(self):
        grid = np.linspace(0.0, 1.0, 2001)
        vals = [reversibility(x) for x in grid]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_equals_ratio_to_mean_acceptance(self):
        """R is the squared strength ratio over the sphere-averaged
        acceptance probability."""
        for lam in np.linspace(0.0, 1.0, 101):
            qbar = (1.0 + lam * lam) / 2.0
            assert reversibility(lam) == pytest.approx(lam * lam / qbar, abs=1e-15)


class TestEfficiencies:
    def test_fidelity_efficiency_endpoints(self):
        assert efficiency_fidelity(0.0) == pytest.approx(EFF_FIDELITY_AT_ZERO, abs=0)
        assert EFF_FIDELITY_AT_ZERO == pytest.approx(3.0 * INFO_AT_ZERO, abs=0)
        assert efficiency_fidelity(1.0) == EFF_FIDELITY_AT_ONE
        assert EFF_FIDELITY_AT_ONE == pytest.approx(1.0 / math.log(2.0), abs=0)

    def test_fidelity_efficiency_near_one(self):
        assert efficiency_fidelity(1.0 - 1e-6) == pytest.approx(
            EFF_FIDELITY_AT_ONE, abs=1e-6
        )
        assert efficiency_fidelity(0.999) == pytest.approx(
            EFF_FIDELITY_AT_ONE, abs=1e-3
        )

    def test_fidelity_efficiency_seam(self):
        seam = analytics.EFF_SERIES_SEAM
        below = efficiency_fidelity(seam - 1e-12)
        above = efficiency_fidelity(seam + 1e-12)
        assert abs(below - above) < 1e-10

    def test_reversibility_efficiency_endpoints(self):
        assert efficiency_reversibility(0.0) == INFO_AT_ZERO
        assert efficiency_reversibility(1.0) == 0.0

    def test_monotone(self):
        grid = np.linspace(0.0, 1.0, 2001)
        ef = [efficiency_fidelity(x) for x in grid]
        er = [efficiency_reversibility(x) for x in grid]
        assert all(a < b for a, b in zip(ef, ef[1:]))
        assert all(a > b for a, b in zip(er, er[1:]))

    def test_consistency_with_ratios(self):
        for lam in (0.1, 0.4, 0.7, 0.9):
            info = information_gain(lam)
            assert efficiency_fidelity(lam) == pytest.approx(
                info / (1.0 - optimal_fidelity(lam)), rel=1e-12
            )
            assert efficiency_reversibility(lam) == pytest.approx(
                info / (1.0 - reversibility(lam)), rel=1e-12
            )


class TestRecordsAndTotals:
    def test_tradeoff_record_fields(self):
        rec = tradeoff_record(0.5)
        assert rec.lam == 0.5
        assert rec.info == information_gain(0.5)
        assert rec.fidelity_opt == optimal_fidelity(0.5)
        assert rec.reversibility == reversibility(0.5)
        assert rec.eff_fidelity == efficiency_fidelity(0.5)
        assert rec.eff_reversibility == efficiency_reversibility(0.5)

    def test_outcome_probability_total(self):
        assert outcome_probability_total(1.0, 1.0) == 1.0
        assert outcome_probability_total(1.0, 0.0) == 0.5
        assert outcome_probability_total(0.8, 0.5) == pytest.approx(0.4, abs=1e-15)
        assert outcome_probability_total(0.6, 0.5) == pytest.approx(0.36 * 0.625)

    def test_total_probability_matches_sphere_average(self):
        """kappa^2 qbar really is the sphere-averaged outcome probability."""
        from qmtradeoff.oracle import sample_bloch_angles

        op = MeasurementOperator(0.8 * np.diag([1.0, 0.5]))
        theta, phi = sample_bloch_angles(np.random.default_rng(73), 200_000)
        probs = [
            outcome_probability(op, PureState(theta=t, phi=f))
            for t, f in zip(theta[:20_000], phi[:20_000])
        ]
        mean = float(np.mean(probs))
        se = float(np.std(probs, ddof=1)) / np.sqrt(len(probs))
        assert abs(mean - 0.4) < 4.0 * se


class TestAveragedQuantities:
    def test_projective_pair(self):
        mset = MeasurementSet(operators=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
        avg = averaged_quantities(mset)
        assert avg.info == pytest.approx(INFO_AT_ZERO, abs=1e-12)
        assert avg.fidelity == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert avg.reversibility == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(avg.outcome_probabilities, [0.5, 0.5], atol=1e-14)

    def test_identity_channel(self):
        mset = MeasurementSet(operators=(np.eye(2),))
        avg = averaged_quantities(mset)
        assert avg.info == pytest.approx(0.0, abs=1e-15)
        assert avg.fidelity == pytest.approx(1.0, abs=1e-15)
        assert avg.reversibility == pytest.approx(1.0, abs=1e-15)

    def test_two_outcome_family_interpolates(self):
        mset = two_outcome_family(0.5, 0.9)
        avg = averaged_quantities(mset)
        assert 0.0 < avg.info < INFO_AT_ZERO
        assert 2.0 / 3.0 < avg.fidelity < 1.0
        assert 0.0 < avg.reversibility < 1.0
        assert sum(avg.outcome_probabilities) == pytest.approx(1.0, abs=1e-12)

    def test_reversibility_average_has_closed_total(self):
        """Outcome-weighted reversibility collapses to a sum of squared
        smallest singular values."""
        rng = np.random.default_rng(123)
        for _ in range(10):
            kappa0 = rng.uniform(0.3, 0.95)
            lam0 = rng.uniform(0.05, 0.95)
            mset = two_outcome_family(lam0, kappa0)
            avg = averaged_quantities(mset)
            direct = sum(op.kappa**2 * op.lam**2 for op in mset.operators)
            assert avg.reversibility == pytest.approx(direct, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(
    lam=st.floats(min_value=0.0, max_value=1.0),
    beta=st.floats(min_value=-math.pi, max_value=math.pi),
    gamma=st.floats(min_value=0.0, max_value=math.pi),
)
def test_fidelity_stays_in_band(lam, beta, gamma):
    f = fidelity_closed(lam, beta, gamma)
    assert 1.0 / 3.0 - 1e-12 <= f <= optimal_fidelity(lam) + 1e-12


@settings(max_examples=300, deadline=None)
@given(lam=st.floats(min_value=0.0, max_value=1.0))
def test_scalar_forms_stay_in_range(lam):
    assert 0.0 <= information_gain(lam) <= INFO_AT_ZERO
    assert 2.0 / 3.0 <= optimal_fidelity(lam) <= 1.0
    assert 0.0 <= reversibility(lam) <= 1.0
