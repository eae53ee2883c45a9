"""Monte Carlo and quadrature oracles against the closed forms.

These are the independent verification routes: nothing here may shortcut
through the formulas being checked, beyond using them as the comparison
target.
"""

import numpy as np
import pytest

from qmtradeoff import analytics
from qmtradeoff.errors import DomainError, IrreversibleError
from qmtradeoff.linalg import Su2Params, su2_matrix, su2_params
from qmtradeoff.measurement import MeasurementOperator
from qmtradeoff.oracle import (
    estimate_fidelity,
    estimate_information,
    estimate_reversibility,
    quadrature_fidelity,
    quadrature_information,
    quadrature_reversibility,
    sample_bloch_angles,
    sample_bloch_uniform,
)


def diag_op(lam, kappa=1.0):
    return MeasurementOperator(kappa * np.diag([1.0, lam]))


class TestSampler:
    def test_cos_theta_uniform(self):
        rng = np.random.default_rng(314)
        n = 200_000
        theta, phi = sample_bloch_angles(rng, n)
        u = np.cos(theta)
        # mean of U(-1, 1) has sd 1/sqrt(3n)
        assert abs(u.mean()) < 3.0 / np.sqrt(3.0 * n)
        assert abs(phi.mean() - np.pi) < 3.0 * np.pi / np.sqrt(3.0 * n)
        assert u.min() >= -1.0 and u.max() <= 1.0

    def test_octant_counts(self):
        """Each z-hemisphere and each phi quadrant should get its share."""
        rng = np.random.default_rng(315)
        n = 80_000
        theta, phi = sample_bloch_angles(rng, n)
        north = np.count_nonzero(np.cos(theta) > 0)
        assert abs(north - n / 2) < 3.0 * np.sqrt(n * 0.25)
        for k in range(4):
            in_quadrant = np.count_nonzero(
                (phi >= k * np.pi / 2) & (phi < (k + 1) * np.pi / 2)
            )
            assert abs(in_quadrant - n / 4) < 3.0 * np.sqrt(n * 0.25 * 0.75)

    def test_half_angle_weight(self):
        """cos^2(theta/2) = (1 + cos theta)/2 averages to 1/2 under the
        uniform sphere measure; its sd is 1/sqrt(12)."""
        rng = np.random.default_rng(317)
        n = 200_000
        theta, _ = sample_bloch_angles(rng, n)
        mean = float(np.mean(np.cos(theta / 2.0) ** 2))
        assert abs(mean - 0.5) < 3.0 / np.sqrt(12.0 * n)

    def test_single_state_helper(self):
        state = sample_bloch_uniform(np.random.default_rng(316))
        assert 0.0 <= state.theta <= np.pi
        assert 0.0 <= state.phi < 2.0 * np.pi

    def test_sample_count_validated(self):
        with pytest.raises(DomainError):
            sample_bloch_angles(np.random.default_rng(1), 0)
        with pytest.raises(DomainError):
            estimate_information(diag_op(0.5), samples=1, rng=np.random.default_rng(1))


class TestIdentityOperator:
    """kappa = lam = 1 leaves every state alone; all estimators must be
    exact with zero spread, up to floating-point rounding."""

    def test_monte_carlo_degenerates_cleanly(self):
        op = diag_op(1.0)
        rng = np.random.default_rng(0)
        info = estimate_information(op, samples=1000, rng=rng)
        assert info.value == pytest.approx(0.0, abs=1e-14)
        assert info.std_error == pytest.approx(0.0, abs=1e-15)
        fid = estimate_fidelity(op, samples=1000, rng=rng)
        assert fid.value == pytest.approx(1.0, abs=1e-15)
        assert fid.std_error == pytest.approx(0.0, abs=1e-15)
        rev = estimate_reversibility(op, samples=1000, rng=rng)
        assert rev.value == pytest.approx(1.0, abs=1e-15)
        assert rev.std_error == pytest.approx(0.0, abs=1e-15)

    def test_quadrature_exact(self):
        op = diag_op(1.0)
        assert quadrature_information(op).value == pytest.approx(0.0, abs=1e-14)
        assert quadrature_fidelity(op).value == pytest.approx(1.0, abs=1e-14)
        assert quadrature_reversibility(op).value == pytest.approx(1.0, abs=1e-14)


class TestMonteCarloAgreement:
    SAMPLES = 200_000

    @pytest.mark.parametrize("lam", [0.05, 0.5, 0.9])
    def test_information(self, lam):
        op = diag_op(lam)
        est = estimate_information(op, samples=self.SAMPLES, rng=np.random.default_rng(101))
        assert est.std_error > 0.0
        assert abs(est.value - analytics.information_gain(lam)) < 4.0 * est.std_error

    @pytest.mark.parametrize("lam", [0.05, 0.5, 0.9])
    def test_fidelity(self, lam):
        op = diag_op(lam)
        est = estimate_fidelity(op, samples=self.SAMPLES, rng=np.random.default_rng(102))
        ref = analytics.fidelity_of_operator(op)
        assert abs(est.value - ref) < 4.0 * est.std_error

    @pytest.mark.parametrize("lam", [0.05, 0.5, 0.9])
    def test_reversibility(self, lam):
        op = diag_op(lam)
        est = estimate_reversibility(op, samples=self.SAMPLES, rng=np.random.default_rng(103))
        assert abs(est.value - analytics.reversibility(lam)) < 4.0 * est.std_error

    def test_overall_scale_drops_out(self):
        """A weaker operator with the same strength ratio must estimate the
        same quantities (only acceptance odds change, and those normalize
        away)."""
        full = estimate_information(
            diag_op(0.5), samples=50_000, rng=np.random.default_rng(104)
        )
        weak = estimate_information(
            diag_op(0.5, kappa=0.3), samples=50_000, rng=np.random.default_rng(104)
        )
        assert weak.value == pytest.approx(full.value, abs=1e-12)

    def test_jackknife_tracks_delta_method(self):
        est = estimate_information(
            diag_op(0.4), samples=100_000, rng=np.random.default_rng(105)
        )
        assert est.std_error_jackknife is not None
        ratio = est.std_error_jackknife / est.std_error
        assert 0.8 < ratio < 1.25

    def test_deterministic_given_seed(self):
        a = estimate_fidelity(diag_op(0.6), samples=10_000, rng=np.random.default_rng(9))
        b = estimate_fidelity(diag_op(0.6), samples=10_000, rng=np.random.default_rng(9))
        assert a == b

    def test_metadata(self):
        est = estimate_reversibility(
            diag_op(0.5), samples=5_000, rng=np.random.default_rng(10)
        )
        assert est.samples == 5_000
        assert est.method == "monte-carlo"

    def test_left_rotation_drops_out_of_information(self):
        """Rotating the outputs cannot change what was learned."""
        rng = np.random.default_rng(107)
        w = su2_matrix(Su2Params(*rng.uniform(-np.pi, np.pi, 4)))
        plain = estimate_information(
            diag_op(0.5), samples=self.SAMPLES, rng=np.random.default_rng(108)
        )
        rotated = estimate_information(
            MeasurementOperator(w @ np.diag([1.0, 0.5])),
            samples=self.SAMPLES,
            rng=np.random.default_rng(109),
        )
        band = 4.0 * np.hypot(plain.std_error, rotated.std_error)
        assert abs(plain.value - rotated.value) < band

    def test_left_rotation_drops_out_of_reversibility(self):
        rng = np.random.default_rng(110)
        w = su2_matrix(Su2Params(*rng.uniform(-np.pi, np.pi, 4)))
        est = estimate_reversibility(
            MeasurementOperator(w @ np.diag([1.0, 0.9])),
            samples=self.SAMPLES,
            rng=np.random.default_rng(111),
        )
        assert abs(est.value - 1.62 / 1.81) < 4.0 * est.std_error

    def test_spin_flip_hits_fidelity_floor(self):
        """With the output flipped (gamma = pi/2) the mean fidelity drops
        to the random-guess value 1/3 regardless of strength."""
        x = np.array([[0.0, 1.0], [1.0, 0.0]])
        op = MeasurementOperator(x @ np.diag([1.0, 0.5]))
        est = estimate_fidelity(op, samples=self.SAMPLES, rng=np.random.default_rng(112))
        assert abs(est.value - 1.0 / 3.0) < 4.0 * est.std_error

    def test_singular_operator_rejected(self):
        with pytest.raises(IrreversibleError):
            estimate_reversibility(
                diag_op(0.0), samples=1000, rng=np.random.default_rng(8)
            )


class TestQuadratureAgreement:
    @pytest.mark.parametrize("lam", [0.05, 0.25, 0.5, 0.75, 0.95])
    def test_information(self, lam):
        err = abs(quadrature_information(diag_op(lam)).value - analytics.information_gain(lam))
        assert err < 1e-10

    @pytest.mark.parametrize("lam", [0.05, 0.5, 0.95])
    def test_fidelity(self, lam):
        op = diag_op(lam)
        err = abs(quadrature_fidelity(op).value - analytics.fidelity_of_operator(op))
        assert err < 1e-10

    @pytest.mark.parametrize("lam", [0.05, 0.5, 0.95])
    def test_reversibility(self, lam):
        err = abs(quadrature_reversibility(diag_op(lam)).value - analytics.reversibility(lam))
        assert err < 1e-10

    def test_node_count_convergence(self):
        """Errors should fall geometrically as the rule is refined; the
        hardest case is small lam, where the integrand's log has the most
        curvature."""
        op = diag_op(0.05)
        ref = analytics.information_gain(0.05)
        errs = [abs(quadrature_information(op, nodes=n).value - ref) for n in (16, 32, 64)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[1] < errs[0] / 50.0
        assert errs[2] < 1e-10

    def test_rotations_do_not_move_quadrature(self):
        from qmtradeoff.linalg import Su2Params, su2_matrix

        rng = np.random.default_rng(106)
        base = 0.8 * np.diag([1.0, 0.45])
        ref_i = analytics.information_gain(0.45)
        ref_r = analytics.reversibility(0.45)
        for _ in range(5):
            w = su2_matrix(Su2Params(*rng.uniform(-np.pi, np.pi, 4)))
            for m in (w @ base, base @ w):
                op = MeasurementOperator(m)
                assert abs(quadrature_information(op).value - ref_i) < 1e-10
                assert abs(quadrature_reversibility(op).value - ref_r) < 1e-10

    def test_small_lambda_maps_to_limit(self):
        assert quadrature_information(diag_op(0.0)).value == pytest.approx(
            analytics.INFO_AT_ZERO, abs=1e-14
        )

    def test_hadamard_rotation_matches_angle_form(self):
        """Tensor-rule fidelity for a rotated operator against the explicit
        two-angle expression, with the angles read back from the computed
        factorization."""
        h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
        op = MeasurementOperator(h @ np.diag([1.0, 0.5]))
        angles = su2_params(op.canonical.u)
        ref = analytics.fidelity_closed(0.5, angles.beta, angles.gamma)
        assert abs(quadrature_fidelity(op, nodes=64).value - ref) < 1e-8

    def test_singular_operator_rejected(self):
        with pytest.raises(IrreversibleError):
            quadrature_reversibility(diag_op(0.0))

    def test_node_count_validated(self):
        with pytest.raises(DomainError):
            quadrature_information(diag_op(0.5), nodes=4)

    def test_metadata(self):
        est = quadrature_information(diag_op(0.5), nodes=32)
        assert est.method == "quadrature"
        assert est.std_error == 0.0
