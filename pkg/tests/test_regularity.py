"""
Tests untuk estimasi modulus subregularity dan rumus rate.
"""

import math

import numpy as np
import pytest

from proxpoint.core.exceptions import NotAZeroError, UnsupportedOperatorError
from proxpoint.services.operators import (
    L1Subdifferential,
    LinearOperator,
    NormalConeOperator,
    QuadraticSubdifferential,
    ShiftedOperator,
)
from proxpoint.services.regularity import (
    estimate_kappa,
    estimate_kappa_profile,
    estimate_metric_inequality,
    estimate_subregularity_modulus,
    estimate_subregularity_profile,
    product_residual,
    spectral_modulus,
    theoretical_rate_multi,
    theoretical_rate_single,
)
from proxpoint.services.sets import Ball, Hyperplane

X_AXIS = Hyperplane([0, 1], 0)
Y_AXIS = Hyperplane([1, 0], 0)


class TestSubregularityEstimate:
    """Test estimator modulus berbasis sampling"""

    def test_identity(self):
        """Test A = I -> modulus ~ 1"""
        est = estimate_subregularity_modulus(LinearOperator(np.eye(2)), [0, 0], 1.0, 10000, seed=0)
        assert est.modulus == pytest.approx(1.0, rel=0.05)
        assert est.modulus <= 1.0 + 1e-12

    def test_diag(self):
        """Test A = diag(2,0) -> ~ 0.5, sesuai oracle SVD"""
        T = LinearOperator([[2, 0], [0, 0]])
        est = estimate_subregularity_modulus(T, [0, 0], 1.0, 10000, seed=0)
        oracle = spectral_modulus(T)
        assert oracle == pytest.approx(0.5)
        assert est.modulus <= oracle * (1 + 1e-12)
        assert (oracle - est.modulus) / oracle <= 0.05

    @pytest.mark.parametrize(
        "T",
        [
            LinearOperator([[1, 2], [-2, 3]]),
            LinearOperator([[1, 0, 0], [0, 2, 0], [0, 0, 0]]),
            QuadraticSubdifferential([[4, 0], [0, 1]], [0, 0]),
            ShiftedOperator(LinearOperator([[2, 0], [0, 0]]), [2, 0]),
        ],
        ids=["nonsymmetric", "diag_3d", "quadratic", "shifted"],
    )
    def test_affine_within_5_percent(self, T):
        """Test estimasi affine dalam 5% (dari bawah) terhadap oracle SVD"""
        center = T.zero_set().project(np.zeros(T.dim))
        est = estimate_subregularity_modulus(T, center, 1.0, 10000, seed=1)
        oracle = spectral_modulus(T)
        assert est.modulus <= oracle * (1 + 1e-9)
        assert est.modulus >= 0.95 * oracle

    def test_l1(self):
        """Test L1 w=1 di 1-D, radius 0.1 -> ~ 0.1"""
        est = estimate_subregularity_modulus(L1Subdifferential(1.0, 1), [0.0], 0.1, 10000, seed=0)
        assert est.modulus == pytest.approx(0.1, rel=0.01)

    def test_counts(self):
        """Test samples_used + samples_skipped = total"""
        est = estimate_subregularity_modulus(LinearOperator([[2, 0], [0, 0]]), [0, 0], 1.0, 500, seed=0)
        assert est.samples_used + est.samples_skipped == 500

    def test_normal_cone_skipped(self):
        """Test normal cone: sampel di luar set (d = inf) dihitung skipped"""
        est = estimate_subregularity_modulus(NormalConeOperator(Ball([0, 0], 1)), [0, 0], 3.0, 1000, seed=0)
        assert est.samples_used + est.samples_skipped == 1000
        assert est.samples_skipped > 0
        assert est.modulus == 0.0

    def test_deterministic(self):
        """Test seed sama -> hasil identik"""
        T = LinearOperator([[1, 2], [-2, 3]])
        a = estimate_subregularity_modulus(T, [0, 0], 1.0, 200, seed=9)
        b = estimate_subregularity_modulus(T, [0, 0], 1.0, 200, seed=9)
        assert a.modulus == b.modulus

    def test_center_not_zero(self):
        """Test center bukan zero ditolak"""
        with pytest.raises(NotAZeroError):
            estimate_subregularity_modulus(LinearOperator(np.eye(2)), [1, 0], 1.0, 10, seed=0)

    def test_invalid_sampling(self):
        """Test radius dan n_samples tidak valid ditolak"""
        T = LinearOperator(np.eye(2))
        with pytest.raises(ValueError):
            estimate_subregularity_modulus(T, [0, 0], 0.0, 10, seed=0)
        with pytest.raises(ValueError):
            estimate_subregularity_modulus(T, [0, 0], 1.0, 0, seed=0)

    def test_serializes(self):
        """Test RegularityEstimate ke dict JSON"""
        data = estimate_subregularity_modulus(LinearOperator(np.eye(2)), [0, 0], 1.0, 10, seed=0).to_dict()
        assert set(data) == {"modulus", "center", "radius", "samples_used", "samples_skipped"}


class TestSpectralModulus:
    """Test oracle modulus spektral"""

    def test_examples(self):
        """Test A=I -> 1, diag(2,0) -> 0.5, Q=diag(4,1) -> 1"""
        assert spectral_modulus(LinearOperator(np.eye(3))) == pytest.approx(1.0)
        assert spectral_modulus(LinearOperator([[2, 0], [0, 0]])) == pytest.approx(0.5)
        assert spectral_modulus(QuadraticSubdifferential([[4, 0], [0, 1]], [0, 0])) == pytest.approx(1.0)

    def test_zero_matrix(self):
        """Test A = 0 -> 0 (zero set seluruh ruang)"""
        assert spectral_modulus(LinearOperator(np.zeros((2, 2)))) == 0.0

    def test_unsupported(self):
        """Test varian non-affine ditolak"""
        with pytest.raises(UnsupportedOperatorError):
            spectral_modulus(L1Subdifferential(1.0, 2))


class TestKappa:
    """Test residual mapping produk dan estimasi kappa / beta"""

    def test_product_residual(self):
        """Test sumbu x dan y, x=(3,4) -> 5"""
        assert product_residual([X_AXIS, Y_AXIS], [3, 4]) == pytest.approx(5.0)
        assert product_residual([X_AXIS, Y_AXIS], [0, 0]) == 0.0
        assert product_residual([X_AXIS], [3, 4]) == pytest.approx(4.0)

    def test_orthogonal_lines(self):
        """Test dua garis ortogonal -> kappa ~ 1"""
        est = estimate_kappa([X_AXIS, Y_AXIS], [0, 0], 1.0, 10000, seed=0)
        assert est.modulus == pytest.approx(1.0, rel=0.05)

    def test_identical_lines(self):
        """Test dua garis identik -> kappa ~ 1/sqrt(2)"""
        est = estimate_kappa([X_AXIS, Hyperplane([0, 2], 0)], [0, 0], 1.0, 10000, seed=0)
        assert est.modulus == pytest.approx(1 / math.sqrt(2), rel=0.05)

    @pytest.mark.parametrize("S", [X_AXIS, Ball([0, 0], 1), Hyperplane([1, 1], 0)])
    def test_single_set(self, S):
        """Test m=1 -> kappa ~ 1 dalam 2%"""
        est = estimate_kappa([S], [0, 0], 2.0, 2000, seed=0)
        assert est.modulus == pytest.approx(1.0, rel=0.02)

    def test_beta_between_kappa_bounds(self):
        """Test kappa <= beta <= sqrt(m) kappa pada sampel yang sama"""
        sets = [X_AXIS, Hyperplane([1, -1], 0)]
        kappa = estimate_kappa(sets, [0, 0], 1.0, 2000, seed=3)
        beta = estimate_metric_inequality(sets, [0, 0], 1.0, 2000, seed=3)
        assert kappa.modulus <= beta.modulus * (1 + 1e-12)
        assert beta.modulus <= math.sqrt(2) * kappa.modulus * (1 + 1e-12)

    def test_center_outside_intersection(self):
        """Test center di luar irisan ditolak"""
        with pytest.raises(NotAZeroError):
            estimate_kappa([X_AXIS, Y_AXIS], [1, 0], 1.0, 10, seed=0)

    def test_smaller_radius_not_larger(self):
        """Test estimasi radius kecil <= radius besar untuk operator homogen"""
        T = LinearOperator([[1, 2], [-2, 3]])
        small = estimate_subregularity_modulus(T, [0, 0], 0.5, 2000, seed=4)
        large = estimate_subregularity_modulus(T, [0, 0], 1.0, 2000, seed=4)
        assert small.modulus <= large.modulus * (1 + 1e-12)


class TestRateFormulas:
    """Test rumus rate teoretis"""

    def test_single_examples(self):
        """Test gamma=1, lambda=1 -> 0.5; gamma=2, lambda=1 -> 0.8"""
        assert theoretical_rate_single(1.0, 1.0) == pytest.approx(0.5)
        assert theoretical_rate_single(2.0, 1.0) == pytest.approx(0.8)
        assert theoretical_rate_single(1.0, 1e6) < 1e-11

    def test_single_monotone(self):
        """Test naik dalam gamma, turun dalam lambda"""
        grid = np.linspace(0.1, 5, 30)
        by_gamma = [theoretical_rate_single(g, 1.0) for g in grid]
        by_lambda = [theoretical_rate_single(1.0, lam) for lam in grid]
        assert all(a < b for a, b in zip(by_gamma, by_gamma[1:]))
        assert all(a > b for a, b in zip(by_lambda, by_lambda[1:]))

    def test_single_invalid(self):
        """Test input tidak positif ditolak"""
        with pytest.raises(ValueError):
            theoretical_rate_single(0.0, 1.0)
        with pytest.raises(ValueError):
            theoretical_rate_single(1.0, -1.0)

    def test_multi_examples(self):
        """Test contoh rate multi"""
        r1 = theoretical_rate_multi(1, 1.0, 1.0, 2.0)
        assert r1.rate == pytest.approx(2 * math.sqrt(0.2))
        assert r1.assumption_ok
        r2 = theoretical_rate_multi(2, 2.0, 1.0, 2.0)
        assert r2.rate == pytest.approx(1 - 0.125 + 0.25 * math.sqrt(0.2))
        assert r2.rate == pytest.approx(0.9868, abs=1e-4)
        assert r2.inputs == {"m": 2, "kappa_bar": 2.0, "gamma_bar": 1.0, "lambda": 2.0}

    def test_multi_boundary(self):
        """Test lambda = sqrt(3) gamma -> rate 1, asumsi tidak terpenuhi"""
        report = theoretical_rate_multi(1, 1.0, 1.0, math.sqrt(3))
        assert report.rate == pytest.approx(1.0)
        assert not report.assumption_ok

    def test_multi_below_one_when_admissible(self):
        """Test rate < 1 untuk input acak yang memenuhi asumsi"""
        rng = np.random.default_rng(0)
        for _ in range(500):
            m = int(rng.integers(1, 6))
            gamma = float(rng.uniform(0.1, 3))
            lam = gamma * math.sqrt(3) * float(rng.uniform(1.001, 5))
            kappa = float(rng.uniform(1 / math.sqrt(m), 5))
            report = theoretical_rate_multi(m, kappa, gamma, lam)
            assert report.assumption_ok
            assert report.rate < 1.0

    def test_multi_invalid(self):
        """Test m < 1 atau kappa <= 0 ditolak"""
        with pytest.raises(ValueError):
            theoretical_rate_multi(0, 1.0, 1.0, 2.0)
        with pytest.raises(ValueError):
            theoretical_rate_multi(2, 0.0, 1.0, 2.0)


class TestRadiusProfile:
    """Test profil modulus per radius dari satu stream sampel"""

    LENS = [Ball([0, 0], 1), Ball([1.5, 0], 1)]
    LENS_CORNER = [0.75, math.sqrt(1 - 0.75**2)]

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_kappa_curved_sets_monotone(self, seed):
        """Test irisan dua ball: kappa radius kecil <= radius besar"""
        profile = estimate_kappa_profile(self.LENS, self.LENS_CORNER, [0.2, 0.05, 0.1], 300, seed=seed)
        assert [e.radius for e in profile] == [0.05, 0.1, 0.2]
        moduli = [e.modulus for e in profile]
        assert all(a <= b for a, b in zip(moduli, moduli[1:]))

    def test_kappa_largest_radius_matches_estimate(self):
        """Test entry radius terbesar identik dengan estimate_kappa pada radius itu"""
        profile = estimate_kappa_profile(self.LENS, self.LENS_CORNER, [0.05, 0.2], 300, seed=0)
        single = estimate_kappa(self.LENS, self.LENS_CORNER, 0.2, 300, seed=0)
        assert profile[-1].modulus == single.modulus
        assert profile[-1].samples_used == single.samples_used

    def test_counts(self):
        """Test sampel di luar radius dihitung skipped"""
        profile = estimate_kappa_profile(self.LENS, self.LENS_CORNER, [0.05, 0.2], 300, seed=0)
        for e in profile:
            assert e.samples_used + e.samples_skipped == 300
        assert profile[0].samples_used <= profile[1].samples_used

    def test_subregularity_profile(self):
        """Test profil gamma shifted quadratic monoton dalam radius"""
        T = ShiftedOperator(QuadraticSubdifferential([[4, 0], [0, 1]], [0, 0]), [1, 0])
        center = T.zero_set().project(np.zeros(2))
        profile = estimate_subregularity_profile(T, center, [0.25, 0.5, 1.0], 500, seed=2)
        moduli = [e.modulus for e in profile]
        assert all(a <= b for a, b in zip(moduli, moduli[1:]))
        single = estimate_subregularity_modulus(T, center, 1.0, 500, seed=2)
        assert profile[-1].modulus == single.modulus

    def test_invalid_radii(self):
        """Test radii kosong atau tidak positif ditolak"""
        with pytest.raises(ValueError):
            estimate_kappa_profile([X_AXIS, Y_AXIS], [0, 0], [], 10, seed=0)
        with pytest.raises(ValueError):
            estimate_subregularity_profile(LinearOperator(np.eye(2)), [0, 0], [0.5, -1.0], 10, seed=0)
