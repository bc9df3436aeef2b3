"""
Tests untuk verifikasi empiris bound rate.
"""

import numpy as np
import pytest

from proxpoint.core.exceptions import AssumptionError, ConfigError, VerificationError
from proxpoint.services.algorithms import LambdaSchedule, RunConfig
from proxpoint.services.operators import (
    L1Subdifferential,
    LinearOperator,
    NormalConeOperator,
    QuadraticSubdifferential,
)
from proxpoint.services.regularity import spectral_modulus
from proxpoint.services.sets import Ball, Box, Halfspace, Hyperplane
from proxpoint.services.verification import (
    check_assumption,
    compare_barycentric,
    verify_firmly_nonexpansive,
    verify_rate_multi,
    verify_rate_single,
)


def two_axes():
    return [NormalConeOperator(Hyperplane([0, 1], 0)), NormalConeOperator(Hyperplane([1, 0], 0))]


def multi_problems():
    """Problem multi-operator bawaan beserta titik awalnya."""
    return [
        (two_axes(), [1.0, 1.0]),
        ([NormalConeOperator(Halfspace([1, 0], 1)), NormalConeOperator(Ball([0, 0], 2))], [3.0, 0.0]),
        ([LinearOperator(np.diag([1.0, 0, 0])), LinearOperator(np.diag([0, 1.0, 0]))], [1.0, 1.0, 1.0]),
    ]


MULTI_IDS = ["two_axes", "halfspace_ball", "linear_3d"]


def constant(lam, **kwargs):
    return RunConfig(LambdaSchedule.constant(lam), **kwargs)


class TestAssumptionGate:
    """Test gate lambda^2 > 3 gamma_bar^2"""

    def test_violated(self):
        """Test lambda=1, gamma_bar=1 -> AssumptionError (turunan ConfigError)"""
        with pytest.raises(AssumptionError) as exc_info:
            check_assumption(1.0, 1.0)
        assert "assumption λ² > 3γ̄²" in str(exc_info.value)
        assert isinstance(exc_info.value, ConfigError)

    def test_satisfied(self):
        """Test lambda=2, gamma_bar=1 lolos"""
        check_assumption(1.0, 2.0)

    def test_multi_refuses_to_run(self):
        """Test verify_rate_multi dengan asumsi dilanggar tidak menjalankan trial"""
        with pytest.raises(AssumptionError):
            verify_rate_multi(two_axes(), [1, 1], constant(1.0), kappa_bar=1.05, gamma_bar=1.0, n_trials=100)


class TestRateSingle:
    """Test verifikasi bound proximal point klasik"""

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("A", [np.eye(2), np.diag([2.0, 0.0])], ids=["identity", "diag_2_0"])
    def test_linear_pass(self, A, lam):
        """Test Linear(I) dan Linear(diag(2,0)) lolos dengan gamma_bar = 1.01 * modulus spektral"""
        T = LinearOperator(A)
        gamma_bar = 1.01 * spectral_modulus(T)
        report = verify_rate_single(T, [1.0, 1.0], constant(lam), gamma_bar)
        assert report.passed
        assert report.table
        assert all(row["margin"] >= -1e-9 for row in report.table)

    def test_identity_values(self):
        """Test Linear(I), lambda=1: rasio 0.25 vs bound ~ 0.5050, >= 30 iterasi"""
        report = verify_rate_single(LinearOperator(np.eye(2)), [1.0, 0.0], constant(1.0), 1.01)
        assert report.summary["bound"] == pytest.approx(1.0201 / 2.0201)
        assert len(report.table) >= 30
        for row in report.table:
            assert row["ratio_sq"] == pytest.approx(0.25)

    def test_diag_values(self):
        """Test diag(2,0), lambda=1: rasio ~ 0.111 vs bound ~ 0.203"""
        report = verify_rate_single(LinearOperator([[2, 0], [0, 0]]), [1.0, 1.0], constant(1.0), 0.505)
        assert report.table[0]["ratio_sq"] == pytest.approx(1 / 9)
        assert report.summary["bound"] == pytest.approx(0.255025 / 1.255025)

    def test_normal_cone_trivial(self):
        """Test normal cone lolos (dist 0 di k=1)"""
        report = verify_rate_single(NormalConeOperator(Box([0, 0], [1, 1])), [3, 3], constant(1.0), 1.0)
        assert report.passed
        assert report.summary["iterations"] == 1

    def test_violation_surfaces_iteration(self):
        """Test gamma_bar terlalu kecil -> VerificationError dengan indeks iterasi"""
        with pytest.raises(VerificationError) as exc_info:
            verify_rate_single(LinearOperator(np.eye(2)), [1.0, 0.0], constant(1.0), 0.1)
        assert exc_info.value.index == 0

    def test_non_strict_report(self):
        """Test strict=False mengembalikan report gagal tanpa exception"""
        report = verify_rate_single(LinearOperator(np.eye(2)), [1.0, 0.0], constant(1.0), 0.1, strict=False)
        assert not report.passed
        assert report.failures()[0].k == 0

    def test_geometric_rejected(self):
        """Test verifikasi membutuhkan schedule constant"""
        cfg = RunConfig(LambdaSchedule.geometric(1.0, 2.0))
        with pytest.raises(ConfigError):
            verify_rate_single(LinearOperator(np.eye(2)), [1.0, 0.0], cfg, 1.01)


class TestRateMulti:
    """Test verifikasi rate ekspektasi multi-operator"""

    def test_two_axes_pass(self):
        """Test dua sumbu, lambda=2, gamma_bar=1, kappa_bar=1.05, 1000 trial -> lolos"""
        report = verify_rate_multi(two_axes(), [1, 1], constant(2.0, seed=7), kappa_bar=1.05, gamma_bar=1.0, n_trials=1000)
        assert report.passed
        assert report.table[0]["mean_ratio_sq"] == pytest.approx(0.5)
        assert report.summary["rate"] == pytest.approx(1 - 1 / (2 * 1.05**2) + 2 / (2 * 1.05**2) * np.sqrt(0.2))
        names = {a.name for a in report.assertions}
        assert {"expected_ratio_bound", "trial_monotone", "trials_converge", "branch_decrease"} <= names

    def test_sparse_steps_skipped(self):
        """Test k dengan trial terdefinisi terlalu sedikit dicatat skipped, bukan dinilai"""
        report = verify_rate_multi(two_axes(), [1, 1], constant(2.0, seed=7), kappa_bar=1.05, gamma_bar=1.0, n_trials=200)
        evaluated = {a.k for a in report.assertions if a.name == "expected_ratio_bound"}
        for row in report.table:
            if row.get("skipped"):
                assert row["n"] < 30
                assert row["k"] not in evaluated

    def test_single_operator_reduction(self):
        """Test m=1: semua trial identik, lolos dengan bound 1 - 1/k^2 + 2 sqrt(rate)/k^2"""
        report = verify_rate_multi(
            [LinearOperator(np.eye(2))], [1, -1], constant(2.0), kappa_bar=1.0, gamma_bar=1.01, n_trials=100
        )
        assert report.passed
        assert report.table[0]["std"] == 0.0
        assert report.table[0]["mean_ratio_sq"] == pytest.approx(1 / 9)

    def test_too_few_trials(self):
        """Test n_trials < 100 ditolak"""
        with pytest.raises(ConfigError):
            verify_rate_multi(two_axes(), [1, 1], constant(2.0), kappa_bar=1.05, gamma_bar=1.0, n_trials=10)


class TestBarycentricComparison:
    """Test perbandingan Jensen satu langkah"""

    def test_two_axes(self):
        """Test dua sumbu: barycentric dist^2 = ||x||^2/4 < rata-rata cabang ||x||^2/2"""
        report = compare_barycentric(two_axes(), [1, 1], constant(2.0), kappa_bar=1.05, gamma_bar=1.0, n_trials=100)
        assert report.passed
        first = report.table[0]
        assert first["barycentric_dist_sq"] == pytest.approx(0.5)
        assert first["branch_mean_dist_sq"] == pytest.approx(1.0)

    def test_single_operator_equality(self):
        """Test m=1: Jensen menjadi kesamaan"""
        report = compare_barycentric(
            [LinearOperator(np.eye(2))], [2, 0], constant(2.0), kappa_bar=1.0, gamma_bar=1.01, n_trials=100
        )
        assert report.passed
        for row in report.table:
            assert row["barycentric_dist_sq"] == pytest.approx(row["branch_mean_dist_sq"], rel=1e-12, abs=1e-300)

    def test_start_at_common_zero(self):
        """Test mulai dari common zero: tidak ada langkah, lolos"""
        report = compare_barycentric(two_axes(), [0, 0], constant(2.0), kappa_bar=1.05, gamma_bar=1.0, n_trials=100)
        assert report.passed
        assert report.summary["iterations"] == 0

    @pytest.mark.parametrize("ops, x0", multi_problems(), ids=MULTI_IDS)
    def test_bundled_problems(self, ops, x0):
        """Test Jensen satu langkah lolos di setiap iterasi pada semua problem multi-operator bawaan"""
        report = compare_barycentric(ops, x0, constant(2.0), kappa_bar=2.0, gamma_bar=1.0, n_trials=100)
        jensen = [a for a in report.assertions if a.name == "jensen_one_step"]
        assert jensen
        assert all(a.passed for a in jensen)
        assert report.passed

    def test_too_few_trials(self):
        """Test n_trials < 100 ditolak seperti pada rate multi"""
        with pytest.raises(ConfigError) as exc_info:
            compare_barycentric(two_axes(), [1, 1], constant(2.0), kappa_bar=1.05, gamma_bar=1.0, n_trials=20)
        assert exc_info.value.path == "verification.n_trials"

    def test_other_problem(self):
        """Test halfspace + ball: Jensen lolos di setiap iterasi"""
        ops = [NormalConeOperator(Hyperplane([1, 1], 0)), NormalConeOperator(Ball([0, 0], 1))]
        report = compare_barycentric(ops, [3, 1], constant(2.0), kappa_bar=2.0, gamma_bar=1.0, n_trials=100)
        assert all(a.passed for a in report.assertions if a.name == "jensen_one_step")


class TestFirmlyNonexpansive:
    """Test verifikasi firm non-expansiveness"""

    def test_families(self):
        """Test semua keluarga operator x lambda {0.1, 1, 10} lolos"""
        ops = [
            LinearOperator([[0, -1], [1, 0]]),
            QuadraticSubdifferential([[2, 1], [1, 2]], [0, 0]),
            L1Subdifferential(0.5, 2),
            NormalConeOperator(Ball([1, 0], 2)),
        ]
        report = verify_firmly_nonexpansive(ops, [0.1, 1.0, 10.0], n_pairs=1000)
        assert report.passed
        assert len(report.assertions) == 12

    def test_report_dict(self):
        """Test report dapat diserialisasi"""
        report = verify_firmly_nonexpansive([LinearOperator(np.eye(2))], [1.0], n_pairs=10)
        data = report.to_dict()
        assert data["name"] == "firm_nonexpansiveness"
        assert data["passed"] is True
        assert data["assertions"][0]["margin"] is not None
