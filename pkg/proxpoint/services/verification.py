"""
Verifikasi empiris bound rate konvergensi.

- verify_rate_single: rasio kontraksi proximal point klasik vs bound tunggal
- verify_rate_multi: rata-rata rasio antar trial acak vs bound multi
- compare_barycentric: perbandingan Jensen satu langkah barycentric vs
  rata-rata cabang (enumerasi semua cabang, deterministik)

Setiap fungsi mengembalikan VerificationReport. Dengan strict=True
(default) asersi gagal langsung melempar VerificationError.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..core.config import get_settings
from ..core.exceptions import AssumptionError, ConfigError, VerificationError
from .algorithms import (
    RunConfig,
    Trace,
    branch_decrease_gap,
    common_zero_set,
    run_barycentric_proximal,
    run_proximal_point,
    run_randomized_proximal,
)
from .operators import MonotoneOperator, Resolvent, check_firmly_nonexpansive
from .regularity import theoretical_rate_multi, theoretical_rate_single
from .sets import DykstraConfig

logger = logging.getLogger(__name__)

RATE_SLACK = 1e-9
MONOTONE_SLACK = 1e-12
JENSEN_SLACK = 1e-10
FNE_SLACK = 1e-10
# Rasio hanya dinilai jika dist_k di atas ini
MIN_DIST = 1e-12
# Proxy konvergensi hampir pasti
CONVERGED_DIST = 1e-6
# Jumlah trial acak minimum untuk statistik rate multi
MIN_TRIALS = 100


@dataclass
class Assertion:
    name: str
    passed: bool
    k: Optional[int] = None
    value: Optional[float] = None
    bound: Optional[float] = None
    detail: Optional[str] = None

    @property
    def margin(self) -> Optional[float]:
        if self.value is None or self.bound is None:
            return None
        return self.bound - self.value

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "k": self.k,
            "value": self.value,
            "bound": self.bound,
            "margin": self.margin,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    name: str
    assertions: List[Assertion] = field(default_factory=list)
    table: List[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def failures(self) -> List[Assertion]:
        return [a for a in self.assertions if not a.passed]

    def raise_if_failed(self) -> None:
        """
        Raises:
            VerificationError: Untuk asersi gagal pertama, membawa indeks iterasinya
        """
        failed = self.failures()
        if failed:
            first = failed[0]
            where = f" di k={first.k}" if first.k is not None else ""
            raise VerificationError(
                f"{self.name}: asersi '{first.name}' gagal{where} (nilai {first.value}, bound {first.bound})",
                index=first.k,
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "assertions": [a.to_dict() for a in self.assertions],
            "table": self.table,
        }


def _constant_lambda(cfg: RunConfig) -> float:
    if not cfg.schedule.is_constant:
        raise ConfigError("verifikasi rate membutuhkan schedule constant", path="schedule")
    return cfg.schedule.lambda0


def _check_trials(n_trials: int) -> None:
    if n_trials < MIN_TRIALS:
        raise ConfigError(f"n_trials minimal {MIN_TRIALS}, dapat {n_trials}", path="verification.n_trials")


def check_assumption(gamma_bar: float, lam: float) -> None:
    """
    Gate asumsi teorema multi-operator.

    Raises:
        AssumptionError: Jika lambda^2 <= 3 gamma_bar^2
    """
    if not lam**2 > 3.0 * gamma_bar**2:
        raise AssumptionError(
            f"assumption λ² > 3γ̄² violated (λ={lam}, γ̄={gamma_bar}: λ²={lam**2:.6g}, 3γ̄²={3 * gamma_bar**2:.6g})",
            path="verification.gamma_bar",
        )


def _monotone_assertion(trace: Trace, label: str) -> Assertion:
    dists = trace.dists()
    if dists.size < 2:
        return Assertion(name=f"{label}_monotone", passed=True, detail="tidak ada langkah")
    increases = dists[1:] - dists[:-1]
    worst = int(np.argmax(increases))
    return Assertion(
        name=f"{label}_monotone",
        passed=bool(increases[worst] <= MONOTONE_SLACK),
        k=worst,
        value=float(increases[worst]),
        bound=MONOTONE_SLACK,
    )


def verify_rate_single(
    T: MonotoneOperator, x0, cfg: RunConfig, gamma_bar: float, strict: bool = True
) -> VerificationReport:
    """
    Menjalankan proximal point dan mengecek ratio_sq_k <= gamma_bar^2/(lambda^2+gamma_bar^2) + 1e-9
    untuk setiap k dengan dist_k > 1e-12.

    Args:
        T: operator
        x0: titik awal
        cfg: RunConfig dengan schedule constant
        gamma_bar: batas atas modulus (misal 1.01 * spectral_modulus)
        strict: lempar VerificationError jika gagal

    Returns:
        VerificationReport berisi tabel margin per iterasi
    """
    lam = _constant_lambda(cfg)
    bound = theoretical_rate_single(gamma_bar, lam)
    trace = run_proximal_point(T, x0, cfg)

    report = VerificationReport(name="rate_single")
    for r in trace.records:
        if r.ratio_sq is None or r.dist <= MIN_DIST:
            continue
        ok = r.ratio_sq <= bound + RATE_SLACK
        report.table.append({"k": r.k, "ratio_sq": r.ratio_sq, "bound": bound, "margin": bound - r.ratio_sq})
        report.assertions.append(Assertion(name="ratio_bound", passed=ok, k=r.k, value=r.ratio_sq, bound=bound))
    report.assertions.append(_monotone_assertion(trace, "dist"))
    report.summary = {
        "lambda": lam,
        "gamma_bar": gamma_bar,
        "bound": bound,
        "status": trace.status,
        "iterations": trace.iterations,
        "final_dist": trace.final_dist,
    }
    logger.info(f"verify_rate_single: {'PASS' if report.passed else 'FAIL'} ({len(report.table)} rasio dicek)")
    if strict:
        report.raise_if_failed()
    return report


def verify_rate_multi(
    ops: Sequence[MonotoneOperator],
    x0,
    cfg: RunConfig,
    kappa_bar: float,
    gamma_bar: float,
    n_trials: int,
    strict: bool = True,
    dykstra: Optional[DykstraConfig] = None,
) -> VerificationReport:
    """
    Menjalankan n_trials trial proximal point acak (trial t memakai seed turunan (seed, t)).

    Untuk tiap k: mean rasio dist_{k+1}^2 / dist_k^2 antar trial harus
    <= rate + 3 * std / sqrt(n). k dengan trial terdefinisi kurang dari
    min_trials_per_step dicatat sebagai skipped. Setiap trial juga harus
    monoton dalam dist dan turun di bawah 1e-6.

    Raises:
        AssumptionError: Jika lambda^2 <= 3 gamma_bar^2 (tidak ada run)
        ConfigError: Jika n_trials < 100 atau schedule bukan constant
    """
    lam = _constant_lambda(cfg)
    check_assumption(gamma_bar, lam)
    _check_trials(n_trials)
    min_trials = get_settings().min_trials_per_step
    rate = theoretical_rate_multi(len(ops), kappa_bar, gamma_bar, lam).rate

    traces = [run_randomized_proximal(ops, x0, cfg, trial=t, dykstra=dykstra) for t in range(n_trials)]
    report = VerificationReport(name="rate_multi")

    # Statistik per iterasi, agregasi atas himpunan trial tetap (urutan tidak berpengaruh)
    max_len = max(len(t.records) for t in traces)
    for k in range(max_len):
        ratios = [
            t.records[k].ratio_sq
            for t in traces
            if k < len(t.records) and t.records[k].ratio_sq is not None and t.records[k].dist > MIN_DIST
        ]
        if not ratios:
            continue
        n = len(ratios)
        mean = float(np.mean(ratios))
        std = float(np.std(ratios, ddof=1)) if n > 1 else 0.0
        tolerance = 3.0 * std / math.sqrt(n)
        row = {"k": k, "n": n, "mean_ratio_sq": mean, "std": std, "bound": rate + tolerance}
        if n < min_trials:
            row["skipped"] = True
            report.table.append(row)
            continue
        report.table.append(row)
        report.assertions.append(
            Assertion(name="expected_ratio_bound", passed=mean <= rate + tolerance, k=k, value=mean, bound=rate + tolerance)
        )

    # Monotonisitas deterministik per trial
    violations = 0
    worst = -math.inf
    for t in traces:
        increases = np.diff(t.dists())
        if increases.size:
            worst = max(worst, float(increases.max()))
            violations += int(np.count_nonzero(increases > MONOTONE_SLACK))
    report.assertions.append(
        Assertion(
            name="trial_monotone",
            passed=violations == 0,
            value=worst if math.isfinite(worst) else 0.0,
            bound=MONOTONE_SLACK,
            detail=f"{violations} pelanggaran",
        )
    )

    # Proxy konvergensi hampir pasti
    worst_final = max(t.final_dist for t in traces)
    report.assertions.append(
        Assertion(name="trials_converge", passed=worst_final <= CONVERGED_DIST, value=worst_final, bound=CONVERGED_DIST)
    )

    # Ketaksamaan per cabang di sepanjang trial pertama
    common = common_zero_set(ops, dykstra)
    worst_gap = math.inf
    worst_k = None
    for r in traces[0].records:
        if r.dist <= MIN_DIST:
            continue
        gap = min(branch_decrease_gap(ops, r.x, lam, gamma_bar, common))
        if gap < worst_gap:
            worst_gap, worst_k = gap, r.k
    if worst_k is not None:
        report.assertions.append(
            Assertion(name="branch_decrease", passed=worst_gap >= -JENSEN_SLACK, k=worst_k, value=-worst_gap, bound=JENSEN_SLACK)
        )

    report.summary = {
        "m": len(ops),
        "lambda": lam,
        "kappa_bar": kappa_bar,
        "gamma_bar": gamma_bar,
        "rate": rate,
        "n_trials": n_trials,
        "max_iterations": max(t.iterations for t in traces),
    }
    logger.info(f"verify_rate_multi: {'PASS' if report.passed else 'FAIL'} ({n_trials} trial, rate {rate:.6f})")
    if strict:
        report.raise_if_failed()
    return report


def compare_barycentric(
    ops: Sequence[MonotoneOperator],
    x0,
    cfg: RunConfig,
    kappa_bar: float,
    gamma_bar: float,
    n_trials: int,
    strict: bool = True,
    dykstra: Optional[DykstraConfig] = None,
) -> VerificationReport:
    """
    Perbandingan Jensen satu langkah: pada tiap x_k barycentric,
    d(x_{k+1}, C)^2 <= (1/m) sum_i d(J_i x_k, C)^2 + 1e-10 (enumerasi semua cabang).

    Juga mengecek dist barycentric monoton dan rasio per langkah <= rate multi,
    lalu melaporkan rata-rata dist^2 dari n_trials trial acak sebagai pembanding.

    Raises:
        AssumptionError: Jika lambda^2 <= 3 gamma_bar^2
        ConfigError: Jika n_trials < 100 atau schedule bukan constant
    """
    lam = _constant_lambda(cfg)
    check_assumption(gamma_bar, lam)
    _check_trials(n_trials)
    rate = theoretical_rate_multi(len(ops), kappa_bar, gamma_bar, lam).rate
    common = common_zero_set(ops, dykstra)

    bary = run_barycentric_proximal(ops, x0, cfg, dykstra=dykstra)
    traces = [run_randomized_proximal(ops, x0, cfg, trial=t, dykstra=dykstra) for t in range(n_trials)]

    report = VerificationReport(name="barycentric_comparison")
    records = bary.records
    for k in range(len(records) - 1):
        x_k = records[k].x
        next_sq = records[k + 1].dist ** 2
        branch_sq = [common.distance(op.resolvent(lam)(x_k)) ** 2 for op in ops]
        branch_mean = sum(branch_sq) / len(ops)
        randomized = [t.records[k + 1].dist ** 2 if k + 1 < len(t.records) else t.final_dist**2 for t in traces]
        report.table.append(
            {
                "k": k,
                "barycentric_dist_sq": next_sq,
                "branch_mean_dist_sq": branch_mean,
                "randomized_mean_dist_sq": float(np.mean(randomized)),
            }
        )
        report.assertions.append(
            Assertion(name="jensen_one_step", passed=next_sq <= branch_mean + JENSEN_SLACK, k=k, value=next_sq, bound=branch_mean + JENSEN_SLACK)
        )
        ratio = records[k].ratio_sq
        if ratio is not None and records[k].dist > MIN_DIST:
            report.assertions.append(
                Assertion(name="barycentric_rate", passed=ratio <= rate + RATE_SLACK, k=k, value=ratio, bound=rate)
            )
    report.assertions.append(_monotone_assertion(bary, "barycentric"))
    report.summary = {
        "m": len(ops),
        "lambda": lam,
        "rate": rate,
        "n_trials": n_trials,
        "status": bary.status,
        "iterations": bary.iterations,
        "final_dist": bary.final_dist,
    }
    logger.info(f"compare_barycentric: {'PASS' if report.passed else 'FAIL'} ({bary.iterations} iterasi)")
    if strict:
        report.raise_if_failed()
    return report


def verify_firmly_nonexpansive(
    ops: Sequence[MonotoneOperator], lambdas: Sequence[float], n_pairs: int = 1000, seed: int = 0
) -> VerificationReport:
    """
    Sampled firm non-expansiveness untuk setiap (operator, lambda).
    """
    report = VerificationReport(name="firm_nonexpansiveness")
    for i, op in enumerate(ops):
        for lam in lambdas:
            margin = check_firmly_nonexpansive(Resolvent(op, lam), n_pairs=n_pairs, seed=seed)
            report.assertions.append(
                Assertion(
                    name="firmly_nonexpansive",
                    passed=margin >= -FNE_SLACK,
                    value=-margin,
                    bound=FNE_SLACK,
                    detail=f"operator {i}, lambda {lam}",
                )
            )
    if report.passed:
        logger.info(f"firm non-expansiveness lolos untuk {len(ops)} operator x {len(lambdas)} lambda")
    return report
