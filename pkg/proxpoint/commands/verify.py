"""
Subcommand `verify`: verifikasi empiris bound rate.

- 1 operator: rate tunggal
- m >= 2: rate multi (acak) + perbandingan barycentric
Ditambah cek firm non-expansiveness setiap resolvent.
"""

import logging
from pathlib import Path

from ..core.exceptions import ConfigError
from ..schemas import ExperimentConfig
from ..services import verification
from ..utils.report_writer import build_report, write_outputs
from .common import EXIT_FAIL, EXIT_PASS

logger = logging.getLogger(__name__)

# Lambda tambahan untuk cek firm non-expansiveness
FNE_LAMBDAS = (0.1, 1.0, 10.0)


def run_verification(config: ExperimentConfig) -> list:
    """
    Menjalankan semua verifikasi yang relevan.

    Returns:
        List VerificationReport

    Raises:
        ConfigError / AssumptionError: Jika config tidak memenuhi syarat (tidak ada run)
    """
    if config.verification is None:
        raise ConfigError("blok verification wajib untuk subcommand verify", path="verification")
    block = config.verification
    ops = config.operators
    run_cfg = config.run_config()
    x0 = config.problem.x0

    if not run_cfg.schedule.is_constant:
        raise ConfigError("verifikasi rate membutuhkan schedule constant", path="schedule.kind")
    lam = run_cfg.schedule.lambda0

    reports = []
    if len(ops) == 1:
        reports.append(verification.verify_rate_single(ops[0], x0, run_cfg, block.gamma_bar, strict=False))
    else:
        # Gate asumsi dicek sebelum run apa pun
        verification.check_assumption(block.gamma_bar, lam)
        if block.kappa_bar is None:
            raise ConfigError("kappa_bar wajib untuk verifikasi multi-operator", path="verification.kappa_bar")
        reports.append(
            verification.verify_rate_multi(ops, x0, run_cfg, block.kappa_bar, block.gamma_bar, block.n_trials, strict=False)
        )
        reports.append(
            verification.compare_barycentric(ops, x0, run_cfg, block.kappa_bar, block.gamma_bar, block.n_trials, strict=False)
        )
    lambdas = sorted(set(FNE_LAMBDAS) | {lam})
    reports.append(verification.verify_firmly_nonexpansive(ops, lambdas, seed=config.seed))
    return reports


def cmd_verify(config: ExperimentConfig, out_dir: Path) -> int:
    """
    Returns:
        0 jika semua asersi lolos, 1 jika ada yang gagal
    """
    reports = run_verification(config)
    passed = all(r.passed for r in reports)

    assertions = []
    for r in reports:
        for a in r.assertions:
            assertions.append({"check": r.name, **a.to_dict()})
    results = {"passed": passed, "checks": {r.name: r.to_dict() for r in reports}}
    write_outputs(out_dir, build_report(config.to_json_dict(), results, assertions))

    for r in reports:
        icon = "✅" if r.passed else "❌"
        print(f"{icon} {r.name}: {len(r.assertions) - len(r.failures())}/{len(r.assertions)} asersi lolos")
        for failure in r.failures()[:5]:
            print(f"   gagal: {failure.name} k={failure.k} nilai={failure.value} bound={failure.bound}")
    return EXIT_PASS if passed else EXIT_FAIL
