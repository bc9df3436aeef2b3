"""
Subcommand `estimate`: estimasi modulus subregularity per operator dan
kappa untuk koleksi zero set.
"""

import logging
from pathlib import Path

from ..core.exceptions import ConfigError, UnsupportedOperatorError
from ..schemas import ExperimentConfig
from ..services import algorithms, regularity
from ..utils.report_writer import build_report, write_outputs
from .common import EXIT_PASS

logger = logging.getLogger(__name__)


def resolve_center(config: ExperimentConfig):
    """Center dari config, atau common zero terdekat ke x0 (Dykstra)."""
    if config.problem.center is not None:
        return config.problem.center
    return algorithms.find_common_zero(config.operators, config.problem.x0)


def cmd_estimate(config: ExperimentConfig, out_dir: Path) -> int:
    """
    Menghitung estimasi gamma per operator (plus oracle spektral jika ada),
    kappa dan beta untuk irisan zero set.

    Returns:
        Exit status (0)

    Raises:
        ConfigError: Jika blok estimation tidak ada
        NotAZeroError: Jika center bukan zero
    """
    if config.estimation is None:
        raise ConfigError("blok estimation wajib untuk subcommand estimate", path="estimation")
    ops = config.operators
    radius = config.estimation.radius
    n_samples = config.estimation.n_samples
    center = resolve_center(config)

    per_operator = []
    for i, op in enumerate(ops):
        estimate = regularity.estimate_subregularity_modulus(op, center, radius, n_samples, config.seed)
        entry = {"index": i, "type": config.problem.operators[i].type, "estimate": estimate.to_dict()}
        try:
            oracle = regularity.spectral_modulus(op)
            entry["spectral_modulus"] = oracle
            entry["relative_gap"] = (oracle - estimate.modulus) / oracle if oracle > 0 else 0.0
        except UnsupportedOperatorError:
            entry["spectral_modulus"] = None
        per_operator.append(entry)
        logger.info(f"operator {i}: gamma ~ {estimate.modulus:.6g}")

    zero_sets = [op.zero_set() for op in ops]
    kappa = regularity.estimate_kappa(zero_sets, center, radius, n_samples, config.seed)
    beta = regularity.estimate_metric_inequality(zero_sets, center, radius, n_samples, config.seed)

    results = {
        "center": [float(c) for c in center],
        "operators": per_operator,
        "kappa": kappa.to_dict(),
        "metric_inequality_beta": beta.to_dict(),
    }
    if config.estimation.radii:
        radii = config.estimation.radii
        results["profile"] = {
            "operators": [
                [e.to_dict() for e in regularity.estimate_subregularity_profile(op, center, radii, n_samples, config.seed)]
                for op in ops
            ],
            "kappa": [e.to_dict() for e in regularity.estimate_kappa_profile(zero_sets, center, radii, n_samples, config.seed)],
        }
    write_outputs(out_dir, build_report(config.to_json_dict(), results))

    print(f"✅ Estimasi selesai: kappa ~ {kappa.modulus:.6g}")
    for entry in per_operator:
        print(f"   operator {entry['index']} ({entry['type']}): gamma ~ {entry['estimate']['modulus']}")
    return EXIT_PASS
