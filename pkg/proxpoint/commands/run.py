"""
Subcommand `run`: menjalankan satu algoritma dan menulis trace.csv + report.json.
"""

import logging
from pathlib import Path

from ..core.exceptions import ConfigError
from ..schemas import ExperimentConfig
from ..services import algorithms
from ..utils.report_writer import build_report, write_outputs
from .common import EXIT_PASS

logger = logging.getLogger(__name__)


def execute(config: ExperimentConfig) -> algorithms.Trace:
    """Memilih algoritma sesuai config.algorithm."""
    ops = config.operators
    run_cfg = config.run_config()
    x0 = config.problem.x0

    if config.algorithm == "proximal":
        if len(ops) != 1:
            # proximal klasik untuk m > 1 tidak terdefinisi; pakai randomized/barycentric
            raise ConfigError("algoritma proximal membutuhkan tepat satu operator", path="algorithm")
        return algorithms.run_proximal_point(ops[0], x0, run_cfg)
    if config.algorithm == "randomized":
        return algorithms.run_randomized_proximal(ops, x0, run_cfg)
    return algorithms.run_barycentric_proximal(ops, x0, run_cfg)


def cmd_run(config: ExperimentConfig, out_dir: Path) -> int:
    """
    Menjalankan algoritma lalu menulis output.

    Returns:
        Exit status (0)
    """
    trace = execute(config)
    results = {
        "algorithm": config.algorithm,
        "status": trace.status,
        "iterations": trace.iterations,
        "final_dist": trace.final_dist,
        "final_x": trace.final_x,
    }
    report = build_report(config.to_json_dict(), results)
    write_outputs(out_dir, report, trace_csv=trace.to_csv())

    print(f"✅ {config.algorithm}: {trace.status} setelah {trace.iterations} iterasi (dist akhir {trace.final_dist:.3e})")
    return EXIT_PASS
