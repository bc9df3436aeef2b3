"""
Helper bersama untuk subcommand: parsing config dan exit status.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from ..core.exceptions import ConfigError, ProxpointError
from ..schemas import ExperimentConfig

logger = logging.getLogger(__name__)

# Exit status
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG_ERROR = 2
EXIT_INTERNAL_ERROR = 3    # exception tak terduga (crash), beda dari verifikasi gagal


def _format_loc(loc) -> str:
    # ("problem", "operators", 0, "linear", "A") -> problem.operators[0].A
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        elif part in ("linear", "normal_cone", "quadratic", "l1", "shifted", "box", "halfspace",
                      "hyperplane", "ball", "affine", "singleton", "full_space"):
            continue  # tag discriminator
        else:
            path += f".{part}" if path else str(part)
    return path


def parse_config(text: str) -> ExperimentConfig:
    """
    Parsing dan validasi penuh dokumen config JSON.

    Langkah:
    1. Decode JSON
    2. Validasi schema (pydantic) + cek dimensi
    3. Build objek domain tiap operator (cek monotonisitas, konsistensi)

    Args:
        text: isi dokumen JSON

    Returns:
        ExperimentConfig dengan operator domain sudah dibangun

    Raises:
        ConfigError: Dengan path ke field yang bermasalah
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"dokumen JSON tidak valid: {e}") from e

    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(first["msg"], path=_format_loc(first["loc"]) or None) from e

    operators = []
    for i, op_schema in enumerate(config.problem.operators):
        try:
            operators.append(op_schema.to_domain())
        except (ProxpointError, ValueError) as e:
            raise ConfigError(str(e), path=f"problem.operators[{i}]") from e
    config._operators = operators
    return config


def load_config(path: Path) -> ExperimentConfig:
    """
    Membaca dan parsing file config.

    Raises:
        ConfigError: Jika file tidak ada atau config tidak valid
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ConfigError(f"file config '{path}' tidak ditemukan") from e
    return parse_config(text)


def apply_overrides(config: ExperimentConfig, seed: Optional[int] = None, iters: Optional[int] = None) -> ExperimentConfig:
    """Override --seed / --iters dari CLI (divalidasi ulang)."""
    update = {}
    if seed is not None:
        if seed < 0:
            raise ConfigError("seed harus >= 0", path="seed")
        update["seed"] = seed
    if iters is not None:
        if iters < 1:
            raise ConfigError("iters harus >= 1", path="max_iters")
        update["max_iters"] = iters
    if not update:
        return config
    return config.model_copy(update=update)
