"""
Report Writer Utility - helper untuk menulis trace.csv dan report.json

Semua file ditulis sekali, setelah komputasi selesai, dari satu writer.
"""

import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from proxpoint import __version__

logger = logging.getLogger(__name__)

TRACE_FILE = "trace.csv"
REPORT_FILE = "report.json"


def _sanitize(value: Any) -> Any:
    """Mengganti NaN/Inf dengan None dan numpy scalar dengan float agar JSON valid."""
    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if hasattr(value, "tolist"):
        return _sanitize(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def build_report(
    config: Dict[str, Any],
    results: Dict[str, Any],
    assertions: Optional[List[Dict[str, Any]]] = None,
    timestamp: Optional[str] = None,
) -> Dict[str, Any]:
    """
    Menyusun isi report.json.

    Args:
        config: config efektif (sudah termasuk default)
        results: hasil command
        assertions: daftar asersi (kosong untuk run / estimate)
        timestamp: ISO timestamp; default waktu sekarang (UTC)

    Returns:
        Dictionary dengan key config, results, assertions, version, timestamp
    """
    return {
        "config": config,
        "results": results,
        "assertions": assertions or [],
        "version": __version__,
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(),
    }


def dumps_report(report: Dict[str, Any]) -> str:
    """JSON deterministik (key terurut) sehingga dua report hanya beda di timestamp."""
    return json.dumps(_sanitize(report), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def write_outputs(out_dir: Path, report: Dict[str, Any], trace_csv: Optional[str] = None) -> List[Path]:
    """
    Menulis report.json (dan trace.csv jika ada) ke out_dir.

    Returns:
        List path file yang ditulis
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if trace_csv is not None:
        trace_path = out_dir / TRACE_FILE
        trace_path.write_text(trace_csv, encoding="utf-8")
        written.append(trace_path)
    report_path = out_dir / REPORT_FILE
    report_path.write_text(dumps_report(report), encoding="utf-8")
    written.append(report_path)
    logger.info(f"Output ditulis ke {out_dir}: {', '.join(p.name for p in written)}")
    return written
