"""
Entry point CLI PROXPOINT.

Cara pakai:
    python -m proxpoint.main run --config docs/examples/proximal_identity.json --out results/run
    python -m proxpoint.main estimate --config docs/examples/diag_estimate.json
    python -m proxpoint.main verify --config docs/examples/two_axes_verify.json --seed 7

Exit status: 0 = lolos, 1 = verifikasi gagal, 2 = config error, 3 = error internal.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .commands.common import EXIT_CONFIG_ERROR, EXIT_FAIL, EXIT_INTERNAL_ERROR, apply_overrides, load_config
from .commands.estimate import cmd_estimate
from .commands.run import cmd_run
from .commands.verify import cmd_verify
from .core.config import get_settings
from .core.exceptions import ConfigError, ProxpointError, VerificationError
from .utils.report_writer import build_report, write_outputs

logger = logging.getLogger(__name__)

COMMANDS = {
    "run": cmd_run,
    "estimate": cmd_estimate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxpoint",
        description="Proximal point klasik / acak / barycentric untuk operator monoton maksimal",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "jalankan algoritma, tulis trace.csv + report.json"),
        ("estimate", "estimasi modulus subregularity dan kappa"),
        ("verify", "verifikasi bound rate konvergensi"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, type=Path, help="path file config JSON")
        sub.add_argument("--out", type=Path, default=None, help="folder output (default: Settings.output_dir)")
        sub.add_argument("--seed", type=int, default=None, help="override seed di config")
        sub.add_argument("--iters", type=int, default=None, help="override max_iters di config")
        sub.add_argument("--log-level", default=None, help="level logging (default: Settings.log_level)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parsing argumen, load config, dan jalankan subcommand.

    Returns:
        Exit status
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    out_dir = args.out or Path(settings.output_dir)

    config = None
    try:
        config = apply_overrides(load_config(args.config), seed=args.seed, iters=args.iters)
        return COMMANDS[args.command](config, out_dir)
    except ConfigError as e:
        # Gate asumsi & config invalid: exit 2, bukan kegagalan verifikasi
        print(f"❌ Config error: {e}", file=sys.stderr)
        if config is not None:
            write_outputs(out_dir, build_report(config.to_json_dict(), {"error": str(e), "path": e.path}))
        return EXIT_CONFIG_ERROR
    except VerificationError as e:
        print(f"❌ Verifikasi gagal: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ProxpointError as e:
        # Oracle gagal (irisan kosong, center bukan zero, dst)
        print(f"❌ ERROR: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except Exception as e:
        logger.exception(f"Error tidak terduga: {e}")
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
