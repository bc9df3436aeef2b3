"""
Script untuk menjalankan semua contoh config di docs/examples/ sekaligus.

Cara Pakai:
1. Jalankan dari root project: python scripts/run_examples.py
2. Output tiap contoh ditulis ke results/examples/<nama>/<subcommand>/

Setiap contoh punya exit status yang diharapkan; script gagal (exit 1)
jika ada yang tidak sesuai.
"""

import sys
from pathlib import Path

# Root project masuk sys.path agar `proxpoint` bisa di-import
ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from proxpoint.main import main  # noqa: E402

EXAMPLES_DIR = ROOT / "docs" / "examples"

# (file config, subcommand, exit status yang diharapkan)
EXAMPLES = [
    ("proximal_identity.json", "run", 0),
    ("proximal_identity.json", "verify", 0),
    ("diag_estimate.json", "estimate", 0),
    ("diag_estimate.json", "verify", 0),
    ("two_axes_verify.json", "run", 0),
    ("two_axes_verify.json", "estimate", 0),
    ("two_axes_verify.json", "verify", 0),
    ("superlinear_identity.json", "run", 0),
    ("assumption_gate.json", "verify", 2),
]


def run_examples(out_root: Path) -> int:
    """
    Menjalankan semua contoh dan membandingkan exit status.

    Args:
        out_root: folder induk output

    Returns:
        Jumlah contoh yang tidak sesuai harapan
    """
    mismatch_count = 0
    for filename, command, expected in EXAMPLES:
        config_path = EXAMPLES_DIR / filename
        out_dir = out_root / config_path.stem / command
        print(f"\n▶️  {command} {filename}")
        status = main([command, "--config", str(config_path), "--out", str(out_dir)])
        if status == expected:
            print(f"✅ exit {status} (sesuai)")
        else:
            mismatch_count += 1
            print(f"❌ exit {status}, diharapkan {expected}")
    return mismatch_count


if __name__ == "__main__":
    out_root = Path("results/examples")
    if len(sys.argv) > 1:
        out_root = Path(sys.argv[1])

    print("🚀 PROXPOINT - Run Examples")
    print("=" * 60)

    failed = run_examples(out_root)

    print("=" * 60)
    print(f"\n📊 HASIL: {len(EXAMPLES) - failed}/{len(EXAMPLES)} contoh sesuai")
    sys.exit(1 if failed else 0)
