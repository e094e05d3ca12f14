"""Regenerate tests/golden/mini from the mini corpus.

Only run this after checking a changed output by hand: the golden tree is
what the regression tests compare against byte for byte. The run manifest
and timings are left out because they carry environment details.

    python scripts/update_golden.py
"""

import shutil
import tempfile
from pathlib import Path

from unirank.pipeline import load_config, run_all

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden" / "mini"


def main():
    with tempfile.TemporaryDirectory() as tmp:
        run_all(load_config(ROOT / "data" / "mini_corpus" / "config.yaml", output_dir=tmp))
        if GOLDEN.exists():
            shutil.rmtree(GOLDEN)
        shutil.copytree(tmp, GOLDEN, ignore=shutil.ignore_patterns("manifest.json",
                                                                   "timings.json"))
    n = sum(1 for p in GOLDEN.rglob("*") if p.is_file())
    print(f"wrote {n} golden files to {GOLDEN}")


if __name__ == "__main__":
    main()
