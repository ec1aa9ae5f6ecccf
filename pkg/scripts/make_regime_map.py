#!/usr/bin/env python3
"""Produce the regime-classification map as CSV (default grid: step 1/24 on [0,3]^2)."""

import sys
from pathlib import Path

from cifc.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/regime_map.csv"
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    sys.exit(main(["regime-map", "--step", "1/24", "--alpha-max", "3",
                   "--beta-max", "3", "--out", out]))
