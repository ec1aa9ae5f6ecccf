#!/usr/bin/env python3
"""Constant-gap sweeps over SNR/alpha/beta for K in 3..6, written as CSV.

Two files are produced: one with a weak own link (|h_kk| = 0.5 |h_c|, the
relay-only split) and one with a strong own link (|h_kk| = 4 |h_c|).
"""

import sys
from pathlib import Path

from cifc.cli import main

if __name__ == "__main__":
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    outdir.mkdir(parents=True, exist_ok=True)
    common = ["gauss", "gap-sweep",
              "--alpha-list", "0.0,0.1,0.25,0.4",
              "--beta-list", "0.5,0.7,0.9,1.0",
              "--snr-exps", "1,2,3,4,5,6"]
    rc = main(common + ["--hkk-scale", "0.5", "--out", str(outdir / "gap_weak_own_link.csv")])
    rc |= main(common + ["--hkk-scale", "4.0", "--out", str(outdir / "gap_strong_own_link.csv")])
    sys.exit(rc)
