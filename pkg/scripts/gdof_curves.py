#!/usr/bin/env python3
"""Normalized gDoF curves for the broadcast, interference and CMS networks."""

import sys
from pathlib import Path

from cifc.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/gdof_curves.csv"
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    sys.exit(main(["gdof", "--k-list", "2,3,4", "--models", "CMS,BC,IFC",
                   "--alpha-max", "3", "--step", "1/12", "--out", out]))
