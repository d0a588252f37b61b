"""Certify that omega_{n,1} has only real zeros for the four parameter sets
of the classic zero plots, and dump CSV files ready for plotting.

Usage: ``python3 demos/03_zeros.py [outdir]``
"""

import csv
import sys
import time
from fractions import Fraction as F
from pathlib import Path

from chainpoly import DiagChainFamily, JordanChainFamily
from chainpoly.properties import ZEROS_CSV_COLUMNS, zeros_csv_rows, zeros_report

outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else None

cases = [
    (JordanChainFamily, 6, F(2), F(10)),
    (JordanChainFamily, 50, F(1, 100), F(1, 100)),
    (DiagChainFamily, 8, F(2), F(10)),
    (DiagChainFamily, 20, F(1, 1000), F(1, 1000)),
]

for cls, n, s1, alpha in cases:
    fam = cls(2, alpha, (s1,))
    t0 = time.perf_counter()
    rep = zeros_report(fam, n)
    dt = time.perf_counter() - t0
    print(f"{fam.case:6s} n={n:2d}: {rep.real_root_count}/{rep.degree} real, {dt:.2f}s")
    print("   smallest:", [round(x, 6) for x in rep.refined_roots[:3]],
          " largest:", round(rep.refined_roots[-1], 6))
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
        with open(outdir / f"zeros_{fam.case}_{n}.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=ZEROS_CSV_COLUMNS)
            w.writeheader()
            w.writerows(zeros_csv_rows(fam, n, rep))
