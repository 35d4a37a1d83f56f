"""Numerical evidence that lambda_l^- increases with l.

Run: python3 demos/04_monotonicity_scan.py
"""

import numpy as np

from paneitz_lab import AnnulusModel, scan_monotonicity

total = 0
for alpha in (0.1, 0.3, 0.5):
    for tau in np.geomspace(0.01, 20, 40):
        rep = scan_monotonicity(AnnulusModel(float(tau), alpha), 30)
        total += len(rep.violations)
        for pair in rep.violations:
            print(f"violation at alpha={alpha}, tau={tau:.4g}: levels {pair}")
print(f"scanned 3 x 40 annuli up to l=30: {total} violations")

rep = scan_monotonicity(AnnulusModel(1.0, 0.5), 6)
print("tau=1, alpha=1/2:", [f"{v:.3f}" for _, v in rep.values], " lambda_0^+ =", f"{rep.zero_mode:.3f}")
