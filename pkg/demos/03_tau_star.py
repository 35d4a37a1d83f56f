"""Where the first annulus eigenvalue switches branch.

F(beta, tau) = lambda_1^- / lambda_0^+ runs from 0 (thin annuli) to infinity
(thick annuli); the first nonzero eigenvalue is lambda_1^- before the crossing
F = 1 and lambda_0^+ after it.

Run: python3 demos/03_tau_star.py
"""

import numpy as np

from paneitz_lab import AnnulusModel, alpha_from_beta, find_tau_star, first_nonzero_eigenvalue, gap_ratio

for beta in (0.05, 0.1, 0.15, 0.2, 0.25):
    ts = find_tau_star(beta)
    print(f"beta={beta:4.2f}  tau*={ts.tau_star:.8f}  crossings={ts.crossing_count}  "
          f"F(1e-3)={gap_ratio(beta, 1e-3):.2e}  F(20)={gap_ratio(beta, 20.0):.2f}")

beta = 0.25
ts = find_tau_star(beta).tau_star
print(f"\nFirst eigenvalue around tau*={ts:.5f} (beta={beta}):")
for tau in np.linspace(0.8 * ts, 1.2 * ts, 5):
    p = first_nonzero_eigenvalue(AnnulusModel(float(tau), alpha_from_beta(beta)))
    print(f"  tau={tau:.4f}: lambda_1={p.value:.6f} from l={p.mode.ell} ({p.branch.value})")
