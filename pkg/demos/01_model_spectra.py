"""Closed-form spectra on the three model manifolds.

Run: python3 demos/01_model_spectra.py
"""

import math

from paneitz_lab import (
    AnnulusModel,
    BallModel,
    CylinderModel,
    annulus_eigenvalues,
    ball_eigenvalue,
    cylinder_eigenvalue,
    cylinder_static_eigenvalue,
    first_nonzero_eigenvalue,
    multiplicity_s3,
    zero_mode_eigenvalue,
)

print("Cylinder [0, 2 pi) x S^3: the oscillating modes per spherical level")
cyl = CylinderModel(2 * math.pi)
for ell in range(4):
    print(f"  l={ell}  lambda={cylinder_eigenvalue(ell, cyl):10.4f}  multiplicity={2 * multiplicity_s3(ell)}")
print("Modes constant along the circle solve the same problem with lambda = (l(l+2))^2:")
print("  l=1 gives", cylinder_static_eigenvalue(1), "which undercuts l=0 on short cylinders.")
for period in (2.0, 5.0, 2 * math.pi):
    p = first_nonzero_eigenvalue(CylinderModel(period))
    kind = "constant along the circle" if p.profile.frequency == 0 else "oscillating"
    print(f"  period {period:6.3f}: first eigenvalue {p.value:.4f} at l={p.mode.ell} ({kind})")

print("\nUnit ball: the published closed form 4(l+2)")
print("  ", [ball_eigenvalue(l) for l in range(5)])
print("  first nonzero:", first_nonzero_eigenvalue(BallModel()).value, "with multiplicity 4")

print("\nAnnulus of modulus tau=1 with equal boundary weights")
m = AnnulusModel(1.0, 0.5)
print(f"  l=0: lambda = 0 (constants) and lambda_0^+ = {zero_mode_eigenvalue(m):.6f}")
for ell in range(1, 5):
    lo, hi = annulus_eigenvalues(ell, m)
    print(f"  l={ell}: lambda^- = {lo:12.6f}   lambda^+ = {hi:12.6f}")
p = first_nonzero_eigenvalue(m)
print(f"  first nonzero eigenvalue {p.value:.6f} at l={p.mode.ell}, truncated at l<={p.truncated_at}")

print("\nLarge moduli stay finite because the quadratic is stored rescaled:")
print("  l=50, tau=350:", annulus_eigenvalues(50, AnnulusModel(350.0, 0.3)))
