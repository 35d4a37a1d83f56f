"""Moebius calibration energies on the cylinder and the resulting constants.

Run: python3 demos/05_moebius_energy.py
"""

import math

import numpy as np

from paneitz_lab import (
    CylinderModel,
    MoebiusParams,
    annulus_bound_constant,
    ball_bound_constant,
    cylinder_moebius_energy,
    hersch_bound_search,
    moebius_center_of_mass,
    moebius_map_s3,
    sphere_coordinate_energy_sum,
)

y = np.array([0.6, 0.0, 0.0, 0.8])
for delta in (1.0, 0.5, 0.1):
    print(f"delta={delta}: {y} -> {np.round(moebius_map_s3(MoebiusParams(delta), y), 6)}")

m = CylinderModel(1.0)
print("\nEnergy of the four dilated coordinates on [0,1) x S^3")
for delta in (1.0, 0.9, 0.5, 0.2, 0.05, 0.01):
    e = cylinder_moebius_energy(delta, m)
    com = moebius_center_of_mass(delta, m)[3]
    print(f"  delta={delta:5.2f}  energy={e.value:12.4f}  energy*delta/pi={e.value * delta / math.pi:8.4f}"
          f"  centre of mass x4={com:9.4f}")
print(f"  18 pi^2 = {18 * math.pi**2:.4f};  -2 pi^2 = {-2 * math.pi**2:.4f}")

found = hersch_bound_search(0.5, 0.5, m)
print(f"\nC(eps=0.5, delta0=0.5) = {found.value:.6f}, reached at delta={found.delta}")
print(f"sphere S^4:  {sphere_coordinate_energy_sum():.6f} = 64 pi^2")
print(f"ball:        {ball_bound_constant():.6f} = 24 pi^2")
print(f"annulus rho=1/e, equal boundary volumes: {annulus_bound_constant(math.exp(-1), 1.0):.6f}")
