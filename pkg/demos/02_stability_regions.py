#!/usr/bin/env python3
"""Map out scalar stability regions: boundary curves, disk radii, inverse map.

For the scalar test equation y' = -lam (y - mu * ... ) ... in short: fixing
z = -lam*h < 0, the delayed-coupling values mu that keep the recurrence
stable form a region bounded by a closed curve.  This script samples those
curves for plotting, shows the largest safe disk radius as z varies, and
inverts the radius map (that inverse is what step-size bounds are made of).
"""

import os

import numpy as np

from imexdde import (
    boundary_min_distance,
    char_equation_stable,
    disk_radius,
    imex_bdf_coefficients,
    stability_boundary,
    z_for_radius,
)
from imexdde.csvio import write_csv

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

bdf2 = imex_bdf_coefficients(2)

print("Boundary curves for a few z (m = 0), CSV ready for plotting")
for z in (-1.0, -5.0, -50.0):
    curve = stability_boundary(bdf2, z, m=0, n_samples=721)
    path = os.path.join(OUT, f"curve_bdf2_z{abs(z):g}.csv")
    write_csv(path, ["theta", "re_mu", "im_mu"],
              ([th, mu.real, mu.imag] for th, mu in zip(curve.thetas, curve.mu)),
              metadata={"method": "bdf2", "z": z, "m": 0})
    print(f"  z={z:<6g} min |mu| on curve = {curve.min_distance():.6f} -> {path}")

print("\nDelay count m reshapes the curve but not its distance to the origin")
for m in (0, 1, 3, 20):
    curve = stability_boundary(bdf2, -1.0, m=m, n_samples=2048)
    print(f"  m={m:<3d} min |mu| = {curve.min_distance():.9f}")

print("\nGuaranteed disk radius vs z (closed form vs dense search)")
rows = []
for z in -np.geomspace(0.05, 200.0, 12):
    closed = disk_radius(bdf2, z)
    dense = boundary_min_distance(bdf2, z)
    rows.append([z, closed])
    print(f"  z={z:<12.4f} radius {closed:.9f} (dense search {dense:.9f})")
write_csv(os.path.join(OUT, "radius_sweep_bdf2.csv"), ["z", "sigma_z"], rows,
          metadata={"method": "bdf2"})

print("\nRadius limits: order 2 -> 1/3, order 3 -> 1/7 as z -> -inf")
for order in (2, 3):
    print(f"  order {order}: radius(-inf) = {disk_radius(order, float('-inf')):.6f}")

print("\nInverting the radius map (the step-bound workhorse)")
for order, r in ((2, 1.0), (2, 0.45), (2, 0.4), (3, 1.0), (3, 0.3)):
    z = z_for_radius(order, r)
    print(f"  order {order}: radius {r:<5g} first reached at z = {z:.6f} "
          f"(check: radius({z:.4f}) = {disk_radius(order, z):.6f})")

print("\nSpot check with the characteristic-root oracle at z=-5, m=4")
radius = disk_radius(2, -5.0)
inside = 0.95 * radius
outside = 1.6 * radius
print(f"  |mu| = 0.95 * radius stable?  "
      f"{char_equation_stable(2, -5.0, inside, 4)}")
print(f"  |mu| = 1.60 * radius stable?  "
      f"{char_equation_stable(2, -5.0, outside, 4)}")
