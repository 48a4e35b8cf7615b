#!/usr/bin/env python3
"""Integrate a small linear delay system and watch the error decay.

The benchmark problem `example2` is a 3x3 system y' = -A y + B y(t-1) + f(t)
with a known solution, so we can integrate with several step sizes and
measure the error at the final time directly.
"""

import os

import numpy as np

from imexdde import convergence_study, example2, imex_bdf_coefficients, integrate
from imexdde.csvio import write_csv

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

problem = example2()
bdf2 = imex_bdf_coefficients(2)
bdf3 = imex_bdf_coefficients(3)

print("One trajectory, exported to CSV")
traj = integrate(problem, bdf2, h=0.05, t_end=30.0)
path = os.path.join(OUT, "example2_trajectory.csv")
write_csv(path, ["t"] + [f"y_{i}" for i in range(problem.dim)],
          ([t] + list(y) for t, y in traj),
          metadata={"problem": "example2", "method": bdf2.label, "h": 0.05})
print(f"  wrote {path} ({len(traj)} rows)")
err = np.abs(traj.final_state - problem.exact(traj.final_time))
print(f"  error at t={traj.final_time:g}: {err}")

print("\nError at t=500 under step refinement")
for method in (bdf2, bdf3):
    study = convergence_study(problem, method, [0.05, 0.025, 0.01, 0.005], 500.0)
    print(f"  {method.label}:")
    for row in study.rows:
        print(f"    h={row.h:<8g} max error {np.max(row.errors):.3e}")
    print(f"    observed order: {study.rate:.3f} (design order {method.p})")
