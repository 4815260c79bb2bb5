"""Polar decomposition of Q and the strain-eigenvalue gate.

Run: python demos/03_safety_certificate.py
"""
import numpy as np

from affineteam import (BoundaryPolar, SafetyConfig, apply_transform, check_eigenvalues,
                        jacobian_from_boundary, min_pairwise_distance, polar_decompose)
from affineteam.scenario import bundled_scenario

mission = bundled_scenario("table2").mission()
J, ref = mission.J, mission.ref
cfg = SafetyConfig(lambda_min=0.35)

# Sweep the admissible radial box and see where the gate holds.
grid = np.linspace(J.l_min, J.l_0, 8)
print("lambda2 over (l2 rows, l3 cols); * marks a gate failure")
for l2 in grid:
    cells = []
    for l3 in grid:
        Q = jacobian_from_boundary(J, BoundaryPolar(l2, l3, ref.theta_2_0, ref.theta_3_0))
        dec = polar_decompose(Q)
        cells.append(f"{dec.lambda_2:5.3f}{' ' if check_eigenvalues(dec, cfg) else '*'}")
    print(f"l2={l2:4.2f} " + " ".join(cells))

Q = mission(20.0)
dec = polar_decompose(Q)
print("\nphase 2: psi_r = %.4f  lambda = (%.4f, %.4f)  psi_d = %.4f" % (
    dec.psi_r, dec.lambda_1, dec.lambda_2, dec.psi_d))
print("R @ U reproduces Q:", np.allclose(dec.reconstruct(), Q.as_array(), atol=1e-12))
print("closest pair in phase 2: %.4f m" % min_pairwise_distance(apply_transform(ref, Q)))
