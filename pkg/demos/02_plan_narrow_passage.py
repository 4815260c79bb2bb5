"""Plan the contract / translate / expand mission and look at Q(t).

Run: python demos/02_plan_narrow_passage.py [--plot out.png]
"""
import sys

import numpy as np

from affineteam import polar_decompose
from affineteam.scenario import bundled_scenario

scn = bundled_scenario("table2")
mission = scn.mission()

print("   t     l2     l3     q11     q12     q21     q22   lambda1 lambda2")
for t in np.arange(0.0, 35.01, 2.5):
    bp = mission.boundary_at(t)
    Q = mission(t)
    dec = polar_decompose(Q)
    print(f"{t:5.1f} {bp.l_2:6.3f} {bp.l_3:6.3f} " + " ".join(f"{q:7.4f}" for q in Q.as_vector())
          + f"  {dec.lambda_1:6.4f}  {dec.lambda_2:6.4f}")

# The planner maps (l2, l3) linearly to the four entries of Q when the
# angles are held at their reference values.
J = mission.J.matrix
ref = mission.ref
C = np.array([[np.cos(ref.theta_2_0), 0], [0, np.cos(ref.theta_3_0)],
              [np.sin(ref.theta_2_0), 0], [0, np.sin(ref.theta_3_0)]])
print("\n(l2, l3) -> Q map, scaled by l_0:\n", np.round(J @ C * ref.l_0, 4))

if "--plot" in sys.argv:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ts = np.linspace(0, 35, 701)
    qs = np.array([mission(t).as_vector() for t in ts])
    lam = np.array([[polar_decompose(mission(t)).lambda_1, polar_decompose(mission(t)).lambda_2] for t in ts])
    fig, (a, b) = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
    a.plot(ts, qs)
    a.legend(["Q11", "Q12", "Q21", "Q22"])
    b.plot(ts, lam)
    b.axhline(scn.safety.lambda_min, ls="--", c="k")
    b.legend(["lambda1", "lambda2", "lambda_min"])
    b.set_xlabel("t [s]")
    fig.savefig(sys.argv[sys.argv.index("--plot") + 1], dpi=120)
