"""Property checks run against a scenario (``affineteam verify``)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError
from .planner import BoundaryPolar, build_H, check_constraints, jacobian_from_boundary, quintic
from .safety import polar_decompose
from .sim import method_equivalence_check, run


@dataclass
class Check:
    name: str
    passed: Optional[bool]       # None means skipped
    residual: float = float("nan")
    bound: float = float("nan")
    detail: str = ""

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]


def _check(name, residual, bound, detail="", strict_less=True) -> Check:
    ok = residual < bound if strict_less else residual <= bound
    return Check(name, bool(ok), float(residual), float(bound), detail)


def beta_endpoint_residuals(t_0: float, t_f: float) -> tuple[float, float]:
    """Largest |value error| and largest |derivative| of the blend at both ends.

    Derivatives are central finite differences in time with step
    ``1e-5 * (t_f - t_0)``, evaluated on the unclamped polynomial.
    """
    T = t_f - t_0
    h = 1e-5
    val = max(abs(quintic(0.0) - 0.0), abs(quintic(1.0) - 1.0))
    der = 0.0
    for s in (0.0, 1.0):
        d1 = (quintic(s + h) - quintic(s - h)) / (2 * h) / T
        d2 = (quintic(s + h) - 2 * quintic(s) + quintic(s - h)) / (h * h) / (T * T)
        der = max(der, abs(d1), abs(d2))
    return val, der


def verify_scenario(scn) -> list[Check]:
    checks = []
    gd = scn.gain * scn.dt
    checks.append(_check("stability: tracking_gain*dt < 1", gd, 1.0, f"gain*dt = {gd:g}"))

    ref = scn.reference
    mission = scn.mission()
    J = mission.J
    res = np.abs(J.matrix @ build_H(ref) - np.eye(4)).max()
    checks.append(_check("J*H = I4", res, 1e-9))

    Q_ref = jacobian_from_boundary(J, BoundaryPolar(ref.l_0, ref.l_0, ref.theta_2_0, ref.theta_3_0))
    checks.append(_check("reference inputs give Q = I", np.abs(Q_ref.as_array() - np.eye(2)).max(), 1e-10))

    worst_val = worst_der = 0.0
    for ph in mission.phases:
        v, d = beta_endpoint_residuals(ph.t_0, ph.t_f)
        worst_val, worst_der = max(worst_val, v), max(worst_der, d)
    checks.append(_check("blend endpoint values exact", worst_val, 0.0, strict_less=False))
    checks.append(_check("blend endpoint rates vanish", worst_der, 1e-6))

    ts = np.arange(0.0, mission.t_end + 1e-12, scn.dt)
    bad = 0
    recon = det_gap = 0.0
    for t in ts:
        try:
            check_constraints(mission.boundary_at(t), J.l_min, J.l_0)
        except Exception:
            bad += 1
        Q = mission(t)
        dec = polar_decompose(Q)
        recon = max(recon, np.abs(dec.reconstruct() - Q.as_array()).max())
        det_gap = max(det_gap, abs(dec.lambda_1 * dec.lambda_2 - Q.det))
    checks.append(_check("schedule stays in admissible box", bad, 0, f"{len(ts)} samples",
                         strict_less=False))
    checks.append(_check("polar reconstruction R*U = Q", recon, 1e-9))
    checks.append(_check("lambda1*lambda2 = det Q", det_gap, 1e-9))

    jump = 0.0
    for ph in mission.phases[1:]:
        grid = ph.t_0 + np.arange(-50, 51) * 1e-3
        qs = np.array([mission(t).as_vector() for t in grid])
        jump = max(jump, np.abs(np.diff(qs, axis=0)).max())
    checks.append(_check("Q continuous across phase joins (1 kHz)", jump, 1e-6))

    try:
        cfg = scn.run_config()
    except ConfigError as exc:
        for name in ("eigenvalue gate", "leader containment", "method equivalence"):
            checks.append(Check(name, None, detail=f"skipped: {exc}"))
        return checks

    log = run(cfg, track=False)
    lam2 = float(log.strain[:, 2].min())
    checks.append(Check("eigenvalue gate", lam2 >= scn.safety.lambda_min, lam2,
                        scn.safety.lambda_min, "min lambda2 >= lambda_min"))
    frac = sum(r.containment_ok for r in log.reports) / len(log)
    checks.append(Check("leader containment", frac == 1.0, frac, 1.0, "fraction of steps"))
    checks.append(_check("method equivalence", method_equivalence_check(cfg), 1e-9))
    return checks
