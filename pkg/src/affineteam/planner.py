"""Jacobian planning from boundary-agent polar schedules.

Agents 2 and 3 are described by their polar coordinates ``(l_i, theta_i)`` in
the leader frame. Their reference positions fix a constant 4x4 matrix ``J``
that maps the stacked Cartesian targets onto the four entries of ``Q``; a
quintic blend moves the polar coordinates between phase endpoints.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolation, ConstraintViolation, DiscontinuousMission, OutOfInterval
from .formation import FormationSnapshot, Jacobian2, ReferenceFormation, apply_transform

L_MIN_DEFAULT = 0.3
# slack on the radial bounds so a convex blend of admissible endpoints
# never trips the check through rounding alone
_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class BoundaryPolar:
    l_2: float
    l_3: float
    theta_2: float
    theta_3: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.l_2, self.l_3, self.theta_2, self.theta_3)


@dataclass(frozen=True)
class PhaseSpec:
    t_0: float
    t_f: float
    start: BoundaryPolar
    end: BoundaryPolar

    def __post_init__(self):
        if not self.t_f > self.t_0:
            raise ValueError(f"phase must have t_f > t_0, got [{self.t_0}, {self.t_f}]")


@dataclass(frozen=True, eq=False)
class PlanMatrixJ:
    matrix: np.ndarray
    ref: ReferenceFormation
    l_min: float = L_MIN_DEFAULT

    @property
    def l_0(self) -> float:
        return self.ref.l_0


def build_H(ref: ReferenceFormation) -> np.ndarray:
    """Forward map from Q entries to stacked boundary targets (the matrix J inverts)."""
    block = np.array([[math.cos(ref.theta_2_0), math.sin(ref.theta_2_0)],
                      [math.cos(ref.theta_3_0), math.sin(ref.theta_3_0)]])
    return ref.l_0 * np.kron(np.eye(2), block)


def build_J(ref: ReferenceFormation, l_min: float = L_MIN_DEFAULT) -> PlanMatrixJ:
    t2, t3 = ref.theta_2_0, ref.theta_3_0
    sep = math.sin(t3 - t2)
    if abs(sep) < 1e-9:
        raise AssumptionViolation(
            f"sin(theta_3_0 - theta_2_0) = {sep:.3e}: boundary agents are collinear with the leader")
    if not 0.0 < l_min <= ref.l_0:
        raise AssumptionViolation(f"need 0 < l_min <= l_0, got l_min={l_min}, l_0={ref.l_0}")
    block = np.array([[math.sin(t3), -math.sin(t2)],
                      [-math.cos(t3), math.cos(t2)]])
    J = np.kron(np.eye(2), block) / (ref.l_0 * sep)
    return PlanMatrixJ(J, ref, float(l_min))


def check_constraints(bp: BoundaryPolar, l_min: float, l_0: float) -> None:
    """Raise :class:`ConstraintViolation` unless ``bp`` lies in the admissible box."""
    for name, l in (("l_2", bp.l_2), ("l_3", bp.l_3)):
        if not (l_min - _BOUND_SLACK <= l <= l_0 + _BOUND_SLACK):
            raise ConstraintViolation(
                f"radial bound l_min <= {name} <= l_0 violated: {name}={l!r}, "
                f"l_min={l_min!r}, l_0={l_0!r}")
    if not bp.theta_2 < bp.theta_3:
        raise ConstraintViolation(
            f"angular ordering theta_2 < theta_3 violated: theta_2={bp.theta_2!r}, "
            f"theta_3={bp.theta_3!r}")


def jacobian_from_boundary(J: PlanMatrixJ, bp: BoundaryPolar) -> Jacobian2:
    check_constraints(bp, J.l_min, J.l_0)
    targets = np.array([
        bp.l_2 * math.cos(bp.theta_2),
        bp.l_3 * math.cos(bp.theta_3),
        bp.l_2 * math.sin(bp.theta_2),
        bp.l_3 * math.sin(bp.theta_3),
    ])
    return Jacobian2(*(float(q) for q in J.matrix @ targets))


def boundary_from_jacobian(Q: Jacobian2, ref: ReferenceFormation) -> BoundaryPolar:
    """Recover the polar coordinates of agents 2 and 3 after applying ``Q``."""
    pos = ref.positions
    s2, s3 = Q.apply(pos[2]), Q.apply(pos[3])
    th2 = math.atan2(s2.v, s2.u) % (2 * math.pi)
    th3 = math.atan2(s3.v, s3.u) % (2 * math.pi)
    return BoundaryPolar(math.hypot(s2.u, s2.v), math.hypot(s3.u, s3.v), th2, th3)


def quintic(s: float) -> float:
    """6s^5 - 15s^4 + 10s^3, unclamped."""
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s))


def beta(t: float, t_0: float, t_f: float) -> float:
    """Rest-to-rest quintic blend from 0 at ``t_0`` to 1 at ``t_f``."""
    if not t_f > t_0:
        raise ValueError(f"need t_f > t_0, got [{t_0}, {t_f}]")
    if not t_0 <= t <= t_f:
        raise OutOfInterval(f"t={t} outside [{t_0}, {t_f}]")
    return quintic((t - t_0) / (t_f - t_0))


def schedule_at(phase: PhaseSpec, t: float) -> BoundaryPolar:
    b = beta(t, phase.t_0, phase.t_f)
    return BoundaryPolar(*(
        a * (1.0 - b) + z * b for a, z in zip(phase.start.as_tuple(), phase.end.as_tuple())
    ))


class MissionPlan:
    """Piecewise schedule over contiguous phases, callable as ``t -> Q(t)``.

    Outside the phase span the first start / last end values are held.
    """

    def __init__(self, phases, J: PlanMatrixJ, tol: float = 1e-9):
        phases = list(phases)
        if not phases:
            raise ValueError("a mission needs at least one phase")
        for k, ph in enumerate(phases, start=1):
            for label, bp in (("start", ph.start), ("end", ph.end)):
                try:
                    check_constraints(bp, J.l_min, J.l_0)
                except ConstraintViolation as exc:
                    raise ConstraintViolation(f"phase {k} {label}: {exc}") from None
        for k, (a, b) in enumerate(zip(phases, phases[1:]), start=1):
            if abs(a.t_f - b.t_0) > tol:
                raise DiscontinuousMission(
                    f"phase {k} ends at {a.t_f} but phase {k + 1} starts at {b.t_0}")
            gap = max(abs(x - y) for x, y in zip(a.end.as_tuple(), b.start.as_tuple()))
            if gap > tol:
                raise DiscontinuousMission(
                    f"boundary values jump by {gap:.3e} between phase {k} and phase {k + 1}")
        self.phases = tuple(phases)
        self.J = J
        self._starts = [ph.t_0 for ph in self.phases]

    @property
    def ref(self) -> ReferenceFormation:
        return self.J.ref

    @property
    def t_start(self) -> float:
        return self.phases[0].t_0

    @property
    def t_end(self) -> float:
        return self.phases[-1].t_f

    def boundary_at(self, t: float) -> BoundaryPolar:
        if t <= self.t_start:
            return self.phases[0].start
        if t >= self.t_end:
            return self.phases[-1].end
        k = bisect.bisect_right(self._starts, t) - 1
        return schedule_at(self.phases[k], t)

    def __call__(self, t: float) -> Jacobian2:
        return jacobian_from_boundary(self.J, self.boundary_at(t))

    def __eq__(self, other):
        if not isinstance(other, MissionPlan):
            return NotImplemented
        return (self.phases == other.phases and self.ref == other.ref
                and self.J.l_min == other.J.l_min)

    __hash__ = None

    def snapshot(self, t: float) -> FormationSnapshot:
        return apply_transform(self.ref, self(t), t)


def plan_mission(phases, J: PlanMatrixJ) -> MissionPlan:
    return MissionPlan(phases, J)
