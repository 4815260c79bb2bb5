"""Reference formation, affine deformation of the team, and leader containment."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AssumptionViolation, DegenerateHull, SingularJacobian
from .frames import LocalPoint

EPS_DET = 1e-9
EPS_AREA = 1e-9

BOUNDARY = (1, 2, 3)


@dataclass(frozen=True)
class Jacobian2:
    """2x2 matrix of the affine map from reference to desired local positions."""

    q11: float
    q12: float
    q21: float
    q22: float

    @classmethod
    def identity(cls) -> "Jacobian2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, a) -> "Jacobian2":
        a = np.asarray(a, dtype=float).reshape(2, 2)
        return cls(float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.q11, self.q12], [self.q21, self.q22]])

    def as_vector(self) -> tuple[float, float, float, float]:
        return (self.q11, self.q12, self.q21, self.q22)

    @property
    def det(self) -> float:
        return self.q11 * self.q22 - self.q12 * self.q21

    def __add__(self, other: "Jacobian2") -> "Jacobian2":
        return Jacobian2(*(a + b for a, b in zip(self.as_vector(), other.as_vector())))

    def __mul__(self, k: float) -> "Jacobian2":
        return Jacobian2(*(k * a for a in self.as_vector()))

    __rmul__ = __mul__

    def apply(self, p: LocalPoint) -> LocalPoint:
        return LocalPoint(self.q11 * p.u + self.q12 * p.v, self.q21 * p.u + self.q22 * p.v)


@dataclass(frozen=True)
class ReferenceFormation:
    """Undeformed team layout in the leader frame.

    Agent 1 sits on the heading axis at ``l_1_0``; agents 2 and 3 sit at radius
    ``l_0`` and polar angles ``theta_2_0 < theta_3_0``. Optional interior agents
    are numbered from 4 upward in the order given.
    """

    l_1_0: float
    l_0: float
    theta_2_0: float
    theta_3_0: float
    interior: tuple[LocalPoint, ...] = field(default=())

    @property
    def positions(self) -> dict[int, LocalPoint]:
        pos = {
            1: LocalPoint(self.l_1_0, 0.0),
            2: LocalPoint(self.l_0 * math.cos(self.theta_2_0), self.l_0 * math.sin(self.theta_2_0)),
            3: LocalPoint(self.l_0 * math.cos(self.theta_3_0), self.l_0 * math.sin(self.theta_3_0)),
        }
        for k, p in enumerate(self.interior, start=4):
            pos[k] = p
        return pos

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(range(1, 4 + len(self.interior)))


def build_reference(l_1_0: float, l_0: float, theta_2_0: float, theta_3_0: float,
                    interior=()) -> ReferenceFormation:
    values = (l_1_0, l_0, theta_2_0, theta_3_0)
    if not all(math.isfinite(v) for v in values):
        raise AssumptionViolation(f"reference parameters must be finite, got {values}")
    if not (0.0 < theta_2_0 < theta_3_0 < 2.0 * math.pi):
        raise AssumptionViolation(
            "non-collinearity assumption requires 0 < theta_2_0 < theta_3_0 < 2pi, "
            f"got theta_2_0={theta_2_0!r}, theta_3_0={theta_3_0!r}")
    if not l_0 > 0.0:
        raise AssumptionViolation(f"length assumption requires l_0 > 0, got {l_0!r}")
    if l_1_0 < l_0:
        raise AssumptionViolation(
            f"length assumption requires l_1_0 >= l_0, got l_1_0={l_1_0!r} < l_0={l_0!r}")
    return ReferenceFormation(float(l_1_0), float(l_0), float(theta_2_0), float(theta_3_0),
                              tuple(interior))


@dataclass(frozen=True)
class FormationSnapshot:
    time: float
    positions: dict[int, LocalPoint]

    def as_array(self) -> np.ndarray:
        """Positions stacked in agent order, shape ``(n, 2)``."""
        return np.array([[p.u, p.v] for _, p in sorted(self.positions.items())])


def apply_transform(ref: ReferenceFormation, Q: Jacobian2, time: float = 0.0) -> FormationSnapshot:
    if Q.det <= EPS_DET:
        raise SingularJacobian(f"det(Q) = {Q.det:.3e} is not above {EPS_DET:g}")
    pos = {}
    for i, p in ref.positions.items():
        # the primary leader keeps its reference spot regardless of Q
        pos[i] = p if i == 1 else Q.apply(p)
    return FormationSnapshot(time, pos)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def contains_point(triangle, point=(0.0, 0.0), eps: float = EPS_AREA) -> bool:
    """Strict point-in-triangle test by the signs of three sub-triangle areas.

    Points on an edge (or within ``eps`` of it, in doubled-area units) are
    reported as outside.
    """
    a, b, c = triangle
    area = _cross(a, b, c)
    if abs(area) < eps:
        raise DegenerateHull(f"boundary triangle area {abs(area) / 2:.3e} below tolerance")
    sign = 1.0 if area > 0 else -1.0
    s1 = sign * _cross(a, b, point)
    s2 = sign * _cross(b, c, point)
    s3 = sign * _cross(c, a, point)
    return s1 > eps and s2 > eps and s3 > eps


def contains_leader(snap: FormationSnapshot) -> bool:
    """True iff the leader-frame origin lies strictly inside the boundary triangle."""
    try:
        tri = [(snap.positions[i].u, snap.positions[i].v) for i in BOUNDARY]
    except KeyError as exc:
        raise ValueError(f"snapshot is missing boundary agent {exc.args[0]}") from None
    return contains_point(tri)
