"""Collision-avoidance certification of a planned deformation.

``Q`` is split as ``R(psi_r) @ U`` with ``U`` the symmetric positive-definite
strain. The smaller principal stretch of ``U`` bounds how much any pair of
agents can be squeezed together, so gating it against ``lambda_min`` keeps the
team separated. Realised snapshots are additionally checked for containment of
the leader, pairwise separation and corridor clearance.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import CorridorUnset, ImproperJacobian, SingularJacobian
from .formation import EPS_DET, FormationSnapshot, Jacobian2, contains_leader
from .frames import GlobalPoint, rotation

LAMBDA_MIN_DEFAULT = 0.35
MIN_SEPARATION_DEFAULT = 0.5


@dataclass(frozen=True)
class StrainDecomposition:
    psi_r: float
    lambda_1: float
    lambda_2: float
    psi_d: float

    def rotation(self) -> np.ndarray:
        return rotation(self.psi_r)

    def strain(self) -> np.ndarray:
        l1, l2 = self.lambda_1, self.lambda_2
        c, s = math.cos(self.psi_d), math.sin(self.psi_d)
        off = (l1 - l2) * c * s
        return np.array([[l1 * c * c + l2 * s * s, off],
                         [off, l1 * s * s + l2 * c * c]])

    def reconstruct(self) -> np.ndarray:
        return self.rotation() @ self.strain()


def polar_decompose(Q: Jacobian2) -> StrainDecomposition:
    """Closed-form polar decomposition of a 2x2 orientation-preserving matrix.

    ``lambda_1 >= lambda_2 > 0`` are the principal stretches and ``psi_d`` in
    [0, pi) is the direction of the major stretch; isotropic strain reports
    ``psi_d = 0``.
    """
    q11, q12, q21, q22 = Q.as_vector()
    det = q11 * q22 - q12 * q21
    if det < -EPS_DET:
        raise ImproperJacobian(f"det(Q) = {det:.3e} < 0: the map reverses orientation")
    if det <= EPS_DET:
        raise SingularJacobian(f"det(Q) = {det:.3e} is not above {EPS_DET:g}")

    psi_r = math.atan2(q21 - q12, q11 + q22)

    # right Cauchy-Green tensor C = Q^T Q = U^2
    a = q11 * q11 + q21 * q21
    b = q11 * q12 + q21 * q22
    c = q12 * q12 + q22 * q22
    mean = 0.5 * (a + c)
    rad = math.hypot(0.5 * (a - c), b)
    lambda_1 = math.sqrt(mean + rad)
    # det(U) = det(Q); avoids cancellation in mean - rad
    lambda_2 = det / lambda_1
    if rad <= 1e-14 * mean:
        psi_d = 0.0
    else:
        psi_d = (0.5 * math.atan2(2.0 * b, a - c)) % math.pi
    return StrainDecomposition(psi_r, lambda_1, lambda_2, psi_d)


@dataclass(frozen=True)
class Corridor:
    """Axis-aligned slab ``|y - center_y| <= half_width`` for ``x_min <= x <= x_max``."""

    center_y: float
    half_width: float
    x_min: float
    x_max: float

    def __post_init__(self):
        if self.half_width <= 0 or self.x_max < self.x_min:
            raise ValueError(f"invalid corridor {self}")


@dataclass(frozen=True)
class SafetyConfig:
    lambda_min: float = LAMBDA_MIN_DEFAULT
    min_separation: float = MIN_SEPARATION_DEFAULT
    corridor: Optional[Corridor] = None

    def __post_init__(self):
        if not self.lambda_min > 0:
            raise ValueError(f"lambda_min must be positive, got {self.lambda_min}")
        if not self.min_separation > 0:
            raise ValueError(f"min_separation must be positive, got {self.min_separation}")


@dataclass(frozen=True)
class SafetyReport:
    time: float
    eig_ok: bool
    lambda_1: float
    lambda_2: float
    containment_ok: bool
    min_pairwise_dist: float
    separation_ok: bool
    corridor_ok: Optional[bool] = None

    @property
    def violations(self) -> list[str]:
        out = []
        if not self.eig_ok:
            out.append("eigenvalue")
        if not self.containment_ok:
            out.append("containment")
        if not self.separation_ok:
            out.append("separation")
        if self.corridor_ok is False:
            out.append("corridor")
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return asdict(self)


def check_eigenvalues(dec: StrainDecomposition, cfg: SafetyConfig) -> bool:
    return min(dec.lambda_1, dec.lambda_2) >= cfg.lambda_min


def min_pairwise_distance(snap: FormationSnapshot) -> float:
    pts = list(snap.positions.values())
    if len(pts) < 2:
        raise ValueError("need at least two agents")
    return min(math.hypot(p.u - q.u, p.v - q.v) for p, q in itertools.combinations(pts, 2))


def corridor_clearance(global_positions: Sequence[GlobalPoint], cfg: SafetyConfig) -> bool:
    cor = cfg.corridor
    if cor is None:
        raise CorridorUnset("safety config has no corridor")
    for p in global_positions:
        if cor.x_min <= p.x <= cor.x_max and abs(p.y - cor.center_y) > cor.half_width:
            return False
    return True


def assess(snap: FormationSnapshot, dec: StrainDecomposition, cfg: SafetyConfig,
           global_positions: Optional[Sequence[GlobalPoint]] = None) -> SafetyReport:
    """Run every check for one timestep; corridor is skipped when unset."""
    dmin = min_pairwise_distance(snap)
    corridor_ok = None
    if cfg.corridor is not None and global_positions is not None:
        corridor_ok = corridor_clearance(global_positions, cfg)
    return SafetyReport(
        time=snap.time,
        eig_ok=check_eigenvalues(dec, cfg),
        lambda_1=dec.lambda_1,
        lambda_2=dec.lambda_2,
        containment_ok=contains_leader(snap),
        min_pairwise_dist=dmin,
        separation_ok=dmin >= cfg.min_separation,
        corridor_ok=corridor_ok,
    )
