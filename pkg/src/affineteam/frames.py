"""Planar frame algebra between the ground frame (GCS) and the leader frame (LCS).

The leader frame shares the vertical axis with the ground frame and is rotated
by the leader heading about it, so every transform here is a planar rotation
plus a translation and an elevation offset.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def wrap_angle(angle: float) -> float:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class GlobalPoint:
    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise ValueError(f"non-finite global point {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class LocalPoint:
    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise ValueError(f"non-finite local point {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v])


@dataclass(frozen=True)
class LeaderState:
    """Pose of the quadruped: planar position ``d``, heading, team elevation."""

    d: tuple[float, float] = (0.0, 0.0)
    heading: float = 0.0
    z_d: float = 0.0

    def __post_init__(self):
        d = (float(self.d[0]), float(self.d[1]))
        if not all(math.isfinite(c) for c in (*d, self.heading, self.z_d)):
            raise ValueError("leader state must be finite")
        if self.z_d < 0:
            raise ValueError(f"team elevation must be non-negative, got {self.z_d}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "heading", wrap_angle(float(self.heading)))
        object.__setattr__(self, "z_d", float(self.z_d))

    def basis(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Leader-frame unit vectors c1, c2, c3 expressed in the ground frame."""
        c, s = math.cos(self.heading), math.sin(self.heading)
        return np.array([c, s, 0.0]), np.array([-s, c, 0.0]), np.array([0.0, 0.0, 1.0])


def local_to_global(p: LocalPoint, leader: LeaderState) -> GlobalPoint:
    c, s = math.cos(leader.heading), math.sin(leader.heading)
    return GlobalPoint(
        leader.d[0] + p.u * c - p.v * s,
        leader.d[1] + p.u * s + p.v * c,
        leader.z_d,
    )


def global_to_local(p: GlobalPoint, leader: LeaderState) -> LocalPoint:
    # elevation is dropped: the formation lives in the plane at z_d
    dx, dy = p.x - leader.d[0], p.y - leader.d[1]
    c, s = math.cos(leader.heading), math.sin(leader.heading)
    return LocalPoint(dx * c + dy * s, -dx * s + dy * c)


def local_to_global_array(uv: np.ndarray, leader: LeaderState) -> np.ndarray:
    """Vectorised :func:`local_to_global` over an ``(n, 2)`` array; returns ``(n, 3)``."""
    uv = np.atleast_2d(uv)
    xy = uv @ rotation(leader.heading).T + np.asarray(leader.d)
    return np.column_stack([xy, np.full(len(uv), leader.z_d)])


def global_to_local_array(xyz: np.ndarray, leader: LeaderState) -> np.ndarray:
    xyz = np.atleast_2d(xyz)
    return (xyz[:, :2] - np.asarray(leader.d)) @ rotation(leader.heading)
