"""Fixed-step replay of a planned mission behind a moving quadruped.

Two protocols are supported:

``method1``
    Everything lives in the ground frame. The leader follows its path and each
    agent tracks ``d + z_d c3 + s_i``.
``method2``
    The leader is pinned at the leader-frame origin and the environment is
    re-expressed in that frame at every step. Agents track their local targets;
    virtual ground-frame positions are rebuilt by composing with the leader
    path so both views end up in the log.

Quadcopter dynamics are a saturated first-order P-law standing in for the
flight stack's position loop.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import ConfigError, SafetyViolation
from .formation import FormationSnapshot, apply_transform, contains_leader
from .frames import (GlobalPoint, LeaderState, LocalPoint, global_to_local_array,
                     local_to_global_array, wrap_angle)
from .planner import MissionPlan
from .safety import SafetyConfig, SafetyReport, assess, polar_decompose

MODES = ("method1", "method2")


class LeaderPath:
    """Piecewise-linear leader trajectory from samples ``(t, x, y, heading, z_d)``.

    Heading is interpolated along the shorter arc; queries outside the sampled
    span hold the nearest end sample.
    """

    def __init__(self, samples):
        arr = np.array(samples, dtype=float).reshape(-1, 5)
        if len(arr) == 0:
            raise ValueError("leader path needs at least one sample")
        if not np.all(np.isfinite(arr)):
            raise ValueError("leader samples must be finite")
        if np.any(np.diff(arr[:, 0]) <= 0):
            raise ValueError("leader sample times must be strictly increasing")
        jumps = np.abs(np.diff(arr[:, 3]))
        if np.any(jumps > math.pi):
            k = int(np.argmax(jumps > math.pi))
            raise ValueError(f"leader heading jumps by more than pi between samples {k} and {k + 1}")
        if np.any(arr[:, 4] < 0):
            raise ValueError("team elevation must be non-negative")
        arr.setflags(write=False)
        self.samples = arr
        self._t = arr[:, 0].tolist()

    @classmethod
    def stationary(cls, d=(0.0, 0.0), heading: float = 0.0, z_d: float = 1.5) -> "LeaderPath":
        return cls([[0.0, d[0], d[1], heading, z_d]])

    def at(self, t: float) -> LeaderState:
        s = self.samples
        if t <= self._t[0]:
            row = s[0]
            return LeaderState((row[1], row[2]), row[3], row[4])
        if t >= self._t[-1]:
            row = s[-1]
            return LeaderState((row[1], row[2]), row[3], row[4])
        k = bisect.bisect_right(self._t, t) - 1
        a, b = s[k], s[k + 1]
        w = (t - a[0]) / (b[0] - a[0])
        heading = a[3] + wrap_angle(b[3] - a[3]) * w
        return LeaderState((a[1] + (b[1] - a[1]) * w, a[2] + (b[2] - a[2]) * w),
                           heading, a[4] + (b[4] - a[4]) * w)

    def __eq__(self, other):
        return isinstance(other, LeaderPath) and np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return f"LeaderPath({len(self.samples)} samples, t=[{self._t[0]}, {self._t[-1]}])"


@dataclass
class AgentState:
    position: np.ndarray
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))


@dataclass(frozen=True)
class RunConfig:
    mission: MissionPlan
    leader: LeaderPath
    mode: str = "method1"
    dt: float = 0.01
    duration: Optional[float] = None
    tracking_gain: float = 2.0
    v_max: float = 1.0
    safety: SafetyConfig = field(default_factory=SafetyConfig)
    strict: bool = False
    # per-agent start offset from the first desired position, shape (n_agents, 3)
    initial_offset: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.tracking_gain > 0:
            raise ConfigError(f"tracking_gain must be positive, got {self.tracking_gain}")
        if not self.tracking_gain * self.dt < 1.0:
            raise ConfigError(
                f"stability constraint tracking_gain*dt < 1 violated: "
                f"{self.tracking_gain}*{self.dt} = {self.tracking_gain * self.dt:g}")
        if not self.v_max > 0:
            raise ConfigError(f"v_max must be positive, got {self.v_max}")
        if self.duration is None:
            object.__setattr__(self, "duration", float(self.mission.t_end))
        if self.duration < self.mission.t_end:
            raise ConfigError(
                f"duration {self.duration} is shorter than the mission span ending at {self.mission.t_end}")

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))


def _compose(s, leader: LeaderState) -> np.ndarray:
    c1, c2, c3 = leader.basis()
    d = np.array([leader.d[0], leader.d[1], 0.0])
    return d + leader.z_d * c3 + s.u * c1 + s.v * c2


def desired_global(i: int, t: float, mission: MissionPlan, leader_state: LeaderState) -> GlobalPoint:
    """Ground-frame target of agent ``i``: leader position, elevation, then local offset."""
    s = mission.snapshot(t).positions[i]
    return GlobalPoint(*_compose(s, leader_state))


def step(states, desired, dt: float, cfg: RunConfig):
    out = []
    for st, target in zip(states, desired):
        v = cfg.tracking_gain * (np.asarray(target, dtype=float) - st.position)
        speed = float(np.linalg.norm(v))
        if speed > cfg.v_max:
            v = v * (cfg.v_max / speed)
        out.append(AgentState(st.position + v * dt, v))
    return out


def _frozen(a) -> np.ndarray:
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TrajectoryLog:
    """Per-step record of a run.

    ``actual`` holds tracked positions in the run's native frame (ground frame
    for ``method1``, leader frame plus elevation for ``method2``); the other
    frame is reconstructed in ``actual_global`` / ``actual_local``.
    """

    mode: str
    agents: tuple
    times: np.ndarray            # (n,)
    leader: np.ndarray           # (n, 4) x, y, heading, z_d
    Q: np.ndarray                # (n, 4) q11, q12, q21, q22
    strain: np.ndarray           # (n, 4) psi_r, lambda_1, lambda_2, psi_d
    desired_local: np.ndarray    # (n, N, 2)
    desired_global: np.ndarray   # (n, N, 3)
    actual: np.ndarray           # (n, N, 3)
    actual_global: np.ndarray    # (n, N, 3)
    actual_local: np.ndarray     # (n, N, 2)
    reports: tuple
    environment_local: Optional[np.ndarray] = None  # (n, 4, 2) corridor corners in leader frame

    def __len__(self):
        return len(self.times)

    @property
    def desired(self) -> np.ndarray:
        if self.mode == "method1":
            return self.desired_global
        z = self.leader[:, None, 3] * np.ones(self.desired_local.shape[:2])
        return np.concatenate([self.desired_local, z[..., None]], axis=2)

    @property
    def tracking_error(self) -> np.ndarray:
        """Per-step, per-agent distance between tracked and desired position."""
        return np.linalg.norm(self.actual - self.desired, axis=2)

    @property
    def violations(self) -> list[SafetyReport]:
        return [r for r in self.reports if not r.ok]

    def summary(self) -> dict:
        n = len(self.reports)
        corridor = [r.corridor_ok for r in self.reports if r.corridor_ok is not None]
        return {
            "mode": self.mode,
            "steps": n,
            "min_lambda2": float(self.strain[:, 2].min()),
            "min_pairwise_dist": float(min(r.min_pairwise_dist for r in self.reports)),
            "containment_fraction": sum(r.containment_ok for r in self.reports) / n,
            "corridor_fraction": (sum(corridor) / len(corridor)) if corridor else None,
            "max_tracking_error": float(self.tracking_error.max()),
            "violations": len(self.violations),
        }


def run(cfg: RunConfig, track: bool = True) -> TrajectoryLog:
    """Replay the mission at fixed step ``cfg.dt``.

    With ``track=False`` the agents sit exactly on their targets (desired
    trajectories only). Safety violations are flagged in the reports; with
    ``cfg.strict`` the first one raises :class:`SafetyViolation`.
    """
    mission = cfg.mission
    ref = mission.ref
    agents = ref.agents
    n = cfg.n_steps + 1
    na = len(agents)
    method1 = cfg.mode == "method1"

    times = np.empty(n)
    leader_rows = np.empty((n, 4))
    q_rows = np.empty((n, 4))
    strain_rows = np.empty((n, 4))
    des_loc = np.empty((n, na, 2))
    des_glob = np.empty((n, na, 3))
    actual = np.empty((n, na, 3))
    reports = []
    env = None
    cor = cfg.safety.corridor
    if cor is not None and not method1:
        env = np.empty((n, 4, 2))
        corners = np.array([[cor.x_min, cor.center_y - cor.half_width],
                            [cor.x_max, cor.center_y - cor.half_width],
                            [cor.x_max, cor.center_y + cor.half_width],
                            [cor.x_min, cor.center_y + cor.half_width]])

    states = None
    for k in range(n):
        t = k * cfg.dt
        L = cfg.leader.at(t)
        Q = mission(t)
        snap = apply_transform(ref, Q, t)
        dec = polar_decompose(Q)
        loc = snap.as_array()
        if method1:
            glob = np.array([_compose(snap.positions[i], L) for i in agents])
            target = glob
        else:
            # leader pinned at the origin; ground view is virtual
            glob = local_to_global_array(loc, L)
            target = np.column_stack([loc, np.full(na, L.z_d)])
            if env is not None:
                env[k] = global_to_local_array(np.column_stack([corners, np.zeros(4)]), L)
        report = assess(snap, dec, cfg.safety, [GlobalPoint(*g) for g in glob])
        if cfg.strict and not report.ok:
            raise SafetyViolation(report)

        if states is None:
            start = target.copy()
            if track and cfg.initial_offset is not None:
                start = start + np.asarray(cfg.initial_offset, dtype=float).reshape(na, 3)
            states = [AgentState(p) for p in start]
        elif not track:
            states = [AgentState(p) for p in target]

        times[k] = t
        leader_rows[k] = (L.d[0], L.d[1], L.heading, L.z_d)
        q_rows[k] = Q.as_vector()
        strain_rows[k] = (dec.psi_r, dec.lambda_1, dec.lambda_2, dec.psi_d)
        des_loc[k] = loc
        des_glob[k] = glob
        actual[k] = [s.position for s in states]
        reports.append(report)

        if track and k < n - 1:
            states = step(states, target, cfg.dt, cfg)

    if method1:
        act_glob = actual
        act_loc = np.stack([global_to_local_array(actual[k], _leader_at(leader_rows[k]))
                            for k in range(n)])
    else:
        act_loc = actual[:, :, :2]
        act_glob = np.stack([local_to_global_array(actual[k, :, :2], _leader_at(leader_rows[k]))
                             for k in range(n)])
        act_glob[:, :, 2] = actual[:, :, 2]

    return TrajectoryLog(
        mode=cfg.mode, agents=agents, times=_frozen(times), leader=_frozen(leader_rows),
        Q=_frozen(q_rows), strain=_frozen(strain_rows), desired_local=_frozen(des_loc),
        desired_global=_frozen(des_glob), actual=_frozen(actual),
        actual_global=_frozen(act_glob), actual_local=_frozen(np.ascontiguousarray(act_loc)),
        reports=tuple(reports), environment_local=None if env is None else _frozen(env),
    )


def _leader_at(row) -> LeaderState:
    return LeaderState((row[0], row[1]), row[2], row[3])


def method_equivalence_check(cfg: RunConfig, heading_offset: float = 0.0) -> float:
    """Largest distance between the two protocols' ground-frame targets.

    Method-2 local targets are composed with the leader path (heading shifted
    by ``heading_offset``, a hook for negative controls) and compared with the
    Method-1 targets step by step.
    """
    m1 = run(replace(cfg, mode="method1", strict=False), track=False)
    m2 = run(replace(cfg, mode="method2", strict=False), track=False)
    worst = 0.0
    for k in range(len(m1)):
        x, y, h, z = m2.leader[k]
        L = LeaderState((x, y), h + heading_offset, z)
        composed = local_to_global_array(m2.desired_local[k], L)
        worst = max(worst, float(np.linalg.norm(composed - m1.desired_global[k], axis=1).max()))
    return worst


def containment_fraction(log: TrajectoryLog) -> float:
    """Fraction of steps where the desired formation encloses the leader (recomputed)."""
    hits = 0
    for k in range(len(log)):
        snap = FormationSnapshot(log.times[k], {
            i: LocalPoint(*log.desired_local[k, j]) for j, i in enumerate(log.agents)})
        hits += contains_leader(snap)
    return hits / len(log)
