import math
from dataclasses import replace

import numpy as np
import pytest

from affineteam.errors import ConfigError, SafetyViolation
from affineteam.frames import LeaderState
from affineteam.safety import Corridor, SafetyConfig
from affineteam.sim import (AgentState, LeaderPath, RunConfig, containment_fraction, desired_global,
                            method_equivalence_check, run, step)

from conftest import curved_leader


def test_leader_path_interpolation():
    path = LeaderPath([[0, 0, 0, 0, 1.5], [10, 5, 0, math.pi / 2, 2.5]])
    L = path.at(5.0)
    assert L.d == pytest.approx((2.5, 0.0))
    assert L.heading == pytest.approx(math.pi / 4)
    assert L.z_d == pytest.approx(2.0)
    assert path.at(-1).d == (0.0, 0.0)
    assert path.at(99).d == (5.0, 0.0)


def test_leader_heading_shortest_arc():
    path = LeaderPath([[0, 0, 0, 3.0, 1], [1, 0, 0, 3.0 + 0.5, 1]])
    # crosses the +-pi seam without spinning the long way round
    assert path.at(0.5).heading == pytest.approx(math.remainder(3.25, 2 * math.pi))


@pytest.mark.parametrize("rows", [
    [[0, 0, 0, 0, 1], [0, 1, 0, 0, 1]],
    [[0, 0, 0, 0, 1], [1, 0, 0, 4.0, 1]],
    [[0, 0, 0, 0, -1]],
    [],
])
def test_leader_path_validation(rows):
    with pytest.raises(ValueError):
        LeaderPath(rows)


def test_desired_global_examples(table1_mission, table2_mission):
    g = desired_global(1, 0.0, table1_mission, LeaderState((0, 0), 0, 1.5))
    assert (g.x, g.y, g.z) == pytest.approx((1.25, 0, 1.5), abs=1e-12)
    g = desired_global(2, 20.0, table2_mission, LeaderState((0, 0), 0, 1.5))
    assert (g.x, g.y, g.z) == pytest.approx((-0.25, 0.433, 1.5), abs=5e-4)
    g = desired_global(1, 3.0, table2_mission, LeaderState((2, 0), 0, 0.9))
    assert (g.x, g.y, g.z) == pytest.approx((3.25, 0, 0.9), abs=1e-12)


def _cfg(mission, **kw):
    return RunConfig(mission=mission, leader=LeaderPath.stationary(), **kw)


def test_step_examples(table1_mission):
    cfg = _cfg(table1_mission, tracking_gain=2.0, v_max=10.0)
    s = [AgentState(np.array([1.0, 2.0, 3.0]))]
    out = step(s, [np.array([1.0, 2.0, 3.0])], 0.01, cfg)
    assert np.array_equal(out[0].velocity, np.zeros(3))
    assert np.array_equal(out[0].position, s[0].position)
    out = step([AgentState(np.zeros(3))], [np.array([1.0, 0, 0])], 0.01, cfg)
    assert out[0].velocity == pytest.approx([2, 0, 0])
    assert out[0].position == pytest.approx([0.02, 0, 0])
    cfg = _cfg(table1_mission, tracking_gain=2.0, v_max=1.0)
    out = step([AgentState(np.zeros(3))], [np.array([10.0, 0, 0])], 0.01, cfg)
    assert out[0].velocity == pytest.approx([1, 0, 0])


def test_config_validation(table1_mission):
    with pytest.raises(ConfigError, match="tracking_gain\\*dt < 1"):
        _cfg(table1_mission, dt=0.5, tracking_gain=2.0)
    with pytest.raises(ConfigError):
        _cfg(table1_mission, mode="method3")
    with pytest.raises(ConfigError):
        _cfg(table1_mission, duration=10.0)
    assert _cfg(table1_mission).duration == 35.0


def test_table1_rigid_translation(table1_mission):
    path = LeaderPath([[0, 0, 0, 0, 1.5], [35, 0.8, 0.5, 0, 1.5]])
    log = run(RunConfig(table1_mission, path))
    assert np.abs(log.Q - [1, 0, 0, 1]).max() < 1e-10
    assert np.all(log.desired_local[:, 0] == [1.25, 0.0])
    # pairwise desired distances constant under pure translation
    g = log.desired_global
    d = np.linalg.norm(g[:, :, None, :] - g[:, None, :, :], axis=3)
    assert np.abs(d - d[0]).max() < 1e-12


def test_table2_method2_gate_and_corridor(table2_mission):
    cfg = RunConfig(table2_mission, LeaderPath([[0, 0, 0, 0, 1.5], [35, 10.5, 0, 0, 1.5]]),
                    mode="method2", safety=SafetyConfig(corridor=Corridor(0.0, 0.7, 4.0, 7.5)))
    log = run(cfg)
    assert log.strain[:, 2].min() >= 0.35
    assert log.strain[:, 2].min() < 0.9    # the traces do dip
    phase2 = (log.times >= 15) & (log.times <= 25)
    assert all(log.reports[k].corridor_ok for k in np.flatnonzero(phase2))
    assert not log.violations
    assert log.environment_local is not None
    # corridor corners re-expressed in the leader frame slide toward the team
    assert log.environment_local[0, 0, 0] == pytest.approx(4.0)
    assert log.environment_local[-1, 0, 0] == pytest.approx(4.0 - 10.5)


def test_method2_rebuilds_virtual_global(table2_mission):
    cfg = RunConfig(table2_mission, curved_leader(), mode="method2")
    log = run(cfg)
    for k in (0, 1200, 2000, 3500):
        x, y, h, z = log.leader[k]
        c, s = math.cos(h), math.sin(h)
        u, v = log.actual_local[k, 1]
        assert log.actual_global[k, 1, :2] == pytest.approx([x + c * u - s * v, y + s * u + c * v])


def test_zero_length_path_converges(table1_mission):
    offset = np.array([[0.3, -0.2, 0.1], [-0.4, 0.1, 0.0], [0.2, 0.2, -0.2]])
    log = run(RunConfig(table1_mission, LeaderPath.stationary(), initial_offset=offset))
    err = log.tracking_error
    live = err[:-1] > 1e-12          # below that the P-law sits on the rounding floor
    assert np.all(np.diff(err, axis=0)[live] < 0)
    assert err[-1].max() < 1e-12


def test_determinism(table2_mission):
    cfg = RunConfig(table2_mission, curved_leader(), mode="method1")
    a, b = run(cfg), run(cfg)
    for field in ("times", "leader", "Q", "strain", "desired_local", "desired_global", "actual"):
        assert np.array_equal(getattr(a, field), getattr(b, field))
    assert a.reports == b.reports


def test_containment_every_step(table1_mission, table2_mission):
    for m in (table1_mission, table2_mission):
        log = run(RunConfig(m, curved_leader()), track=False)
        assert containment_fraction(log) == 1.0
        assert all(r.containment_ok for r in log.reports)


def test_method_equivalence(table2_mission, table1_mission):
    cfg = RunConfig(table2_mission, curved_leader())
    assert method_equivalence_check(cfg) < 1e-9
    assert method_equivalence_check(RunConfig(table1_mission, LeaderPath.stationary())) == 0.0
    assert method_equivalence_check(cfg, heading_offset=1e-3) > 1e-4


def test_strict_mode_aborts(table2_mission):
    cfg = RunConfig(table2_mission, LeaderPath.stationary(), safety=SafetyConfig(lambda_min=0.45),
                    strict=True)
    with pytest.raises(SafetyViolation) as info:
        run(cfg)
    assert "eigenvalue" in info.value.report.violations
    log = run(replace(cfg, strict=False))
    assert log.violations and log.summary()["violations"] == len(log.violations)


def test_log_is_read_only(table1_mission):
    log = run(RunConfig(table1_mission, LeaderPath.stationary(), duration=36.0))
    assert len(log) == 3601
    with pytest.raises(ValueError):
        log.Q[0, 0] = 2.0
