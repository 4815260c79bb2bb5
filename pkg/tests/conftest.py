import math

import pytest

from affineteam import BoundaryPolar, PhaseSpec, build_J, build_reference, plan_mission
from affineteam.sim import LeaderPath

TH2, TH3 = 2 * math.pi / 3, 4 * math.pi / 3


@pytest.fixture
def ref():
    return build_reference(1.25, 1.25, TH2, TH3)


@pytest.fixture
def J(ref):
    return build_J(ref)


def polar(l2, l3, th2=TH2, th3=TH3):
    return BoundaryPolar(l2, l3, th2, th3)


def table2_phases():
    return [
        PhaseSpec(5.0, 15.0, polar(1.25, 1.25), polar(0.5, 0.7)),
        PhaseSpec(15.0, 25.0, polar(0.5, 0.7), polar(0.5, 0.7)),
        PhaseSpec(25.0, 35.0, polar(0.5, 0.7), polar(1.25, 1.25)),
    ]


@pytest.fixture
def table2_mission(J):
    return plan_mission(table2_phases(), J)


@pytest.fixture
def table1_mission(J):
    return plan_mission([PhaseSpec(0.0, 35.0, polar(1.25, 1.25), polar(1.25, 1.25))], J)


def curved_leader(duration=35.0, n=141):
    """Smooth S-shaped walk with heading tangent to the path."""
    rows = []
    for k in range(n):
        t = duration * k / (n - 1)
        x = 0.3 * t
        y = 1.5 * math.sin(0.15 * t)
        heading = math.atan2(1.5 * 0.15 * math.cos(0.15 * t), 0.3)
        rows.append([t, x, y, heading, 1.5 + 0.1 * math.sin(0.2 * t)])
    return LeaderPath(rows)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
