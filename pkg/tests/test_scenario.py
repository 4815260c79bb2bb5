import math

import pytest

from affineteam.errors import ConfigError
from affineteam.scenario import (bundled_scenario, emit_scenario, load_scenario, parse_angle,
                                 parse_scenario)


@pytest.mark.parametrize("text, value", [
    ("2pi/3", 2 * math.pi / 3), ("4pi/3", 4 * math.pi / 3), ("pi", math.pi),
    ("-pi/2", -math.pi / 2), ("0.5*pi", 0.5 * math.pi), ("PI / 4", math.pi / 4),
    ("1.25", 1.25), ("-0.3", -0.3),
])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


def test_parse_angle_rejects_garbage():
    with pytest.raises(ValueError):
        parse_angle("two pi")


def test_bundled_table_parameters():
    t1, t2 = bundled_scenario("table1"), bundled_scenario("table2.cfg")
    for s in (t1, t2):
        assert (s.reference.l_1_0, s.reference.l_0) == (1.25, 1.25)
        assert s.reference.theta_2_0 == pytest.approx(2 * math.pi / 3)
        assert s.reference.theta_3_0 == pytest.approx(4 * math.pi / 3)
        assert s.safety.lambda_min == 0.35
    (p,) = t1.phases
    assert (p.t_0, p.t_f, p.start.l_2, p.start.l_3, p.end.l_2, p.end.l_3) == (0, 35, 1.25, 1.25, 1.25, 1.25)
    rows = [(p.t_0, p.t_f, p.start.l_2, p.start.l_3, p.end.l_2, p.end.l_3) for p in t2.phases]
    assert rows == [(5, 15, 1.25, 1.25, 0.5, 0.7), (15, 25, 0.5, 0.7, 0.5, 0.7),
                    (25, 35, 0.5, 0.7, 1.25, 1.25)]
    assert t1.mode == "method1" and t2.mode == "method2"


@pytest.mark.parametrize("name", ["table1", "table2"])
def test_round_trip(name):
    s = bundled_scenario(name)
    again = parse_scenario(emit_scenario(s))
    assert again.run_config() == s.run_config()
    assert emit_scenario(again) == emit_scenario(s)


BASE = """
[reference]
l_1_0 = 1.25
l_0 = 1.25
theta_2_0 = {th2}
theta_3_0 = {th3}

[phase.1]
t0 = 0
tf = 10
l2_0 = 1.25
l3_0 = 1.25
l2_f = {l2f}
l3_f = 0.7

[leader]
samples =
    0 0 0 0 1.5

[run]
dt = {dt}
"""


def scenario_text(th2="2pi/3", th3="4pi/3", l2f="0.5", dt="0.01"):
    return BASE.format(th2=th2, th3=th3, l2f=l2f, dt=dt)


def test_defaults_fill_in():
    s = parse_scenario(scenario_text())
    assert s.l_min == 0.3 and s.safety.min_separation == 0.5 and s.safety.corridor is None
    assert s.mode == "method1" and s.gain == 2.0 and s.v_max == 1.0 and s.strict is False
    assert s.run_config().duration == 10.0


def test_assumption_error_is_located():
    with pytest.raises(ConfigError, match=r"<string>:\d+ \[reference\].*theta_2_0 < theta_3_0"):
        parse_scenario(scenario_text(th2="4pi/3", th3="2pi/3"))


def test_radial_bound_error_is_located():
    with pytest.raises(ConfigError, match=r":13 \[phase.1\] l2_f: radial bound l_min <= l_2 <= l_0"):
        parse_scenario(scenario_text(l2f="0.2"))


def test_bad_number_is_located():
    with pytest.raises(ConfigError, match=r"\[phase.1\] l2_f: cannot parse"):
        parse_scenario(scenario_text(l2f="half"))


def test_missing_section_and_field():
    with pytest.raises(ConfigError, match="missing section"):
        parse_scenario("[phase.1]\nt0 = 0\n")
    with pytest.raises(ConfigError, match=r"\[phase.1\] l3_f: missing required field"):
        parse_scenario(scenario_text().replace("l3_f = 0.7\n", ""))


def test_syntax_error():
    with pytest.raises(ConfigError):
        parse_scenario("not an ini file")


def test_unstable_step_fails_at_run_config():
    s = parse_scenario(scenario_text(dt="0.6"))
    with pytest.raises(ConfigError, match="stability"):
        s.run_config()


def test_leader_file(tmp_path):
    (tmp_path / "walk.csv").write_text("t,x,y,heading,z_d\n0,0,0,0,1.5\n10,1,0,pi/2,1.5\n")
    text = scenario_text().replace("samples =\n    0 0 0 0 1.5", "file = walk.csv")
    cfg = tmp_path / "s.cfg"
    cfg.write_text(text)
    s = load_scenario(cfg)
    assert s.leader.at(5.0).heading == pytest.approx(math.pi / 4)
    (tmp_path / "walk.csv").unlink()
    with pytest.raises(ConfigError, match=r"\[leader\] file"):
        load_scenario(cfg)


def test_load_bundled_by_name_and_missing_file(tmp_path):
    assert load_scenario("table2.cfg").source == "table2.cfg"
    with pytest.raises(ConfigError):
        load_scenario(tmp_path / "nope.cfg")
