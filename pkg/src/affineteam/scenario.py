"""Scenario files: an INI document describing reference, phases, leader, safety and run.

Lengths are meters, times seconds, angles radians. Any angle may also be
written as a multiple of pi (``2pi/3``, ``-pi/2``, ``0.5*pi``).

::

    [reference]
    l_1_0 = 1.25
    l_0 = 1.25
    theta_2_0 = 2pi/3
    theta_3_0 = 4pi/3

    [phase.1]          ; one section per phase, numbered in time order
    t0 = 5
    tf = 15
    l2_0 = 1.25        ; radial distances of agents 2 and 3 at t0 ...
    l3_0 = 1.25
    l2_f = 0.5         ; ... and at tf
    l3_f = 0.7
    ; theta2_0, theta3_0, theta2_f, theta3_f default to the reference angles

    [leader]
    samples =          ; t  x  y  heading  z_d   (or: file = path.csv)
        0   0    0  0  1.5
        35  10.5 0  0  1.5

    [safety]
    l_min = 0.3
    lambda_min = 0.35
    min_separation = 0.5
    corridor = 0 0.7 5.8 7.0   ; center_y half_width x_min x_max (optional)

    [run]
    mode = method2     ; method1 | method2
    dt = 0.01
    duration = 35
    gain = 2.0
    v_max = 1.0
    strict = false
"""
from __future__ import annotations

import configparser
import csv
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import AssumptionViolation, ConfigError, ConstraintViolation
from .formation import ReferenceFormation, build_reference
from .planner import BoundaryPolar, L_MIN_DEFAULT, MissionPlan, PhaseSpec, build_J, check_constraints
from .safety import Corridor, SafetyConfig
from .sim import LeaderPath, RunConfig

_PI_EXPR = re.compile(
    r"^\s*(?P<coef>[+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+\.?\d*|\.\d+))?\s*$",
    re.IGNORECASE)

BUNDLED = ("table1.cfg", "table2.cfg")


def parse_angle(text: str) -> float:
    """Parse radians or a pi expression such as ``2pi/3``."""
    m = _PI_EXPR.match(text)
    if m is None:
        return float(text)
    coef = m.group("coef")
    if coef in ("", "+"):
        k = 1.0
    elif coef == "-":
        k = -1.0
    else:
        k = float(coef)
    den = float(m.group("den")) if m.group("den") else 1.0
    return k * math.pi / den


@dataclass(frozen=True)
class Scenario:
    reference: ReferenceFormation
    phases: tuple
    leader: LeaderPath
    safety: SafetyConfig
    l_min: float = L_MIN_DEFAULT
    mode: str = "method1"
    dt: float = 0.01
    duration: Optional[float] = None
    gain: float = 2.0
    v_max: float = 1.0
    strict: bool = False
    source: str = "<string>"

    def mission(self) -> MissionPlan:
        return MissionPlan(self.phases, build_J(self.reference, self.l_min))

    def run_config(self, **overrides) -> RunConfig:
        kw = dict(mission=self.mission(), leader=self.leader, mode=self.mode, dt=self.dt,
                  duration=self.duration, tracking_gain=self.gain, v_max=self.v_max,
                  safety=self.safety, strict=self.strict)
        kw.update(overrides)
        return RunConfig(**kw)


class _Reader:
    def __init__(self, text: str, source: str):
        self.source = source
        self.lines = text.splitlines()
        self.cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        try:
            self.cp.read_string(text, source=source)
        except configparser.Error as exc:
            raise ConfigError(f"{source}: {exc}") from None

    def where(self, section: str, key: Optional[str] = None) -> str:
        in_section = False
        sec_line = None
        for n, line in enumerate(self.lines, start=1):
            s = line.strip()
            if s.startswith("["):
                in_section = s == f"[{section}]"
                if in_section:
                    sec_line = n
                continue
            if in_section and key is not None and re.match(rf"{re.escape(key)}\s*[=:]", s):
                return f"{self.source}:{n} [{section}] {key}"
        loc = f"{self.source}:{sec_line}" if sec_line else self.source
        return f"{loc} [{section}]" + (f" {key}" if key else "")

    def fail(self, section, key, msg):
        raise ConfigError(f"{self.where(section, key)}: {msg}")

    def require_section(self, section):
        if not self.cp.has_section(section):
            raise ConfigError(f"{self.source}: missing section [{section}]")
        return self.cp[section]

    def get(self, section, key, conv=float, default=None, required=True):
        sec = self.cp[section] if self.cp.has_section(section) else {}
        if key not in sec:
            if required and default is None:
                self.fail(section, key, "missing required field")
            return default
        raw = sec[key]
        try:
            return conv(raw)
        except (TypeError, ValueError) as exc:
            self.fail(section, key, f"cannot parse {raw!r} ({exc})")


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean")


def _parse_samples(text: str) -> list:
    rows = []
    for line in text.strip().splitlines():
        parts = line.replace(",", " ").split()
        if not parts:
            continue
        if len(parts) != 5:
            raise ValueError(f"sample row needs 5 columns (t x y heading z_d), got {line.strip()!r}")
        t, x, y, h, z = parts
        rows.append([float(t), float(x), float(y), parse_angle(h), float(z)])
    return rows


def read_leader_csv(path) -> LeaderPath:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = [[float(r["t"]), float(r["x"]), float(r["y"]), parse_angle(r["heading"]),
                 float(r["z_d"])] for r in reader]
    return LeaderPath(rows)


def parse_scenario(text: str, source: str = "<string>", base_dir=None) -> Scenario:
    rd = _Reader(text, source)

    rd.require_section("reference")
    vals = {k: rd.get("reference", k, conv) for k, conv in
            (("l_1_0", float), ("l_0", float), ("theta_2_0", parse_angle), ("theta_3_0", parse_angle))}
    try:
        ref = build_reference(vals["l_1_0"], vals["l_0"], vals["theta_2_0"], vals["theta_3_0"])
    except AssumptionViolation as exc:
        raise ConfigError(f"{rd.where('reference')}: {exc}") from None

    l_min = rd.get("safety", "l_min", float, default=L_MIN_DEFAULT)
    try:
        build_J(ref, l_min)
    except AssumptionViolation as exc:
        raise ConfigError(f"{rd.where('safety', 'l_min')}: {exc}") from None

    phase_secs = sorted((s for s in rd.cp.sections() if s.startswith("phase.")),
                        key=lambda s: int(s.split(".", 1)[1]) if s.split(".", 1)[1].isdigit() else 1 << 30)
    if not phase_secs:
        raise ConfigError(f"{source}: at least one [phase.N] section is required")
    phases = []
    for sec in phase_secs:
        t0 = rd.get(sec, "t0")
        tf = rd.get(sec, "tf")
        if not tf > t0:
            rd.fail(sec, "tf", f"phase must end after it starts (t0={t0}, tf={tf})")
        ends = {}
        for tag in ("0", "f"):
            bp = BoundaryPolar(
                rd.get(sec, f"l2_{tag}"), rd.get(sec, f"l3_{tag}"),
                rd.get(sec, f"theta2_{tag}", parse_angle, default=ref.theta_2_0),
                rd.get(sec, f"theta3_{tag}", parse_angle, default=ref.theta_3_0))
            try:
                check_constraints(bp, l_min, ref.l_0)
            except ConstraintViolation as exc:
                bad = "l2" if "l_2" in str(exc) else "l3" if "l_3" in str(exc) else "theta2"
                rd.fail(sec, f"{bad}_{tag}", str(exc))
            ends[tag] = bp
        phases.append(PhaseSpec(t0, tf, ends["0"], ends["f"]))

    rd.require_section("leader")
    if "file" in rd.cp["leader"]:
        path = Path(rd.cp["leader"]["file"])
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        try:
            leader = read_leader_csv(path)
        except (OSError, KeyError, ValueError) as exc:
            rd.fail("leader", "file", f"cannot load leader samples from {path} ({exc})")
    else:
        leader = rd.get("leader", "samples", lambda s: LeaderPath(_parse_samples(s)))

    corridor = rd.get("safety", "corridor", _parse_corridor, required=False)
    try:
        safety = SafetyConfig(
            lambda_min=rd.get("safety", "lambda_min", float, default=0.35),
            min_separation=rd.get("safety", "min_separation", float, default=0.5),
            corridor=corridor)
    except ValueError as exc:
        raise ConfigError(f"{rd.where('safety')}: {exc}") from None

    mode = rd.get("run", "mode", str.strip, default="method1")
    if mode not in ("method1", "method2"):
        rd.fail("run", "mode", f"expected method1 or method2, got {mode!r}")
    scn = Scenario(
        reference=ref, phases=tuple(phases), leader=leader, safety=safety, l_min=l_min,
        mode=mode,
        dt=rd.get("run", "dt", float, default=0.01),
        duration=rd.get("run", "duration", float, required=False),
        gain=rd.get("run", "gain", float, default=2.0),
        v_max=rd.get("run", "v_max", float, default=1.0),
        strict=rd.get("run", "strict", _parse_bool, default=False, required=False) or False,
        source=source,
    )
    try:
        scn.mission()
    except (ConstraintViolation, ValueError) as exc:
        raise ConfigError(f"{source} [phases]: {exc}") from None
    return scn


def _parse_corridor(text: str) -> Corridor:
    parts = [float(p) for p in text.replace(",", " ").split()]
    if len(parts) != 4:
        raise ValueError("corridor needs center_y half_width x_min x_max")
    return Corridor(*parts)


def load_scenario(path) -> Scenario:
    """Load a scenario from disk; bare bundled names (``table2.cfg``) also resolve."""
    p = Path(path)
    if not p.exists() and p.name in BUNDLED and len(p.parts) == 1:
        text = resources.files("affineteam.scenarios").joinpath(p.name).read_text()
        return parse_scenario(text, source=p.name)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario {path}: {exc}") from None
    return parse_scenario(text, source=str(path), base_dir=p.parent)


def bundled_scenario(name: str) -> Scenario:
    if not name.endswith(".cfg"):
        name += ".cfg"
    if name not in BUNDLED:
        raise KeyError(f"no bundled scenario {name!r}; choose from {BUNDLED}")
    text = resources.files("affineteam.scenarios").joinpath(name).read_text()
    return parse_scenario(text, source=name)


def emit_scenario(scn: Scenario) -> str:
    """Serialise a scenario; floats are written with ``repr`` so re-parsing is exact."""
    ref = scn.reference
    out = ["[reference]",
           f"l_1_0 = {ref.l_1_0!r}", f"l_0 = {ref.l_0!r}",
           f"theta_2_0 = {ref.theta_2_0!r}", f"theta_3_0 = {ref.theta_3_0!r}", ""]
    for k, ph in enumerate(scn.phases, start=1):
        out += [f"[phase.{k}]", f"t0 = {ph.t_0!r}", f"tf = {ph.t_f!r}"]
        for tag, bp in (("0", ph.start), ("f", ph.end)):
            out += [f"l2_{tag} = {bp.l_2!r}", f"l3_{tag} = {bp.l_3!r}",
                    f"theta2_{tag} = {bp.theta_2!r}", f"theta3_{tag} = {bp.theta_3!r}"]
        out.append("")
    out += ["[leader]", "samples ="]
    out += ["    " + " ".join(repr(float(v)) for v in row) for row in scn.leader.samples]
    out += ["", "[safety]", f"l_min = {scn.l_min!r}",
            f"lambda_min = {scn.safety.lambda_min!r}",
            f"min_separation = {scn.safety.min_separation!r}"]
    c = scn.safety.corridor
    if c is not None:
        out.append(f"corridor = {c.center_y!r} {c.half_width!r} {c.x_min!r} {c.x_max!r}")
    out += ["", "[run]", f"mode = {scn.mode}", f"dt = {scn.dt!r}"]
    if scn.duration is not None:
        out.append(f"duration = {scn.duration!r}")
    out += [f"gain = {scn.gain!r}", f"v_max = {scn.v_max!r}",
            f"strict = {'true' if scn.strict else 'false'}", ""]
    return "\n".join(out)
