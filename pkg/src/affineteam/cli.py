"""Command line: ``affineteam {plan,run,verify} --scenario FILE``.

Exit codes: 0 success, 1 configuration or assumption error, 2 safety-gate
failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FormationError, SafetyViolation
from .export import safety_ndjson, trajectory_csv, trajectory_json
from .safety import check_eigenvalues, polar_decompose
from .scenario import load_scenario
from .sim import run
from .verify import verify_scenario

EXIT_OK, EXIT_CONFIG, EXIT_SAFETY = 0, 1, 2


def cmd_plan(args) -> int:
    scn = load_scenario(args.scenario)
    mission = scn.mission()
    Q = mission(args.at)
    dec = polar_decompose(Q)
    safe = check_eigenvalues(dec, scn.safety)
    bp = mission.boundary_at(args.at)
    print(f"scenario {scn.source}  t = {args.at:g} s")
    print(f"boundary  l2 = {bp.l_2:.6f}  l3 = {bp.l_3:.6f}  "
          f"theta2 = {bp.theta_2:.6f}  theta3 = {bp.theta_3:.6f}")
    print(f"Q = [[{Q.q11:.6f}, {Q.q12:.6f}], [{Q.q21:.6f}, {Q.q22:.6f}]]  det = {Q.det:.6f}")
    print(f"psi_r = {dec.psi_r:.6f}  lambda1 = {dec.lambda_1:.6f}  "
          f"lambda2 = {dec.lambda_2:.6f}  psi_d = {dec.psi_d:.6f}")
    print(f"eigenvalue gate (lambda_min = {scn.safety.lambda_min:g}): {'SAFE' if safe else 'UNSAFE'}")
    return EXIT_OK if safe else EXIT_SAFETY


def cmd_run(args) -> int:
    scn = load_scenario(args.scenario)
    cfg = scn.run_config(strict=args.strict or scn.strict)
    try:
        log = run(cfg)
    except SafetyViolation as exc:
        print(f"strict mode abort: {exc}", file=sys.stderr)
        return EXIT_SAFETY

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        (out / "trajectory.csv").write_text(trajectory_csv(log))
    else:
        (out / "trajectory.json").write_text(trajectory_json(log))
    (out / "safety.ndjson").write_text(safety_ndjson(log))
    summary = log.summary()
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    lam_ok = summary["min_lambda2"] >= scn.safety.lambda_min
    print(f"scenario {scn.source}  mode {log.mode}  steps {summary['steps']}")
    print("safety checks")
    print(f"  min lambda2           {summary['min_lambda2']:.6f}  "
          f"(gate {scn.safety.lambda_min:g}: {'ok' if lam_ok else 'FAIL'})")
    print(f"  containment fraction  {summary['containment_fraction']:.6f}")
    if summary["corridor_fraction"] is not None:
        print(f"  corridor fraction     {summary['corridor_fraction']:.6f}")
    print(f"  min pairwise distance {summary['min_pairwise_dist']:.6f} m")
    print(f"  violations            {summary['violations']}")
    print("tracking (simulated P-law)")
    print(f"  max tracking error    {summary['max_tracking_error']:.6f} m")
    print(f"wrote {out}")
    return EXIT_OK if summary["violations"] == 0 else EXIT_SAFETY


def cmd_verify(args) -> int:
    scn = load_scenario(args.scenario)
    checks = verify_scenario(scn)
    for c in checks:
        extra = f"  residual {c.residual:.3e} (bound {c.bound:.3e})" if c.passed is not None else ""
        print(f"{c.status}  {c.name}{extra}  {c.detail}".rstrip())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affineteam", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--scenario", required=True,
                        help="scenario file (bundled: table1.cfg, table2.cfg)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("plan", cmd_plan, "evaluate Q(t), its decomposition and the eigenvalue gate")
    sp.add_argument("--at", type=float, required=True, help="time in seconds")
    sp = add("run", cmd_run, "simulate the scenario and export logs")
    sp.add_argument("--out", default="out", help="output directory")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--strict", action="store_true", help="abort on the first safety violation")
    add("verify", cmd_verify, "run the property checks on a scenario")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
