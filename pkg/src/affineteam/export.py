"""Writers for trajectory logs: CSV table, JSON document, NDJSON safety stream."""
from __future__ import annotations

import csv
import io
import json

from .sim import TrajectoryLog

CSV_HEADER = ("t", "agent", "frame", "x_des", "y_des", "z_des", "x_act", "y_act", "z_act",
              "q11", "q12", "q21", "q22", "lambda1", "lambda2", "psi_r", "psi_d",
              "containment", "min_dist")


def _num(x) -> str:
    return f"{float(x):.12g}"


def trajectory_csv(log: TrajectoryLog) -> str:
    """One row per (step, agent) in the run's native frame, sorted by time then agent."""
    frame = "global" if log.mode == "method1" else "local"
    desired = log.desired
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for k, t in enumerate(log.times):
        rep = log.reports[k]
        shared = [*map(_num, log.Q[k]), _num(log.strain[k, 1]), _num(log.strain[k, 2]),
                  _num(log.strain[k, 0]), _num(log.strain[k, 3]),
                  int(rep.containment_ok), _num(rep.min_pairwise_dist)]
        for j, agent in enumerate(log.agents):
            w.writerow([_num(t), agent, frame, *map(_num, desired[k, j]),
                        *map(_num, log.actual[k, j]), *shared])
    return buf.getvalue()


def trajectory_json(log: TrajectoryLog) -> str:
    """Full log with both frames per agent, as a single JSON document."""
    steps = []
    for k, t in enumerate(log.times):
        x, y, h, z = log.leader[k]
        steps.append({
            "t": float(t),
            "leader": {"x": x, "y": y, "heading": h, "z_d": z},
            "Q": log.Q[k].tolist(),
            "strain": dict(zip(("psi_r", "lambda1", "lambda2", "psi_d"), log.strain[k].tolist())),
            "agents": [{
                "agent": agent,
                "desired_local": log.desired_local[k, j].tolist(),
                "desired_global": log.desired_global[k, j].tolist(),
                "actual_local": log.actual_local[k, j].tolist(),
                "actual_global": log.actual_global[k, j].tolist(),
            } for j, agent in enumerate(log.agents)],
        })
    doc = {"mode": log.mode, "agents": list(log.agents), "steps": steps}
    return json.dumps(doc, sort_keys=True)


def safety_ndjson(log: TrajectoryLog) -> str:
    lines = []
    for rep in log.reports:
        rec = rep.to_dict()
        rec["violations"] = rep.violations
        lines.append(json.dumps(rec, sort_keys=True))
    return "\n".join(lines) + "\n"
