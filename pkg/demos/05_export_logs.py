"""Write the CSV trajectory, JSON log and NDJSON safety stream for a run.

Run: python demos/05_export_logs.py [outdir]
"""
import json
import sys
from pathlib import Path

from affineteam import run
from affineteam.export import safety_ndjson, trajectory_csv, trajectory_json
from affineteam.scenario import bundled_scenario

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

log = run(bundled_scenario("table1").run_config())
(out / "table1.csv").write_text(trajectory_csv(log))
(out / "table1.json").write_text(trajectory_json(log))
(out / "table1_safety.ndjson").write_text(safety_ndjson(log))
print(json.dumps(log.summary(), indent=2))
print("first rows:")
print("\n".join((out / "table1.csv").read_text().splitlines()[:4]))
