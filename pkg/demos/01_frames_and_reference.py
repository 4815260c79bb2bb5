"""Leader frame vs ground frame, and the undeformed team layout.

Run: python demos/01_frames_and_reference.py
"""
import math

from affineteam import (FormationSnapshot, Jacobian2, LeaderState, LocalPoint, apply_transform, build_reference,
                        contains_leader, global_to_local, local_to_global)

# Three quadcopters around the quadruped: agent 1 ahead on the heading axis,
# agents 2 and 3 at 120 degrees either side, all 1.25 m out.
ref = build_reference(1.25, 1.25, 2 * math.pi / 3, 4 * math.pi / 3)
for i, p in ref.positions.items():
    print(f"agent {i}: u = {p.u:+.4f}  v = {p.v:+.4f}")

# The quadruped stands at (2, 3) facing +y; the team flies at 1.5 m.
leader = LeaderState(d=(2.0, 3.0), heading=math.pi / 2, z_d=1.5)
for i, p in ref.positions.items():
    g = local_to_global(p, leader)
    back = global_to_local(g, leader)
    print(f"agent {i}: ground ({g.x:+.4f}, {g.y:+.4f}, {g.z:.2f})  back to local ({back.u:+.4f}, {back.v:+.4f})")

snap = apply_transform(ref, Jacobian2.identity())
print("leader enclosed by boundary triangle:", contains_leader(snap))

# Move the followers ahead of the leader: it falls outside the triangle.
ahead = FormationSnapshot(0.0, {1: LocalPoint(1.25, 0.0), 2: LocalPoint(2.0, 1.0),
                                3: LocalPoint(2.0, -1.0)})
print("enclosed with the followers ahead:", contains_leader(ahead))
