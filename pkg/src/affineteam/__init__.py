"""Affine formation planning and replay for a quadcopter team led by a quadruped."""
from .errors import (AssumptionViolation, ConfigError, ConstraintViolation, CorridorUnset,
                     DegenerateHull, DiscontinuousMission, FormationError, ImproperJacobian,
                     OutOfInterval, SafetyViolation, SingularJacobian)
from .formation import (FormationSnapshot, Jacobian2, ReferenceFormation, apply_transform,
                        build_reference, contains_leader)
from .frames import GlobalPoint, LeaderState, LocalPoint, global_to_local, local_to_global
from .planner import (BoundaryPolar, MissionPlan, PhaseSpec, PlanMatrixJ, beta, build_H, build_J,
                      jacobian_from_boundary, plan_mission, schedule_at)
from .safety import (Corridor, SafetyConfig, SafetyReport, StrainDecomposition, check_eigenvalues,
                     corridor_clearance, min_pairwise_distance, polar_decompose)
from .sim import (AgentState, LeaderPath, RunConfig, TrajectoryLog, desired_global,
                  method_equivalence_check, run, step)

__version__ = "0.1.0"
