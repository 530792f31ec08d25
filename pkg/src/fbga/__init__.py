"""Time-optimal speed profiles along fixed paths under g-g-v acceleration envelopes.

The planner (:func:`plan`) runs a saturated-speed pass, a forward pass and a
backward pass over a discretized path; :func:`oracle_plan` is an
independent brute-force reference used to cross-check it.
"""

from importlib import resources

from .envelope import (
    AccelPoint,
    AnalyticEnvelope,
    BoxEnvelope,
    EnvelopeError,
    GgvEnvelope,
    SplineGridEnvelope,
    envelope_from_dict,
    lambda_pyramid,
    lateral_bounds,
    load_envelope,
    longitudinal_bounds,
    phi,
    signed_distance,
    signed_distance_array,
)
from .oracle import OracleConfig, OracleResult, oracle_plan
from .path import Path, PathError, load_path, random_track, resample, synth_track, write_path
from .planner import (
    BoundaryConditions,
    PlanResult,
    Trajectory,
    backward,
    forward,
    plan,
    segment_time,
    time_parameterize,
    vel_sat,
)
from .rootfind import DEFAULT_CONFIG, SolverConfig, solve

__version__ = "0.1.0"


def sample_file(name: str) -> str:
    """Filesystem path of a bundled sample (e.g. ``"two_corner_300m.csv"``)."""
    return str(resources.files(__package__) / "data" / name)
