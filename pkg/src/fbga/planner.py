"""Forward-backward speed planning under generic g-g-v constraints.

The path is split into its ``N - 1`` segments, each driven with constant
longitudinal acceleration.  Three sweeps build the profile:

1. :func:`vel_sat` caps the speed at every node from the lateral limits;
2. :func:`forward` applies, segment by segment, the largest acceleration
   that keeps the segment end inside the envelope;
3. :func:`backward` walks back from the end and replaces the segments the
   forward sweep could not close with feasible braking.

:func:`plan` chains them and sums the segment times.
"""

from __future__ import annotations

import math
from functools import partial
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .envelope import GgvEnvelope, lambda_pyramid, phi
from .path import Path
from .rootfind import DEFAULT_CONFIG, SolverConfig, solve

__all__ = [
    "BoundaryConditions",
    "PlanResult",
    "Trajectory",
    "vel_sat",
    "forward",
    "backward",
    "plan",
    "segment_time",
    "time_parameterize",
    "FORWARD_VALID",
    "AVG_REPAIRED",
    "BACKWARD_SOLVED",
]

# per-segment diagnostic flags
FORWARD_VALID = 1
AVG_REPAIRED = 2
BACKWARD_SOLVED = 4
BRAKE_FALLBACK = 8  # backward root search failed, strongest braking applied

VALID_FORWARD_RTOL = 1e-9
# a root accepted by the sweeps must satisfy the full signed distance to this
_FEAS_TOL = 1e-6


@dataclass(frozen=True)
class BoundaryConditions:
    v_ini: float = 0.0

    def __post_init__(self):
        if not self.v_ini >= 0:
            raise ValueError(f"v_ini must be >= 0, got {self.v_ini}")


@dataclass
class PlanResult:
    v_x: np.ndarray
    a_x: np.ndarray
    a_y: np.ndarray
    T: float
    v_sat: np.ndarray
    flags: np.ndarray
    infeasible: bool = False
    warnings: list = field(default_factory=list)
    required_v_ini: Optional[float] = None
    solve_calls: int = 0

    @property
    def n(self) -> int:
        return self.v_x.size


def _dpm(env: GgvEnvelope, ax: float, ay: float, v: float) -> float:
    # scalar signed distance, inlined for the hot loops
    ay_lo, ay_hi = env.ay_bounds(v)
    ay_c = ay_lo if ay < ay_lo else (ay_hi if ay > ay_hi else ay)
    ax_lo, ax_hi = env.ax_bounds(ay_c, v)
    return lambda_pyramid(phi(ax, ax_lo, ax_hi), phi(ay, ay_lo, ay_hi))


def _dpm_upper(env: GgvEnvelope, ax: float, ay: float, v: float) -> float:
    # signed distance ignoring the braking face; its zero is the largest
    # feasible acceleration
    ay_lo, ay_hi = env.ay_bounds(v)
    ay_c = ay_lo if ay < ay_lo else (ay_hi if ay > ay_hi else ay)
    ax_lo, ax_hi = env.ax_bounds(ay_c, v)
    y = phi(ay, ay_lo, ay_hi)
    return max(phi(ax, ax_lo, ax_hi) - 1.0, y - 1.0, -1.0 - y)


def _dpm_lower(env: GgvEnvelope, ax: float, ay: float, v: float) -> float:
    # signed distance ignoring the traction face; its zero is the strongest
    # feasible braking
    ay_lo, ay_hi = env.ay_bounds(v)
    ay_c = ay_lo if ay < ay_lo else (ay_hi if ay > ay_hi else ay)
    ax_lo, ax_hi = env.ax_bounds(ay_c, v)
    y = phi(ay, ay_lo, ay_hi)
    return max(-1.0 - phi(ax, ax_lo, ax_hi), y - 1.0, -1.0 - y)


def _ax_range(env: GgvEnvelope, kappa: float, v: float) -> tuple[float, float]:
    ay = kappa * (v * v)
    ay_lo, ay_hi = env.ay_bounds(v)
    ay_c = ay_lo if ay < ay_lo else (ay_hi if ay > ay_hi else ay)
    return env.ax_bounds(ay_c, v)


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _solve(counter, f, lo, hi, cfg, side):
    if counter is not None:
        counter.n += 1
    return solve(f, lo, hi, cfg, side=side)


def vel_sat(path: Path, env: GgvEnvelope, cfg: SolverConfig = DEFAULT_CONFIG,
            _counter=None) -> np.ndarray:
    """Largest speed at each node keeping ``kappa * v**2`` inside the lateral limits."""
    v_max = float(env.v_max)
    out = np.empty(path.n)
    for i, k in enumerate(path.kappa.tolist()):
        if k >= 0.0:
            def H(V, k=k):
                return k * (V * V) - env.ay_bounds(V)[1]
        else:
            def H(V, k=k):
                return k * (V * V) - env.ay_bounds(V)[0]
        # keep the lateral acceleration on the admissible side of the bound
        v = _solve(_counter, H, 0.0, v_max, cfg, "neg" if k >= 0.0 else "pos")
        out[i] = v_max if v is None else v
    return out


def forward(path: Path, env: GgvEnvelope, v_ini: float, v_sat: np.ndarray,
            cfg: SolverConfig = DEFAULT_CONFIG, _counter=None):
    """Forward sweep.

    Returns ``(v_x, a_x)``; ``a_x[i]`` is ``None`` where no acceleration in
    the segment's range keeps its end inside the envelope, in which case
    the next node restarts from its saturated speed.
    """
    s = path.s.tolist()
    kap = path.kappa.tolist()
    vs = v_sat.tolist() if isinstance(v_sat, np.ndarray) else list(v_sat)
    n = len(s)
    v_x = [0.0] * n
    a_x: list = [None] * (n - 1)
    v0 = float(v_ini)
    v_x[0] = v0
    sqrt = math.sqrt
    for i in range(n - 1):
        k0, k1 = kap[i], kap[i + 1]
        L = s[i + 1] - s[i]
        ax_lo, ax_hi = _ax_range(env, k0, v0)
        w0 = v0 * v0

        def G(A, L=L, k1=k1, w0=w0, d=_dpm):
            w1 = 2.0 * L * A + w0
            if w1 < 0.0:
                return math.nan
            # same rounding as the stored profile, a_y = kappa * v**2
            v1 = sqrt(w1)
            return d(env, A, k1 * (v1 * v1), v1)

        if G(ax_hi) <= 0.0:
            a = ax_hi
        else:
            a = _solve(_counter, partial(G, d=_dpm_upper), ax_lo, ax_hi, cfg, "neg")
            if a is not None and G(a) > _FEAS_TOL:
                a = None  # end state leaves the envelope through the braking face
        if a is None:
            v1 = vs[i + 1]
        else:
            w1 = 2.0 * L * a + w0
            v1 = min(sqrt(w1) if w1 > 0.0 else 0.0, vs[i + 1])
        a_x[i] = a
        v_x[i + 1] = v1
        v0 = v1
    return np.array(v_x), a_x


def backward(path: Path, env: GgvEnvelope, v_sat: np.ndarray, v_x, a_x,
             cfg: SolverConfig = DEFAULT_CONFIG, _counter=None, flags=None):
    """Backward sweep repairing segments the forward sweep left inconsistent.

    Returns ``(v_x, a_x)`` as float arrays; every segment is kinematically
    consistent on return.  ``flags``, when given, receives per-segment
    diagnostic bits.
    """
    s = path.s.tolist()
    kap = path.kappa.tolist()
    v = list(map(float, v_x))
    a = list(a_x)
    n = len(s)
    if flags is None:
        flags = np.zeros(n - 1, dtype=np.int64)
    sqrt = math.sqrt
    for i in range(n - 1, 0, -1):
        j = i - 1  # segment index, nodes j -> i
        k0, k1 = kap[j], kap[i]
        v0, v1 = v[j], v[i]
        a0 = a[j]
        L = s[i] - s[j]
        if a0 is not None:
            w = v0 * v0 + 2.0 * L * a0
            if w >= 0.0 and abs(sqrt(w) - v1) <= VALID_FORWARD_RTOL * max(v1, 1.0):
                flags[j] |= FORWARD_VALID
                continue

        w1 = v1 * v1
        ax_lo, ax_hi = _ax_range(env, k1, v1)
        a_avg = (w1 - v0 * v0) / (2.0 * L)
        r = w1 - 2.0 * L * ax_lo
        reach_max = sqrt(r) if r >= 0.0 else -math.inf
        r = w1 - 2.0 * L * ax_hi
        reach_min = sqrt(r) if r >= 0.0 else 0.0
        valid_v0 = reach_min <= v0 <= reach_max
        valid_ax = ax_lo <= a_avg <= ax_hi

        def G(A, L=L, k0=k0, w1=w1, d=_dpm):
            w0 = w1 - 2.0 * L * A
            if w0 < 0.0:
                return math.nan
            v0 = sqrt(w0)
            return d(env, A, k0 * (v0 * v0), v0)

        if valid_ax and valid_v0 and G(a_avg) <= 0.0:
            a[j] = a_avg
            flags[j] |= AVG_REPAIRED
            continue

        if G(ax_lo) <= 0.0:
            acc = ax_lo
        else:
            acc = _solve(_counter, partial(G, d=_dpm_lower), ax_lo, ax_hi, cfg, "neg")
            if acc is None or G(acc) > _FEAS_TOL:
                acc = ax_lo
                flags[j] |= BRAKE_FALLBACK
        w0 = w1 - 2.0 * L * acc
        if w0 < 0.0:
            # cannot be reached even from standstill; keep the segment consistent
            w0 = 0.0
            acc = w1 / (2.0 * L)
            flags[j] |= BRAKE_FALLBACK
        v[j] = sqrt(w0)
        a[j] = acc
        flags[j] |= BACKWARD_SOLVED
    return np.array(v), np.array(a, dtype=float)


def segment_time(v0: float, a: float, L: float) -> float:
    """Time to cover ``L`` metres from speed ``v0`` at constant acceleration ``a``.

    Evaluated as ``2 L / (v0 + v1)``, algebraically equal to
    ``(-v0 + sqrt(2 a L + v0**2)) / a`` and free of the 0/0 at ``a = 0``.
    """
    w1 = 2.0 * a * L + v0 * v0
    if w1 < 0.0:
        raise ValueError(f"segment unreachable: v0={v0}, a={a}, L={L}")
    denom = v0 + math.sqrt(w1)
    if denom <= 0.0:
        raise ValueError(f"segment never completed: v0={v0}, a={a}, L={L}")
    return 2.0 * L / denom


def plan(path: Path, env: GgvEnvelope, bc: BoundaryConditions | float = BoundaryConditions(),
         cfg: SolverConfig = DEFAULT_CONFIG) -> PlanResult:
    """Time-optimal speed profile along ``path`` starting at ``bc.v_ini``."""
    if not isinstance(bc, BoundaryConditions):
        bc = BoundaryConditions(float(bc))
    counter = _Counter()
    warnings = []
    infeasible = False
    vsat = vel_sat(path, env, cfg, counter)
    v_ini = bc.v_ini
    if v_ini > vsat[0]:
        warnings.append(
            f"v_ini={v_ini:g} exceeds saturated speed {vsat[0]:g} at the first node; clipped")
        v_ini = float(vsat[0])
        infeasible = True
    v_fw, a_fw = forward(path, env, v_ini, vsat, cfg, counter)
    flags = np.zeros(path.n - 1, dtype=np.int64)
    v_x, a_x = backward(path, env, vsat, v_fw, a_fw, cfg, counter, flags)

    required = None
    if v_x[0] < v_ini * (1.0 - 1e-12):
        required = float(v_x[0])
        warnings.append(
            f"initial speed lowered from {v_ini:g} to {required:g} to stay feasible")
        infeasible = True
    if np.any(flags & BRAKE_FALLBACK):
        idx = int(np.nonzero(flags & BRAKE_FALLBACK)[0][0])
        warnings.append(f"envelope infeasible while braking on segment {idx}")

    L = np.diff(path.s)
    if np.any(v_x[:-1] + v_x[1:] <= 0.0):
        # the repaired profile comes to rest on the path
        warnings.append("profile stops on the path; maneuver time is infinite")
        infeasible = True
        T = math.inf
    else:
        T = math.fsum(segment_time(v0, a, l) for v0, a, l in
                      zip(v_x[:-1].tolist(), a_x.tolist(), L.tolist()))
    return PlanResult(
        v_x=v_x,
        a_x=a_x,
        a_y=path.kappa * v_x**2,
        T=T,
        v_sat=vsat,
        flags=flags,
        infeasible=infeasible,
        warnings=warnings,
        required_v_ini=required,
        solve_calls=counter.n,
    )


@dataclass
class Trajectory:
    t: np.ndarray
    s: np.ndarray
    v_x: np.ndarray
    a_x: np.ndarray
    a_y: np.ndarray


def time_parameterize(res: PlanResult, path: Path, dt: float) -> Trajectory:
    """Sample the plan uniformly in time.

    Within each segment the motion is uniformly accelerated, so position and
    speed follow in closed form.  The last sample is at exactly ``T``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    v = res.v_x
    a = res.a_x
    L = np.diff(path.s)
    seg_t = np.array([segment_time(v0, a0, l) for v0, a0, l in zip(v[:-1], a, L)])
    t_knots = np.concatenate([[0.0], np.cumsum(seg_t)])
    T = float(res.T)  # fsum total; the cumulative sum may differ in the last ulp
    t = np.arange(0.0, T, dt)
    if t.size == 0 or T - t[-1] > 1e-12 * max(T, 1.0):
        t = np.append(t, T)
    else:
        t[-1] = T
    seg = np.clip(np.searchsorted(t_knots, t, side="right") - 1, 0, L.size - 1)
    tau = np.minimum(t - t_knots[seg], seg_t[seg])
    v0 = v[seg]
    a0 = a[seg]
    ds = np.minimum(v0 * tau + 0.5 * a0 * tau**2, L[seg])
    s = path.s[seg] + ds
    vel = np.sqrt(np.maximum(2.0 * a0 * ds + v0**2, 0.0))
    kappa = np.interp(s, path.s, path.kappa)
    return Trajectory(t=t, s=s, v_x=vel, a_x=a0.copy(), a_y=kappa * vel**2)
