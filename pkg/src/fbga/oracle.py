"""Brute-force reference solver for cross-checking the planner.

Same segment model as the planner (constant acceleration per segment,
envelope enforced at the segment end points) but no root finding and no
signed distance: candidates are enumerated on grids and checked directly
against the envelope bounds.

1. speed caps from the lateral limits, by scanning a geometric speed grid;
2. forward sweep: the largest reachable end speed of every segment;
3. backward sweep: the largest start speed from which the (already fixed)
   end speed can be reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .envelope import GgvEnvelope
from .path import Path

__all__ = ["OracleConfig", "OracleResult", "oracle_plan"]

# slack on the bound checks, absorbs rounding at exact boundary points
CHECK_TOL = 1e-9


@dataclass(frozen=True)
class OracleConfig:
    v_levels: int = 2000
    v_floor: float = 0.1

    def __post_init__(self):
        if self.v_levels < 100:
            raise ValueError(f"v_levels must be >= 100, got {self.v_levels}")
        if not self.v_floor > 0:
            raise ValueError(f"v_floor must be > 0, got {self.v_floor}")


@dataclass
class OracleResult:
    v_x: np.ndarray
    a_x: np.ndarray
    a_y: np.ndarray
    T: float
    v_cap: np.ndarray
    v_step: np.ndarray  # candidate spacing used at each node
    feasible: bool = True
    warnings: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.v_x.size


def _node_ok(env, kappa, v, a):
    """Vectorized check that acceleration ``a`` is allowed at speed ``v``."""
    ay = kappa * (v * v)
    lo, hi = env.ay_bounds_array(v)
    lat = (ay >= lo - CHECK_TOL) & (ay <= hi + CHECK_TOL)
    axl, axh = env.ax_bounds_array(np.clip(ay, lo, hi), v)
    return lat & (a >= axl - CHECK_TOL) & (a <= axh + CHECK_TOL)


def _speed_caps(env, kappa, grid):
    """Largest grid speed (refined by bisection) with lateral acceleration in bounds."""
    lo, hi = env.ay_bounds_array(grid)
    caps = np.empty(kappa.size)
    for i, k in enumerate(kappa):
        ay = k * grid * grid
        ok = (ay >= lo) & (ay <= hi)
        bad = np.nonzero(~ok)[0]
        if bad.size == 0:
            caps[i] = env.v_max
            continue
        j = bad[0]
        if j == 0:
            caps[i] = 0.0
            continue
        a, b = grid[j - 1], grid[j]
        for _ in range(60):
            m = 0.5 * (a + b)
            l, h = env.ay_bounds(m)
            if l <= k * m * m <= h:
                a = m
            else:
                b = m
        caps[i] = a
    return caps


def _ax_interval(env, kappa, v):
    """Exact acceleration interval at a node, or None if laterally infeasible."""
    ay = kappa * (v * v)
    lo, hi = env.ay_bounds(v)
    if not (lo - CHECK_TOL <= ay <= hi + CHECK_TOL):
        return None
    return env.ax_bounds(min(max(ay, lo), hi), v)


def _first_ok(cands, check):
    """First admissible entry of ``cands`` (ordered best first), refined.

    A second enumeration between the first admissible candidate and its
    rejected predecessor sharpens the answer to ~1/M**2 of the range.
    Returns ``(value, index)`` or ``(None, None)``.
    """
    ok = check(cands)
    h = int(np.argmax(ok))
    if not ok[h]:
        return None, None
    if h == 0:
        return cands[0], 0
    sub = np.linspace(cands[h - 1], cands[h], cands.size)
    ok2 = check(sub)
    return sub[int(np.argmax(ok2))], h


def oracle_plan(path: Path, env: GgvEnvelope, bc=0.0, ocfg: OracleConfig = OracleConfig()) -> OracleResult:
    """Reference profile and maneuver time for ``path``.

    Each sweep fixes one end of a segment, takes that node's exact
    acceleration interval and enumerates ``v_levels`` accelerations in it;
    the induced speeds at the free end are checked directly against the
    bounds there and the best admissible one is kept.
    """
    v_ini = float(getattr(bc, "v_ini", bc))
    M = ocfg.v_levels
    s = path.s
    kap = path.kappa
    n = s.size
    L = np.diff(s)
    warnings = []
    feasible = True

    grid = np.geomspace(ocfg.v_floor, env.v_max, M)
    grid[-1] = env.v_max
    cap = _speed_caps(env, kap, grid)
    frac = np.linspace(1.0, 0.0, M)
    v_step = np.zeros(n)

    if v_ini > cap[0]:
        warnings.append(f"v_ini={v_ini:g} above lateral cap {cap[0]:g}; clipped")
        v_ini = float(cap[0])

    # forward: largest end speed reachable from the current start speed
    vf = np.empty(n)
    vf[0] = v_ini
    for i in range(n - 1):
        v0, l = vf[i], L[i]
        w0 = v0 * v0
        iv = _ax_interval(env, kap[i], v0)
        if iv is None:
            vf[i + 1] = cap[i + 1]
            continue
        a = iv[1] + (iv[0] - iv[1]) * (1.0 - frac)  # descending

        def check(a, w0=w0, l=l, k1=kap[i + 1], c=cap[i + 1]):
            w1 = w0 + 2 * l * a
            v1 = np.sqrt(np.maximum(w1, 0.0))
            return (w1 >= 0) & (v1 <= c + CHECK_TOL) & _node_ok(env, k1, v1, a)

        best, _ = _first_ok(a, check)
        v_step[i + 1] = 2 * l * (iv[1] - iv[0]) / (M - 1) / max(2 * v0, 1e-9)
        vf[i + 1] = cap[i + 1] if best is None else min(math.sqrt(max(w0 + 2 * l * best, 0.0)), cap[i + 1])

    # backward: largest start speed (<= forward value) reaching the fixed end speed
    vb = vf.copy()
    for i in range(n - 2, -1, -1):
        v1, l = vb[i + 1], L[i]
        w1 = v1 * v1
        top = v_ini if i == 0 else vf[i]
        a_top = (w1 - top * top) / (2 * l)
        iv = _ax_interval(env, kap[i + 1], v1)
        if iv is None:
            feasible = False
            warnings.append(f"lateral limit exceeded at node {i + 1}")
            vb[i] = top
            continue
        if (iv[0] - CHECK_TOL <= a_top <= iv[1] + CHECK_TOL
                and _node_ok(env, kap[i], np.array([top]), np.array([a_top]))[0]):
            vb[i] = top
            continue
        a = iv[0] + (iv[1] - iv[0]) * (1.0 - frac)  # ascending: strongest braking first

        def check(a, w1=w1, l=l, k0=kap[i], top=top):
            w0 = w1 - 2 * l * a
            v0 = np.sqrt(np.maximum(w0, 0.0))
            return (w0 >= 0) & (v0 <= top + CHECK_TOL) & _node_ok(env, k0, v0, a)

        best, _ = _first_ok(a, check)
        v_step[i] = max(v_step[i], 2 * l * (iv[1] - iv[0]) / (M - 1) / max(2 * v1, 1e-9))
        if best is not None:
            v0 = math.sqrt(max(w1 - 2 * l * best, 0.0))
            if i == 0:
                warnings.append(
                    f"initial speed lowered from {v_ini:g} to {v0:g} to stay feasible")
            vb[i] = v0
        else:
            feasible = False
            warnings.append(f"no feasible speed at node {i}")
            vb[i] = min(top, math.sqrt(max(w1 - 2 * l * iv[0], 0.0)))

    w = vb * vb
    a_x = np.diff(w) / (2 * L)
    denom = vb[:-1] + vb[1:]
    if np.any(denom <= 0):
        feasible = False
        warnings.append("profile stops on the path")
        T = math.inf
    else:
        T = math.fsum((2 * L / denom).tolist())
    return OracleResult(v_x=vb, a_x=a_x, a_y=kap * vb**2, T=T, v_cap=cap,
                        v_step=v_step, feasible=feasible, warnings=warnings)
