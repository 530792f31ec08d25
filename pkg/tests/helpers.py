"""Invariant checks shared by the planner, oracle and acceptance tests."""

import numpy as np

from fbga import signed_distance


def kinematic_error(path, v, a):
    """Max relative residual of v1^2 - v0^2 - 2 L a over the segments."""
    L = np.diff(path.s)
    w0, w1 = v[:-1] ** 2, v[1:] ** 2
    res = np.abs(w1 - w0 - 2.0 * L * a)
    scale = np.maximum(np.maximum(w0, w1), 2.0 * L * np.abs(a))
    return float(np.max(res / np.maximum(scale, 1e-300)))


def max_signed_distance(env, path, v, a):
    """Worst signed distance over the nodes, using both adjacent segment accelerations."""
    ay = path.kappa * v**2
    worst = -np.inf
    for j, aj in enumerate(a.tolist()):
        for i in (j, j + 1):
            worst = max(worst, signed_distance(env, (aj, float(ay[i]), float(v[i]))))
    return float(worst)


def speed_tolerance(env, path, v, x_tol):
    """Speed change at each node that a root error of ``x_tol`` at a neighbour can cause.

    Where a node rides the lateral limit, the longitudinal range of a
    pinched envelope grows like the square root of the distance to the
    limit, so a speed ``x_tol`` below it buys a comparatively large extra
    acceleration on the adjacent segments.
    """
    n = v.size
    L = np.diff(path.s)
    vd = np.maximum(v - x_tol, 0.0)
    lo0, hi0 = env.ax_bounds_array(np.clip(path.kappa * v**2, *env.ay_bounds_array(v)), v)
    lo1, hi1 = env.ax_bounds_array(np.clip(path.kappa * vd**2, *env.ay_bounds_array(vd)), vd)
    da = np.maximum(np.abs(lo1 - lo0), np.abs(hi1 - hi0))
    tol = np.full(n, x_tol)
    vs = np.maximum(v, 1e-9)
    tol[:-1] = np.maximum(tol[:-1], L * da[1:] / vs[:-1])
    tol[1:] = np.maximum(tol[1:], L * da[:-1] / vs[1:])
    return tol
