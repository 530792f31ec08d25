"""Plan a profile over two corners and cross-check it.

Runs the three passes one at a time to show what each contributes, then the
full planner, the brute-force oracle and the time-sampled trajectory.
"""

# %%
import time

import numpy as np

from fbga import (backward, forward, load_envelope, load_path, oracle_plan, plan, sample_file,
                  time_parameterize, vel_sat)

path = load_path(sample_file("two_corner_300m.csv"))
env = load_envelope(sample_file("car_grid.json"))
v_ini = 40.0
print(f"{path.n} nodes over {path.length:.0f} m, peak curvature {np.abs(path.kappa).max():.4f} 1/m")

# %% the passes
vs = vel_sat(path, env)
v_fw, a_fw = forward(path, env, v_ini, vs)
n_none = sum(a is None for a in a_fw)
v_bw, a_bw = backward(path, env, vs, v_fw, a_fw)
print(f"lateral cap min {vs.min():.2f} m/s; forward left {n_none} segments open")
print(f"backward lowered {np.sum(v_bw < v_fw - 1e-9)} nodes")

# %% the driver
t0 = time.perf_counter()
res = plan(path, env, v_ini)
ms = (time.perf_counter() - t0) * 1e3
print(f"T = {res.T:.4f} s in {ms:.2f} ms, {res.solve_calls} root solves")
print(f"peak |a_y| {np.abs(res.a_y).max():.2f}, a_x range [{res.a_x.min():.2f}, {res.a_x.max():.2f}]")

# %% the oracle enumerates accelerations instead of solving for them
t0 = time.perf_counter()
orc = oracle_plan(path, env, v_ini)
ms = (time.perf_counter() - t0) * 1e3
print(f"oracle T = {orc.T:.4f} s in {ms:.0f} ms, gap {abs(res.T - orc.T) / orc.T:.2e}")
print(f"max node speed difference {np.abs(res.v_x - orc.v_x).max():.2e} m/s")

# %% sampled in time
traj = time_parameterize(res, path, dt=0.5)
for t, s, v in zip(traj.t[::4], traj.s[::4], traj.v_x[::4]):
    print(f"t={t:5.2f} s  s={s:6.1f} m  v={v:5.2f} m/s")
