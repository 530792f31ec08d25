"""Mesh size against maneuver time and CPU time on a synthetic lap.

The same sweep is available from the command line as ``fbga sweep``.
"""

# %%
import random
import time

import numpy as np

from fbga import load_envelope, plan, resample, sample_file, synth_track
from fbga.path import random_track

env = load_envelope(sample_file("moto.json"))
pieces = random_track(np.random.default_rng(7), 8, 3000.0)
lap = synth_track(pieces, n=30001)

meshes = [100, 300, 1000, 3000, 10000, 30000]
order = meshes[:]
random.Random(0).shuffle(order)  # run sizes out of order
rows = {}
for n in order:
    p = resample(lap, n)
    t0 = time.perf_counter()
    res = plan(p, env, 30.0)
    rows[n] = (res.T, (time.perf_counter() - t0) * 1e3)

# %% time shrinks roughly like 1/N (one coarse segment lags the envelope), cpu grows like N
T_ref = rows[meshes[-1]][0]
print(" segments        T [s]   vs finest   cpu [ms]")
for n in meshes:
    T, ms = rows[n]
    print(f"{n:9d}  {T:11.4f}  {100 * (T - T_ref) / T_ref:8.3f}%  {ms:9.1f}")
