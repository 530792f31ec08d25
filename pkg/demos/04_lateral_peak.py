"""Where the lateral acceleration peaks.

With grip that grows with speed, the fastest way through a long corner
loads the tyres hardest before the apex, not at it.
"""

# %%
import numpy as np

from fbga import AnalyticEnvelope, oracle_plan, plan, synth_track

car = AnalyticEnvelope(v_max=90, ay_max=10, ax_max=8, ax_min=-12, exponent=2.0, ay_gain=0.004,
                       ax_min_gain=-0.002, ax_max_gain=-0.0006)
corner = synth_track([("straight", 300), ("clothoid", 150), ("arc", 1, 40), ("clothoid", 150),
                      ("straight", 300)], step=2.0)

res = plan(corner, car, 40.0)
orc = oracle_plan(corner, car, 40.0)
ik = int(np.argmax(np.abs(corner.kappa)))
ia = int(np.argmax(np.abs(res.a_y)))
print(f"curvature peaks at s = {corner.s[ik]:.0f} m, lateral acceleration at s = {corner.s[ia]:.0f} m")
print(f"oracle lateral peak at s = {corner.s[np.argmax(np.abs(orc.a_y))]:.0f} m")

# %% around the corner entry
for i in range(ia - 20, ik + 1, 5):
    lim = car.ay_bounds(res.v_x[i])[1]
    print(f"s={corner.s[i]:5.0f}  v={res.v_x[i]:5.2f}  a_y={res.a_y[i]:5.2f} / {lim:5.2f}  a_x={res.a_x[i]:6.2f}")
