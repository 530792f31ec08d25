"""Envelopes and the signed distance.

Build the three envelope shapes, look at how the longitudinal limits
shrink as lateral acceleration grows, and probe the signed distance.
"""

# %%
import numpy as np

from fbga import (AnalyticEnvelope, BoxEnvelope, SplineGridEnvelope, load_envelope, sample_file,
                  signed_distance, signed_distance_array)

box = BoxEnvelope(ax_min=-8, ax_max=5, ay_min=-10, ay_max=10, v_max=80)
moto = load_envelope(sample_file("moto.json"))  # non-convex analytic shape
grid = load_envelope(sample_file("car_grid.json"))  # bilinear tables

# %% longitudinal limits across the lateral range at 40 m/s
v = 40.0
for name, env in (("box", box), ("moto", moto), ("grid", grid)):
    lo, hi = env.ay_bounds(v)
    print(f"{name:5s} lateral limits at {v:g} m/s: [{lo:.2f}, {hi:.2f}]")
    for frac in (0.0, 0.5, 0.9, 1.0):
        axl, axh = env.ax_bounds(frac * hi, v)
        print(f"      a_y = {frac:.0%} of limit -> a_x in [{axl:6.2f}, {axh:5.2f}]")

# %% the exponent controls convexity: 2 ellipse, 1 diamond, < 1 pinched
for p in (2.0, 1.0, 0.6):
    env = AnalyticEnvelope(v_max=60, ay_max=10, ax_max=5, ax_min=-8, exponent=p)
    print(f"exponent {p}: a_x max at half lateral load = {env.ax_bounds(5.0, 20.0)[1]:.3f}")

# %% signed distance: -1 at the centre, 0 on the boundary, positive outside
sq = BoxEnvelope(ax_min=-5, ax_max=5, ay_min=-10, ay_max=10, v_max=50)
for pt in [(0, 0, 10), (5, 0, 10), (0, 20, 10), (2.5, 5, 10)]:
    print(pt, "->", signed_distance(sq, pt))

# a slice of the moto envelope at 30 m/s on a coarse grid ('#' inside, '.' outside)
ax, ay = np.meshgrid(np.linspace(-12, 8, 21), np.linspace(-14, 14, 41), indexing="ij")
d = signed_distance_array(moto, ax, ay, 30.0)
for row in d[::-1]:
    print("".join("#" if x <= 0 else "." for x in row))

# %% tabulating an analytic envelope gives a grid that agrees at the knots
tab = SplineGridEnvelope.from_envelope(moto, np.linspace(0, 90, 19), np.linspace(-1, 1, 41))
print("knot check:", tab.ax_bounds(0.0, 30.0), moto.ax_bounds(0.0, 30.0))
