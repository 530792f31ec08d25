"""The bracketing root finder on its own."""

# %%
import math

from fbga import SolverConfig, solve

hist = []
r = solve(lambda x: x * x - 2.0, 0.0, 2.0, SolverConfig(x_tol=1e-12, f_tol=0.0), history=hist)
print(f"sqrt(2) ~ {r!r} after {len(hist)} iterations")
for a, b in hist:
    print(f"  bracket width {b - a:.3e}")

# %% no sign change means no root, reported as None
print(solve(lambda x: x * x + 1.0, 0.0, 10.0))

# %% non-finite values (a square root going imaginary) crop the bracket
print(solve(lambda x: math.sqrt(x) - 1.0 if x >= 0 else math.nan, -5.0, 4.0))

# %% side="neg" returns a point where f <= 0, handy when only one side is admissible
f = lambda x: math.exp(x) - 2.0
x = solve(f, 0.0, 3.0, SolverConfig(f_tol=1e-3), side="neg")
print(x, f(x) <= 0)
