"""Derivative-free bracketing root finder.

Brent-style: inverse quadratic interpolation and secant steps, guarded by
bisection.  Functions that return non-finite values on part of the bracket
(square roots of negative numbers while exploring) are handled by first
shrinking the bracket onto its finite part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

__all__ = ["SolverConfig", "solve", "DEFAULT_CONFIG"]


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances shared by every root-finding call of the planner."""

    x_tol: float = 1e-8
    f_tol: float = 1e-10
    max_iter: int = 100

    def __post_init__(self):
        if not self.x_tol > 0:
            raise ValueError(f"x_tol must be > 0, got {self.x_tol}")
        if not self.f_tol >= 0:
            raise ValueError(f"f_tol must be >= 0, got {self.f_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_CONFIG = SolverConfig()


def _finite_edge(f, x_bad, x_good, f_good, x_tol, max_iter):
    # bisect between a non-finite and a finite point; returns the finite
    # point closest to x_bad and its value
    for _ in range(max_iter):
        if abs(x_good - x_bad) <= x_tol:
            break
        m = 0.5 * (x_bad + x_good)
        fm = f(m)
        if math.isfinite(fm):
            x_good, f_good = m, fm
            if fm == 0.0:
                break
        else:
            x_bad = m
    return x_good, f_good


def solve(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
    history: Optional[list] = None,
    side: Optional[str] = None,
) -> Optional[float]:
    """Find a zero of ``f`` inside ``[lo, hi]``.

    Returns ``None`` when ``f`` has no sign change across the (finite part
    of the) bracket.  Otherwise returns a point ``x`` in ``[lo, hi]`` with
    ``|f(x)| <= cfg.f_tol`` or bracket width ``<= cfg.x_tol``.  If the
    iteration cap is hit the midpoint of the current bracket is returned.

    ``side="neg"`` (or ``"pos"``) makes the returned point one where ``f``
    is ``<= 0`` (``>= 0``), at most one bracket width from the root; use it
    when one side of the root is the admissible one.

    If ``history`` is a list, the bracket ``(min, max)`` at the start of
    every iteration is appended to it.
    """
    if lo > hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)

    fin_a, fin_b = math.isfinite(fa), math.isfinite(fb)
    if not (fin_a and fin_b):
        if not fin_a and not fin_b:
            m = 0.5 * (a + b)
            fm = f(m)
            if not math.isfinite(fm):
                return None
            a, fa = _finite_edge(f, a, m, fm, cfg.x_tol, cfg.max_iter)
            b, fb = _finite_edge(f, b, m, fm, cfg.x_tol, cfg.max_iter)
        elif not fin_a:
            a, fa = _finite_edge(f, a, b, fb, cfg.x_tol, cfg.max_iter)
        else:
            b, fb = _finite_edge(f, b, a, fa, cfg.x_tol, cfg.max_iter)

    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        return None
    if side not in (None, "neg", "pos"):
        raise ValueError(f"side must be 'neg', 'pos' or None, got {side!r}")

    def pick(b, fb, c, fc):
        if side is not None and (fb > 0.0) != (side == "pos") and fb != 0.0:
            b = c
        return min(max(b, lo), hi)

    # b is the best estimate, c the contrapoint (sign change between b and c)
    c, fc = a, fa
    d = e = b - a
    for _ in range(cfg.max_iter):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, fa = b, fb
            b, fb = c, fc
            c, fc = a, fa
        if history is not None:
            history.append((min(b, c), max(b, c)))
        tol = 2.0 * 2.2e-16 * abs(b) + 0.5 * cfg.x_tol
        m = 0.5 * (c - b)
        if abs(m) <= tol or (abs(fb) <= cfg.f_tol and side is None):
            return pick(b, fb, c, fc)

        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m

        a, fa = b, fb
        if abs(d) > tol:
            b = b + d
        else:
            b = b + math.copysign(tol, m)
        fb = f(b)
        if not math.isfinite(fb):
            # assumed finite inside the cropped bracket; fall back to bisection
            b = a + m
            fb = f(b)
            if not math.isfinite(fb):
                return pick(a, fa, c, fc)
            d = e = m

    if side is not None:
        return pick(b, fb, c, fc)
    return min(max(0.5 * (b + c), lo), hi)
