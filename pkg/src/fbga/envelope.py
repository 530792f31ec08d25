"""g-g-v acceleration envelopes and the signed distance from their boundary.

An envelope is described by four bound functions of the speed ``v``:

* lateral bounds ``ay_lo(v) < ay_hi(v)``;
* longitudinal bounds ``ax_lo(ay, v) <= ax_hi(ay, v)``, defined for ``ay``
  inside the lateral bounds.

Three concrete shapes are provided: :class:`BoxEnvelope` (speed independent
rectangle), :class:`AnalyticEnvelope` (speed-scaled superellipse with
optional traction/braking caps) and :class:`SplineGridEnvelope` (bilinear
lookup tables).  Each exposes scalar queries used in the planner's inner
loop and ``*_array`` variants for vectorized evaluation.

Speeds outside ``[0, v_max]`` are clamped before every query.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

__all__ = [
    "AccelPoint",
    "GgvEnvelope",
    "BoxEnvelope",
    "AnalyticEnvelope",
    "SplineGridEnvelope",
    "EnvelopeError",
    "lateral_bounds",
    "longitudinal_bounds",
    "phi",
    "lambda_pyramid",
    "signed_distance",
    "signed_distance_array",
    "envelope_from_dict",
    "load_envelope",
]

# degenerate-range handling in phi
COLLAPSE_TOL = 1e-12
SENTINEL = 1e9


class EnvelopeError(ValueError):
    """Raised for malformed envelope definitions."""


class AccelPoint(NamedTuple):
    a_x: float
    a_y: float
    v_x: float


class GgvEnvelope:
    """Base class.  Subclasses implement the four ``*_bounds`` methods."""

    v_max: float

    def ay_bounds(self, v: float) -> tuple[float, float]:
        raise NotImplementedError

    def ax_bounds(self, ay: float, v: float) -> tuple[float, float]:
        raise NotImplementedError

    def ay_bounds_array(self, v):
        raise NotImplementedError

    def ax_bounds_array(self, ay, v):
        raise NotImplementedError

    def _clamp_v(self, v: float) -> float:
        return 0.0 if v < 0.0 else (self.v_max if v > self.v_max else v)

    def ax_extremes(self, samples: int = 201) -> tuple[float, float]:
        """Smallest ``ax_lo`` and largest ``ax_hi`` over the whole envelope.

        Found by dense sampling of the speed and lateral ranges.
        """
        v = np.linspace(0.0, self.v_max, samples)
        lo, hi = self.ay_bounds_array(v)
        frac = np.linspace(0.0, 1.0, samples)
        V = np.repeat(v, samples)
        AY = (lo[:, None] + (hi - lo)[:, None] * frac[None, :]).ravel()
        axl, axh = self.ax_bounds_array(AY, V)
        return float(axl.min()), float(axh.max())

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class BoxEnvelope(GgvEnvelope):
    """Speed independent rectangle ``[ax_min, ax_max] x [ay_min, ay_max]``."""

    ax_min: float
    ax_max: float
    ay_min: float
    ay_max: float
    v_max: float

    def __post_init__(self):
        if not self.ay_min < self.ay_max:
            raise EnvelopeError(f"ay_min ({self.ay_min}) must be < ay_max ({self.ay_max})")
        if not self.ax_min <= self.ax_max:
            raise EnvelopeError(f"ax_min ({self.ax_min}) must be <= ax_max ({self.ax_max})")
        if not self.v_max > 0:
            raise EnvelopeError(f"v_max must be > 0, got {self.v_max}")

    def ay_bounds(self, v):
        return self.ay_min, self.ay_max

    def ax_bounds(self, ay, v):
        return self.ax_min, self.ax_max

    def ay_bounds_array(self, v):
        v = np.asarray(v, dtype=float)
        return np.full(v.shape, self.ay_min), np.full(v.shape, self.ay_max)

    def ax_bounds_array(self, ay, v):
        shape = np.broadcast(np.asarray(ay), np.asarray(v)).shape
        return np.full(shape, self.ax_min), np.full(shape, self.ax_max)

    def to_dict(self):
        return {"type": "box", "v_max": self.v_max, "ax_min": self.ax_min,
                "ax_max": self.ax_max, "ay_min": self.ay_min, "ay_max": self.ay_max}


@dataclass(frozen=True)
class AnalyticEnvelope(GgvEnvelope):
    """Speed-scaled superellipse.

    Lateral limits are symmetric, ``+-(ay_max + ay_gain * v**2)``.  The peak
    traction and braking accelerations at ``ay = 0`` are
    ``ax_max + ax_max_gain * v**2`` and ``ax_min + ax_min_gain * v**2``
    (``ax_min`` is negative).  Across the lateral range both shrink by the
    factor ``(1 - |ay / ay_lim|**exponent) ** (1 / exponent)``: exponent 2 is
    an ellipse, 1 a diamond, below 1 the envelope is non-convex.  The
    optional caps flatten the traction/braking peaks, the way wheel lift
    limits a motorcycle.
    """

    v_max: float
    ay_max: float
    ax_max: float
    ax_min: float
    exponent: float = 2.0
    ay_gain: float = 0.0
    ax_max_gain: float = 0.0
    ax_min_gain: float = 0.0
    ax_max_cap: Optional[float] = None
    ax_min_cap: Optional[float] = None

    def __post_init__(self):
        if not self.v_max > 0:
            raise EnvelopeError(f"v_max must be > 0, got {self.v_max}")
        if not self.exponent > 0:
            raise EnvelopeError(f"exponent must be > 0, got {self.exponent}")
        if not self.ay_max > 0 or self.ay_max + self.ay_gain * self.v_max**2 <= 0:
            raise EnvelopeError("lateral limit must stay positive on [0, v_max]")
        if self.ax_max < 0 or self.ax_min > 0:
            raise EnvelopeError("need ax_min <= 0 <= ax_max")
        if self.ax_max_cap is not None and self.ax_max_cap < 0:
            raise EnvelopeError("ax_max_cap must be >= 0")
        if self.ax_min_cap is not None and self.ax_min_cap > 0:
            raise EnvelopeError("ax_min_cap must be <= 0")

    def ay_bounds(self, v):
        v = self._clamp_v(v)
        lim = self.ay_max + self.ay_gain * v * v
        return -lim, lim

    def ax_bounds(self, ay, v):
        v = self._clamp_v(v)
        v2 = v * v
        lim = self.ay_max + self.ay_gain * v2
        r = abs(ay) / lim
        if r >= 1.0:
            shrink = 0.0
        else:
            p = self.exponent
            shrink = (1.0 - r**p) ** (1.0 / p)
        hi = max(self.ax_max + self.ax_max_gain * v2, 0.0) * shrink
        lo = min(self.ax_min + self.ax_min_gain * v2, 0.0) * shrink
        if self.ax_max_cap is not None and hi > self.ax_max_cap:
            hi = self.ax_max_cap
        if self.ax_min_cap is not None and lo < self.ax_min_cap:
            lo = self.ax_min_cap
        return lo, hi

    def ay_bounds_array(self, v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, self.v_max)
        lim = self.ay_max + self.ay_gain * v * v
        return -lim, lim

    def ax_bounds_array(self, ay, v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, self.v_max)
        v2 = v * v
        lim = self.ay_max + self.ay_gain * v2
        r = np.minimum(np.abs(ay) / lim, 1.0)
        p = self.exponent
        shrink = (1.0 - r**p) ** (1.0 / p)
        hi = np.maximum(self.ax_max + self.ax_max_gain * v2, 0.0) * shrink
        lo = np.minimum(self.ax_min + self.ax_min_gain * v2, 0.0) * shrink
        if self.ax_max_cap is not None:
            hi = np.minimum(hi, self.ax_max_cap)
        if self.ax_min_cap is not None:
            lo = np.maximum(lo, self.ax_min_cap)
        return lo, hi

    def to_dict(self):
        d = {"type": "analytic", "v_max": self.v_max, "ay_max": self.ay_max,
             "ax_max": self.ax_max, "ax_min": self.ax_min, "exponent": self.exponent,
             "ay_gain": self.ay_gain, "ax_max_gain": self.ax_max_gain,
             "ax_min_gain": self.ax_min_gain}
        if self.ax_max_cap is not None:
            d["ax_max_cap"] = self.ax_max_cap
        if self.ax_min_cap is not None:
            d["ax_min_cap"] = self.ax_min_cap
        return d


def _check_breaks(name, breaks):
    if breaks.ndim != 1 or breaks.size < 2:
        raise EnvelopeError(f"{name} needs at least two breakpoints")
    if not np.all(np.isfinite(breaks)):
        raise EnvelopeError(f"{name} contains non-finite values")
    bad = np.nonzero(np.diff(breaks) <= 0)[0]
    if bad.size:
        raise EnvelopeError(f"{name} not strictly increasing at index {bad[0] + 1}")


def _cell(breaks: list, x: float) -> tuple[int, float]:
    # index of the left knot and the local weight, clamped to the grid
    if x <= breaks[0]:
        return 0, 0.0
    n = len(breaks)
    if x >= breaks[-1]:
        return n - 2, 1.0
    j = bisect.bisect_right(breaks, x) - 1
    return j, (x - breaks[j]) / (breaks[j + 1] - breaks[j])


def _cell_array(breaks: np.ndarray, x: np.ndarray):
    x = np.clip(x, breaks[0], breaks[-1])
    j = np.clip(np.searchsorted(breaks, x, side="right") - 1, 0, breaks.size - 2)
    w = (x - breaks[j]) / (breaks[j + 1] - breaks[j])
    return j, w


@dataclass(frozen=True, eq=False)
class SplineGridEnvelope(GgvEnvelope):
    """Envelope tabulated on a rectangular (speed, normalized lateral) grid.

    ``ay_min[k]``/``ay_max[k]`` are the lateral limits at ``v_breaks[k]``.
    ``ax_min[k][j]``/``ax_max[k][j]`` are the longitudinal limits at speed
    ``v_breaks[k]`` and lateral acceleration whose position inside the
    lateral range is ``ay_norm_breaks[j]`` (-1 at ``ay_min``, +1 at
    ``ay_max``).  Queries interpolate bilinearly and clamp to the grid.
    """

    v_breaks: np.ndarray
    ay_norm_breaks: np.ndarray
    ax_min: np.ndarray
    ax_max: np.ndarray
    ay_min: np.ndarray
    ay_max: np.ndarray
    v_max: float
    _lists: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arr = {}
        for name in ("v_breaks", "ay_norm_breaks", "ax_min", "ax_max", "ay_min", "ay_max"):
            a = np.array(getattr(self, name), dtype=float)
            a.setflags(write=False)
            arr[name] = a
            object.__setattr__(self, name, a)
        nv, na = arr["v_breaks"].size, arr["ay_norm_breaks"].size
        _check_breaks("v_breaks", arr["v_breaks"])
        _check_breaks("ay_norm_breaks", arr["ay_norm_breaks"])
        for name in ("ax_min", "ax_max"):
            if arr[name].shape != (nv, na):
                raise EnvelopeError(f"{name} must have shape ({nv}, {na}), got {arr[name].shape}")
            if not np.all(np.isfinite(arr[name])):
                raise EnvelopeError(f"{name} contains non-finite values")
        for name in ("ay_min", "ay_max"):
            if arr[name].shape != (nv,):
                raise EnvelopeError(f"{name} must have length {nv}")
        bad = np.argwhere(arr["ax_min"] > arr["ax_max"])
        if bad.size:
            k, j = bad[0]
            raise EnvelopeError(f"ax_min > ax_max at grid index ({k}, {j})")
        bad = np.nonzero(~(arr["ay_min"] < arr["ay_max"]))[0]
        if bad.size:
            raise EnvelopeError(f"ay_min >= ay_max at index {bad[0]}")
        if not self.v_max > 0:
            raise EnvelopeError(f"v_max must be > 0, got {self.v_max}")
        object.__setattr__(self, "_lists", {k: v.tolist() for k, v in arr.items()})

    def ay_bounds(self, v):
        L = self._lists
        k, w = _cell(L["v_breaks"], self._clamp_v(v))
        lo = L["ay_min"][k] + w * (L["ay_min"][k + 1] - L["ay_min"][k])
        hi = L["ay_max"][k] + w * (L["ay_max"][k + 1] - L["ay_max"][k])
        return lo, hi

    def ax_bounds(self, ay, v):
        L = self._lists
        v = self._clamp_v(v)
        k, wv = _cell(L["v_breaks"], v)
        ay_lo = L["ay_min"][k] + wv * (L["ay_min"][k + 1] - L["ay_min"][k])
        ay_hi = L["ay_max"][k] + wv * (L["ay_max"][k + 1] - L["ay_max"][k])
        u = 2.0 * (ay - ay_lo) / (ay_hi - ay_lo) - 1.0
        j, wa = _cell(L["ay_norm_breaks"], u)
        out = []
        for tab in (L["ax_min"], L["ax_max"]):
            r0, r1 = tab[k], tab[k + 1]
            a0 = r0[j] + wa * (r0[j + 1] - r0[j])
            a1 = r1[j] + wa * (r1[j + 1] - r1[j])
            out.append(a0 + wv * (a1 - a0))
        return out[0], out[1]

    def ay_bounds_array(self, v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, self.v_max)
        return (np.interp(v, self.v_breaks, self.ay_min),
                np.interp(v, self.v_breaks, self.ay_max))

    def ax_bounds_array(self, ay, v):
        ay, v = np.broadcast_arrays(np.asarray(ay, dtype=float),
                                    np.clip(np.asarray(v, dtype=float), 0.0, self.v_max))
        k, wv = _cell_array(self.v_breaks, v)
        ay_lo = self.ay_min[k] + wv * (self.ay_min[k + 1] - self.ay_min[k])
        ay_hi = self.ay_max[k] + wv * (self.ay_max[k + 1] - self.ay_max[k])
        u = 2.0 * (ay - ay_lo) / (ay_hi - ay_lo) - 1.0
        j, wa = _cell_array(self.ay_norm_breaks, u)
        out = []
        for tab in (self.ax_min, self.ax_max):
            a0 = tab[k, j] + wa * (tab[k, j + 1] - tab[k, j])
            a1 = tab[k + 1, j] + wa * (tab[k + 1, j + 1] - tab[k + 1, j])
            out.append(a0 + wv * (a1 - a0))
        return out[0], out[1]

    def to_dict(self):
        return {"type": "spline_grid", "v_max": self.v_max,
                "v_breaks": self.v_breaks.tolist(),
                "ay_norm_breaks": self.ay_norm_breaks.tolist(),
                "ax_min": self.ax_min.tolist(), "ax_max": self.ax_max.tolist(),
                "ay_min": self.ay_min.tolist(), "ay_max": self.ay_max.tolist()}

    @classmethod
    def from_envelope(cls, env: GgvEnvelope, v_breaks, ay_norm_breaks) -> "SplineGridEnvelope":
        """Tabulate another envelope on the given grid."""
        v_breaks = np.asarray(v_breaks, dtype=float)
        u = np.asarray(ay_norm_breaks, dtype=float)
        lo, hi = env.ay_bounds_array(v_breaks)
        AY = lo[:, None] + 0.5 * (u[None, :] + 1.0) * (hi - lo)[:, None]
        V = np.broadcast_to(v_breaks[:, None], AY.shape)
        axl, axh = env.ax_bounds_array(AY, V)
        return cls(v_breaks, u, axl, axh, lo, hi, env.v_max)


def lateral_bounds(env: GgvEnvelope, v):
    """``(ay_lo, ay_hi)`` at speed ``v`` (scalar or array)."""
    if np.ndim(v):
        return env.ay_bounds_array(v)
    return env.ay_bounds(float(v))


def longitudinal_bounds(env: GgvEnvelope, ay_clip, v):
    """``(ax_lo, ax_hi)`` at lateral acceleration ``ay_clip`` and speed ``v``."""
    if np.ndim(ay_clip) or np.ndim(v):
        return env.ax_bounds_array(ay_clip, v)
    return env.ax_bounds(float(ay_clip), float(v))


def phi(x: float, x_lo: float, x_hi: float) -> float:
    """Affine map sending ``x_lo`` to -1 and ``x_hi`` to +1.

    A collapsed range returns 0 when ``x`` sits on it and a signed 1e9
    sentinel otherwise.
    """
    span = x_hi - x_lo
    if span <= COLLAPSE_TOL:
        d = x - x_lo
        if abs(d) <= COLLAPSE_TOL:
            return 0.0
        return math.copysign(SENTINEL, d)
    return 2.0 * (x - x_lo) / span - 1.0


def lambda_pyramid(x: float, y: float) -> float:
    """Inverted pyramid: -1 at the origin, 0 on the unit square's border."""
    return max(x - 1.0, -1.0 - x, y - 1.0, -1.0 - y)


def signed_distance(env: GgvEnvelope, p) -> float:
    """Signed distance of ``p = (a_x, a_y, v_x)`` from the envelope boundary.

    Negative inside, zero on the boundary, positive outside; never below -1.
    """
    ax, ay, v = p
    ay_lo, ay_hi = env.ay_bounds(v)
    ay_c = ay_lo if ay < ay_lo else (ay_hi if ay > ay_hi else ay)
    ax_lo, ax_hi = env.ax_bounds(ay_c, v)
    return lambda_pyramid(phi(ax, ax_lo, ax_hi), phi(ay, ay_lo, ay_hi))


def _phi_array(x, lo, hi):
    span = hi - lo
    collapsed = span <= COLLAPSE_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 2.0 * (x - lo) / np.where(collapsed, 1.0, span) - 1.0
    d = x - lo
    sentinel = np.where(np.abs(d) <= COLLAPSE_TOL, 0.0, np.copysign(SENTINEL, d))
    return np.where(collapsed, sentinel, out)


def signed_distance_array(env: GgvEnvelope, ax, ay, v) -> np.ndarray:
    """Vectorized :func:`signed_distance` over broadcastable arrays."""
    ax, ay, v = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (ax, ay, v)))
    ay_lo, ay_hi = env.ay_bounds_array(v)
    ay_c = np.clip(ay, ay_lo, ay_hi)
    ax_lo, ax_hi = env.ax_bounds_array(ay_c, v)
    x = _phi_array(ax, ax_lo, ax_hi)
    y = _phi_array(ay, ay_lo, ay_hi)
    return np.maximum.reduce([x - 1.0, -1.0 - x, y - 1.0, -1.0 - y])


def envelope_from_dict(d: dict) -> GgvEnvelope:
    """Build an envelope from its JSON description (see README)."""
    d = dict(d)
    kind = d.pop("type", None)
    if "v_max" not in d:
        raise EnvelopeError("missing field 'v_max'")
    try:
        if kind == "box":
            return BoxEnvelope(**d)
        if kind == "analytic":
            return AnalyticEnvelope(**d)
        if kind == "spline_grid":
            return SplineGridEnvelope(**d)
    except TypeError as exc:
        raise EnvelopeError(f"bad fields for '{kind}' envelope: {exc}") from None
    raise EnvelopeError(f"unknown envelope type {kind!r}")


def load_envelope(path) -> GgvEnvelope:
    with open(path) as f:
        try:
            d = json.load(f)
        except json.JSONDecodeError as exc:
            raise EnvelopeError(f"{path}: invalid JSON ({exc})") from None
    return envelope_from_dict(d)
