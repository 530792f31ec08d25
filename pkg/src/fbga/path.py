"""Discretized paths: curvilinear abscissa and curvature samples.

Curvature sign convention: positive ``kappa`` is a left turn and produces
positive lateral acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Path",
    "PathError",
    "load_path",
    "write_path",
    "resample",
    "synth_track",
    "random_track",
    "MIN_SEGMENT",
]

MIN_SEGMENT = 1e-9  # m


class PathError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Path:
    """Path samples ``s`` (m, strictly increasing) and ``kappa`` (1/m)."""

    s: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        s = np.array(self.s, dtype=float)
        k = np.array(self.kappa, dtype=float)
        if s.ndim != 1 or k.shape != s.shape:
            raise PathError(f"s and kappa must be 1-D of equal length, got {s.shape} and {k.shape}")
        if s.size < 2:
            raise PathError(f"need at least 2 points, got {s.size}")
        for name, a in (("s", s), ("kappa", k)):
            bad = np.nonzero(~np.isfinite(a))[0]
            if bad.size:
                raise PathError(f"{name} not finite at row {bad[0] + 1}")
        bad = np.nonzero(np.diff(s) <= MIN_SEGMENT)[0]
        if bad.size:
            raise PathError(f"s not strictly increasing at row {bad[0] + 2}")
        s.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "kappa", k)

    @property
    def n(self) -> int:
        return self.s.size

    @property
    def length(self) -> float:
        return float(self.s[-1] - self.s[0])

    @property
    def seg_lengths(self) -> np.ndarray:
        return np.diff(self.s)

    def __len__(self):
        return self.s.size


def load_path(file) -> Path:
    """Read a two-column ``s,kappa`` CSV.

    Blank lines and ``#`` comments are skipped, as is a non-numeric header.
    Row numbers in error messages count data rows from 1.
    """
    rows = []
    with open(file) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                vals = [float(p) for p in parts]
            except ValueError:
                if not rows:
                    continue  # header
                raise PathError(f"{file}:{lineno}: non-numeric value in {line!r}") from None
            if len(vals) < 2:
                raise PathError(f"{file}:{lineno}: expected 2 columns s,kappa")
            rows.append(vals[:2])
    if not rows:
        raise PathError(f"{file}: no data rows")
    a = np.array(rows)
    return Path(a[:, 0], a[:, 1])


def write_path(path: Path, file) -> None:
    with open(file, "w") as f:
        f.write("s,kappa\n")
        for s, k in zip(path.s.tolist(), path.kappa.tolist()):
            f.write(f"{s!r},{k!r}\n")


def resample(path: Path, n: int) -> Path:
    """Uniform ``n``-point grid over the same span, kappa linearly interpolated."""
    if n < 2:
        raise PathError(f"need n >= 2, got {n}")
    s = np.linspace(path.s[0], path.s[-1], n)
    s[0], s[-1] = path.s[0], path.s[-1]
    return Path(s, np.interp(s, path.s, path.kappa))


def _piece_table(pieces: Sequence[tuple]):
    """Turn a piece list into (start, length, k0, k1) rows."""
    kinds = []
    for p in pieces:
        kind = p[0]
        length = float(p[1])
        if not length > 0:
            raise PathError(f"piece {p!r}: length must be positive")
        if kind == "straight":
            kinds.append([kind, length, 0.0, 0.0])
        elif kind == "arc":
            if len(p) < 3 or p[2] == 0:
                raise PathError(f"piece {p!r}: arc needs a non-zero radius")
            k = 1.0 / float(p[2])
            kinds.append([kind, length, k, k])
        elif kind == "clothoid":
            kinds.append([kind, length, None, None])
        else:
            raise PathError(f"unknown piece kind {kind!r}")
    # clothoids blend from the previous piece's end curvature to the next
    # piece's start curvature (0 at the ends of the track)
    for i, row in enumerate(kinds):
        if row[0] != "clothoid":
            continue
        prev = kinds[i - 1][3] if i > 0 else 0.0
        nxt = 0.0
        for later in kinds[i + 1:]:
            if later[0] != "clothoid":
                nxt = later[2]
                break
        row[2], row[3] = prev if prev is not None else 0.0, nxt
    table = []
    start = 0.0
    for kind, length, k0, k1 in kinds:
        table.append((start, length, k0, k1))
        start += length
    return table, start


def synth_track(pieces: Sequence[tuple], step: float = 1.0, n: int | None = None) -> Path:
    """Build a path from straights, arcs and clothoids.

    ``pieces`` is a list of ``("straight", length)``, ``("arc", length,
    radius)`` (signed radius, positive turns left) and ``("clothoid",
    length)``.  A clothoid ramps curvature linearly from the preceding
    piece's curvature to the following one's.  The path is sampled
    uniformly with spacing close to ``step``, or with exactly ``n`` points.
    """
    if not pieces:
        raise PathError("empty piece list")
    table, total = _piece_table(pieces)
    if n is None:
        n = max(int(round(total / step)), 1) + 1
    s = np.linspace(0.0, total, n)
    kappa = np.empty(n)
    starts = np.array([t[0] for t in table])
    idx = np.clip(np.searchsorted(starts, s, side="right") - 1, 0, len(table) - 1)
    for i, (start, length, k0, k1) in enumerate(table):
        m = idx == i
        u = np.clip((s[m] - start) / length, 0.0, 1.0)
        kappa[m] = k0 + (k1 - k0) * u
    return Path(s, kappa)


def random_track(
    rng: np.random.Generator,
    n_corners: int,
    length: float,
    r_min: float = 15.0,
    r_max: float = 150.0,
) -> list[tuple]:
    """Random piece list with ``n_corners`` corners totalling ``length`` metres.

    Each corner is clothoid-arc-clothoid with a random radius and direction;
    corners are separated by straights.
    """
    pieces = []
    raw = []
    for _ in range(n_corners):
        radius = math.exp(rng.uniform(math.log(r_min), math.log(r_max)))
        radius *= rng.choice([-1.0, 1.0])
        turn = rng.uniform(0.4, 2.5)  # rad of arc
        raw.append(("straight", rng.uniform(50.0, 300.0)))
        raw.append(("clothoid", rng.uniform(10.0, 60.0)))
        raw.append(("arc", abs(radius) * turn, radius))
        raw.append(("clothoid", rng.uniform(10.0, 60.0)))
    raw.append(("straight", rng.uniform(50.0, 300.0)))
    scale = length / sum(p[1] for p in raw)
    for p in raw:
        if p[0] == "arc":
            pieces.append(("arc", p[1] * scale, p[2]))
        else:
            pieces.append((p[0], p[1] * scale))
    return pieces
