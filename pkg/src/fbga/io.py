"""Result files: profile CSV and run summary JSON."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

import numpy as np

__all__ = ["RunReport", "write_result_csv", "read_result_csv", "file_digest", "write_report"]


@dataclass
class RunReport:
    """Summary of one run.  ``cpu_ms`` covers the planner call only."""

    command: str
    inputs: dict  # file name -> sha256
    T: float
    N: int
    cpu_ms: float
    warnings: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(d.pop("extra"))
        return d


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_result_csv(file, s, v_x, a_x, a_y) -> None:
    """Write ``s,v_x,a_x,a_y``; ``a_x`` belongs to the segment starting at ``s``.

    The last row has an empty ``a_x`` field.  Floats use ``repr`` so files
    are byte-identical for identical profiles.
    """
    s = np.asarray(s, dtype=float).tolist()
    v_x = np.asarray(v_x, dtype=float).tolist()
    a_y = np.asarray(a_y, dtype=float).tolist()
    a_x = np.asarray(a_x, dtype=float).tolist()
    if not (len(s) == len(v_x) == len(a_y) == len(a_x) + 1):
        raise ValueError("a_x must have one entry fewer than the node arrays")
    with open(file, "w") as f:
        f.write("s,v_x,a_x,a_y\n")
        for i in range(len(s)):
            ax = repr(a_x[i]) if i < len(a_x) else ""
            f.write(f"{s[i]!r},{v_x[i]!r},{ax},{a_y[i]!r}\n")


def read_result_csv(file) -> dict:
    """Inverse of :func:`write_result_csv`; returns arrays keyed by column."""
    cols = {"s": [], "v_x": [], "a_x": [], "a_y": []}
    with open(file) as f:
        header = f.readline().strip().split(",")
        if header != list(cols):
            raise ValueError(f"unexpected header {header}")
        for line in f:
            if not line.strip():
                continue
            s, v, ax, ay = line.strip().split(",")
            cols["s"].append(float(s))
            cols["v_x"].append(float(v))
            cols["a_y"].append(float(ay))
            if ax:
                cols["a_x"].append(float(ax))
    return {k: np.array(v) for k, v in cols.items()}


def write_report(file, report: RunReport) -> None:
    with open(file, "w") as f:
        json.dump(report.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
