"""Uniform phase-space grids with CSV/JSON round-trip and the
finite-difference stencils used by the propagator residual checks.

Storage convention: values[iq, ip], so flattening row-major makes the
momentum index vary fastest.  Axes include both endpoints.
"""

from __future__ import annotations

import json
import os

import numpy as np
from scipy.ndimage import correlate1d

__all__ = ["PhaseGrid", "diff1_6", "diff2_6", "STENCIL_MARGIN"]

# 6th-order central stencils; callers must discard this many cells at
# each edge of any differentiated axis
STENCIL_MARGIN = 3

_D1_6 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_D2_6 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0


def diff1_6(values: np.ndarray, axis: int, h: float) -> np.ndarray:
    """6th-order first derivative along an axis; edges are garbage
    within STENCIL_MARGIN cells."""
    out = correlate1d(values.real, _D1_6, axis=axis, mode="nearest")
    if np.iscomplexobj(values):
        out = out + 1j * correlate1d(values.imag, _D1_6, axis=axis, mode="nearest")
    return out / h


def diff2_6(values: np.ndarray, axis: int, h: float) -> np.ndarray:
    """6th-order second derivative along an axis."""
    out = correlate1d(values.real, _D2_6, axis=axis, mode="nearest")
    if np.iscomplexobj(values):
        out = out + 1j * correlate1d(values.imag, _D2_6, axis=axis, mode="nearest")
    return out / (h * h)


class PhaseGrid:
    """Complex samples of a phase-space function on a uniform grid."""

    __slots__ = ("q_min", "q_max", "n_q", "p_min", "p_max", "n_p", "values")

    def __init__(self, q_min, q_max, n_q, p_min, p_max, n_p, values=None):
        if n_q < 2 or n_p < 2:
            raise ValueError("grid needs at least two points per axis")
        if not (q_max > q_min and p_max > p_min):
            raise ValueError("grid ranges must be increasing")
        self.q_min, self.q_max, self.n_q = float(q_min), float(q_max), int(n_q)
        self.p_min, self.p_max, self.n_p = float(p_min), float(p_max), int(n_p)
        if values is None:
            values = np.zeros((self.n_q, self.n_p), dtype=complex)
        else:
            values = np.asarray(values, dtype=complex)
            if values.shape != (self.n_q, self.n_p):
                raise ValueError("values shape does not match resolutions")
        self.values = values

    # -- constructors ----------------------------------------------------------

    @classmethod
    def blank(cls, q_min, q_max, n_q, p_min, p_max, n_p) -> "PhaseGrid":
        return cls(q_min, q_max, n_q, p_min, p_max, n_p)

    @classmethod
    def square(cls, half_width: float, n: int) -> "PhaseGrid":
        return cls(-half_width, half_width, n, -half_width, half_width, n)

    @classmethod
    def from_function(cls, fn, q_min, q_max, n_q, p_min, p_max, n_p) -> "PhaseGrid":
        g = cls(q_min, q_max, n_q, p_min, p_max, n_p)
        qq, pp = g.mesh()
        g.values = np.asarray(fn(qq, pp), dtype=complex)
        return g

    def like(self, values=None) -> "PhaseGrid":
        return PhaseGrid(self.q_min, self.q_max, self.n_q,
                         self.p_min, self.p_max, self.n_p, values)

    # -- geometry ---------------------------------------------------------------

    @property
    def qs(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @property
    def ps(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / (self.n_q - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.n_p - 1)

    def mesh(self):
        return np.meshgrid(self.qs, self.ps, indexing="ij")

    def box_mask(self, q_abs: float, p_abs: float) -> np.ndarray:
        qq, pp = self.mesh()
        return (np.abs(qq) <= q_abs) & (np.abs(pp) <= p_abs)

    # -- reductions ---------------------------------------------------------------

    def integrate(self) -> complex:
        """Cell-sum quadrature; accurate for boundary-decaying data."""
        return complex(self.values.sum() * self.dq * self.dp)

    def boundary_max(self) -> float:
        v = np.abs(self.values)
        return float(max(v[0, :].max(), v[-1, :].max(),
                         v[:, 0].max(), v[:, -1].max()))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def max_imag(self) -> float:
        return float(np.max(np.abs(self.values.imag)))

    # -- serialization -------------------------------------------------------------

    def _meta(self) -> dict:
        return {
            "q_min": self.q_min, "q_max": self.q_max, "n_q": self.n_q,
            "p_min": self.p_min, "p_max": self.p_max, "n_p": self.n_p,
            "layout": "row-major, p fastest",
        }

    def save_csv(self, path: str, extra_meta: dict | None = None) -> None:
        """CSV rows q,p,re,im (p varying fastest) plus a JSON sidecar
        <path>.meta.json carrying the grid ranges."""
        meta = self._meta()
        if extra_meta:
            meta.update(extra_meta)
        qs, ps = self.qs, self.ps
        with open(path, "w") as fh:
            for key in ("q_min", "q_max", "n_q", "p_min", "p_max", "n_p"):
                fh.write(f"# {key}={meta[key]!r}\n")
            fh.write("q,p,re,im\n")
            for iq in range(self.n_q):
                row = self.values[iq]
                for ip in range(self.n_p):
                    v = row[ip]
                    fh.write(f"{qs[iq]:.17g},{ps[ip]:.17g},"
                             f"{v.real:.17g},{v.imag:.17g}\n")
        with open(path + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=1)

    @classmethod
    def load_csv(cls, path: str) -> "PhaseGrid":
        meta = {}
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    key, _, val = line[1:].strip().partition("=")
                    try:
                        meta[key.strip()] = int(val)
                    except ValueError:
                        meta[key.strip()] = float(val)
                    continue
                if line.startswith("q,"):
                    continue
                rows.append([float(x) for x in line.split(",")])
        side = path + ".meta.json"
        if os.path.exists(side):
            with open(side) as fh:
                meta.update(json.load(fh))
        data = np.asarray(rows)
        n_q, n_p = int(meta["n_q"]), int(meta["n_p"])
        values = (data[:, 2] + 1j * data[:, 3]).reshape(n_q, n_p)
        return cls(meta["q_min"], meta["q_max"], n_q,
                   meta["p_min"], meta["p_max"], n_p, values)
