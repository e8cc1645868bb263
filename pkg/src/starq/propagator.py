"""Harmonic-oscillator Moyal propagator and spectral projections.

The harmonic Hamiltonian is diagonal in the Hermite basis, so the
evolution operator exp(-i t H / hbar) and the windowed spectral
projection are both diagonal mode sums; their phase-space symbols come
from the symbol map applied to those diagonals.  A raised-cosine
rolloff over the top of the retained mode band regularizes the
truncated parity sum (the raw partial sums oscillate instead of
converging pointwise), and a compressed mode count keeps the symbol's
local wavenumber low enough for finite-difference residual checks.
"""

from __future__ import annotations

import numpy as np

from .grid import PhaseGrid, STENCIL_MARGIN, diff1_6, diff2_6
from .hermite import HermiteBasis, OperatorMatrix
from .weylnumeric import weyl_inverse

__all__ = [
    "mode_rolloff",
    "moyal_propagator_ho",
    "star_schroedinger_residual",
    "hann_kernel",
    "spectral_projection_ho",
    "spectral_weight_ho",
]

# five-point, 4th-order central first-derivative stencil in time
_D1_4 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def mode_rolloff(n_modes: int, keep: float = 0.5) -> np.ndarray:
    """Raised-cosine weights: 1 on the first ``keep`` fraction of the
    band, falling smoothly to exactly 0 at the last retained mode."""
    if n_modes < 4:
        raise ValueError("need at least 4 modes to roll off")
    n = np.arange(n_modes, dtype=float)
    cut = int(keep * n_modes)
    w = np.ones(n_modes)
    tail = n >= cut
    w[tail] = np.cos(0.5 * np.pi * (n[tail] - cut) / (n_modes - 1 - cut)) ** 2
    return w


def _propagator_diag(basis: HermiteBasis, t: float, n_modes: int) -> np.ndarray:
    energies = basis.energies()[:n_modes]
    diag = np.zeros(basis.size, dtype=complex)
    diag[:n_modes] = mode_rolloff(n_modes) * np.exp(-1j * t * energies / basis.hbar)
    return diag


def moyal_propagator_ho(basis: HermiteBasis, t: float,
                        grid: PhaseGrid | None = None,
                        n_modes: int = 28) -> PhaseGrid:
    """Phase-space symbol of exp(-i t H / hbar) for H = (p^2 + q^2)/2.

    Away from the caustic times (odd multiples of pi, where the exact
    symbol develops sec(t/2) singularities; enforced via
    |cos(t/2)| > 0.1) this approximates the closed-form propagator
    sec(t/2) exp(-(2i/hbar) tan(t/2) H) on the region the retained
    modes resolve.  At t = 0 it reproduces the unit symbol in the
    rolled-off sense; after a full period t = 2 pi every retained phase
    equals -1, so the symbol returns to minus its t = 0 value.
    """
    if abs(np.cos(0.5 * t)) <= 0.1:
        raise ValueError(f"t={t} is too close to a propagator caustic")
    if grid is None:
        grid = PhaseGrid.square(3.0 * np.sqrt(basis.hbar), 201)
    diag = _propagator_diag(basis, t, n_modes)
    return weyl_inverse(basis, OperatorMatrix(basis, np.diag(diag)), grid)


def star_schroedinger_residual(basis: HermiteBasis, t: float,
                               grid: PhaseGrid | None = None,
                               dt: float = 0.004,
                               n_modes: int = 28) -> float:
    """Max interior residual of i hbar dXi/dt = H * Xi, relative to
    max |Xi|, with the time derivative from a 5-point 4th-order stencil
    and the star product expanded exactly for quadratic H:

        H * Xi = H Xi + (i hbar / 2)(q dXi/dp - p dXi/dq)
                 - (hbar^2 / 8)(d^2Xi/dq^2 + d^2Xi/dp^2)

    (the series terminates; sign=+1 realization).  Spatial derivatives
    use the 6th-order stencils; a STENCIL_MARGIN border is discarded.
    """
    hbar = basis.hbar
    if grid is None:
        grid = PhaseGrid.square(3.0 * np.sqrt(hbar), 201)
    slices = [moyal_propagator_ho(basis, t + k * dt, grid, n_modes).values
              for k in (-2, -1, 0, 1, 2)]
    dxi_dt = sum(c * s for c, s in zip(_D1_4, slices)) / dt
    xi = slices[2]
    qq, pp = grid.mesh()
    h_vals = 0.5 * (qq**2 + pp**2)
    star = (h_vals * xi
            + 0.5j * hbar * (qq * diff1_6(xi, 1, grid.dp)
                             - pp * diff1_6(xi, 0, grid.dq))
            - (hbar**2 / 8.0) * (diff2_6(xi, 0, grid.dq)
                                 + diff2_6(xi, 1, grid.dp)))
    resid = 1j * hbar * dxi_dt - star
    m = STENCIL_MARGIN
    core = resid[m:-m, m:-m]
    scale = np.max(np.abs(xi[m:-m, m:-m]))
    return float(np.max(np.abs(core)) / scale)


def hann_kernel(x) -> np.ndarray:
    """Fourier transform of the normalized Hann time window,
    kappa(x) = sinc(x) / (1 - x^2), with the removable x = +-1 points
    filled with the limit value 1/2."""
    x = np.asarray(x, dtype=float)
    den = 1.0 - x * x
    safe = np.where(np.abs(den) < 1e-8, 1.0, den)
    out = np.where(np.abs(den) < 1e-8, 0.5, np.sinc(x) / safe)
    return out


def _spectral_kappa(basis: HermiteBasis, energy: float, half_width: float) -> np.ndarray:
    gap = basis.hbar  # harmonic level spacing
    if half_width < 4.0 * np.pi * basis.hbar / gap:
        raise ValueError(
            "time window too short to resolve the level spacing "
            f"(need half-width >= {4.0 * np.pi * basis.hbar / gap:.3g})")
    x = (energy - basis.energies()) * half_width / (np.pi * basis.hbar)
    return hann_kernel(x)


def spectral_projection_ho(basis: HermiteBasis, energy: float,
                           half_width: float,
                           grid: PhaseGrid | None = None) -> PhaseGrid:
    """Hann-windowed spectral density at the given energy: the symbol of
    (1/2T) Int_{-T}^{T} cos^2(pi t / 2T) e^{i t (E - H) / hbar} dt,
    which in the Hermite basis is the diagonal kappa((E - E_n) T / pi hbar).

    Sweeping the energy, its phase-space integral peaks at the harmonic
    levels hbar (n + 1/2); at a level it is proportional to that
    level's Wigner function up to sidelobe leakage.
    """
    kappa = _spectral_kappa(basis, energy, half_width)
    if grid is None:
        grid = PhaseGrid.square(3.0 * np.sqrt(basis.hbar), 201)
    return weyl_inverse(basis, OperatorMatrix(basis, np.diag(kappa.astype(complex))), grid)


def spectral_weight_ho(basis: HermiteBasis, energy: float, half_width: float) -> float:
    """Phase-space integral of the spectral density, evaluated in mode
    space (each mode's Wigner function integrates to one under
    dq dp / (2 pi hbar))."""
    return float(np.sum(_spectral_kappa(basis, energy, half_width)))
