"""Spectral test pulses and their time-domain fields.

A pulse is stored as separate magnitude and phase samples on a
positive-frequency grid (atomic units throughout), so the phase is always
available without unwrapping.  The real field is recovered from the
positive-frequency half axis alone,

    E(t) = 2 Re[ (1/2pi) int_0^inf |E(w)| exp(i phi(w)) exp(-i w t) dw ],

i.e. the Hermitian completion of the e^{-i w t} Fourier convention.
Sign convention, fixed package-wide:

  * a pulse that arrives *later* by tau carries the extra spectral phase
    +w*tau (shift theorem for e^{-i w t});
  * the group delay d(phi)/dw is the arrival time of frequency w.

Energy bookkeeping for half-axis storage:

    int E(t)^2 dt = (1/pi) int_0^inf |E(w)|^2 dw.

The absolute scale of |E| is arbitrary (all downstream observables depend
on products or ratios of spectral amplitudes only).

Time-domain synthesis uses direct trapezoid quadrature rather than an
FFT: grids need not be uniform or power-of-two, and desk-scale sizes make
the O(N^2) cost irrelevant.  Derivatives use central differences in the
interior and one-sided second-order stencils at the edges, so edge errors
are O(h^2) and predictable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .errors import DomainError

_UNIFORM_RTOL = 1e-12


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive-frequency grid (a.u.)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        if pts.ndim != 1 or pts.size < 2:
            raise DomainError("frequency grid needs at least 2 points")
        if not np.all(np.diff(pts) > 0.0):
            raise DomainError("frequency grid must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def uniform(self) -> bool:
        d = np.diff(self.points)
        return bool(np.all(np.abs(d - d[0]) <= _UNIFORM_RTOL * abs(d[0])))

    @property
    def spacing(self) -> float:
        """Mean spacing; exact step for uniform grids."""
        return float((self.points[-1] - self.points[0]) / (self.points.size - 1))

    def __len__(self):
        return self.points.size

    @classmethod
    def linear(cls, w_min: float, w_max: float, n: int) -> "FrequencyGrid":
        return cls(np.linspace(w_min, w_max, n))


@dataclass(frozen=True)
class SpectralPulse:
    """Positive-frequency spectral amplitude |E(w)| e^{i phi(w)} plus CEP.

    ``cep`` records the constant phase term at the pulse anchor frequency;
    the ``phase`` array is the full spectral phase including it.
    """

    grid: FrequencyGrid
    magnitude: np.ndarray
    phase: np.ndarray
    cep: float = 0.0

    def __post_init__(self):
        mag = np.asarray(self.magnitude, dtype=float)
        ph = np.asarray(self.phase, dtype=float)
        n = len(self.grid)
        if mag.shape != (n,) or ph.shape != (n,):
            raise DomainError("magnitude/phase must match the grid length")
        if np.any(mag < 0.0):
            raise DomainError("spectral magnitude must be nonnegative")
        object.__setattr__(self, "magnitude", mag)
        object.__setattr__(self, "phase", ph)


@dataclass(frozen=True)
class TemporalField:
    """Real field samples on a uniform time grid (a.u.)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.size < 2:
            raise DomainError("time grid needs at least 2 points")
        d = np.diff(t)
        if not np.all(np.abs(d - d[0]) <= _UNIFORM_RTOL * max(abs(d[0]), 1e-300)):
            raise DomainError("time grid must be uniform")
        if v.shape != t.shape:
            raise DomainError("values must match the time grid")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def spacing(self) -> float:
        return float(self.times[1] - self.times[0])


@dataclass(frozen=True)
class GaussianPulseSpec:
    """Gaussian pulse parameterization (all atomic units).

    ``fwhm_bandwidth`` is the FWHM of the spectral *intensity* |E(w)|^2.
    ``gdd`` is the quadratic-phase coefficient (time^2); ``delay`` shifts
    the arrival time (positive = later, see module convention).
    """

    center: float
    fwhm_bandwidth: float
    gdd: float = 0.0
    delay: float = 0.0
    amplitude: float = 1.0
    cep: float = 0.0

    def __post_init__(self):
        if self.fwhm_bandwidth <= 0.0:
            raise DomainError("fwhm_bandwidth must be > 0")
        if self.amplitude <= 0.0:
            raise DomainError("amplitude must be > 0")


def synthesize_gaussian(spec: GaussianPulseSpec, grid: FrequencyGrid) -> SpectralPulse:
    """Sample a (possibly chirped, delayed) Gaussian pulse on ``grid``.

    magnitude(w) = amplitude * exp(-2 ln2 (w-w0)^2 / dw^2)
    phase(w)     = cep + delay*(w-w0) + (gdd/2)*(w-w0)^2

    Raises
    ------
    DomainError
        If the grid does not span at least +-3 FWHM around the center.
    """
    w = grid.points
    w0, dw = spec.center, spec.fwhm_bandwidth
    if w[0] > w0 - 3.0 * dw or w[-1] < w0 + 3.0 * dw:
        raise DomainError(
            f"grid [{w[0]:.4g}, {w[-1]:.4g}] does not cover pulse support "
            f"{w0:.4g} +- {3.0 * dw:.4g}"
        )
    x = w - w0
    mag = spec.amplitude * np.exp(-2.0 * math.log(2.0) * x**2 / dw**2)
    phase = spec.cep + spec.delay * x + 0.5 * spec.gdd * x**2
    return SpectralPulse(grid=grid, magnitude=mag, phase=phase, cep=spec.cep)


def group_delay(p: SpectralPulse) -> np.ndarray:
    """Spectral derivative of the spectral phase, d(phi)/dw (a.u. of time).

    Central differences interiorly, one-sided second-order at the edges.
    """
    if len(p.grid) < 3:
        raise DomainError("group delay needs at least 3 grid points")
    return np.gradient(p.phase, p.grid.points, edge_order=2)


def phase_from_group_delay(
    gd: np.ndarray, grid: FrequencyGrid, anchor: float, phi0: float = 0.0
) -> np.ndarray:
    """Integrate a group-delay curve back to a spectral phase.

    Cumulative trapezoid from ``anchor``; the returned phase equals
    ``phi0`` at the anchor frequency (interpolated if off-grid).
    """
    w = grid.points
    gd = np.asarray(gd, dtype=float)
    if gd.shape != w.shape:
        raise DomainError("group-delay curve must match the grid")
    if not (w[0] <= anchor <= w[-1]):
        raise DomainError(f"anchor {anchor:.6g} outside grid [{w[0]:.6g}, {w[-1]:.6g}]")
    cum = cumulative_trapezoid(gd, w, initial=0.0)
    at_anchor = np.interp(anchor, w, cum)
    return cum - at_anchor + phi0


def to_time_domain(p: SpectralPulse, times: np.ndarray) -> TemporalField:
    """Real time-domain field by direct quadrature over the half axis.

    E(t) = 2 Re[(1/2pi) int |E| e^{i phi} e^{-i w t} dw]; output is exactly
    real by construction.
    """
    t = np.asarray(times, dtype=float)
    w = p.grid.points
    spec = p.magnitude * np.exp(1j * p.phase)
    out = np.empty(t.shape, dtype=float)
    # chunked to bound the (n_t x n_w) phase matrix
    step = max(1, int(2e6 / max(w.size, 1)))
    for i in range(0, t.size, step):
        block = t[i : i + step]
        kernel = np.exp(-1j * np.outer(block, w))
        out[i : i + step] = 2.0 * np.real(trapezoid(kernel * spec, w, axis=-1)) / (2.0 * math.pi)
    return TemporalField(times=t, values=out)


def analytic_signal(p: SpectralPulse, times: np.ndarray) -> np.ndarray:
    """Complex half-axis integral z(t); the real field is 2 Re z(t).

    |2 z(t)| is the field envelope, useful for duration measurements.
    """
    t = np.asarray(times, dtype=float)
    w = p.grid.points
    spec = p.magnitude * np.exp(1j * p.phase)
    out = np.empty(t.shape, dtype=complex)
    step = max(1, int(2e6 / max(w.size, 1)))
    for i in range(0, t.size, step):
        block = t[i : i + step]
        kernel = np.exp(-1j * np.outer(block, w))
        out[i : i + step] = trapezoid(kernel * spec, w, axis=-1) / (2.0 * math.pi)
    return out


def apply_delay(p: SpectralPulse, tau: float) -> SpectralPulse:
    """Shift the pulse later in time by ``tau``: phase += w*tau."""
    return replace(p, phase=p.phase + p.grid.points * tau)


def sample(p: SpectralPulse, omega):
    """Complex spectral value |E| e^{i phi} at ``omega`` (scalar or array).

    Magnitude and phase are interpolated linearly and separately; out of
    range raises DomainError.
    """
    w = p.grid.points
    om = np.asarray(omega, dtype=float)
    if np.any(om < w[0]) or np.any(om > w[-1]):
        raise DomainError("sample frequency outside the pulse grid")
    mag = np.interp(om, w, p.magnitude)
    ph = np.interp(om, w, p.phase)
    out = mag * np.exp(1j * ph)
    return complex(out) if np.isscalar(omega) else out


def spectral_energy(p: SpectralPulse) -> float:
    """(1/pi) int |E(w)|^2 dw -- equals int E(t)^2 dt (Parseval)."""
    return float(trapezoid(p.magnitude**2, p.grid.points) / math.pi)


def temporal_energy(f: TemporalField) -> float:
    """int E(t)^2 dt by trapezoid."""
    return float(trapezoid(f.values**2, f.times))


def intensity_centroid(p: SpectralPulse) -> float:
    """|E|^2-weighted mean frequency."""
    w = p.grid.points
    i2 = p.magnitude**2
    norm = trapezoid(i2, w)
    if norm <= 0.0:
        raise DomainError("pulse has zero spectral energy")
    return float(trapezoid(w * i2, w) / norm)


def intensity_fwhm(p: SpectralPulse) -> float:
    """Variance-equivalent FWHM of |E(w)|^2: 2 sqrt(2 ln 2) * sigma_rms.

    Exact for Gaussian spectra; a robust width proxy otherwise.
    """
    w = p.grid.points
    i2 = p.magnitude**2
    norm = trapezoid(i2, w)
    if norm <= 0.0:
        raise DomainError("pulse has zero spectral energy")
    mean = trapezoid(w * i2, w) / norm
    var = trapezoid((w - mean) ** 2 * i2, w) / norm
    return float(2.0 * math.sqrt(2.0 * math.log(2.0)) * math.sqrt(var))
