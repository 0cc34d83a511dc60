"""SFA reference: laser-assisted photoionization (streaking) spectrograms.

First-order strong-field-approximation amplitude in velocity gauge,

    c_k = -i <k|k_z|i> int dt' A_X(t') exp[i S(t'; k)],
    S(t'; k) = int^t' dt'' [ (k + A_L(t''))^2 / 2 + I_p ],

evaluated by direct trapezoid quadrature (no stationary-phase shortcut).
The XUV pulse enters as a vector potential, A_X(w) = E_X(w)/(i w) on the
positive frequency axis.  The classical check: the spectral centroid at
XUV arrival time t0 sits at (p0 - A_L(t0))^2 / 2, i.e. the photoelectron
momentum is deflected by -A_L at the instant of ionization.

This model carries the atomic latency that plagues laser-assisted
characterization; it exists here as the reference the quantum-beat
scheme is compared against, not as a retrieval tool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from . import pulse as pulse_mod
from .atomic.photo import plane_wave_me
from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class LaserField:
    """Streaking laser: vector potential with a cos^2 envelope.

    A_L(t) = a0 cos^2(pi t / (2 fwhm)) cos(w_L t + cep) for |t| <= fwhm,
    zero outside; ``fwhm`` is the FWHM of the envelope (a.u. of time).
    """

    a0: float
    omega: float
    fwhm: float
    cep: float = 0.0

    def __post_init__(self):
        if self.a0 < 0.0:
            raise DomainError("vector-potential amplitude must be >= 0")
        if self.omega <= 0.0 or self.fwhm <= 0.0:
            raise DomainError("laser frequency and envelope FWHM must be > 0")

    def vector_potential(self, t):
        t = np.asarray(t, dtype=float)
        env = np.where(
            np.abs(t) <= self.fwhm,
            np.cos(math.pi * t / (2.0 * self.fwhm)) ** 2,
            0.0,
        )
        return self.a0 * env * np.cos(self.omega * t + self.cep)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def action_table(k: float, times: np.ndarray, laser: LaserField, ip: float) -> np.ndarray:
    """S(t; k) accumulated from the start of ``times`` by trapezoid."""
    times = np.asarray(times, dtype=float)
    a_l = laser.vector_potential(times)
    integrand = 0.5 * (k + a_l) ** 2 + ip
    return cumulative_trapezoid(integrand, times, initial=0.0)


def action(k: float, t_prime: float, times: np.ndarray, laser: LaserField, ip: float) -> float:
    """S(t'; k) interpolated on the tabulated grid; t' must lie inside it."""
    times = np.asarray(times, dtype=float)
    if t_prime < times[0] or t_prime > times[-1]:
        raise DomainError("t' outside the tabulated time range")
    return float(np.interp(t_prime, times, action_table(k, times, laser, ip)))


def xuv_vector_potential(p: pulse_mod.SpectralPulse, times: np.ndarray) -> np.ndarray:
    """Real A_X(t) from the spectral field via A_X(w) = E_X(w)/(i w)."""
    times = np.asarray(times, dtype=float)
    w = p.grid.points
    spec = p.magnitude * np.exp(1j * p.phase) / (1j * w)
    out = np.empty(times.shape, dtype=float)
    step = max(1, int(2e6 / max(w.size, 1)))
    for i in range(0, times.size, step):
        block = times[i : i + step]
        kernel = np.exp(-1j * np.outer(block, w))
        out[i : i + step] = 2.0 * np.real(
            trapezoid(kernel * spec, w, axis=-1)
        ) / (2.0 * math.pi)
    return out


def _check_resolution(p: pulse_mod.SpectralPulse, times: np.ndarray):
    dt = float(times[1] - times[0])
    w_center = pulse_mod.intensity_centroid(p)
    if dt > 2.0 * math.pi / (10.0 * w_center):
        raise ConfigurationError(
            f"time step {dt:.4g} under-resolves the XUV carrier "
            f"(need >= 10 points per period {2.0 * math.pi / w_center:.4g})"
        )


def sfa_amplitude(
    k: float,
    theta_k: float,
    xuv: pulse_mod.SpectralPulse,
    times: np.ndarray,
    laser: LaserField,
    ip: float,
    matrix_element: Optional[float] = None,
    xuv_samples: Optional[np.ndarray] = None,
) -> complex:
    """First-order SFA ionization amplitude for one final momentum.

    ``matrix_element`` overrides the plane-wave <k|k_z|i> (pass 1.0 for
    the idealized flat-matrix-element model).  ``xuv_samples`` can carry
    a precomputed A_X(t) on ``times`` to avoid resampling in scans.
    """
    times = np.asarray(times, dtype=float)
    _check_resolution(xuv, times)
    if xuv_samples is None:
        xuv_samples = xuv_vector_potential(xuv, times)
    me = plane_wave_me(k, theta_k) if matrix_element is None else matrix_element
    s = action_table(k, times, laser, ip)
    return complex(-1j * me * trapezoid(xuv_samples * np.exp(1j * s), times))


@dataclass(frozen=True)
class StreakSpectrogram:
    energies: np.ndarray
    delays: np.ndarray
    values: np.ndarray          # values[i_delay, i_energy]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.delays), len(self.energies)):
            raise DomainError("values must be shaped (n_delays, n_energies)")
        if v.size and v.min() < 0.0:
            raise DomainError("probabilities must be nonnegative")


def streak_spectrogram(
    xuv: pulse_mod.SpectralPulse,
    laser: LaserField,
    ip: float,
    energies: Sequence[float],
    delays: Sequence[float],
    times: Optional[np.ndarray] = None,
    matrix_element: Optional[float] = None,
) -> StreakSpectrogram:
    """|c_k|^2 over (energy, XUV delay), emission along the polarization.

    Delaying the XUV by tau is implemented by shifting the laser clock
    instead (same physics, the XUV time window stays centered), so a
    single A_X(t) table serves the whole scan.
    """
    energies = np.asarray(energies, dtype=float)
    delays = np.asarray(delays, dtype=float)
    if np.any(energies <= 0.0):
        raise DomainError("photoelectron energies must be positive")
    if times is None:
        times = _default_time_grid(xuv)
    times = np.asarray(times, dtype=float)
    _check_resolution(xuv, times)
    a_x = xuv_vector_potential(xuv, times)
    ks = np.sqrt(2.0 * energies)
    mes = (
        np.array([plane_wave_me(k, 0.0) for k in ks])
        if matrix_element is None
        else np.full(ks.shape, matrix_element)
    )
    values = np.empty((delays.size, energies.size))
    for i, tau in enumerate(delays):
        a_l = laser.vector_potential(times + tau)
        i1 = cumulative_trapezoid(a_l, times, initial=0.0)
        i2 = cumulative_trapezoid(a_l**2, times, initial=0.0)
        # S(k, t) = (k^2/2 + Ip) t + k I1 + I2/2, delay-dependent constants drop
        base = times - times[0]
        for j, k in enumerate(ks):
            s = (0.5 * k * k + ip) * base + k * i1 + 0.5 * i2
            amp = trapezoid(a_x * np.exp(1j * s), times)
            values[i, j] = (mes[j] * abs(amp)) ** 2
    return StreakSpectrogram(
        energies=energies,
        delays=delays,
        values=values,
        meta={"kind": "streak", "ip": ip, "laser_omega": laser.omega, "laser_a0": laser.a0},
    )


def _default_time_grid(xuv: pulse_mod.SpectralPulse) -> np.ndarray:
    w_center = pulse_mod.intensity_centroid(xuv)
    bw = pulse_mod.intensity_fwhm(xuv)
    duration = 4.0 * math.log(2.0) / bw
    gd = pulse_mod.group_delay(xuv)
    span = 8.0 * duration + float(gd.max() - gd.min())
    center = float(gd.mean())
    dt = 2.0 * math.pi / (16.0 * w_center)
    n = int(span / dt) + 1
    return center + np.linspace(-span / 2.0, span / 2.0, n)


def energy_centroids(s: StreakSpectrogram) -> np.ndarray:
    """Spectral first moment per delay column."""
    weights = s.values.sum(axis=1)
    if np.any(weights <= 0.0):
        raise DomainError("empty spectrum at some delay")
    return (s.values * s.energies[None, :]).sum(axis=1) / weights


def classical_centroid_prediction(
    s: StreakSpectrogram, laser: LaserField, p0: float
) -> np.ndarray:
    """(p0 - A_L(tau))^2 / 2 at each scan delay."""
    a_l = laser.vector_potential(s.delays)
    return 0.5 * (p0 - a_l) ** 2
