"""Photoionization channels: dipole amplitudes, tables, cross sections.

A channel is one (photoelectron energy, final angular momentum L) pair;
its amplitude is the real radial dipole integral together with the
scattering phase of the continuum wave.  Channel tables over an energy
grid are the work unit consumed by the quantum-beat forward model and
can be cached as CSV (one row per (eps, L), '#' header lines recording
the potential and grid).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import units
from ..errors import DomainError
from . import angular
from .radial import (
    BoundOrbital,
    CentralPotential,
    RadialGrid,
    radial_dipole,
    solve_bound,
    solve_continuum,
)


@dataclass(frozen=True)
class ChannelAmplitude:
    """Radial dipole integral and scattering phase for one (eps, L)."""

    epsilon: float
    L: int
    radial_integral: float
    phase: float

    def __post_init__(self):
        if not math.isfinite(self.radial_integral):
            raise DomainError("radial integral must be finite")


def allowed_final_l(l: int) -> tuple[int, ...]:
    """Dipole-allowed final orbital momenta from an l state."""
    return tuple(L for L in (l - 1, l + 1) if L >= 0)


def channel_table(
    pot: CentralPotential,
    orbital: BoundOrbital,
    epsilons: Sequence[float],
    final_l: Sequence[int] | None = None,
    grid: RadialGrid | None = None,
) -> list[ChannelAmplitude]:
    """Solve continuum waves and dipole integrals over an energy grid.

    The bound orbital is re-solved on the continuum grid when the two
    grids differ, so bound and continuum integrands always share points.
    """
    eps = np.asarray(epsilons, dtype=float)
    if np.any(eps <= 0):
        raise DomainError("channel energies must be positive")
    if final_l is None:
        final_l = allowed_final_l(orbital.l)
    if grid is None:
        grid = RadialGrid.for_continuum(k_max=math.sqrt(2.0 * eps.max()))
    if len(grid) != len(orbital.grid) or abs(grid.step - orbital.grid.step) > 1e-12:
        orbital = solve_bound(pot, orbital.n, orbital.l, grid)
    out = []
    for e in eps:
        for L in final_l:
            wave = solve_continuum(pot, float(e), int(L), grid)
            out.append(
                ChannelAmplitude(
                    epsilon=float(e),
                    L=int(L),
                    radial_integral=radial_dipole(orbital, wave),
                    phase=wave.phase,
                )
            )
    return out


def plane_wave_me(k: float, theta_k: float, Z: float = 1.0) -> float:
    """One-photon ionization matrix element 1s -> plane wave.

    (2^{3/2}/pi) beta^{5/2} k cos(theta_k) / (k^2 + beta^2)^2 with
    beta = Z/a0; falls off as k^{-3} at large momentum.
    """
    if k < 0.0:
        raise DomainError("momentum must be >= 0")
    beta = Z  # a0 = 1
    return (
        (2.0**1.5 / math.pi)
        * beta**2.5
        * k
        * math.cos(theta_k)
        / (k * k + beta * beta) ** 2
    )


def _m_averaged_weight(l_f: int, l: int) -> float:
    """Initial-m average of the squared z angular factor into l_f."""
    total = 0.0
    for m in range(-l, l + 1):
        if abs(m) <= l_f:
            total += angular.z_angular_factor(l_f, l, m) ** 2
    return total / (2 * l + 1)


@dataclass(frozen=True)
class CrossSectionCurve:
    photon_energies: np.ndarray      # a.u.
    sigma_mb: np.ndarray             # total, megabarn
    channels: dict                   # l_f -> per-energy sigma (Mb)

    @property
    def photon_energies_ev(self) -> np.ndarray:
        return self.photon_energies * units.HARTREE_EV


def cross_section(
    pot: CentralPotential,
    orbital: BoundOrbital,
    epsilons: Sequence[float],
    grid: RadialGrid | None = None,
) -> CrossSectionCurve:
    """Photoionization cross section for linearly polarized light.

    sigma(omega) = 4 pi^2 alpha omega sum_{l_f} W(l_f) |<eps l_f|r|n l>|^2
    in Mb, with omega = eps + |E_nl|, W(l_f) the initial-m-averaged
    angular factor of z, and channels summed incoherently.
    """
    eps = np.asarray(epsilons, dtype=float)
    finals = allowed_final_l(orbital.l)
    weights = {L: _m_averaged_weight(L, orbital.l) for L in finals}
    table = channel_table(pot, orbital, eps, final_l=finals, grid=grid)
    omegas = eps + abs(orbital.energy)
    per_channel = {L: np.zeros_like(eps) for L in finals}
    for ch in table:
        i = int(np.argmin(np.abs(eps - ch.epsilon)))
        per_channel[ch.L][i] += (
            4.0 * math.pi**2 * units.FINE_STRUCTURE * omegas[i]
            * weights[ch.L] * ch.radial_integral**2 * units.A0_SQUARED_MB
        )
    total = np.sum(list(per_channel.values()), axis=0)
    return CrossSectionCurve(photon_energies=omegas, sigma_mb=total, channels=per_channel)
