"""Spin-orbit wave-packet scheme: fine-structure beats in potassium.

A laser E_L excites both 4p fine-structure levels from 4s_{1/2}; the
test pulse E_X then ionizes into eps s_{1/2}, eps d_{3/2} and eps d_{5/2}.
Every matrix element factorizes into a j-independent radial integral
times Wigner-Eckart angular factors, and summing the final channels
incoherently gives the closed form (per initial spin projection)

    P(eps) = (1/3^4) |<4p||r||4s>|^2 {  |<eps s||r||4p>|^2 [5 + 4 cos(T)]
                                      + |<eps d||r||4p>|^2 (2/5) [8 + cos(T)] }

with the interference phase

    T(w) = phi_L(w_{3/2,i}) - phi_L(w_{1/2,i}) + phi_X(w - w_SO) - phi_X(w),

proportional to the group-delay difference of the two pulses across the
spin-orbit splitting w_SO.  The d_{5/2} channel is fed by the j' = 3/2
intermediate only, so it carries no modulation, which is why the
d-channel beat contrast is lower; the s- and d-channel modulations share
the same phase T.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import pulse as pulse_mod
from . import units
from .atomic.angular import reduced_ck, reduced_ck_half, wigner_eckart_z
from .errors import DomainError

# potassium numbers (NIST): excitation lines and ground energy, plus the
# 4p fine-structure splitting
K_EXCITATION_EV = (1.610, 1.617)     # j' = 1/2, 3/2
K_GROUND_EV = -4.341
K_SO_SPLITTING_MEV = 7.15517

_FINALS = ((0, 0.5), (2, 1.5), (2, 2.5))    # (l_j, j) reachable by dipole
_INTERMEDIATES = (0.5, 1.5)


@dataclass(frozen=True)
class SOConfig:
    """Laser pulse plus level structure of the spin-orbit scheme (a.u.)."""

    laser: pulse_mod.SpectralPulse
    excitation_energies: tuple[float, float]     # (j'=1/2, j'=3/2)
    ground_energy: float
    so_splitting: float

    def __post_init__(self):
        diff = self.excitation_energies[1] - self.excitation_energies[0]
        if abs(diff - self.so_splitting) * units.HARTREE_EV * 1e3 > 0.2:
            raise DomainError(
                "so_splitting must match the excitation-energy difference "
                "within 0.2 meV"
            )

    @classmethod
    def potassium(cls, laser: pulse_mod.SpectralPulse) -> "SOConfig":
        exc = tuple(units.ev_to_au(e) for e in K_EXCITATION_EV)
        return cls(
            laser=laser,
            excitation_energies=exc,
            ground_energy=units.ev_to_au(K_GROUND_EV),
            so_splitting=units.ev_to_au(K_SO_SPLITTING_MEV * 1e-3),
        )

    @property
    def intermediate_energies(self) -> tuple[float, float]:
        return (
            self.ground_energy + self.excitation_energies[0],
            self.ground_energy + self.excitation_energies[1],
        )


@dataclass(frozen=True)
class SORadialIntegrals:
    """Uncoupled reduced integrals <eps l || r || 4p> and <4p || r || 4s>.

    ``eps_s`` and ``eps_d`` may be scalars or arrays over the energy grid.
    """

    eps_s: float | np.ndarray
    eps_d: float | np.ndarray
    excitation: float = 1.0


def _plain_radial(reduced: float, l: int, lp: int) -> float:
    """Undo the C^1 factor: <nl|r|n'l'> = <nl||r||n'l'> / <l||C^1||l'>."""
    return reduced / reduced_ck(l, 1, lp)


def channel_amplitudes(
    path_factors: dict,
    red_s: float,
    red_d: float,
    red_excite: float,
    m: float,
) -> dict:
    """Complex final-channel amplitudes from per-intermediate path factors.

    ``path_factors[j']`` carries the product of the complex pulse samples
    E_X(w_{j j'}) E_L(w_{j' i}) for that intermediate.  The Wigner-Eckart
    chain uses the j-independent-radial approximation throughout.
    """
    rho = {0: _plain_radial(red_s, 0, 1), 2: _plain_radial(red_d, 2, 1)}
    rho_exc = _plain_radial(red_excite, 1, 0)
    out = {}
    for l_j, j in _FINALS:
        total = 0.0 + 0.0j
        for jp in _INTERMEDIATES:
            z_exc = wigner_eckart_z(jp, m, 0.5, rho_exc * reduced_ck_half(jp, 1, 0.5))
            z_ion = wigner_eckart_z(j, m, jp, rho[l_j] * reduced_ck_half(j, 1, jp))
            total += path_factors[jp] * z_ion * z_exc
        out[(l_j, j)] = total
    return out


def so_brute_sum(
    theta: float, red_s: float, red_d: float, red_excite: float, m: float = 0.5
) -> dict:
    """Per-channel probabilities |c_j|^2 for a prescribed beat phase."""
    factors = {0.5: 1.0 + 0.0j, 1.5: cmath.exp(1j * theta)}
    amps = channel_amplitudes(factors, red_s, red_d, red_excite, m)
    return {key: abs(a) ** 2 for key, a in amps.items()}


def so_closed_form(
    theta: float, red_s: float, red_d: float, red_excite: float
) -> dict:
    """Channel weights of the closed-form angular-momentum evaluation."""
    pref = red_excite**2 / 81.0
    s_part = pref * red_s**2 * (5.0 + 4.0 * math.cos(theta))
    d_part = pref * red_d**2 * (2.0 / 5.0) * (8.0 + math.cos(theta))
    return {"s": s_part, "d": d_part, "total": s_part + d_part}


@dataclass(frozen=True)
class SOSpectrum:
    energies: np.ndarray
    total: np.ndarray
    channels: dict                   # (l_j, j) -> array
    theta: np.ndarray                # interference phase per energy
    amplitude_assumption_ok: np.ndarray
    meta: dict = field(default_factory=dict)


def so_spectrum(
    cfg: SOConfig,
    p: pulse_mod.SpectralPulse,
    radial: SORadialIntegrals,
    energies: Sequence[float],
) -> SOSpectrum:
    """Photoelectron spectrum of the spin-orbit scheme (either m, averaged).

    The appendix amplitude assumptions -- equal |E_L| on both excitation
    lines and |E_X(w)| = |E_X(w - w_SO)| -- are validated per energy; a
    violation beyond 1% only lowers the corresponding flag, it never
    raises.
    """
    energies = np.asarray(energies, dtype=float)
    e_half, e_three = cfg.intermediate_energies
    w_exc_half = cfg.excitation_energies[0]
    w_exc_three = cfg.excitation_energies[1]
    l_half = pulse_mod.sample(cfg.laser, w_exc_half)
    l_three = pulse_mod.sample(cfg.laser, w_exc_three)
    red_s = np.broadcast_to(np.asarray(radial.eps_s, dtype=float), energies.shape)
    red_d = np.broadcast_to(np.asarray(radial.eps_d, dtype=float), energies.shape)

    totals = np.zeros(energies.size)
    channels = {key: np.zeros(energies.size) for key in _FINALS}
    thetas = np.zeros(energies.size)
    ok = np.ones(energies.size, dtype=bool)
    laser_ok = _relative_match(abs(l_half), abs(l_three)) <= 0.01
    for i, eps in enumerate(energies):
        w_hi = eps - e_half            # photon frequency via j' = 1/2
        w_lo = w_hi - cfg.so_splitting  # via j' = 3/2
        x_hi = pulse_mod.sample(p, w_hi)
        x_lo = pulse_mod.sample(p, w_lo)
        ok[i] = laser_ok and _relative_match(abs(x_hi), abs(x_lo)) <= 0.01
        factors = {0.5: x_hi * l_half, 1.5: x_lo * l_three}
        thetas[i] = (
            cmath.phase(l_three) - cmath.phase(l_half)
            + cmath.phase(x_lo) - cmath.phase(x_hi)
        )
        # statistical mixture over m = +-1/2 (the two are identical)
        for m in (0.5, -0.5):
            amps = channel_amplitudes(
                factors, float(red_s[i]), float(red_d[i]), radial.excitation, m
            )
            for key, a in amps.items():
                channels[key][i] += 0.5 * abs(a) ** 2
        totals[i] = sum(channels[key][i] for key in _FINALS)
    return SOSpectrum(
        energies=energies,
        total=totals,
        channels=channels,
        theta=thetas,
        amplitude_assumption_ok=ok,
        meta={
            "so_splitting": cfg.so_splitting,
            "intermediates_au": cfg.intermediate_energies,
        },
    )


def _relative_match(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0
