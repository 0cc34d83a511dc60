"""Quantum-beat photoelectron spectrograms from a two-state wave packet.

A test pulse sequentially ionizes the packet; the two bound levels reach
the same final continuum energy eps by absorbing different frequencies

    w_f1 = eps - e1,   w_f2 = eps - e2   (state 1 deeper, w_f1 > w_f2),

so the photoelectron yield beats in the pump-probe delay tau:

    P(eps, tau) = A1 + A2 + B cos(d_omega tau + theta0),
    theta0      = phi_X(w_f1) - phi_X(w_f2),

with per-channel direct terms A_j = (|E(w_fj)| z_j c_j)^2 and cross-term
magnitude |B| = 2 sqrt(A1 A2).  A negative product of matrix elements
flips the sign of B; it is never folded into theta0.  The forward model
always uses exact spectral-phase differences, never the shearing
approximation, so the latter's error is measurable downstream.

Angle-integrated spectrograms sum channels incoherently over the final
orbital momentum; angle-resolved emission sums the partial waves
coherently with i^L e^{-i eta_L} Y_LM weights, which is where scattering
phases (and hence atomic latency) enter.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import lpmv, roots_legendre

from . import pulse as pulse_mod
from . import retrieval as retrieval_mod
from .atomic.photo import ChannelAmplitude, allowed_final_l
from .atomic.angular import z_angular_factor
from .errors import ConfigurationError, DomainError
from .wavepacket import WavePacket, effective_binding, splitting

DELAY_ZERO_CONVENTION = (
    "beat phase referenced so a transform-limited pulse at zero control "
    "delay yields zero delay"
)
CONTRAST_MASK_THRESHOLD = 0.02


# ---------------------------------------------------------------------------
# channel models
# ---------------------------------------------------------------------------

class ConstantChannels:
    """Energy-independent matrix elements, e.g. the idealized 'all ones'."""

    def __init__(self, radial: dict, eta: dict | None = None):
        # radial: {(state, L): value}; eta: {L: value}
        self._radial = dict(radial)
        self._eta = dict(eta or {})
        self.final_l = tuple(sorted({L for (_, L) in self._radial}))

    @classmethod
    def ones(cls, final_l: Sequence[int] = (0,)) -> "ConstantChannels":
        radial = {(s, L): 1.0 for s in (1, 2) for L in final_l}
        return cls(radial, {L: 0.0 for L in final_l})

    def amplitude(self, state: int, L: int, epsilon: float) -> ChannelAmplitude:
        try:
            z = self._radial[(state, L)]
        except KeyError:
            raise DomainError(f"channel (state {state}, L={L}) not provided")
        return ChannelAmplitude(
            epsilon=epsilon, L=L, radial_integral=z, phase=self._eta.get(L, 0.0)
        )


class TabulatedChannels:
    """Channel tables over an energy grid, interpolated linearly."""

    def __init__(self, epsilons, radial: dict, eta: dict):
        # radial: {(state, L): array over epsilons}; eta: {L: array}
        self.epsilons = np.asarray(epsilons, dtype=float)
        self._radial = {k: np.asarray(v, dtype=float) for k, v in radial.items()}
        self._eta = {k: np.asarray(v, dtype=float) for k, v in eta.items()}
        self.final_l = tuple(sorted({L for (_, L) in self._radial}))

    @classmethod
    def from_tables(
        cls,
        table1: Sequence[ChannelAmplitude],
        table2: Sequence[ChannelAmplitude],
    ) -> "TabulatedChannels":
        """Combine per-state channel tables sharing one (eps, L) layout."""
        eps = sorted({c.epsilon for c in table1})
        finals = sorted({c.L for c in table1})
        radial = {}
        eta = {}
        for state, table in ((1, table1), (2, table2)):
            index = {(c.epsilon, c.L): c for c in table}
            for L in finals:
                radial[(state, L)] = np.array(
                    [index[(e, L)].radial_integral for e in eps]
                )
                ph = np.array([index[(e, L)].phase for e in eps])
                if L in eta and not np.allclose(eta[L], ph, atol=1e-9):
                    raise DomainError(
                        "scattering phases differ between states sharing a final channel"
                    )
                eta[L] = ph
        return cls(np.array(eps), radial, eta)

    def amplitude(self, state: int, L: int, epsilon: float) -> ChannelAmplitude:
        if (state, L) not in self._radial:
            raise DomainError(f"channel (state {state}, L={L}) not provided")
        e = self.epsilons
        if epsilon < e[0] or epsilon > e[-1]:
            raise DomainError(f"energy {epsilon:.4g} outside tabulated range")
        return ChannelAmplitude(
            epsilon=epsilon,
            L=L,
            radial_integral=float(np.interp(epsilon, e, self._radial[(state, L)])),
            phase=float(np.interp(epsilon, e, self._eta[L])),
        )


# ---------------------------------------------------------------------------
# beat terms and angle-integrated spectrograms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BeatTerms:
    """Direct terms, signed cross-term magnitude, delay-independent phase."""

    a1: float
    a2: float
    b: float
    theta0: float

    def __post_init__(self):
        if self.a1 < 0 or self.a2 < 0:
            raise DomainError("direct terms must be nonnegative")
        if abs(self.b) > self.a1 + self.a2 + 1e-12 * (self.a1 + self.a2):
            raise DomainError("|b| must not exceed a1 + a2")


def _shifted_frequencies(w: WavePacket, epsilon: float) -> tuple[float, float]:
    return epsilon - w.state1.energy, epsilon - w.state2.energy


def beat_terms(
    w: WavePacket,
    p: pulse_mod.SpectralPulse,
    channels: tuple[ChannelAmplitude, ChannelAmplitude],
    epsilon: float,
    dress: tuple[complex, complex] = (1.0, 1.0),
) -> BeatTerms:
    """Beat-term decomposition for one final channel at one energy.

    ``channels`` holds the per-state amplitudes into the same (eps, L)
    final state.  ``dress`` optionally multiplies each state's matrix
    element by a complex factor (resonance dressing); the product of the
    two effective elements must stay real up to sign, which is exactly
    the case for a shared resonance with real q parameters.
    """
    ch1, ch2 = channels
    if ch1.L != ch2.L:
        raise DomainError("both states must feed the same final channel")
    if w.state1.m != w.state2.m:
        raise DomainError("wave-packet states need equal m for a common channel")
    wf1, wf2 = _shifted_frequencies(w, epsilon)
    e1 = pulse_mod.sample(p, wf1)   # raises DomainError outside pulse support
    e2 = pulse_mod.sample(p, wf2)
    ang = z_angular_factor(ch1.L, w.state1.l, w.state1.m)
    z1 = ang * ch1.radial_integral * dress[0]
    z2 = ang * ch2.radial_integral * dress[1]
    c1, c2 = w.state1.amplitude, w.state2.amplitude
    a1 = (abs(e1) * abs(z1) * c1) ** 2
    a2 = (abs(e2) * abs(z2) * c2) ** 2
    prod = z1 * np.conjugate(z2)
    if abs(prod) == 0.0:
        b = 0.0
    else:
        if abs(prod.imag) > 1e-9 * abs(prod):
            raise DomainError(
                "cross-term matrix-element product is genuinely complex; "
                "only angle-resolved emission supports that"
            )
        b = 2.0 * math.copysign(math.sqrt(a1 * a2), prod.real)
    theta0 = math.atan2(e1.imag, e1.real) - math.atan2(e2.imag, e2.real)
    return BeatTerms(a1=a1, a2=a2, b=b, theta0=theta0)


@dataclass(frozen=True)
class Spectrogram:
    """P(eps, tau) on an (energy x delay) grid; values[i_delay, i_energy]."""

    energies: np.ndarray
    delays: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        d = np.asarray(self.delays, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if v.shape != (d.size, e.size):
            raise DomainError("values must be shaped (n_delays, n_energies)")
        if v.size and v.min() < -1e-10 * max(v.max(), 1.0):
            raise DomainError("probability density must be nonnegative")
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "delays", d)
        object.__setattr__(self, "values", np.clip(v, 0.0, None))


def default_delay_grid(
    w: WavePacket, periods: float = 3.0, samples_per_period: int = 8
) -> np.ndarray:
    """Delay grid with margin over Nyquist: 8 samples/beat over 3 beats."""
    t_beat = 2.0 * math.pi / splitting(w)
    n = int(round(periods * samples_per_period)) + 1
    return np.linspace(0.0, periods * t_beat, n)


def _check_nyquist(w: WavePacket, delays: np.ndarray):
    t_beat = 2.0 * math.pi / splitting(w)
    dt = np.diff(np.asarray(delays, dtype=float))
    if dt.size == 0 or np.any(dt <= 0):
        raise ConfigurationError("delay grid must be increasing")
    if dt.max() > t_beat / 6.0:
        raise ConfigurationError(
            f"delay step {dt.max():.4g} exceeds beat period / 6 = {t_beat / 6.0:.4g}"
        )


def spectrogram(
    w: WavePacket,
    p: pulse_mod.SpectralPulse,
    channels,
    energies: Sequence[float],
    delays: Sequence[float],
    dressing: Optional[Callable[[int, int, float], complex]] = None,
    meta: dict | None = None,
) -> Spectrogram:
    """Angle-integrated quantum-beat spectrogram.

    Channels are summed incoherently over the dipole-allowed final
    orbital momenta; every channel shares the same beat phase, so signs
    combine into one signed cross term per energy column.
    """
    energies = np.asarray(energies, dtype=float)
    delays = np.asarray(delays, dtype=float)
    _check_nyquist(w, delays)
    d_omega = splitting(w)
    finals = [L for L in allowed_final_l(w.state1.l) if L in channels.final_l]
    if not finals:
        raise DomainError("no dipole-allowed channel available")
    a_tot = np.zeros(energies.size)
    b_tot = np.zeros(energies.size)
    theta0 = np.zeros(energies.size)
    for i, eps in enumerate(energies):
        for L in finals:
            if abs(w.state1.m) > L:
                continue
            pair = (
                channels.amplitude(1, L, float(eps)),
                channels.amplitude(2, L, float(eps)),
            )
            dress = (1.0, 1.0)
            if dressing is not None:
                dress = (dressing(1, L, float(eps)), dressing(2, L, float(eps)))
            bt = beat_terms(w, p, pair, float(eps), dress=dress)
            a_tot[i] += bt.a1 + bt.a2
            b_tot[i] += bt.b
            theta0[i] = bt.theta0   # identical across channels by construction
    phase = d_omega * delays[:, None] + theta0[None, :]
    values = a_tot[None, :] + b_tot[None, :] * np.cos(phase)
    info = {
        "kind": "panda",
        "d_omega": d_omega,
        "ip_wpk": effective_binding(w),
        "theta_deg": None,
        "delay_zero": DELAY_ZERO_CONVENTION,
    }
    info.update(meta or {})
    return Spectrogram(energies=energies, delays=delays, values=values, meta=info)


# ---------------------------------------------------------------------------
# angle-resolved emission
# ---------------------------------------------------------------------------

def spherical_harmonic_theta(L: int, m: int, theta) -> np.ndarray:
    """Real-valued Y_LM(theta, phi=0), Condon-Shortley convention."""
    theta = np.asarray(theta, dtype=float)
    if abs(m) > L:
        return np.zeros_like(theta)
    norm = math.sqrt(
        (2 * L + 1) / (4.0 * math.pi) * math.exp(
            math.lgamma(L - abs(m) + 1) - math.lgamma(L + abs(m) + 1)
        )
    )
    val = norm * lpmv(abs(m), L, np.cos(theta))
    if m < 0:
        val = (-1.0) ** m * val   # Y_{L,-m}(theta, 0) = (-1)^m Y_{Lm}(theta, 0)
    return val


@dataclass(frozen=True)
class AngularEmission:
    """Partial-wave decomposition of emission toward polar angle theta.

    ``coefficients[L]`` holds a_L = (-i)^L e^{i eta_L} z_L; the coherent
    amplitude at any angle is sum_L a_L Y_{Lm}(theta, 0), and the solid-
    angle integral of |amplitude|^2 is sum_L |a_L|^2.
    """

    theta: float
    m: int
    coefficients: dict

    def amplitude(self, theta=None):
        th = self.theta if theta is None else theta
        out = 0.0 + 0.0j
        for L, a in self.coefficients.items():
            out = out + a * spherical_harmonic_theta(L, self.m, th)
        return out

    def channel_sum(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.coefficients.values()))

    def solid_angle_integral(self, nodes: int = 64) -> float:
        """Gauss-Legendre quadrature of |amplitude|^2 over all angles."""
        x, wts = roots_legendre(nodes)
        th = np.arccos(x)
        vals = np.abs(self.amplitude(th)) ** 2
        return float(2.0 * math.pi * np.sum(wts * vals))


def partial_wave_emission(
    w: WavePacket, channels, state: int, epsilon: float, theta: float
) -> AngularEmission:
    """AngularEmission of one wave-packet state at one energy."""
    m = w.state1.m
    coeffs = {}
    for L in allowed_final_l(w.state1.l):
        if L not in channels.final_l:
            raise DomainError(f"dipole-allowed channel L={L} missing")
        if abs(m) > L:
            continue
        ch = channels.amplitude(state, L, epsilon)
        z = z_angular_factor(L, w.state1.l, m) * ch.radial_integral
        coeffs[L] = (-1j) ** L * cmath.exp(1j * ch.phase) * z
    return AngularEmission(theta=theta, m=m, coefficients=coeffs)


def angle_resolved_amplitude(
    w: WavePacket,
    p: pulse_mod.SpectralPulse,
    channels,
    epsilon: float,
    theta: float,
) -> tuple[complex, complex]:
    """Complex per-state emission amplitudes toward theta (rad).

    Includes the packet amplitudes and the complex pulse samples; the
    delay-dependent spectrogram is |A1 e^{i w_f1 tau} + A2 e^{i w_f2 tau}|^2.
    """
    if w.state1.m != w.state2.m:
        raise DomainError("wave-packet states need equal m for a common channel")
    wf1, wf2 = _shifted_frequencies(w, epsilon)
    out = []
    for state, wf, c in ((1, wf1, w.state1.amplitude), (2, wf2, w.state2.amplitude)):
        em = partial_wave_emission(w, channels, state, epsilon, theta)
        out.append(c * pulse_mod.sample(p, wf) * complex(em.amplitude()))
    return out[0], out[1]


def angle_resolved_spectrogram(
    w: WavePacket,
    p: pulse_mod.SpectralPulse,
    channels,
    energies: Sequence[float],
    delays: Sequence[float],
    theta: float,
    meta: dict | None = None,
) -> Spectrogram:
    """P(theta; eps, tau) for emission at fixed polar angle theta (rad)."""
    energies = np.asarray(energies, dtype=float)
    delays = np.asarray(delays, dtype=float)
    _check_nyquist(w, delays)
    d_omega = splitting(w)
    values = np.empty((delays.size, energies.size))
    for i, eps in enumerate(energies):
        a1, a2 = angle_resolved_amplitude(w, p, channels, float(eps), theta)
        cross = a1 * np.conjugate(a2)
        values[:, i] = (
            abs(a1) ** 2
            + abs(a2) ** 2
            + 2.0 * (
                cross.real * np.cos(d_omega * delays)
                - cross.imag * np.sin(d_omega * delays)
            )
        )
    info = {
        "kind": "panda",
        "d_omega": d_omega,
        "ip_wpk": effective_binding(w),
        "theta_deg": math.degrees(theta),
        "delay_zero": DELAY_ZERO_CONVENTION,
    }
    info.update(meta or {})
    return Spectrogram(energies=energies, delays=delays, values=values, meta=info)


# ---------------------------------------------------------------------------
# beat delay extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DelayCurve:
    """Per-energy beat delay with half-period branch tags and mask."""

    energies: np.ndarray
    delay: np.ndarray           # a.u. of time
    beat_phase: np.ndarray      # folded, unwrapped (rad)
    branch: np.ndarray          # cumulative count of half-period flips
    mask: np.ndarray            # True where contrast below threshold
    contrast: np.ndarray
    meta: dict = field(default_factory=dict)


def panda_delay(
    spectro: Spectrogram,
    d_omega: float | None = None,
    contrast_threshold: float = CONTRAST_MASK_THRESHOLD,
) -> DelayCurve:
    """Per-energy beat delay tau(eps) = theta0(eps) / d_omega.

    Columns whose beat contrast falls below ``contrast_threshold`` are
    masked (flagged, never dropped).  Half-period jumps caused by a sign
    flip of the cross term are folded into an integer branch tag so the
    delay curve itself stays continuous.
    """
    if d_omega is None:
        d_omega = spectro.meta.get("d_omega")
    if d_omega is None:
        raise ConfigurationError("level splitting d_omega required")
    fit = retrieval_mod.extract_beat_phase(spectro, d_omega)
    mask = fit.contrast < contrast_threshold
    phases = retrieval_mod.unwrap(fit.phase, mask=mask)
    folded, branch = retrieval_mod.fold_half_period_jumps(phases, mask=mask)
    return DelayCurve(
        energies=spectro.energies,
        delay=folded / d_omega,
        beat_phase=folded,
        branch=branch,
        mask=mask,
        contrast=fit.contrast,
        meta={
            "d_omega": d_omega,
            "delay_zero": spectro.meta.get("delay_zero", DELAY_ZERO_CONVENTION),
            "theta_deg": spectro.meta.get("theta_deg"),
            "contrast_threshold": contrast_threshold,
        },
    )
