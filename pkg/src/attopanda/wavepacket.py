"""Two-state bound wave packet used as the quantum-beat clock.

The packet is a coherent superposition of two non-degenerate bound
states with real positive amplitudes (sequential preparation, no
depletion).  Both states must have orbital angular momenta of the same
parity so that one-photon ionization can reach a common final state.
State ordering is normalized internally: ``state1`` is the more deeply
bound state, so the level splitting (a.u.)

    d_omega = (e2 - e1) / hbar > 0

and the photon frequency reaching a given photoelectron energy from
state 1 exceeds that from state 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from . import pulse as pulse_mod
from .errors import DomainError

DEFAULT_MARGIN = 5.0


@dataclass(frozen=True)
class BoundState:
    """One bound level: quantum numbers, energy (a.u., < 0), amplitude."""

    n: int
    l: int
    m: int = 0
    j: Optional[float] = None   # total angular momentum, spin-orbit scheme only
    energy: float = 0.0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.n < 1 or self.l < 0 or self.n <= self.l:
            raise DomainError("need n >= 1 and 0 <= l < n")
        if abs(self.m) > self.l:
            raise DomainError("|m| must not exceed l")
        if self.energy >= 0.0:
            raise DomainError("bound-state energy must be negative")
        if self.amplitude <= 0.0:
            raise DomainError("amplitudes must be real positive")
        if self.j is not None and abs(2 * self.j - round(2 * self.j)) > 1e-9:
            raise DomainError("j must be half-integer")


@dataclass(frozen=True)
class WavePacket:
    """Two-state packet; ``lifetime_inverse`` is kept at 0 (no decay)."""

    state1: BoundState
    state2: BoundState
    lifetime_inverse: float = 0.0

    def __post_init__(self):
        s1, s2 = self.state1, self.state2
        if s1.energy == s2.energy:
            raise DomainError("wave-packet energies must be non-degenerate")
        if (s1.l - s2.l) % 2 != 0:
            raise DomainError("wave-packet states must have the same parity")
        norm = s1.amplitude**2 + s2.amplitude**2
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"amplitudes not normalized: c1^2+c2^2 = {norm!r}")
        if self.lifetime_inverse < 0.0:
            raise DomainError("lifetime_inverse must be >= 0")
        if s1.energy > s2.energy:  # normalize ordering: state1 deeper
            object.__setattr__(self, "state1", s2)
            object.__setattr__(self, "state2", s1)

    @classmethod
    def equal_weight(cls, s1: BoundState, s2: BoundState) -> "WavePacket":
        """Convenience constructor with c1 = c2 = 1/sqrt(2)."""
        amp = 1.0 / math.sqrt(2.0)
        return cls(
            state1=BoundState(s1.n, s1.l, s1.m, s1.j, s1.energy, amp),
            state2=BoundState(s2.n, s2.l, s2.m, s2.j, s2.energy, amp),
        )


def splitting(w: WavePacket) -> float:
    """Level splitting d_omega = (e2 - e1)/hbar > 0 (a.u.)."""
    d = w.state2.energy - w.state1.energy
    if d == 0.0:
        raise DomainError("degenerate wave packet has no splitting")
    return d


def effective_binding(w: WavePacket) -> float:
    """Effective binding energy |e1 + e2| / 2 (a.u.)."""
    return abs(w.state1.energy + w.state2.energy) / 2.0


def beat_period(w: WavePacket) -> float:
    """Quantum-beat period 2 pi / d_omega in atomic units.

    Converted to fs only at the CLI boundary.
    """
    return 2.0 * math.pi / splitting(w)


@dataclass(frozen=True)
class CompatibilityCondition:
    name: str
    ratio: float
    margin: float

    @property
    def passed(self) -> bool:
        return self.ratio >= self.margin


@dataclass(frozen=True)
class CompatibilityReport:
    conditions: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __getitem__(self, name: str) -> CompatibilityCondition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)


def validate_against_pulse(
    w: WavePacket, p: pulse_mod.SpectralPulse, margin: float = DEFAULT_MARGIN
) -> CompatibilityReport:
    """Check the three packet/pulse compatibility requirements.

    (i)  central frequency >> effective binding (ionization),
    (ii) pulse bandwidth >> level splitting (spectral shearing),
    (iii) packet lifetime >> pulse duration.

    Purely diagnostic: returns per-condition ratios against ``margin``
    (default 5, which keeps the quadratic phase variation across the
    splitting below ~1% for Gaussian pulses) and never raises.
    """
    centroid = pulse_mod.intensity_centroid(p)
    bandwidth = pulse_mod.intensity_fwhm(p)
    r_ion = centroid / effective_binding(w)
    r_shear = bandwidth / splitting(w)
    if w.lifetime_inverse == 0.0:
        r_life = math.inf
    else:
        duration = _pulse_duration(p, bandwidth)
        r_life = (1.0 / w.lifetime_inverse) / duration
    return CompatibilityReport(
        conditions=(
            CompatibilityCondition("ionization", r_ion, margin),
            CompatibilityCondition("shearing", r_shear, margin),
            CompatibilityCondition("lifetime", r_life, margin),
        )
    )


def _pulse_duration(p: pulse_mod.SpectralPulse, bandwidth: float) -> float:
    """RMS-equivalent intensity FWHM of the time-domain envelope."""
    # window generous enough for strongly chirped pulses
    tl = 4.0 * math.log(2.0) / bandwidth
    gd = pulse_mod.group_delay(p)
    span = 4.0 * tl + float(abs(gd.max() - gd.min()))
    center = float(gd.mean())
    times = np.linspace(center - span / 2.0, center + span / 2.0, 2048)
    env2 = np.abs(2.0 * pulse_mod.analytic_signal(p, times)) ** 2
    norm = trapezoid(env2, times)
    mean = trapezoid(times * env2, times) / norm
    var = trapezoid((times - mean) ** 2 * env2, times) / norm
    return float(2.0 * math.sqrt(2.0 * math.log(2.0)) * math.sqrt(var))
