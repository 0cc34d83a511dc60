"""Fano dressing of a real bound-continuum dipole element.

A single autoionizing resonance coupled to one continuum multiplies the
uncorrelated (real) matrix element z by (q + eps_F)/(1 - i eps_F) with
the reduced detuning eps_F = (eps - eps_r)/(Gamma/2).  The complex
denominator is common to every initial state sharing the resonance, so
phase *differences* between two such dressed elements are 0 or pi for
real q -- the mechanism that leaves quantum-beat phases untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class FanoParams:
    q: float
    resonance_energy: float
    width: float

    def __post_init__(self):
        if self.width <= 0.0:
            raise DomainError("resonance width Gamma must be > 0")


def reduced_detuning(fp: FanoParams, epsilon):
    """eps_F = (eps - eps_r) / (Gamma / 2)."""
    return (np.asarray(epsilon, dtype=float) - fp.resonance_energy) / (fp.width / 2.0)


def fano_dress(z: float, fp: FanoParams, epsilon):
    """Dressed complex element Z = (q + eps_F)/(1 - i eps_F) * z."""
    eps_f = reduced_detuning(fp, epsilon)
    out = (fp.q + eps_f) / (1.0 - 1j * eps_f) * z
    return complex(out) if np.isscalar(epsilon) else out


def lineshape(fp: FanoParams, epsilon):
    """|Z/z|^2 = (q + eps_F)^2 / (1 + eps_F^2)."""
    eps_f = reduced_detuning(fp, epsilon)
    return (fp.q + eps_f) ** 2 / (1.0 + eps_f**2)
