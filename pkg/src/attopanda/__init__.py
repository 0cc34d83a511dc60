"""attopanda: quantum-beat pulse characterization toolkit.

Forward-simulates photoelectron quantum-beat spectrograms from a
coherently excited two-state atom, inverts them into the test pulse's
group delay and spectral phase, and provides the supporting atomic
structure (partial waves, Wigner algebra, Fano dressing) plus an SFA
streaking reference for comparison.
"""

__version__ = "0.1.0"

from . import atomic, io, panda, pulse, retrieval, spinorbit, streak, units, wavepacket
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    GridError,
    SelectionRuleError,
)

__all__ = [
    "ConfigurationError",
    "ConvergenceError",
    "DomainError",
    "GridError",
    "SelectionRuleError",
    "atomic",
    "io",
    "panda",
    "pulse",
    "retrieval",
    "spinorbit",
    "streak",
    "units",
    "wavepacket",
]
