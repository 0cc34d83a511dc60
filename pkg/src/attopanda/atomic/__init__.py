"""Single-active-electron atomic structure for quantum-beat simulations."""

from .angular import (
    reduced_ck,
    reduced_ck_half,
    wigner_3j,
    wigner_eckart_z,
    z_angular_factor,
)
from .fano import FanoParams, fano_dress, lineshape
from .photo import (
    ChannelAmplitude,
    CrossSectionCurve,
    allowed_final_l,
    channel_table,
    cross_section,
    plane_wave_me,
)
from .radial import (
    BoundOrbital,
    CentralPotential,
    ContinuumWave,
    RadialGrid,
    coulomb_phase,
    hydrogenic_bound_u,
    radial_dipole,
    solve_bound,
    solve_continuum,
)

__all__ = [
    "BoundOrbital",
    "CentralPotential",
    "ChannelAmplitude",
    "ContinuumWave",
    "CrossSectionCurve",
    "FanoParams",
    "RadialGrid",
    "allowed_final_l",
    "channel_table",
    "coulomb_phase",
    "cross_section",
    "fano_dress",
    "hydrogenic_bound_u",
    "lineshape",
    "plane_wave_me",
    "radial_dipole",
    "reduced_ck",
    "reduced_ck_half",
    "solve_bound",
    "solve_continuum",
    "wigner_3j",
    "wigner_eckart_z",
    "z_angular_factor",
]
