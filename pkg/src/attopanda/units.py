"""Unit conversions between Hartree atomic units and laboratory units.

Everything inside the package is expressed in Hartree atomic units
(hbar = e = m_e = a0 = 1).  Electron volts, attoseconds, femtoseconds and
megabarn appear only at I/O boundaries.  The two base constants are the
CODATA 2018 recommended values; the pair is self-consistent,
HARTREE_EV * AU_TIME_S = hbar in eV s.
"""

import math

# CODATA 2018
HARTREE_EV = 27.211386245988          # 1 hartree in eV
AU_TIME_S = 2.4188843265857e-17       # 1 atomic time unit in s
AU_TIME_AS = 24.188843265857          # ... in attoseconds
AU_TIME_FS = 0.024188843265857        # ... in femtoseconds
FINE_STRUCTURE = 7.2973525693e-3      # alpha
BOHR_RADIUS_M = 5.29177210903e-11     # a0 in m

# a0^2 expressed in megabarn (1 Mb = 1e-22 m^2), rounding used throughout
# the cross-section output path.
A0_SQUARED_MB = 28.0028

SPEED_OF_LIGHT_AU = 1.0 / FINE_STRUCTURE


def ev_to_au(energy_ev):
    """Energy eV -> hartree."""
    return energy_ev / HARTREE_EV


def au_to_ev(energy_au):
    """Energy hartree -> eV."""
    return energy_au * HARTREE_EV


def as_to_au(time_as):
    """Time attoseconds -> atomic units."""
    return time_as / AU_TIME_AS


def au_to_as(time_au):
    """Time atomic units -> attoseconds."""
    return time_au * AU_TIME_AS


def fs_to_au(time_fs):
    """Time femtoseconds -> atomic units."""
    return time_fs / AU_TIME_FS


def au_to_fs(time_au):
    """Time atomic units -> femtoseconds."""
    return time_au * AU_TIME_FS


def as2_to_au(gdd_as2):
    """Group-delay dispersion as^2 -> atomic units (time^2)."""
    return gdd_as2 / AU_TIME_AS**2


def au_to_as2(gdd_au):
    """Group-delay dispersion atomic units -> as^2."""
    return gdd_au * AU_TIME_AS**2


def nm_to_omega_au(wavelength_nm):
    """Vacuum wavelength nm -> angular frequency in atomic units."""
    # omega = 2 pi c / lambda, with c and lambda in a.u. (1 a0 = 0.0529177 nm)
    lam_au = wavelength_nm * 1e-9 / BOHR_RADIUS_M
    return 2.0 * math.pi * SPEED_OF_LIGHT_AU / lam_au
