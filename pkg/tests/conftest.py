import math

import numpy as np
import pytest

from attopanda import panda, pulse, units
from attopanda.atomic import CentralPotential, RadialGrid, channel_table, solve_bound
from attopanda.wavepacket import BoundState, WavePacket


@pytest.fixture(scope="session")
def hydrogen_wavepacket():
    """H 2p/3p packet, m = 0, equal weights."""
    return WavePacket.equal_weight(
        BoundState(2, 1, energy=-0.125),
        BoundState(3, 1, energy=-1.0 / 18.0),
    )


@pytest.fixture(scope="session")
def flat_pulse():
    """Broadband transform-limited pulse covering 4-110 eV."""
    grid = pulse.FrequencyGrid.linear(units.ev_to_au(4.0), units.ev_to_au(110.0), 2000)
    return pulse.SpectralPulse(
        grid=grid, magnitude=np.ones(len(grid)), phase=np.zeros(len(grid))
    )


@pytest.fixture(scope="session")
def hydrogen_channel_energies():
    return np.linspace(units.ev_to_au(5.0), units.ev_to_au(100.0), 14)


@pytest.fixture(scope="session")
def hydrogen_channels(hydrogen_wavepacket, hydrogen_channel_energies):
    """Coulomb s/d channel tables for the 2p/3p packet over 5-100 eV."""
    w = hydrogen_wavepacket
    pot = CentralPotential(Z=1.0)
    grid = RadialGrid.for_continuum(
        k_max=math.sqrt(2.0 * hydrogen_channel_energies.max())
    )
    tables = []
    for s in (w.state1, w.state2):
        orb = solve_bound(pot, s.n, s.l, grid)
        tables.append(channel_table(pot, orb, hydrogen_channel_energies, grid=grid))
    return panda.TabulatedChannels.from_tables(*tables)


@pytest.fixture(scope="session")
def chirped_100ev_pulse():
    """Gaussian: 100 eV center, 5 eV FWHM, 5000 as^2 GDD on a fine grid."""
    center = units.ev_to_au(100.0)
    fwhm = units.ev_to_au(5.0)
    grid = pulse.FrequencyGrid.linear(center - 4 * fwhm, center + 4 * fwhm, 2001)
    spec = pulse.GaussianPulseSpec(
        center=center, fwhm_bandwidth=fwhm, gdd=units.as2_to_au(5000.0)
    )
    return pulse.synthesize_gaussian(spec, grid)


@pytest.fixture(scope="session")
def narrow_wavepacket():
    """p-state pair with 0.27 eV splitting around a 3 eV binding."""
    d_om = units.ev_to_au(0.27)
    ip = units.ev_to_au(3.0)
    return WavePacket.equal_weight(
        BoundState(2, 1, energy=-(ip + d_om / 2.0)),
        BoundState(3, 1, energy=-(ip - d_om / 2.0)),
    )
