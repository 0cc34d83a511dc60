import math

import pytest
from scipy import constants

from attopanda import units


def test_constants_match_codata():
    # frozen CODATA 2018 values; scipy may carry a newer adjustment, so
    # allow the revision-level difference only
    hartree_ev = constants.physical_constants["Hartree energy in eV"][0]
    au_time = constants.physical_constants["atomic unit of time"][0]
    assert units.HARTREE_EV == pytest.approx(hartree_ev, rel=5e-13)
    assert units.AU_TIME_S == pytest.approx(au_time, rel=5e-13)
    assert units.FINE_STRUCTURE == pytest.approx(constants.alpha, rel=2e-9)


def test_constant_pair_is_consistent():
    # Hartree * t_au = hbar
    hbar_ev_s = units.HARTREE_EV * units.AU_TIME_S
    assert hbar_ev_s == pytest.approx(constants.hbar / constants.e, rel=1e-12)


def test_energy_round_trip():
    assert units.au_to_ev(units.ev_to_au(123.456)) == pytest.approx(123.456, rel=1e-15)
    assert units.ev_to_au(units.HARTREE_EV) == pytest.approx(1.0)


def test_time_round_trip():
    assert units.au_to_as(units.as_to_au(200.0)) == pytest.approx(200.0, rel=1e-15)
    assert units.au_to_fs(1.0) == pytest.approx(units.AU_TIME_FS)
    assert units.as2_to_au(units.au_to_as2(7.0)) == pytest.approx(7.0, rel=1e-15)


def test_so_splitting_beat_period_conversion():
    # 7.15517 meV splitting corresponds to a 577.998 fs beat period
    d_omega = units.ev_to_au(7.15517e-3)
    period_fs = units.au_to_fs(2.0 * math.pi / d_omega)
    assert abs(period_fs - 577.998) < 1e-3


def test_wavelength_conversion():
    # 800 nm -> 1.5498 eV photon
    omega = units.nm_to_omega_au(800.0)
    assert units.au_to_ev(omega) == pytest.approx(1.5498, abs=2e-4)
