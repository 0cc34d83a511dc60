import math

import numpy as np
import pytest

from attopanda import pulse, units, wavepacket as wpk
from attopanda.errors import DomainError


def make_packet(e1, e2, l1=1, l2=1):
    return wpk.WavePacket.equal_weight(
        wpk.BoundState(2, l1, energy=e1), wpk.BoundState(3, l2, energy=e2)
    )


def gaussian_pulse(center_ev, fwhm_ev, n=1201):
    center = units.ev_to_au(center_ev)
    fwhm = units.ev_to_au(fwhm_ev)
    grid = pulse.FrequencyGrid.linear(center - 4 * fwhm, center + 4 * fwhm, n)
    return pulse.synthesize_gaussian(
        pulse.GaussianPulseSpec(center=center, fwhm_bandwidth=fwhm), grid
    )


class TestConstruction:
    def test_ordering_normalized(self):
        w = make_packet(-1.0 / 18.0, -0.125)  # given shallow-first
        assert w.state1.energy == -0.125

    def test_degenerate_energies_rejected(self):
        with pytest.raises(DomainError):
            make_packet(-0.125, -0.125)

    def test_parity_rule(self):
        with pytest.raises(DomainError):
            make_packet(-0.125, -0.0556, l1=1, l2=2)

    def test_amplitude_normalization_enforced(self):
        with pytest.raises(DomainError):
            wpk.WavePacket(
                wpk.BoundState(2, 1, energy=-0.125, amplitude=1.0),
                wpk.BoundState(3, 1, energy=-0.05, amplitude=1.0),
            )

    def test_amplitudes_positive(self):
        with pytest.raises(DomainError):
            wpk.BoundState(2, 1, energy=-0.1, amplitude=-0.5)

    def test_bound_energy_negative(self):
        with pytest.raises(DomainError):
            wpk.BoundState(2, 1, energy=0.1)


class TestSplitting:
    def test_hydrogen_2p3p(self):
        w = make_packet(-0.125, -1.0 / 18.0)
        assert wpk.splitting(w) == pytest.approx(0.125 - 1.0 / 18.0, rel=1e-14)
        assert wpk.splitting(w) == pytest.approx(0.0694, abs=5e-5)

    def test_potassium_so_class(self):
        # 7.15517 meV fine-structure splitting
        d = units.ev_to_au(7.15517e-3)
        w = make_packet(-units.ev_to_au(2.731), -units.ev_to_au(2.731) + d)
        assert units.au_to_ev(wpk.splitting(w)) * 1e3 == pytest.approx(7.15517, rel=1e-10)

    def test_positive_by_construction(self):
        w = make_packet(-0.3, -0.1)
        assert wpk.splitting(w) > 0


class TestEffectiveBinding:
    def test_hydrogen_2p3p(self):
        w = make_packet(-0.125, -1.0 / 18.0)
        assert wpk.effective_binding(w) == pytest.approx((0.125 + 1.0 / 18.0) / 2.0)
        assert wpk.effective_binding(w) == pytest.approx(0.0903, abs=5e-5)

    def test_symmetric_pair(self):
        w = make_packet(-1.0 - 0.05, -1.0 + 0.05)
        assert wpk.effective_binding(w) == pytest.approx(1.0, rel=1e-14)

    def test_lithium_pair_mean_oracle(self):
        # Li* 2p/3p binding energies (NIST): 3.544 eV and 1.557 eV
        e1, e2 = -units.ev_to_au(3.544), -units.ev_to_au(1.557)
        w = make_packet(e1, e2)
        assert wpk.effective_binding(w) == pytest.approx((abs(e1) + abs(e2)) / 2.0)


class TestBeatPeriod:
    def test_so_splitting_period(self):
        d = units.ev_to_au(7.15517e-3)
        w = make_packet(-0.2, -0.2 + d)
        assert units.au_to_fs(wpk.beat_period(w)) == pytest.approx(577.998, abs=1e-3)

    def test_doubling_halves(self):
        w1 = make_packet(-0.2, -0.15)
        w2 = make_packet(-0.2, -0.10)
        assert wpk.beat_period(w1) == pytest.approx(2.0 * wpk.beat_period(w2))

    def test_hydrogen_2p3p_fs(self):
        w = make_packet(-0.125, -1.0 / 18.0)
        expected_fs = 2.0 * math.pi / (5.0 / 72.0) * units.AU_TIME_FS
        assert units.au_to_fs(wpk.beat_period(w)) == pytest.approx(expected_fs, rel=1e-12)

    def test_period_splitting_product(self):
        w = make_packet(-0.31, -0.17)
        assert wpk.beat_period(w) * wpk.splitting(w) == pytest.approx(2.0 * math.pi)


class TestValidateAgainstPulse:
    def test_all_pass(self):
        # ratios ~ (50, 40, inf)
        w = make_packet(-0.21, -0.19)
        p = gaussian_pulse(units.au_to_ev(0.2 * 50), units.au_to_ev(0.02 * 40))
        report = wpk.validate_against_pulse(w, p)
        assert report.ok
        assert report["ionization"].ratio == pytest.approx(50.0, rel=0.05)
        assert report["shearing"].ratio == pytest.approx(40.0, rel=0.05)
        assert math.isinf(report["lifetime"].ratio)

    def test_shearing_failure_when_bandwidth_equals_splitting(self):
        w = make_packet(-0.26, -0.14)  # splitting 0.12
        p = gaussian_pulse(units.au_to_ev(4.0), units.au_to_ev(0.12))
        report = wpk.validate_against_pulse(w, p)
        assert not report["shearing"].passed
        assert not report.ok

    def test_hydrogen_2p3p_with_100ev_pulse(self):
        # 100 eV / 5 eV-bandwidth pulse on the 2p/3p packet: ionization is
        # satisfied ~40x over, but the 5 eV bandwidth exceeds the 1.89 eV
        # splitting by only 2.6x, below the default margin of 5 (the
        # shearing condition needs a relaxed margin here)
        w = make_packet(-0.125, -1.0 / 18.0)
        p = gaussian_pulse(100.0, 5.0)
        report = wpk.validate_against_pulse(w, p, margin=2.0)
        assert report.ok
        strict = wpk.validate_against_pulse(w, p)
        assert strict["ionization"].passed
        assert not strict["shearing"].passed

    def test_never_raises_even_for_terrible_match(self):
        w = make_packet(-2.0, -0.5)
        p = gaussian_pulse(units.au_to_ev(1.1), units.au_to_ev(0.05))
        report = wpk.validate_against_pulse(w, p)
        assert not report.ok

    def test_monotone_in_bandwidth(self):
        # enlarging the pulse bandwidth never turns a pass into a fail
        w = make_packet(-0.21, -0.19)
        previous_ok = False
        for fwhm_ev in (0.1, 0.5, 1.0, 3.0, 8.0):
            p = gaussian_pulse(40.0, fwhm_ev, n=3001)
            ok = wpk.validate_against_pulse(w, p).ok
            assert ok or not previous_ok
            previous_ok = ok

    def test_lifetime_condition_with_finite_lifetime(self):
        d = 0.02
        w = wpk.WavePacket(
            wpk.BoundState(2, 1, energy=-0.21, amplitude=1 / math.sqrt(2)),
            wpk.BoundState(3, 1, energy=-0.19, amplitude=1 / math.sqrt(2)),
            lifetime_inverse=1e-4,
        )
        p = gaussian_pulse(30.0, 5.0)
        report = wpk.validate_against_pulse(w, p)
        assert np.isfinite(report["lifetime"].ratio)
        assert report["lifetime"].ratio > 5.0
