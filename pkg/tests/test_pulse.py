import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from attopanda import pulse, units
from attopanda.errors import DomainError


def gauss(center=4.0, fwhm=0.4, gdd=0.0, delay=0.0, cep=0.0, n=801, span=4.0):
    grid = pulse.FrequencyGrid.linear(center - span * fwhm, center + span * fwhm, n)
    spec = pulse.GaussianPulseSpec(
        center=center, fwhm_bandwidth=fwhm, gdd=gdd, delay=delay, cep=cep
    )
    return pulse.synthesize_gaussian(spec, grid)


def interpolated_fwhm(x, y):
    """Full width at half maximum with linear interpolation at the crossings."""
    y = np.asarray(y, dtype=float)
    half = 0.5 * y.max()
    above = np.flatnonzero(y >= half)
    lo, hi = above[0], above[-1]
    x_lo = np.interp(half, [y[lo - 1], y[lo]], [x[lo - 1], x[lo]])
    x_hi = np.interp(half, [y[hi + 1], y[hi]], [x[hi + 1], x[hi]])
    return x_hi - x_lo


class TestFrequencyGrid:
    def test_needs_two_points(self):
        with pytest.raises(DomainError):
            pulse.FrequencyGrid(np.array([1.0]))

    def test_monotonic(self):
        with pytest.raises(DomainError):
            pulse.FrequencyGrid(np.array([1.0, 1.0, 2.0]))

    def test_uniform_flag(self):
        assert pulse.FrequencyGrid.linear(1.0, 2.0, 11).uniform
        ragged = pulse.FrequencyGrid(np.array([1.0, 1.5, 2.5]))
        assert not ragged.uniform


class TestSynthesizeGaussian:
    def test_fourier_limited_phase_constant(self):
        p = gauss(gdd=0.0, delay=0.0, cep=0.7)
        assert np.allclose(p.phase, 0.7)

    def test_gdd_gives_linear_group_delay(self):
        g = 25.0
        p = gauss(gdd=g)
        gd = pulse.group_delay(p)
        expected = g * (p.grid.points - 4.0)
        assert np.allclose(gd, expected, atol=1e-10)

    def test_delay_term_matches_shift_theorem(self):
        tau = 3.0
        p0 = gauss(delay=0.0)
        p1 = gauss(delay=tau)
        dphi = p1.phase - p0.phase
        # linear term with slope tau (constant offset differs from w*tau by
        # center*tau only)
        slope = np.polyfit(p0.grid.points, dphi, 1)[0]
        assert slope == pytest.approx(tau, rel=1e-12)

    def test_grid_must_cover_support(self):
        grid = pulse.FrequencyGrid.linear(3.9, 4.1, 64)
        with pytest.raises(DomainError):
            pulse.synthesize_gaussian(
                pulse.GaussianPulseSpec(center=4.0, fwhm_bandwidth=0.4), grid
            )

    def test_fwhm_is_intensity_fwhm(self):
        p = gauss(fwhm=0.4)
        measured = interpolated_fwhm(p.grid.points, p.magnitude**2)
        assert measured == pytest.approx(0.4, rel=1e-3)


class TestGroupDelay:
    def test_constant_phase_zero(self):
        p = gauss(cep=1.2)
        assert np.allclose(pulse.group_delay(p), 0.0)

    def test_linear_phase_constant(self):
        p = gauss()
        p = pulse.apply_delay(p, 5.5)
        assert np.allclose(pulse.group_delay(p), 5.5, atol=1e-9)

    def test_quadratic_phase_within_h2(self):
        # second-order stencils differentiate quadratics exactly
        p = gauss(gdd=40.0)
        gd = pulse.group_delay(p)
        assert np.allclose(gd, 40.0 * (p.grid.points - 4.0), atol=1e-9)

    def test_needs_three_points(self):
        grid = pulse.FrequencyGrid(np.array([1.0, 2.0]))
        p = pulse.SpectralPulse(grid=grid, magnitude=np.ones(2), phase=np.zeros(2))
        with pytest.raises(DomainError):
            pulse.group_delay(p)


class TestPhaseFromGroupDelay:
    def test_zero_curve(self):
        grid = pulse.FrequencyGrid.linear(1.0, 2.0, 51)
        phase = pulse.phase_from_group_delay(np.zeros(51), grid, anchor=1.5)
        assert np.allclose(phase, 0.0)

    def test_constant_gd_linear_phase(self):
        grid = pulse.FrequencyGrid.linear(1.0, 2.0, 51)
        tau = 2.5
        phase = pulse.phase_from_group_delay(np.full(51, tau), grid, anchor=1.5, phi0=0.3)
        assert np.allclose(phase, tau * (grid.points - 1.5) + 0.3, atol=1e-12)

    def test_round_trip_on_chirped_pulse(self):
        p = gauss(gdd=30.0, delay=2.0)
        gd = pulse.group_delay(p)
        phase = pulse.phase_from_group_delay(gd, p.grid, anchor=4.0, phi0=0.0)
        gd2 = pulse.group_delay(
            pulse.SpectralPulse(grid=p.grid, magnitude=p.magnitude, phase=phase)
        )
        assert np.allclose(gd2, gd, atol=1e-8)

    def test_anchor_outside_grid(self):
        grid = pulse.FrequencyGrid.linear(1.0, 2.0, 11)
        with pytest.raises(DomainError):
            pulse.phase_from_group_delay(np.zeros(11), grid, anchor=0.5)

    def test_gradient_of_integral_recovers_cubic(self):
        # group_delay(phase_from_group_delay(g)) = g within O(h^2) for
        # polynomial g up to degree 3
        grid = pulse.FrequencyGrid.linear(1.0, 2.0, 401)
        w = grid.points
        g = 0.3 - 1.2 * w + 0.7 * w**2 + 0.4 * w**3
        phase = pulse.phase_from_group_delay(g, grid, anchor=1.5)
        p = pulse.SpectralPulse(grid=grid, magnitude=np.ones(w.size), phase=phase)
        h = grid.spacing
        assert np.max(np.abs(pulse.group_delay(p) - g)) < 5.0 * h**2


class TestToTimeDomain:
    def test_narrow_line_is_cosine(self):
        w0 = 3.0
        grid = pulse.FrequencyGrid.linear(w0 - 0.05, w0 + 0.05, 401)
        mag = np.exp(-0.5 * ((grid.points - w0) / 0.01) ** 2)
        p = pulse.SpectralPulse(grid=grid, magnitude=mag, phase=np.zeros(401))
        t = np.linspace(-2.0, 2.0, 401)
        f = pulse.to_time_domain(p, t)
        ref = np.cos(w0 * t)
        scale = f.values[t.size // 2] / ref[t.size // 2]
        assert np.allclose(f.values, scale * ref, atol=5e-3 * abs(scale))

    def test_delayed_pulse_shifts_envelope(self):
        tau = 12.0
        p0 = gauss()
        p1 = pulse.apply_delay(p0, tau)
        t = np.linspace(-40.0, 60.0, 3001)
        env0 = np.abs(2.0 * pulse.analytic_signal(p0, t))
        env1 = np.abs(2.0 * pulse.analytic_signal(p1, t))
        t_peak0 = t[np.argmax(env0)]
        t_peak1 = t[np.argmax(env1)]
        assert t_peak1 - t_peak0 == pytest.approx(tau, abs=2 * (t[1] - t[0]))

    def test_time_bandwidth_product(self):
        # transform-limited Gaussian: FWHM_t * FWHM_w = 4 ln 2
        fwhm_w = 0.4
        p = gauss(fwhm=fwhm_w)
        t = np.linspace(-60.0, 60.0, 4001)
        env2 = np.abs(2.0 * pulse.analytic_signal(p, t)) ** 2
        fwhm_t = interpolated_fwhm(t, env2)
        assert fwhm_t * fwhm_w == pytest.approx(4.0 * math.log(2.0), rel=2e-3)

    def test_output_exactly_real_vs_full_axis_quadrature(self):
        p = gauss(gdd=10.0)
        t = np.linspace(-30.0, 30.0, 257)
        f = pulse.to_time_domain(p, t)
        # Hermitian completion oracle: explicit two-sided integral
        w = p.grid.points
        spec = p.magnitude * np.exp(1j * p.phase)
        full = np.empty_like(t, dtype=complex)
        for i, ti in enumerate(t):
            pos = trapezoid(spec * np.exp(-1j * w * ti), w)
            neg = trapezoid(np.conj(spec) * np.exp(1j * w * ti), w)
            full[i] = (pos + neg) / (2.0 * math.pi)
        assert np.max(np.abs(full.imag)) < 1e-12 * np.max(np.abs(full.real))
        assert np.allclose(f.values, full.real, atol=1e-12 * np.max(np.abs(full.real)))

    def test_requires_uniform_times(self):
        p = gauss()
        with pytest.raises(DomainError):
            pulse.to_time_domain(p, np.array([0.0, 1.0, 3.0]))


class TestParseval:
    def test_energy_conservation(self):
        p = gauss(gdd=15.0)
        t = np.linspace(-80.0, 80.0, 4001)
        f = pulse.to_time_domain(p, t)
        assert pulse.temporal_energy(f) == pytest.approx(
            pulse.spectral_energy(p), rel=1e-6
        )


class TestApplyDelay:
    def test_zero_delay_identity(self):
        p = gauss()
        q = pulse.apply_delay(p, 0.0)
        assert np.array_equal(q.phase, p.phase)
        assert np.array_equal(q.magnitude, p.magnitude)

    def test_group_delay_shifts_pointwise(self):
        p = gauss(gdd=20.0)
        q = pulse.apply_delay(p, 7.0)
        assert np.allclose(
            pulse.group_delay(q), pulse.group_delay(p) + 7.0, atol=1e-9
        )

    def test_magnitude_invariant_under_delay(self):
        p = gauss()
        q = pulse.apply_delay(p, 123.0)
        w = np.linspace(p.grid.points[0], p.grid.points[-1], 37)
        assert np.allclose(np.abs(pulse.sample(q, w)), np.abs(pulse.sample(p, w)))


class TestSample:
    def test_grid_point_exact(self):
        p = gauss(gdd=5.0)
        i = 123
        w = p.grid.points[i]
        expected = p.magnitude[i] * np.exp(1j * p.phase[i])
        assert pulse.sample(p, w) == pytest.approx(expected, rel=1e-14)

    def test_midpoint_of_linear_phase(self):
        grid = pulse.FrequencyGrid.linear(1.0, 2.0, 11)
        phase = 3.0 * grid.points
        p = pulse.SpectralPulse(grid=grid, magnitude=np.ones(11), phase=phase)
        mid = 0.5 * (grid.points[3] + grid.points[4])
        assert np.angle(pulse.sample(p, mid)) == pytest.approx(
            math.remainder(3.0 * mid, 2.0 * math.pi), rel=1e-12
        )

    def test_off_grid_against_dense_reference(self):
        coarse = gauss(gdd=8.0, n=1001)
        dense = gauss(gdd=8.0, n=8001)
        w = np.linspace(3.2, 4.8, 57) + 1e-4
        v1 = pulse.sample(coarse, w)
        v2 = pulse.sample(dense, w)
        assert np.max(np.abs(v1 - v2)) < 1e-4 * np.max(np.abs(v2))

    def test_out_of_range(self):
        p = gauss()
        with pytest.raises(DomainError):
            pulse.sample(p, 100.0)


def test_intensity_moments():
    p = gauss(center=4.0, fwhm=0.4)
    assert pulse.intensity_centroid(p) == pytest.approx(4.0, abs=1e-10)
    assert pulse.intensity_fwhm(p) == pytest.approx(0.4, rel=1e-6)


def test_magnitude_must_be_nonnegative():
    grid = pulse.FrequencyGrid.linear(1.0, 2.0, 8)
    with pytest.raises(DomainError):
        pulse.SpectralPulse(grid=grid, magnitude=-np.ones(8), phase=np.zeros(8))
