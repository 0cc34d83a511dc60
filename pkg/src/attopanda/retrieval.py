"""Inversion of quantum-beat spectrograms into pulse group delay.

Per energy column the delay trace is an offset sinusoid at the known
level splitting, so a linear least-squares fit on the basis
{1, cos(d_omega tau), sin(d_omega tau)} recovers amplitude, offset and
the beat phase theta0 = atan2(-s, c).  The splitting is spectroscopic
input, never fitted.  The phase column is unwrapped along energy,
half-period sign flips are folded into branch tags, and

    tau_GD(w) = theta0 / d_omega,     w = eps + I_p^(wpk),

reconstructing the spectral phase by the same integral used for forward
synthesis.  Low-contrast columns are masked and bridged by linear
interpolation -- flagged, never silently filled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import pulse as pulse_mod
from .errors import ConfigurationError, DomainError

CONTRAST_MASK_THRESHOLD = 0.02


@dataclass(frozen=True)
class BeatFit:
    """Per-column sinusoid fit: P ~ offset + amplitude cos(d_omega tau + phase)."""

    offset: np.ndarray
    amplitude: np.ndarray
    phase: np.ndarray
    contrast: np.ndarray


def fit_beat_columns(values: np.ndarray, delays: np.ndarray, d_omega: float) -> BeatFit:
    """Least-squares beat fit of every energy column of ``values``.

    ``values`` is shaped (n_delays, n_columns).  Requires at least six
    samples per beat period and two periods of coverage.
    """
    values = np.asarray(values, dtype=float)
    delays = np.asarray(delays, dtype=float)
    if values.ndim != 2 or values.shape[0] != delays.size:
        raise ConfigurationError("values must be (n_delays, n_columns)")
    t_beat = 2.0 * math.pi / d_omega
    dt = np.diff(delays)
    if np.any(dt <= 0):
        raise ConfigurationError("delay grid must be increasing")
    if dt.max() > t_beat / 6.0:
        raise ConfigurationError("need >= 6 delay samples per beat period")
    if delays[-1] - delays[0] < 2.0 * t_beat:
        raise ConfigurationError("need >= 2 beat periods of delay coverage")
    design = np.column_stack(
        [np.ones_like(delays), np.cos(d_omega * delays), np.sin(d_omega * delays)]
    )
    if np.linalg.matrix_rank(design) < 3:
        raise ConfigurationError("degenerate delay grid: rank-deficient design")
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    offset, c, s = coef
    amplitude = np.hypot(c, s)
    phase = np.arctan2(-s, c)
    with np.errstate(divide="ignore", invalid="ignore"):
        contrast = np.where(offset > 0, amplitude / offset, 0.0)
    return BeatFit(offset=offset, amplitude=amplitude, phase=phase, contrast=contrast)


def extract_beat_phase(spectro, d_omega: float) -> BeatFit:
    """Column fits of a spectrogram object (duck-typed: .values, .delays)."""
    return fit_beat_columns(spectro.values, spectro.delays, d_omega)


def unwrap(phases: np.ndarray, mask: Optional[np.ndarray] = None) -> np.ndarray:
    """Standard 2pi-jump removal along energy.

    Masked columns take no part in the unwrapping; they are bridged by
    linear interpolation between their unmasked neighbours afterwards
    (the mask itself is the quality flag).
    """
    phases = np.asarray(phases, dtype=float)
    if mask is None or not np.any(mask):
        return np.unwrap(phases)
    mask = np.asarray(mask, dtype=bool)
    if np.all(mask):
        return phases.copy()
    out = np.empty_like(phases)
    idx = np.flatnonzero(~mask)
    out[idx] = np.unwrap(phases[idx])
    out[mask] = np.interp(np.flatnonzero(mask), idx, out[idx])
    return out


def fold_half_period_jumps(
    phases: np.ndarray, mask: Optional[np.ndarray] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Fold residual ~pi steps into integer branch tags.

    After 2pi unwrapping, a sign flip of the beat cross term shows up as
    a step near +-pi between adjacent columns.  Those steps are removed
    from the phase and counted in the returned branch array, keeping
    half-period flips visible without corrupting the delay curve.
    Assumes genuine phase steps stay below pi/2 per column.
    """
    phases = np.asarray(phases, dtype=float)
    folded = phases.copy()
    branch = np.zeros(phases.size, dtype=int)
    live = (
        np.ones(phases.size, dtype=bool)
        if mask is None
        else ~np.asarray(mask, dtype=bool)
    )
    idx = np.flatnonzero(live)
    shift = 0.0
    flips = 0
    for prev, cur in zip(idx[:-1], idx[1:]):
        folded[cur] -= shift
        step = folded[cur] - folded[prev]
        n_half = int(round(step / math.pi))
        if n_half != 0 and abs(step - n_half * math.pi) < math.pi / 2.0:
            shift += n_half * math.pi
            flips += n_half
            folded[cur] -= n_half * math.pi
        branch[cur] = flips
    # bridge masked columns on the folded curve as well
    if idx.size and idx.size < phases.size:
        dead = np.flatnonzero(~live)
        folded[dead] = np.interp(dead, idx, folded[idx])
        branch[dead] = np.interp(dead, idx, branch[idx]).round().astype(int)
    return folded, branch


def to_group_delay(
    phases: np.ndarray, d_omega: float, zero_ref: float = 0.0
) -> np.ndarray:
    """Group delay from unwrapped beat phase: theta0/d_omega - zero_ref."""
    return np.asarray(phases, dtype=float) / d_omega - zero_ref


def mean_frequencies(energies: np.ndarray, ip_wpk: float) -> np.ndarray:
    """Photoelectron energy -> mean absorbed frequency, w = eps + I_p."""
    return np.asarray(energies, dtype=float) + ip_wpk


def reconstruct_phase(
    gd: np.ndarray,
    grid: pulse_mod.FrequencyGrid,
    anchor: float,
    phi0: float = 0.0,
    mask: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Integrate retrieved group delay to a spectral phase.

    Masked gaps on the integration path have already been bridged by
    interpolation; the mask flags where the result rests on extrapolated
    group delay.
    """
    del mask  # flags travel with the RetrievalResult; integration uses bridged gd
    return pulse_mod.phase_from_group_delay(gd, grid, anchor, phi0)


@dataclass(frozen=True)
class RetrievalResult:
    energies: np.ndarray        # photoelectron energies (a.u.)
    omegas: np.ndarray          # mapped mean frequencies (a.u.)
    beat_phase: np.ndarray      # unwrapped, branch-folded (rad)
    group_delay: np.ndarray     # a.u. of time
    spectral_phase: np.ndarray
    mask: np.ndarray
    branch: np.ndarray
    contrast: np.ndarray
    rms_error_vs_truth: Optional[float] = None
    meta: dict = field(default_factory=dict)


def retrieve_pulse(
    spectro,
    d_omega: float | None = None,
    ip_wpk: float | None = None,
    anchor: float | None = None,
    phi0: float = 0.0,
    contrast_threshold: float = CONTRAST_MASK_THRESHOLD,
) -> RetrievalResult:
    """Full inversion: fit, mask, unwrap, fold, map, integrate."""
    meta = getattr(spectro, "meta", {}) or {}
    if d_omega is None:
        d_omega = meta.get("d_omega")
    if ip_wpk is None:
        ip_wpk = meta.get("ip_wpk")
    if d_omega is None or ip_wpk is None:
        raise ConfigurationError("need d_omega and ip_wpk (argument or metadata)")
    fit = extract_beat_phase(spectro, d_omega)
    mask = fit.contrast < contrast_threshold
    if np.all(mask):
        raise ConfigurationError("every column is below the contrast threshold")
    phases = unwrap(fit.phase, mask=mask)
    folded, branch = fold_half_period_jumps(phases, mask=mask)
    gd = to_group_delay(folded, d_omega)
    omegas = mean_frequencies(np.asarray(spectro.energies, dtype=float), ip_wpk)
    grid = pulse_mod.FrequencyGrid(omegas)
    if anchor is None:
        anchor = float(omegas[~mask].mean())
    phase = reconstruct_phase(gd, grid, anchor, phi0, mask=mask)
    return RetrievalResult(
        energies=np.asarray(spectro.energies, dtype=float),
        omegas=omegas,
        beat_phase=folded,
        group_delay=gd,
        spectral_phase=phase,
        mask=mask,
        branch=branch,
        contrast=fit.contrast,
        meta={
            "d_omega": d_omega,
            "ip_wpk": ip_wpk,
            "anchor": anchor,
            "contrast_threshold": contrast_threshold,
            "delay_zero": meta.get("delay_zero"),
        },
    )


@dataclass(frozen=True)
class ComparisonDiagnostics:
    rms_gd_error: float         # after constant-offset removal (a.u.)
    offset: float               # removed constant (a.u.)
    gd_span: float              # span of the true GD over used columns
    n_used: int

    @property
    def rms_fraction_of_span(self) -> float:
        return self.rms_gd_error / self.gd_span if self.gd_span > 0 else math.inf


def compare(truth: pulse_mod.SpectralPulse, result: RetrievalResult) -> ComparisonDiagnostics:
    """RMS group-delay error against the known pulse, offset removed.

    The constant is unobservable (CEP and absolute delay origin), so the
    mean difference over unmasked columns is subtracted first.
    """
    w_true = truth.grid.points
    gd_true_curve = pulse_mod.group_delay(truth)
    used = ~result.mask
    used &= (result.omegas >= w_true[0]) & (result.omegas <= w_true[-1])
    if not np.any(used):
        raise DomainError("no overlap between retrieval and truth support")
    gd_true = np.interp(result.omegas[used], w_true, gd_true_curve)
    diff = result.group_delay[used] - gd_true
    offset = float(diff.mean())
    rms = float(np.sqrt(np.mean((diff - offset) ** 2)))
    span = float(gd_true.max() - gd_true.min())
    return ComparisonDiagnostics(
        rms_gd_error=rms, offset=offset, gd_span=span, n_used=int(used.sum())
    )


def with_truth(result: RetrievalResult, truth: pulse_mod.SpectralPulse) -> RetrievalResult:
    """Attach the offset-free RMS group-delay error to a result."""
    diag = compare(truth, result)
    return replace(result, rms_error_vs_truth=diag.rms_gd_error)
