"""Batch command-line front end.

One command = one scenario = one output directory.  Configs are JSON in
lab units (eV, fs, as, degrees); artifacts are CSV matrices with JSON
sidecars plus a self-contained matplotlib plot script.  Identical
config + seed produce byte-identical CSVs; every sidecar records the
config hash and package version.

Exit codes: 0 success, 2 usage/config error, 3 computation error.  On
failure a machine-readable JSON error object is printed to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, io, units
from . import panda as panda_mod
from . import pulse as pulse_mod
from . import retrieval as retrieval_mod
from . import spinorbit as so_mod
from . import streak as streak_mod
from .atomic import (
    CentralPotential,
    FanoParams,
    RadialGrid,
    channel_table,
    cross_section,
    fano_dress,
    lineshape,
    solve_bound,
)
from .errors import ConfigurationError, DomainError
from .wavepacket import BoundState, WavePacket, effective_binding, splitting

COMMANDS = (
    "pulse-synth",
    "panda-sim",
    "panda-retrieve",
    "panda-anglemap",
    "panda-so",
    "streak-sim",
    "atom-xsec",
    "fano-check",
)


# ---------------------------------------------------------------------------
# config -> domain objects
# ---------------------------------------------------------------------------

def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigurationError(f"config key '{key}' missing")
    return cfg[key]


def _build_grid_ev(cfg: dict) -> pulse_mod.FrequencyGrid:
    n = int(cfg.get("n", 1001))
    return pulse_mod.FrequencyGrid.linear(
        units.ev_to_au(float(_require(cfg, "min_ev"))),
        units.ev_to_au(float(_require(cfg, "max_ev"))),
        n,
    )


def _build_pulse(cfg: dict) -> pulse_mod.SpectralPulse:
    if "file" in cfg:
        return io.load_pulse(cfg["file"])
    if "flat" in cfg:
        grid = _build_grid_ev(cfg["flat"])
        amp = float(cfg["flat"].get("amplitude", 1.0))
        return pulse_mod.SpectralPulse(
            grid=grid,
            magnitude=np.full(len(grid), amp),
            phase=np.zeros(len(grid)),
        )
    center = units.ev_to_au(float(_require(cfg, "center_ev")))
    fwhm = units.ev_to_au(float(_require(cfg, "fwhm_ev")))
    spec = pulse_mod.GaussianPulseSpec(
        center=center,
        fwhm_bandwidth=fwhm,
        gdd=units.as2_to_au(float(cfg.get("gdd_as2", 0.0))),
        delay=units.as_to_au(float(cfg.get("delay_as", 0.0))),
        amplitude=float(cfg.get("amplitude", 1.0)),
        cep=float(cfg.get("cep_rad", 0.0)),
    )
    if "grid" in cfg:
        grid = _build_grid_ev(cfg["grid"])
    else:
        grid = pulse_mod.FrequencyGrid.linear(center - 4.0 * fwhm, center + 4.0 * fwhm, 1001)
    return pulse_mod.synthesize_gaussian(spec, grid)


def _build_wavepacket(cfg: dict) -> WavePacket:
    if "file" in cfg:
        return io.load_wavepacket(cfg["file"])
    if "hydrogenic" in cfg:
        h = cfg["hydrogenic"]
        z = float(h.get("Z", 1.0))
        m = int(h.get("m", 0))
        pair = h.get("pair", [[2, 1], [3, 1]])
        states = [
            BoundState(n=int(n), l=int(l), m=m, energy=-z * z / (2.0 * n * n),
                       amplitude=1.0 / math.sqrt(2.0))
            for n, l in pair
        ]
        return WavePacket(state1=states[0], state2=states[1])
    return io.wavepacket_from_dict(cfg)


def _build_channels(cfg: dict, w: WavePacket, energies_au: np.ndarray):
    kind = cfg.get("type", "ones")
    from .atomic.photo import allowed_final_l

    finals = allowed_final_l(w.state1.l)
    if kind == "ones":
        return panda_mod.ConstantChannels.ones(final_l=cfg.get("final_l", finals))
    if kind == "constant":
        radial = {}
        for state_key, state in (("state1", 1), ("state2", 2)):
            for l_str, value in _require(cfg, state_key).items():
                radial[(state, int(l_str))] = float(value)
        eta = {int(k): float(v) for k, v in cfg.get("eta", {}).items()}
        return panda_mod.ConstantChannels(radial, eta)
    if kind == "files":
        t1, _ = io.read_channel_table(_require(cfg, "state1"))
        t2, _ = io.read_channel_table(_require(cfg, "state2"))
        return panda_mod.TabulatedChannels.from_tables(t1, t2)
    if kind == "atom":
        pot_cfg = cfg.get("potential", {"Z": 1.0})
        pot = CentralPotential(
            Z=float(pot_cfg.get("Z", 1.0)),
            a=float(pot_cfg.get("a", 0.0)),
            b=float(pot_cfg.get("b", 1.0)),
        )
        n_tab = int(cfg.get("n_energies", 24))
        eps_tab = np.linspace(energies_au.min(), energies_au.max(), n_tab)
        grid = RadialGrid.for_continuum(
            k_max=math.sqrt(2.0 * eps_tab.max()),
            r_max=float(cfg.get("r_max", 200.0)),
        )
        tables = []
        for s in (w.state1, w.state2):
            orb = solve_bound(pot, s.n, s.l, grid)
            tables.append(channel_table(pot, orb, eps_tab, final_l=finals, grid=grid))
        return panda_mod.TabulatedChannels.from_tables(tables[0], tables[1])
    raise ConfigurationError(f"unknown channel model '{kind}'")


def _energies_au(cfg: dict) -> np.ndarray:
    return np.linspace(
        units.ev_to_au(float(_require(cfg, "min_ev"))),
        units.ev_to_au(float(_require(cfg, "max_ev"))),
        int(cfg.get("n", 101)),
    )


def _delays_au(cfg: dict, w: WavePacket | None = None) -> np.ndarray:
    if "min_fs" in cfg:
        return np.linspace(
            units.fs_to_au(float(cfg["min_fs"])),
            units.fs_to_au(float(_require(cfg, "max_fs"))),
            int(cfg.get("n", 64)),
        )
    if w is None:
        raise ConfigurationError("delay grid needs min_fs/max_fs/n")
    return panda_mod.default_delay_grid(
        w,
        periods=float(cfg.get("periods", 3.0)),
        samples_per_period=int(cfg.get("samples_per_period", 8)),
    )


def _provenance(config: dict, command: str, seed: int | None) -> dict:
    return {
        "provenance": {
            "command": command,
            "config_hash": io.config_hash(config),
            "version": __version__,
            "seed": seed,
        }
    }


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

def _run_pulse_synth(config, out, seed, fmt):
    p = _build_pulse(_require(config, "pulse"))
    io.save_pulse(out / "pulse.json", p)
    gd = pulse_mod.group_delay(p)
    data = np.column_stack(
        [units.au_to_ev(p.grid.points), p.magnitude, p.phase, units.au_to_as(gd)]
    )
    np.savetxt(out / "group_delay.csv", data, fmt=io.FLOAT_FMT, delimiter=",",
               header="omega_eV,magnitude,phase_rad,group_delay_as", comments="# ")
    io._dump_json(out / "meta.json", {**_provenance(config, "pulse-synth", seed)})
    emit_plot_script(
        [("curves", "group_delay.csv")], out / "plot.py",
        title="spectral magnitude, phase and group delay",
    )
    return 0


def _apply_noise(values: np.ndarray, noise_cfg: dict | None, seed: int | None):
    if not noise_cfg:
        return values
    sigma = float(noise_cfg.get("rel_sigma", 0.0))
    if sigma <= 0.0:
        return values
    rng = np.random.default_rng(seed)
    noisy = values + rng.normal(0.0, sigma * values.max(), size=values.shape)
    return np.clip(noisy, 0.0, None)


def _run_panda_sim(config, out, seed, fmt):
    p = _build_pulse(_require(config, "pulse"))
    w = _build_wavepacket(_require(config, "wavepacket"))
    energies = _energies_au(_require(config, "energies"))
    delays = _delays_au(config.get("delays", {}), w)
    channels = _build_channels(config.get("channels", {"type": "ones"}), w, energies)
    spectro = panda_mod.spectrogram(w, p, channels, energies, delays)
    values = _apply_noise(spectro.values, config.get("noise"), seed)
    spectro = panda_mod.Spectrogram(
        energies=spectro.energies, delays=spectro.delays, values=values, meta=spectro.meta
    )
    extra = {
        "wavepacket": io.wavepacket_to_dict(w),
        **_provenance(config, "panda-sim", seed),
    }
    io.write_spectrogram(out / "spectrogram", spectro, extra_meta=extra, fmt=fmt)
    io.save_pulse(out / "pulse.json", p)
    emit_plot_script([("spectrogram", "spectrogram.csv")], out / "plot.py",
                     title="quantum-beat spectrogram")
    return 0


def _run_panda_retrieve(config, out, seed, fmt):
    base = Path(_require(config, "spectrogram"))
    spectro = io.read_spectrogram(base)
    kwargs = {}
    if "d_omega_ev" in config:
        kwargs["d_omega"] = units.ev_to_au(float(config["d_omega_ev"]))
    if "ip_wpk_ev" in config:
        kwargs["ip_wpk"] = units.ev_to_au(float(config["ip_wpk_ev"]))
    if "contrast_threshold" in config:
        kwargs["contrast_threshold"] = float(config["contrast_threshold"])
    result = retrieval_mod.retrieve_pulse(spectro, **kwargs)
    truth_path = config.get("truth_pulse")
    truth_csv = None
    if truth_path:
        truth = io.load_pulse(truth_path)
        result = retrieval_mod.with_truth(result, truth)
        gd_true = pulse_mod.group_delay(truth)
        truth_csv = out / "truth_group_delay.csv"
        np.savetxt(truth_csv, np.column_stack(
            [units.au_to_ev(truth.grid.points), units.au_to_as(gd_true)]),
            fmt=io.FLOAT_FMT, delimiter=",",
            header="omega_eV,group_delay_as", comments="# ")
    io.save_retrieval(out / "retrieval.json", result, curves_csv=out / "retrieval_curves.csv")
    io._dump_json(out / "meta.json", _provenance(config, "panda-retrieve", seed))
    artifacts = [("retrieval", "retrieval_curves.csv")]
    if truth_csv is not None:
        artifacts.append(("truth", "truth_group_delay.csv"))
    emit_plot_script(artifacts, out / "plot.py", title="retrieved group delay")
    return 0


def _run_panda_anglemap(config, out, seed, fmt):
    p = _build_pulse(_require(config, "pulse"))
    w = _build_wavepacket(_require(config, "wavepacket"))
    energies = _energies_au(_require(config, "energies"))
    delays = _delays_au(config.get("delays", {}), w)
    channels = _build_channels(config.get("channels", {"type": "ones"}), w, energies)
    th_cfg = _require(config, "thetas")
    thetas_deg = np.linspace(
        float(th_cfg.get("min_deg", 0.0)),
        float(th_cfg.get("max_deg", 80.0)),
        int(th_cfg.get("n", 17)),
    )
    delay_map = np.empty((thetas_deg.size, energies.size))
    for i, th in enumerate(thetas_deg):
        sp = panda_mod.angle_resolved_spectrogram(
            w, p, channels, energies, delays, math.radians(th)
        )
        curve = panda_mod.panda_delay(sp)
        row = units.au_to_as(curve.delay)
        row[curve.mask] = np.nan
        delay_map[i] = row
    header = "\n".join(
        [
            "kind: anglemap (delay in as)",
            "rows: theta_deg / cols: energy_eV",
            "thetas_deg: " + ",".join(io.FLOAT_FMT % t for t in thetas_deg),
            "energies_ev: " + ",".join(io.FLOAT_FMT % units.au_to_ev(e) for e in energies),
        ]
    )
    np.savetxt(out / "anglemap.csv", delay_map, fmt=io.FLOAT_FMT, delimiter=",",
               header=header, comments="# ")
    io._dump_json(out / "anglemap.json", {
        "kind": "anglemap",
        "thetas_deg": thetas_deg.tolist(),
        "energies_ev": units.au_to_ev(energies).tolist(),
        "delay_unit": "as",
        **_provenance(config, "panda-anglemap", seed),
    })
    emit_plot_script([("anglemap", "anglemap.csv")], out / "plot.py",
                     title="angle-resolved beat delay")
    return 0


def _run_panda_so(config, out, seed, fmt):
    laser = _build_pulse(_require(config, "laser"))
    xuv = _build_pulse(_require(config, "xuv"))
    scheme = config.get("scheme", "potassium")
    if scheme == "potassium":
        cfg = so_mod.SOConfig.potassium(laser)
    else:
        exc = [units.ev_to_au(float(e)) for e in _require(scheme, "excitation_ev")]
        cfg = so_mod.SOConfig(
            laser=laser,
            excitation_energies=(exc[0], exc[1]),
            ground_energy=units.ev_to_au(float(_require(scheme, "ground_ev"))),
            so_splitting=units.ev_to_au(float(_require(scheme, "so_split_mev")) * 1e-3),
        )
    rad_cfg = config.get("radial", {})
    radial = so_mod.SORadialIntegrals(
        eps_s=float(rad_cfg.get("eps_s", 1.0)),
        eps_d=float(rad_cfg.get("eps_d", 1.0)),
        excitation=float(rad_cfg.get("excitation", 1.0)),
    )
    energies = _energies_au(_require(config, "energies"))
    spec0 = so_mod.so_spectrum(cfg, xuv, radial, energies)
    chan_rows = np.column_stack(
        [units.au_to_ev(energies), spec0.total]
        + [spec0.channels[key] for key in sorted(spec0.channels)]
        + [spec0.theta, spec0.amplitude_assumption_ok.astype(float)]
    )
    np.savetxt(out / "so_spectrum.csv", chan_rows, fmt=io.FLOAT_FMT, delimiter=",",
               header="energy_eV,total,s_j12,d_j32,d_j52,theta_rad,amplitude_ok",
               comments="# ")
    delays_cfg = config.get("delays")
    if delays_cfg:
        delays = _delays_au(delays_cfg)
        totals = np.empty((delays.size, energies.size))
        for i, tau in enumerate(delays):
            sp = so_mod.so_spectrum(cfg, pulse_mod.apply_delay(xuv, float(tau)), radial, energies)
            totals[i] = sp.total
        spectro = panda_mod.Spectrogram(
            energies=energies, delays=delays, values=totals,
            meta={"kind": "panda-so", "d_omega": cfg.so_splitting,
                  "ip_wpk": abs(sum(cfg.intermediate_energies)) / 2.0,
                  "delay_zero": panda_mod.DELAY_ZERO_CONVENTION},
        )
        io.write_spectrogram(out / "so_spectrogram", spectro,
                             extra_meta=_provenance(config, "panda-so", seed), fmt=fmt)
    io._dump_json(out / "meta.json", {
        "warn_amplitude_assumption": bool(np.any(~spec0.amplitude_assumption_ok)),
        **_provenance(config, "panda-so", seed),
    })
    emit_plot_script([("curves", "so_spectrum.csv")], out / "plot.py",
                     title="spin-orbit beat spectrum")
    return 0


def _run_streak_sim(config, out, seed, fmt):
    xuv = _build_pulse(_require(config, "xuv"))
    laser_cfg = _require(config, "laser")
    if "wavelength_nm" in laser_cfg:
        omega = units.nm_to_omega_au(float(laser_cfg["wavelength_nm"]))
    else:
        omega = units.ev_to_au(float(_require(laser_cfg, "omega_ev")))
    laser = streak_mod.LaserField(
        a0=float(_require(laser_cfg, "a0")),
        omega=omega,
        fwhm=units.fs_to_au(float(laser_cfg.get("fwhm_fs", 5.0))),
        cep=float(laser_cfg.get("cep_rad", 0.0)),
    )
    ip = units.ev_to_au(float(_require(config, "ip_ev")))
    energies = _energies_au(_require(config, "energies"))
    delays = _delays_au(_require(config, "delays"))
    me = config.get("matrix_element")
    spectro = streak_mod.streak_spectrogram(
        xuv, laser, ip, energies, delays,
        matrix_element=None if me in (None, "plane-wave") else float(me),
    )
    io.write_spectrogram(out / "streak", spectro, kind="streak",
                         extra_meta=_provenance(config, "streak-sim", seed), fmt=fmt)
    emit_plot_script([("spectrogram", "streak.csv")], out / "plot.py",
                     title="streaking spectrogram")
    return 0


def _run_atom_xsec(config, out, seed, fmt):
    pot_cfg = config.get("potential", {"Z": 1.0})
    pot = CentralPotential(
        Z=float(pot_cfg.get("Z", 1.0)),
        a=float(pot_cfg.get("a", 0.0)),
        b=float(pot_cfg.get("b", 1.0)),
    )
    orb_cfg = _require(config, "orbital")
    energies = _energies_au(_require(config, "energies"))
    grid = RadialGrid.for_continuum(
        k_max=math.sqrt(2.0 * energies.max()),
        r_max=float(config.get("r_max", 200.0)),
    )
    orb = solve_bound(pot, int(_require(orb_cfg, "n")), int(_require(orb_cfg, "l")), grid)
    curve = cross_section(pot, orb, energies, grid=grid)
    cols = [units.au_to_ev(curve.photon_energies), curve.sigma_mb]
    names = ["photon_eV", "sigma_Mb"]
    for L in sorted(curve.channels):
        cols.append(curve.channels[L])
        names.append(f"sigma_L{L}_Mb")
    np.savetxt(out / "xsec.csv", np.column_stack(cols), fmt=io.FLOAT_FMT,
               delimiter=",", header=",".join(names), comments="# ")
    slope = float(np.polyfit(np.log(curve.photon_energies),
                             np.log(np.clip(curve.sigma_mb, 1e-300, None)), 1)[0])
    io._dump_json(out / "meta.json", {
        "loglog_slope": slope,
        "orbital_energy_ev": units.au_to_ev(orb.energy),
        **_provenance(config, "atom-xsec", seed),
    })
    emit_plot_script([("xsec", "xsec.csv")], out / "plot.py",
                     title="photoionization cross section")
    return 0


def _run_fano_check(config, out, seed, fmt):
    fp1 = FanoParams(
        q=float(_require(config, "q1")),
        resonance_energy=units.ev_to_au(float(_require(config, "resonance_ev"))),
        width=units.ev_to_au(float(_require(config, "width_ev"))),
    )
    fp2 = FanoParams(q=float(_require(config, "q2")),
                     resonance_energy=fp1.resonance_energy, width=fp1.width)
    energies = _energies_au(_require(config, "energies"))
    z1 = fano_dress(1.0, fp1, energies)
    z2 = fano_dress(1.0, fp2, energies)
    ratio_arg = np.angle(z1 * np.conj(z2))
    # distance of the phase difference from {0, pi}
    dist = np.minimum.reduce([np.abs(ratio_arg), np.abs(ratio_arg - math.pi),
                              np.abs(ratio_arg + math.pi)])
    np.savetxt(out / "fano.csv", np.column_stack(
        [units.au_to_ev(energies), lineshape(fp1, energies), lineshape(fp2, energies),
         ratio_arg]),
        fmt=io.FLOAT_FMT, delimiter=",",
        header="energy_eV,lineshape_q1,lineshape_q2,arg_ratio_rad", comments="# ")
    io._dump_json(out / "meta.json", {
        "max_phase_leak_rad": float(dist.max()),
        "beat_phase_immune": bool(dist.max() < 1e-10),
        **_provenance(config, "fano-check", seed),
    })
    emit_plot_script([("curves", "fano.csv")], out / "plot.py",
                     title="resonance lineshapes and phase difference")
    return 0


_RUNNERS = {
    "pulse-synth": _run_pulse_synth,
    "panda-sim": _run_panda_sim,
    "panda-retrieve": _run_panda_retrieve,
    "panda-anglemap": _run_panda_anglemap,
    "panda-so": _run_panda_so,
    "streak-sim": _run_streak_sim,
    "atom-xsec": _run_atom_xsec,
    "fano-check": _run_fano_check,
}


# ---------------------------------------------------------------------------
# plot-script emission
# ---------------------------------------------------------------------------

_PLOT_BODIES = {
    "spectrogram": """
def plot_spectrogram(ax, path):
    delays, energies, values = load_matrix(path)
    im = ax.pcolormesh(energies, delays, values, shading="auto", cmap="inferno")
    ax.set_xlabel("photoelectron energy (eV)")
    ax.set_ylabel("delay (fs)")
    plt.colorbar(im, ax=ax, label="yield (arb.)")
""",
    "anglemap": """
def plot_anglemap(ax, path):
    thetas, energies, values = load_matrix(path)
    lim = np.nanmax(np.abs(values))
    im = ax.pcolormesh(energies, thetas, values, shading="auto",
                       cmap="RdBu_r", vmin=-lim, vmax=lim)
    ax.set_xlabel("photoelectron energy (eV)")
    ax.set_ylabel("polar angle (deg)")
    plt.colorbar(im, ax=ax, label="beat delay (as)")
    # annotate the sign regions
    for i, th in enumerate(thetas):
        for j, en in enumerate(energies):
            if i % max(1, len(thetas)//6) or j % max(1, len(energies)//8):
                continue
            v = values[i, j]
            if np.isfinite(v) and abs(v) > 0.05 * lim:
                ax.text(en, th, "+" if v > 0 else "-", ha="center", va="center",
                        fontsize=8, color="k")
""",
    "curves": """
def plot_curves(ax, path):
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    names = header_names(path)
    for col in range(1, data.shape[1]):
        ax.plot(data[:, 0], data[:, col], label=names[col] if names else None)
    ax.set_xlabel(names[0] if names else "x")
    if names:
        ax.legend(fontsize=8)
""",
    "retrieval": """
def plot_retrieval(ax, path):
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    mask = data[:, 5] > 0.5
    ax.plot(data[~mask, 0], data[~mask, 2], "o", ms=3, label="retrieved GD")
    ax.set_xlabel("frequency (eV)")
    ax.set_ylabel("group delay (as)")
    ax.legend(fontsize=8)
""",
    "truth": """
def plot_truth(ax, path):
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    ax.plot(data[:, 0], data[:, 1], "-", lw=1, label="true GD")
    ax.legend(fontsize=8)
""",
    "xsec": """
def plot_xsec(ax, path):
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    names = header_names(path)
    for col in range(1, data.shape[1]):
        ax.loglog(data[:, 0], np.clip(data[:, col], 1e-300, None),
                  label=names[col] if names else None)
    ax.set_xlabel("photon energy (eV)")
    ax.set_ylabel("cross section (Mb)")
    ax.legend(fontsize=8)
""",
}

_PLOT_PRELUDE = '''#!/usr/bin/env python3
"""Auto-generated plot script; reads only the artifact files next to it."""
import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def header_names(path):
    with open(path) as fh:
        for line in fh:
            if line.startswith("#") and "," in line and ":" not in line:
                return [t.strip() for t in line.lstrip("# ").split(",")]
            if not line.startswith("#"):
                break
    return None


def load_matrix(path):
    rows = cols = None
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line.lstrip("# ").strip()
            for tag in ("delays_fs:", "thetas_deg:"):
                if body.startswith(tag):
                    rows = np.array([float(x) for x in body[len(tag):].split(",")])
            if body.startswith("energies_ev:"):
                cols = np.array([float(x) for x in body[len("energies_ev:"):].split(",")])
    values = np.loadtxt(path, delimiter=",", ndmin=2)
    if rows is None:
        rows = np.arange(values.shape[0])
    if cols is None:
        cols = np.arange(values.shape[1])
    return rows, cols, values
'''


def emit_plot_script(artifacts, out_path, title: str = "") -> Path:
    """Write a self-contained matplotlib script for the given artifacts.

    ``artifacts`` is a list of (kind, relative path); the files must
    already exist next to the script location.
    """
    if not artifacts:
        raise DomainError("no artifacts to plot")
    out_path = Path(out_path)
    for _, rel in artifacts:
        if not (out_path.parent / rel).exists():
            raise FileNotFoundError(f"artifact {rel} missing next to {out_path}")
    parts = [_PLOT_PRELUDE]
    seen = set()
    for kind, _ in artifacts:
        if kind not in _PLOT_BODIES:
            raise DomainError(f"no plot template for artifact kind '{kind}'")
        if kind not in seen:
            parts.append(_PLOT_BODIES[kind])
            seen.add(kind)
    calls = "\n".join(
        f'    plot_{kind}(ax, "{rel}")' for kind, rel in artifacts
    )
    parts.append(
        f'''

def main():
    fig, ax = plt.subplots(figsize=(7, 5))
{calls}
    ax.set_title({title!r})
    fig.tight_layout()
    fig.savefig("figure.png", dpi=150)
    print("wrote figure.png")


if __name__ == "__main__":
    main()
'''
    )
    out_path.write_text("".join(parts))
    return out_path


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _error_json(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "detail": message}, sort_keys=True)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="attopanda",
        description="quantum-beat pulse characterization scenarios",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON scenario config")
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = json.loads(Path(args.config).read_text())
        if not isinstance(config, dict):
            raise ConfigurationError("config must be a JSON object")
    except (OSError, json.JSONDecodeError, ConfigurationError) as exc:
        print(_error_json("usage", f"cannot read config: {exc}"), file=sys.stderr)
        return 2

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    runner = _RUNNERS[args.command]
    try:
        return runner(config, out, args.seed, args.format)
    except (ConfigurationError, DomainError, KeyError, FileNotFoundError) as exc:
        print(_error_json("usage", str(exc)), file=sys.stderr)
        return 2
    except Exception as exc:  # numerical/runtime failure
        print(_error_json("computation", f"{type(exc).__name__}: {exc}"), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
