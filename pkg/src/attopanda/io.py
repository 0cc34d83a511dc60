"""Artifact serialization: pulses, wave packets, spectrograms, channels.

All files carry lab units (eV, fs, as) while the in-memory objects stay
in atomic units.  CSV matrices are written with a fixed 12-digit
scientific format so identical inputs produce byte-identical artifacts.
Spectrogram CSVs put delays on rows and energies on columns, with '#'
header lines; the machine-readable metadata lives in a JSON sidecar.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from . import units
from .atomic.photo import ChannelAmplitude
from .atomic.radial import CentralPotential, RadialGrid
from .errors import ConfigurationError
from .pulse import FrequencyGrid, SpectralPulse
from .retrieval import RetrievalResult
from .wavepacket import BoundState, WavePacket

FLOAT_FMT = "%.12e"


def _dump_json(path: Path, payload: dict):
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def config_hash(config: dict) -> str:
    """Stable sha256 of a JSON-serializable configuration."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


# ---------------------------------------------------------------------------
# pulses
# ---------------------------------------------------------------------------

def pulse_to_dict(p: SpectralPulse) -> dict:
    return {
        "grid_au": p.grid.points.tolist(),
        "magnitude": p.magnitude.tolist(),
        "phase_rad": p.phase.tolist(),
        "cep_rad": p.cep,
    }


def pulse_from_dict(d: dict) -> SpectralPulse:
    return SpectralPulse(
        grid=FrequencyGrid(np.asarray(d["grid_au"], dtype=float)),
        magnitude=np.asarray(d["magnitude"], dtype=float),
        phase=np.asarray(d["phase_rad"], dtype=float),
        cep=float(d.get("cep_rad", 0.0)),
    )


def save_pulse(path, p: SpectralPulse):
    _dump_json(Path(path), pulse_to_dict(p))


def load_pulse(path) -> SpectralPulse:
    return pulse_from_dict(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# wave packets
# ---------------------------------------------------------------------------

def wavepacket_to_dict(w: WavePacket) -> dict:
    def state(s: BoundState) -> dict:
        d = {
            "n": s.n,
            "l": s.l,
            "m": s.m,
            "energy_eV": units.au_to_ev(s.energy),
            "amplitude": s.amplitude,
        }
        if s.j is not None:
            d["j"] = s.j
        return d

    return {
        "states": [state(w.state1), state(w.state2)],
        "lifetime_inv": w.lifetime_inverse,
    }


def wavepacket_from_dict(d: dict) -> WavePacket:
    states = []
    for sd in d["states"]:
        states.append(
            BoundState(
                n=int(sd["n"]),
                l=int(sd["l"]),
                m=int(sd.get("m", 0)),
                j=sd.get("j"),
                energy=units.ev_to_au(float(sd["energy_eV"])),
                amplitude=float(sd["amplitude"]),
            )
        )
    if len(states) != 2:
        raise ConfigurationError("wave-packet descriptor needs exactly 2 states")
    return WavePacket(
        state1=states[0],
        state2=states[1],
        lifetime_inverse=float(d.get("lifetime_inv", 0.0)),
    )


def save_wavepacket(path, w: WavePacket):
    _dump_json(Path(path), wavepacket_to_dict(w))


def load_wavepacket(path) -> WavePacket:
    return wavepacket_from_dict(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# spectrograms (shared by the quantum-beat and streaking writers)
# ---------------------------------------------------------------------------

def write_spectrogram(
    base_path,
    spectro,
    kind: str | None = None,
    extra_meta: dict | None = None,
    branch=None,
    mask=None,
    fmt: str = "csv",
) -> dict:
    """Write <base>.csv (+ <base>.json sidecar); returns the paths.

    ``spectro`` is duck-typed: needs .energies, .delays, .values, .meta.
    With fmt="json" the matrix is embedded in the sidecar instead.
    """
    base = Path(base_path)
    meta = dict(getattr(spectro, "meta", {}) or {})
    if kind:
        meta["kind"] = kind
    energies_ev = units.au_to_ev(np.asarray(spectro.energies))
    delays_fs = units.au_to_fs(np.asarray(spectro.delays))
    sidecar = {
        "kind": meta.get("kind", "spectrogram"),
        "energies_ev": energies_ev.tolist(),
        "delays_fs": delays_fs.tolist(),
        "delay_zero": meta.get("delay_zero"),
        "theta_deg": meta.get("theta_deg"),
        "branch": None if branch is None else np.asarray(branch).astype(int).tolist(),
        "mask": None if mask is None else np.asarray(mask).astype(bool).tolist(),
    }
    for key in ("d_omega", "ip_wpk"):
        if key in meta:
            sidecar[f"{key}_ev"] = units.au_to_ev(meta[key])
    for key, value in (extra_meta or {}).items():
        sidecar[key] = value
    paths = {}
    if fmt == "json":
        sidecar["values"] = np.asarray(spectro.values).tolist()
        _dump_json(base.with_suffix(".json"), sidecar)
        paths["sidecar"] = str(base.with_suffix(".json"))
        return paths
    header = "\n".join(
        [
            f"kind: {sidecar['kind']}",
            "rows: delay_fs / cols: energy_eV",
            "delays_fs: " + ",".join(FLOAT_FMT % d for d in delays_fs),
            "energies_ev: " + ",".join(FLOAT_FMT % e for e in energies_ev),
        ]
    )
    csv_path = base.with_suffix(".csv")
    np.savetxt(csv_path, np.asarray(spectro.values), fmt=FLOAT_FMT, delimiter=",",
               header=header, comments="# ")
    _dump_json(base.with_suffix(".json"), sidecar)
    paths["csv"] = str(csv_path)
    paths["sidecar"] = str(base.with_suffix(".json"))
    return paths


def read_spectrogram(base_path):
    """Load a spectrogram artifact back into a panda.Spectrogram."""
    from .panda import Spectrogram  # local import: io must not depend on panda at import time

    base = Path(base_path)
    sidecar = json.loads(base.with_suffix(".json").read_text())
    if "values" in sidecar:
        values = np.asarray(sidecar["values"], dtype=float)
    else:
        values = np.loadtxt(base.with_suffix(".csv"), delimiter=",", ndmin=2)
    meta = {
        "kind": sidecar.get("kind"),
        "delay_zero": sidecar.get("delay_zero"),
        "theta_deg": sidecar.get("theta_deg"),
    }
    if sidecar.get("d_omega_ev") is not None:
        meta["d_omega"] = units.ev_to_au(sidecar["d_omega_ev"])
    if sidecar.get("ip_wpk_ev") is not None:
        meta["ip_wpk"] = units.ev_to_au(sidecar["ip_wpk_ev"])
    return Spectrogram(
        energies=units.ev_to_au(np.asarray(sidecar["energies_ev"], dtype=float)),
        delays=units.fs_to_au(np.asarray(sidecar["delays_fs"], dtype=float)),
        values=values,
        meta=meta,
    )


# ---------------------------------------------------------------------------
# channel-table cache
# ---------------------------------------------------------------------------

def write_channel_table(path, table, pot: CentralPotential, grid: RadialGrid):
    """CSV cache: epsilon_au, L, radial_integral, eta_L + '#' provenance."""
    lines = [
        f"# potential: Z={pot.Z!r} a={pot.a!r} b={pot.b!r}",
        f"# grid: r_max={grid.r_max!r} step={grid.step!r}",
        "# columns: epsilon_au,L,radial_integral,eta_L",
    ]
    for ch in table:
        lines.append(
            ",".join(
                [FLOAT_FMT % ch.epsilon, str(ch.L), FLOAT_FMT % ch.radial_integral,
                 FLOAT_FMT % ch.phase]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_channel_table(path):
    """Load a channel-table cache; returns (channels, header dict)."""
    header = {}
    channels = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line.lstrip("# ")
            if ":" in body:
                key, _, rest = body.partition(":")
                header[key.strip()] = rest.strip()
            continue
        eps, l_str, rad, eta = line.split(",")
        channels.append(
            ChannelAmplitude(
                epsilon=float(eps),
                L=int(l_str),
                radial_integral=float(rad),
                phase=float(eta),
            )
        )
    return channels, header


# ---------------------------------------------------------------------------
# retrieval results
# ---------------------------------------------------------------------------

def retrieval_to_dict(r: RetrievalResult) -> dict:
    return {
        "energies_ev": units.au_to_ev(r.energies).tolist(),
        "omegas_ev": units.au_to_ev(r.omegas).tolist(),
        "beat_phase_rad": r.beat_phase.tolist(),
        "group_delay_as": units.au_to_as(r.group_delay).tolist(),
        "spectral_phase_rad": r.spectral_phase.tolist(),
        "mask": r.mask.astype(bool).tolist(),
        "branch": r.branch.astype(int).tolist(),
        "contrast": r.contrast.tolist(),
        "rms_error_vs_truth_as": (
            None if r.rms_error_vs_truth is None else units.au_to_as(r.rms_error_vs_truth)
        ),
        "meta": {
            "d_omega_ev": units.au_to_ev(r.meta["d_omega"]),
            "ip_wpk_ev": units.au_to_ev(r.meta["ip_wpk"]),
            "anchor_ev": units.au_to_ev(r.meta["anchor"]),
            "contrast_threshold": r.meta["contrast_threshold"],
            "delay_zero": r.meta.get("delay_zero"),
        },
    }


def save_retrieval(path, r: RetrievalResult, curves_csv=None):
    _dump_json(Path(path), retrieval_to_dict(r))
    if curves_csv is not None:
        data = np.column_stack(
            [
                units.au_to_ev(r.omegas),
                units.au_to_ev(r.energies),
                units.au_to_as(r.group_delay),
                r.spectral_phase,
                r.contrast,
                r.mask.astype(float),
                r.branch.astype(float),
            ]
        )
        np.savetxt(
            curves_csv,
            data,
            fmt=FLOAT_FMT,
            delimiter=",",
            header="omega_eV,energy_eV,group_delay_as,spectral_phase_rad,contrast,mask,branch",
            comments="# ",
        )
