"""Synthetic phantom signals with known ground truth.

A phantom spec (JSON on disk) lists named resonances by chemical shift,
optional complex white Gaussian noise, an optional unsuppressed-water
reference acquisition, and an optional shared eddy phase ramp. Synthesis
is deterministic for a fixed seed, and the generating components come back
as a ModelFit so tests can treat them as the oracle.

Noise model: with sigma > 0, sample n receives sigma * (g0 + 1j * g1) where
(g0, g1) are consecutive draws from ``standard_normal(2 * n_samples)`` of
``numpy.random.Generator(numpy.random.PCG64(noise_seed))``, reshaped to
(n_samples, 2). The eddy ramp multiplies the clean synthesis (and the water
reference); noise is added afterwards and is never ramped.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ParseError
from .model import Fid, HarmonicComponent, ModelFit, synthesize


@dataclass(frozen=True)
class PhantomComponent:
    name: str
    ppm: float
    amplitude: float
    damping: float
    phase: float = 0.0


@dataclass(frozen=True)
class EddyRamp:
    """Phase distortion theta(t) = amplitude * exp(-t / decay) + linear * t."""

    amplitude_rad: float
    decay_s: float
    linear_rad_per_s: float = 0.0

    def phases(self, time_axis: np.ndarray) -> np.ndarray:
        return (
            self.amplitude_rad * np.exp(-time_axis / self.decay_s)
            + self.linear_rad_per_s * time_axis
        )


@dataclass(frozen=True)
class PhantomSpec:
    components: tuple[PhantomComponent, ...]
    n_samples: int
    dwell_time: float
    transmitter_freq: float
    reference_ppm: float
    noise_sigma: float = 0.0
    noise_seed: int = 0
    water_reference: tuple[PhantomComponent, ...] = ()
    eddy_ramp: EddyRamp | None = None

    def __post_init__(self):
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise ValueError("component names must be unique")
        if not self.noise_sigma >= 0:
            raise ValueError("noise_sigma must be non-negative")
        for c in list(self.components) + list(self.water_reference):
            for value in (c.ppm, c.amplitude, c.damping, c.phase):
                if not math.isfinite(value):
                    raise ValueError(f"component {c.name!r} has non-finite fields")


def _component_from_dict(raw: dict, where: str) -> PhantomComponent:
    try:
        return PhantomComponent(
            name=str(raw["name"]),
            ppm=float(raw["ppm"]),
            amplitude=float(raw["amplitude"]),
            damping=float(raw["damping"]),
            phase=float(raw.get("phase", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{where}: bad component entry {raw!r}: {exc}") from exc


def load_phantom_spec(path) -> PhantomSpec:
    """Parse a phantom spec JSON file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    try:
        components = tuple(
            _component_from_dict(c, str(path)) for c in raw["components"]
        )
        water = tuple(
            _component_from_dict(c, str(path))
            for c in raw.get("water_reference", {}).get("components", [])
        )
        ramp = None
        if "eddy_ramp" in raw:
            ramp = EddyRamp(
                amplitude_rad=float(raw["eddy_ramp"]["amplitude_rad"]),
                decay_s=float(raw["eddy_ramp"]["decay_s"]),
                linear_rad_per_s=float(raw["eddy_ramp"].get("linear_rad_per_s", 0.0)),
            )
        spec = PhantomSpec(
            components=components,
            n_samples=int(raw["n_samples"]),
            dwell_time=float(raw["dwell_time_s"]),
            transmitter_freq=float(raw["transmitter_freq_mhz"]),
            reference_ppm=float(raw["reference_ppm"]),
            noise_sigma=float(raw.get("noise_sigma", 0.0)),
            noise_seed=int(raw.get("noise_seed", 0)),
            water_reference=water,
            eddy_ramp=ramp,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: invalid phantom spec: {exc}") from exc
    return spec


def _harmonics(components, spec: PhantomSpec) -> list[HarmonicComponent]:
    return [
        HarmonicComponent(
            amplitude=c.amplitude,
            damping=c.damping,
            frequency=(spec.reference_ppm - c.ppm) * spec.transmitter_freq,
            phase=c.phase,
        )
        for c in components
    ]


def synth_phantom(spec: PhantomSpec) -> tuple[Fid, Fid | None, ModelFit]:
    """Synthesize (signal, optional water reference, generating truth).

    Chemical shifts convert to Hz offsets so that the spectrum places each
    resonance at its ppm value; the eddy ramp (if any) rotates both the
    signal and the reference sample-wise before noise is added.
    """
    truth_components = _harmonics(spec.components, spec)
    clean = synthesize(
        truth_components,
        spec.n_samples,
        spec.dwell_time,
        spec.transmitter_freq,
        spec.reference_ppm,
    )
    samples = clean.samples
    if spec.eddy_ramp is not None:
        samples = samples * np.exp(1j * spec.eddy_ramp.phases(clean.time_axis()))
    if spec.noise_sigma > 0:
        rng = np.random.Generator(np.random.PCG64(spec.noise_seed))
        pairs = rng.standard_normal(2 * spec.n_samples).reshape(spec.n_samples, 2)
        samples = samples + spec.noise_sigma * (pairs[:, 0] + 1j * pairs[:, 1])
    fid = clean.with_samples(samples)

    reference = None
    if spec.water_reference:
        ref_clean = synthesize(
            _harmonics(spec.water_reference, spec),
            spec.n_samples,
            spec.dwell_time,
            spec.transmitter_freq,
            spec.reference_ppm,
        )
        ref_samples = ref_clean.samples
        if spec.eddy_ramp is not None:
            ref_samples = ref_samples * np.exp(
                1j * spec.eddy_ramp.phases(ref_clean.time_axis())
            )
        reference = ref_clean.with_samples(ref_samples)

    truth = ModelFit(components=tuple(truth_components))
    return fid, reference, truth


def default_phantom_path() -> Path:
    """Path of the phantom spec bundled with the package."""
    return Path(resources.files("hsvdpre").joinpath("data/default_phantom.json"))
