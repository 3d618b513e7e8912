"""Damped-sinusoid signal model.

A time-domain acquisition (``Fid``) is modelled as a sum of exponentially
damped complex sinusoids, each described by amplitude, damping, frequency
offset and phase. Frequencies are offsets from the transmitter in Hz and
always live in the Nyquist band (-1/(2*dwell), 1/(2*dwell)].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

_TWO_PI = 2.0 * math.pi


def _wrap_phase(phase: float) -> float:
    """Map a finite angle into (-pi, pi]."""
    wrapped = math.remainder(phase, _TWO_PI)
    if wrapped <= -math.pi:
        wrapped += _TWO_PI
    return wrapped


@dataclass(frozen=True)
class Fid:
    """Uniformly sampled complex time-domain signal with acquisition metadata.

    Parameters
    ----------
    samples : complex array, at least 2 points, all finite
    dwell_time : sampling step in seconds, > 0
    transmitter_freq : transmitter frequency in MHz, > 0
    reference_ppm : chemical-shift value assigned to 0 Hz offset
    """

    samples: np.ndarray
    dwell_time: float
    transmitter_freq: float
    reference_ppm: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("samples must be a 1-D array with at least 2 points")
        if not (np.all(np.isfinite(samples.real)) and np.all(np.isfinite(samples.imag))):
            raise ValueError("samples must all be finite")
        if not (math.isfinite(self.dwell_time) and self.dwell_time > 0):
            raise ValueError("dwell_time must be positive")
        if not (math.isfinite(self.transmitter_freq) and self.transmitter_freq > 0):
            raise ValueError("transmitter_freq must be positive")
        if not math.isfinite(self.reference_ppm):
            raise ValueError("reference_ppm must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    def time_axis(self) -> np.ndarray:
        return np.arange(self.samples.size) * self.dwell_time

    def hz_to_ppm(self, freq_hz):
        """Chemical shift of a frequency offset; ppm decreases as Hz grows."""
        return self.reference_ppm - np.asarray(freq_hz) / self.transmitter_freq

    def ppm_to_hz(self, ppm):
        return (self.reference_ppm - np.asarray(ppm)) * self.transmitter_freq

    def with_samples(self, samples: np.ndarray) -> "Fid":
        """New Fid with the same metadata and different samples."""
        return Fid(samples, self.dwell_time, self.transmitter_freq, self.reference_ppm)


@dataclass(frozen=True)
class PpmBand:
    """Chemical-shift window: center +- half_width, in ppm."""

    center: float
    half_width: float

    def __post_init__(self):
        if not (math.isfinite(self.center) and math.isfinite(self.half_width)):
            raise ValueError("band bounds must be finite")
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")

    def contains(self, ppm) -> np.ndarray:
        return np.abs(np.asarray(ppm) - self.center) <= self.half_width

    def __str__(self) -> str:
        return f"{self.center}+-{self.half_width} ppm"


@dataclass(frozen=True)
class HarmonicComponent:
    """One damped sinusoid: a * exp((d + j*2*pi*f) * t + j*phi).

    amplitude is non-negative, damping is 1/s (negative for decay),
    frequency is the offset in Hz, phase is stored wrapped into (-pi, pi].
    """

    amplitude: float
    damping: float
    frequency: float
    phase: float

    def __post_init__(self):
        if not (self.amplitude >= 0):
            raise ValueError("amplitude must be non-negative")
        if not math.isfinite(self.phase):
            raise ValueError("phase must be finite")
        object.__setattr__(self, "phase", _wrap_phase(self.phase))


@dataclass(frozen=True)
class ModelFit:
    """Result of a decomposition: components plus fit diagnostics.

    Components are kept sorted by descending amplitude (ties: ascending
    frequency, then ascending damping). ``singular_values`` are the retained
    values in descending order; ``residual_energy`` is sum(|data - model|^2).
    """

    components: tuple[HarmonicComponent, ...]
    singular_values: np.ndarray = field(default_factory=lambda: np.empty(0))
    residual_energy: float = 0.0

    def __post_init__(self):
        comps = tuple(
            sorted(
                self.components,
                key=lambda c: (-c.amplitude, c.frequency, c.damping),
            )
        )
        object.__setattr__(self, "components", comps)
        sigma = np.asarray(self.singular_values, dtype=np.float64)
        if sigma.size and (np.any(sigma < 0) or np.any(np.diff(sigma) > 0)):
            raise ValueError("singular_values must be non-negative and descending")
        sigma.setflags(write=False)
        object.__setattr__(self, "singular_values", sigma)
        if not (self.residual_energy >= 0):
            raise ValueError("residual_energy must be non-negative")

    def __len__(self) -> int:
        return len(self.components)


def synthesize(
    components,
    n_samples: int,
    dwell_time: float,
    transmitter_freq: float,
    reference_ppm: float,
) -> Fid:
    """Evaluate the model on n_samples points; empty input gives a zero Fid.

    Summation runs left to right over the given component order, so the
    result is reproducible and splitting a list after any prefix adds exactly.
    """
    components = list(components)
    for index, c in enumerate(components):
        values = (c.amplitude, c.damping, c.frequency, c.phase)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"component {index} has non-finite parameters: {c}")
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    if not components:
        samples = np.zeros(n_samples, dtype=np.complex128)
    else:
        samples = _kernels.synth_components(
            np.array([c.amplitude for c in components]),
            np.array([c.damping for c in components]),
            np.array([c.frequency for c in components]),
            np.array([c.phase for c in components]),
            n_samples,
            dwell_time,
        )
    return Fid(samples, dwell_time, transmitter_freq, reference_ppm)


def pole_of(component: HarmonicComponent, dwell_time: float) -> complex:
    """Per-sample multiplier z = exp((d + j*2*pi*f) * dwell); |z| < 1 iff d < 0."""
    if not dwell_time > 0:
        raise ValueError("dwell_time must be positive")
    return cmath.exp(
        complex(component.damping, _TWO_PI * component.frequency) * dwell_time
    )


def params_of(pole: complex, amplitude: complex, dwell_time: float) -> HarmonicComponent:
    """Invert ``pole_of``: recover (amplitude, damping, frequency, phase).

    The frequency lands in the Nyquist band (-1/(2*dwell), 1/(2*dwell)]
    because arg() returns (-pi, pi]. A pole at the origin carries no
    frequency information and is rejected.
    """
    if not dwell_time > 0:
        raise ValueError("dwell_time must be positive")
    if pole == 0:
        raise ValueError("pole at origin carries no frequency information")
    damping = math.log(abs(pole)) / dwell_time
    frequency = cmath.phase(pole) / (_TWO_PI * dwell_time)
    return HarmonicComponent(
        amplitude=abs(amplitude),
        damping=damping,
        frequency=frequency,
        phase=cmath.phase(amplitude),
    )
