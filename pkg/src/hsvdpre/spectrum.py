"""Time-to-frequency conversion and spectral readout.

The forward transform zero-fills (default: next power of two), applies an
unnormalized DFT and centers zero frequency; the inverse divides by the
transform length so the round trip is the identity. The chemical-shift
axis runs ppm = reference - Hz / transmitter_MHz, descending.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Fid, PpmBand


@dataclass(frozen=True)
class Spectrum:
    """Complex frequency-domain values with Hz and ppm axes.

    ``freq_axis`` ascends with uniform spacing 1/(n_fft * dwell_time);
    ``ppm_axis`` therefore descends. Acquisition metadata is carried over
    from the source Fid so the transform can be inverted.
    """

    bins: np.ndarray
    freq_axis: np.ndarray
    ppm_axis: np.ndarray
    dwell_time: float
    transmitter_freq: float
    reference_ppm: float

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.complex128)
        freq = np.asarray(self.freq_axis, dtype=np.float64)
        ppm = np.asarray(self.ppm_axis, dtype=np.float64)
        if not (bins.size == freq.size == ppm.size) or bins.size < 2:
            raise ValueError("bins, freq_axis and ppm_axis must have equal length >= 2")
        if np.any(np.diff(freq) <= 0):
            raise ValueError("freq_axis must be strictly ascending")
        for name, arr in (("bins", bins), ("freq_axis", freq), ("ppm_axis", ppm)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return self.bins.size


def _fft_length(n_samples: int, zero_fill: int | None) -> int:
    if zero_fill is None:
        n_fft = 1
        while n_fft < n_samples:
            n_fft *= 2
        return n_fft
    if zero_fill < n_samples:
        raise ValueError(f"zero_fill {zero_fill} is smaller than the signal ({n_samples})")
    return zero_fill


def to_spectrum(fid: Fid, zero_fill: int | None = None) -> Spectrum:
    """Discrete Fourier transform of the FID with zero frequency centered.

    ``zero_fill`` sets the transform length (must be >= the signal length);
    by default the signal is padded to the next power of two.
    """
    n_fft = _fft_length(len(fid), zero_fill)
    padded = np.zeros(n_fft, dtype=np.complex128)
    padded[: len(fid)] = fid.samples
    bins = np.fft.fftshift(np.fft.fft(padded))
    freq = (np.arange(n_fft) - n_fft // 2) / (n_fft * fid.dwell_time)
    ppm = fid.reference_ppm - freq / fid.transmitter_freq
    return Spectrum(
        bins=bins,
        freq_axis=freq,
        ppm_axis=ppm,
        dwell_time=fid.dwell_time,
        transmitter_freq=fid.transmitter_freq,
        reference_ppm=fid.reference_ppm,
    )


def to_fid(spec: Spectrum) -> Fid:
    """Invert ``to_spectrum``; the full transform length comes back as samples.

    Rejects spectra whose frequency axis is not the uniform centered grid
    produced by the forward transform.
    """
    n_fft = len(spec)
    expected = (np.arange(n_fft) - n_fft // 2) / (n_fft * spec.dwell_time)
    df = expected[1] - expected[0]
    if not np.allclose(spec.freq_axis, expected, rtol=0, atol=1e-9 * abs(df)):
        raise ValueError("spectrum axis is not a uniform centered grid; cannot invert")
    samples = np.fft.ifft(np.fft.ifftshift(spec.bins))
    return Fid(samples, spec.dwell_time, spec.transmitter_freq, spec.reference_ppm)


def peak_at(spec: Spectrum, band: PpmBand) -> tuple[float, float]:
    """Location and value of the maximum real part inside a ppm window.

    Returns ``(ppm, height)``. On ties (e.g. a flat region) the first bin in
    storage order, i.e. the highest-ppm end of the window, wins.
    """
    mask = band.contains(spec.ppm_axis)
    if not np.any(mask):
        raise ValueError(f"band {band} does not overlap the spectrum")
    indices = np.flatnonzero(mask)
    best = indices[np.argmax(spec.bins.real[indices])]
    return float(spec.ppm_axis[best]), float(spec.bins.real[best])
