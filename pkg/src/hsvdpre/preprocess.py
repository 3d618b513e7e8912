"""Model-based preprocessing of FIDs.

Five operations: rank filtering (keep the k dominant components), iterative
rank-truncation denoising with Hankel-structure restoration, zero-order
phase correction (manual and automatic), baseline subtraction on the
spectrum, eddy-current correction against a water reference, and residual
water removal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from . import _kernels, linalg
from .errors import NumericalError
from .hsvd import decompose, default_dims, hankel, reconstruct
from .model import Fid, HarmonicComponent, PpmBand, synthesize
from .spectrum import Spectrum

SMOOTHING_MODES = ("linear", "cubic")


@dataclass(frozen=True)
class BaselineAnchors:
    """Spectrum bins assumed signal-free, plus the interpolant drawn through them."""

    anchor_indices: tuple[int, ...]
    smoothing: str = "linear"

    def __post_init__(self):
        indices = tuple(int(i) for i in self.anchor_indices)
        if len(indices) < 2:
            raise ValueError("need at least 2 anchor indices")
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("anchor indices must be strictly ascending")
        if indices[0] < 0:
            raise ValueError("anchor indices must be non-negative")
        if self.smoothing not in SMOOTHING_MODES:
            raise ValueError(f"smoothing must be one of {SMOOTHING_MODES}")
        object.__setattr__(self, "anchor_indices", indices)


@dataclass(frozen=True)
class CadzowResult:
    """Denoised signal plus the per-pass rank diagnostics.

    ``rank_ratios[i]`` is sigma[k]/sigma[0] of the Hankel matrix fed into
    pass ``i``; ``converged`` reports whether the stopping ratio
    sigma[k]/sigma[k-1] dropped below tolerance within the allowed passes.
    """

    fid: Fid
    iterations: int
    converged: bool
    rank_ratios: tuple[float, ...]


@dataclass(frozen=True)
class WaterRemovalResult:
    """Signal with the in-band components subtracted, and what was removed."""

    fid: Fid
    removed: tuple[HarmonicComponent, ...]


def filter_rank(fid: Fid, order: int) -> Fid:
    """Replace the signal by its rank-``order`` model, discarding the rest."""
    fit = decompose(fid, order)
    return reconstruct(
        fit, len(fid), fid.dwell_time, fid.transmitter_freq, fid.reference_ppm
    )


def cadzow(fid: Fid, order: int, max_iters: int = 10, tol: float = 1e-8) -> CadzowResult:
    """Alternate rank truncation and antidiagonal averaging.

    Each pass rebuilds the Hankel matrix, keeps the ``order`` dominant
    singular triplets, restores the Hankel structure by averaging each
    antidiagonal, and reads the signal back off. Iteration stops once
    sigma[order]/sigma[order-1] < tol or after ``max_iters`` passes;
    running out of passes is not an error.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    dims = default_dims(len(fid), order)
    if order >= min(dims.l, dims.m):
        raise ValueError(
            f"order {order} must be smaller than min(l, m) = {min(dims.l, dims.m)}"
        )
    current = fid
    ratios = []
    converged = False
    iterations = 0
    for _ in range(max_iters):
        dec = linalg.svd(hankel(current, dims))
        sigma = dec.sigma
        ratios.append(float(sigma[order] / sigma[0]) if sigma[0] > 0 else 0.0)
        truncated = (dec.u[:, :order] * sigma[:order]) @ dec.vh[:order]
        current = current.with_samples(_kernels.antidiag_mean(truncated))
        iterations += 1
        stop_ratio = sigma[order] / sigma[order - 1] if sigma[order - 1] > 0 else 0.0
        if stop_ratio < tol:
            converged = True
            break
    return CadzowResult(
        fid=current,
        iterations=iterations,
        converged=converged,
        rank_ratios=tuple(ratios),
    )


def phase_correct(fid: Fid, phi: float) -> Fid:
    """Multiply every sample by exp(j*phi); magnitudes are untouched.

    Quarter-turn angles whose cosine/sine round to exact 0/+-1 are applied
    as sign flips and component swaps, so phi = 0, pi etc. are bit-exact.
    """
    if not np.isfinite(phi):
        raise ValueError("phi must be finite")
    cos_p = np.cos(phi)
    sin_p = np.sin(phi)
    if abs(cos_p) == 1.0:
        return fid.with_samples(fid.samples * cos_p)
    if abs(sin_p) == 1.0:
        rotated = (-fid.samples.imag + 1j * fid.samples.real) * sin_p
        return fid.with_samples(rotated)
    return fid.with_samples(_kernels.rotate_by_phase(fid.samples, phi))


def auto_phase(fid: Fid, target_band: PpmBand, order: int | None = None) -> float:
    """Zero-order angle that makes the dominant in-band component absorptive.

    Decomposes the signal (default model order), picks the largest-amplitude
    component whose chemical shift falls inside ``target_band`` (ties go to
    the one nearest the band center), and returns the negated phase of that
    component.
    """
    fit = decompose(fid, order)
    in_band = [c for c in fit.components if target_band.contains(fid.hz_to_ppm(c.frequency))]
    if not in_band:
        raise NumericalError(f"no component found in band {target_band}")
    best = min(
        in_band,
        key=lambda c: (
            -c.amplitude,
            abs(float(fid.hz_to_ppm(c.frequency)) - target_band.center),
        ),
    )
    return -best.phase


def baseline_correct(spec: Spectrum, anchors: BaselineAnchors) -> Spectrum:
    """Subtract a smooth line drawn through anchor bins from the real part.

    The interpolant (straight segments or a natural cubic spline) passes
    through the real-part values at the anchor bins, so the corrected real
    part vanishes there. The imaginary part is untouched.
    """
    n = len(spec)
    indices = np.array(anchors.anchor_indices)
    if indices[-1] >= n:
        raise ValueError(f"anchor index {indices[-1]} out of range for {n} bins")
    values = spec.bins.real[indices]
    x = np.arange(n)
    if anchors.smoothing == "linear":
        baseline = np.interp(x, indices, values)
    else:
        baseline = CubicSpline(indices, values, bc_type="natural")(x)
    corrected = (spec.bins.real - baseline) + 1j * spec.bins.imag
    return Spectrum(
        bins=corrected,
        freq_axis=spec.freq_axis,
        ppm_axis=spec.ppm_axis,
        dwell_time=spec.dwell_time,
        transmitter_freq=spec.transmitter_freq,
        reference_ppm=spec.reference_ppm,
    )


def eddy_correct(fid: Fid, water_reference: Fid) -> Fid:
    """Remove time-dependent phase distortion using an unsuppressed-water FID.

    Each sample is rotated by minus the reference phase at the same time
    point: out[n] = s[n] * exp(-j * arg(w[n])). Per-sample magnitudes are
    preserved bitwise (measured by hypot). Zero reference samples borrow
    the phase of the nearest nonzero neighbor and are counted in a warning.
    """
    if len(fid) != len(water_reference):
        raise ValueError(
            f"length mismatch: signal has {len(fid)} samples, reference {len(water_reference)}"
        )
    if fid.dwell_time != water_reference.dwell_time:
        raise ValueError("dwell time mismatch between signal and reference")
    w = water_reference.samples
    nonzero = np.flatnonzero(w != 0)
    if nonzero.size == 0:
        raise ValueError("water reference is identically zero")
    zero_count = len(w) - nonzero.size
    if zero_count:
        warnings.warn(
            f"{zero_count} zero reference sample(s); using nearest nonzero phase",
            RuntimeWarning,
        )
        # substitute each zero position with its nearest nonzero neighbor
        positions = np.arange(len(w))
        right = np.searchsorted(nonzero, positions)
        left = np.clip(right - 1, 0, nonzero.size - 1)
        right = np.clip(right, 0, nonzero.size - 1)
        nearer = np.where(
            np.abs(nonzero[right] - positions) < np.abs(positions - nonzero[left]),
            nonzero[right],
            nonzero[left],
        )
        w = w[nearer]
    return fid.with_samples(_kernels.rotate_by_phase(fid.samples, -np.angle(w)))


def remove_water(fid: Fid, water_band: PpmBand, order: int | None = None) -> WaterRemovalResult:
    """Model the signal and subtract every component inside a ppm band.

    Components whose chemical shift falls within ``water_band`` are
    synthesized and subtracted sample-wise. If the band holds none, the
    signal comes back unchanged with an empty removal list.
    """
    fit = decompose(fid, order)
    removed = tuple(
        c for c in fit.components if water_band.contains(fid.hz_to_ppm(c.frequency))
    )
    if not removed:
        warnings.warn(f"nothing removed: no component in band {water_band}", RuntimeWarning)
        return WaterRemovalResult(fid=fid, removed=())
    water = synthesize(
        removed, len(fid), fid.dwell_time, fid.transmitter_freq, fid.reference_ppm
    )
    return WaterRemovalResult(
        fid=fid.with_samples(fid.samples - water.samples), removed=removed
    )
