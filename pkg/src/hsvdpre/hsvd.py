"""Subspace decomposition of a FID into damped sinusoids.

The signal is arranged into a Hankel matrix, the dominant rank-k subspace
is taken from its SVD, the one-sample shift invariance of the right
singular vectors yields the signal poles, and a linear fit over the full
record recovers the complex amplitudes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels, linalg
from .errors import NumericalError
from .model import Fid, ModelFit, params_of, synthesize

DEFAULT_ORDER = 32

# Row/column ratio outside which subspace estimates degrade.
_MIN_RATIO = 0.5
_MAX_RATIO = 2.0


@dataclass(frozen=True)
class HankelDims:
    """Row/column split (l, m) of a length-n signal, with l + m = n + 1."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < 1 or self.m < 1:
            raise ValueError("both dimensions must be at least 1")

    def validate_for(self, n_samples: int, order: int) -> None:
        """Check the sizing rules for a given signal length and model order."""
        if self.l + self.m != n_samples + 1:
            raise ValueError(
                f"l + m must equal n_samples + 1: {self.l} + {self.m} != {n_samples + 1}"
            )
        ratio = self.l / self.m
        if not (_MIN_RATIO <= ratio <= _MAX_RATIO):
            raise ValueError(f"l/m ratio {ratio:.3f} outside [{_MIN_RATIO}, {_MAX_RATIO}]")
        if self.l <= order or self.m <= order:
            raise ValueError(
                f"both dimensions must exceed the model order {order}: got ({self.l}, {self.m})"
            )


def default_dims(n_samples: int, order: int) -> HankelDims:
    """Most-square split of n_samples + 1 points into rows and columns."""
    if order < 1:
        raise ValueError("order must be at least 1")
    minimum = 2 * order + 2
    if n_samples < minimum:
        raise ValueError(
            f"need at least {minimum} samples for model order {order}, got {n_samples}"
        )
    l = (n_samples + 2) // 2
    dims = HankelDims(l=l, m=n_samples + 1 - l)
    dims.validate_for(n_samples, order)
    return dims


def hankel(fid: Fid, dims: HankelDims) -> np.ndarray:
    """Hankel matrix with entry (i, j) = samples[i + j]."""
    if dims.l + dims.m != len(fid) + 1:
        raise ValueError(
            f"dims ({dims.l}, {dims.m}) do not fit signal of length {len(fid)}"
        )
    return _kernels.hankel_build(fid.samples, dims.l, dims.m)


def decompose(fid: Fid, order: int | None = None, dims: HankelDims | None = None) -> ModelFit:
    """Estimate ``order`` damped sinusoids from the signal.

    Parameters
    ----------
    fid : the signal to model; must not be identically zero
    order : number of components to estimate (default ``DEFAULT_ORDER``)
    dims : optional Hankel split, defaults to the most-square one

    Returns a ModelFit whose components are sorted by descending amplitude.
    Poles falling exactly at the origin are dropped with a warning, which
    shrinks the returned component count.
    """
    k = DEFAULT_ORDER if order is None else order
    if k < 1:
        raise ValueError("order must be at least 1")
    if not np.any(fid.samples):
        raise ValueError("zero signal cannot be decomposed")
    n = len(fid)
    if dims is None:
        dims = default_dims(n, k)
    else:
        dims.validate_for(n, k)
    if k >= min(dims.l, dims.m):
        raise ValueError(
            f"order {k} must be smaller than min(l, m) = {min(dims.l, dims.m)}"
        )

    dec = linalg.svd(hankel(fid, dims))
    v_k = dec.vh[:k].conj().T  # m x k, columns span the signal row space
    shift = linalg.lstsq(v_k[:-1], v_k[1:])
    poles = linalg.eigenvalues(shift.conj().T)

    keep = poles != 0
    if not np.all(keep):
        warnings.warn(
            f"dropped {np.count_nonzero(~keep)} pole(s) at the origin", RuntimeWarning
        )
        poles = poles[keep]
        if poles.size == 0:
            raise NumericalError("every pole estimate degenerated to the origin")
    basis = _kernels.pole_powers(poles, n)
    coefficients = linalg.lstsq(basis, fid.samples)

    components = sorted(
        (
            params_of(pole, coeff, fid.dwell_time)
            for pole, coeff in zip(poles, coefficients)
        ),
        key=lambda c: (-c.amplitude, c.frequency, c.damping),
    )
    # residual against the model as callers will re-synthesize it (same
    # component order), so the reported energy reproduces bit for bit
    model = synthesize(
        components, n, fid.dwell_time, fid.transmitter_freq, fid.reference_ppm
    )
    residual_energy = float(np.sum(np.abs(fid.samples - model.samples) ** 2))
    return ModelFit(
        components=tuple(components),
        singular_values=dec.sigma[:k],
        residual_energy=residual_energy,
    )


def reconstruct(
    fit: ModelFit,
    n_samples: int,
    dwell_time: float,
    transmitter_freq: float,
    reference_ppm: float,
) -> Fid:
    """Synthesize the fitted model on a fresh time grid."""
    return synthesize(fit.components, n_samples, dwell_time, transmitter_freq, reference_ppm)
