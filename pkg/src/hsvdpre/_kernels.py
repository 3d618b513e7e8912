"""Hot numeric kernels with two interchangeable backends.

Every kernel exists twice: a numba ``@njit`` version (``*_numba``) and a
pure-numpy version (``*_numpy``). The module-level names (``hankel_build``,
``antidiag_mean``, ``synth_components``, ``pole_powers``) point at the
backend selected once at import time:

* ``HSVDPRE_BACKEND=numpy``  forces the pure-numpy path,
* ``HSVDPRE_BACKEND=numba``  requires numba (ImportError if missing),
* unset: numba when importable, numpy otherwise.

``rotate_by_phase`` is intentionally numpy-only in both backends: its
contract is bitwise magnitude preservation measured by ``np.hypot``, and
numba's complex ``abs``/``hypot`` are not bit-identical to numpy's.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NumericalError

_ENV_VAR = "HSVDPRE_BACKEND"


def _requested_backend() -> str:
    value = os.environ.get(_ENV_VAR, "").strip().lower()
    if value not in ("", "numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', got {value!r}"
        )
    return value


# ---------------------------------------------------------------------------
# pure-numpy implementations


def hankel_build_numpy(samples: np.ndarray, l: int, m: int) -> np.ndarray:
    """Arrange ``samples`` into an l-by-m matrix constant along antidiagonals."""
    i = np.arange(l)[:, None]
    j = np.arange(m)[None, :]
    return np.ascontiguousarray(samples[i + j])


def antidiag_mean_numpy(h: np.ndarray) -> np.ndarray:
    """Average each antidiagonal of ``h``; returns l + m - 1 values."""
    l, m = h.shape
    n = l + m - 1
    idx = (np.arange(l)[:, None] + np.arange(m)[None, :]).ravel()
    acc = np.bincount(idx, weights=h.real.ravel(), minlength=n) + 1j * np.bincount(
        idx, weights=h.imag.ravel(), minlength=n
    )
    counts = np.minimum(np.minimum(np.arange(n) + 1, n - np.arange(n)), min(l, m))
    return acc / counts


def synth_components_numpy(
    amplitudes: np.ndarray,
    dampings: np.ndarray,
    frequencies: np.ndarray,
    phases: np.ndarray,
    n_samples: int,
    dwell_time: float,
) -> np.ndarray:
    """Sum of damped sinusoids a*exp((d + j*2*pi*f)*t + j*phi) at t = n*dwell.

    Components accumulate left to right so the sum order is reproducible.
    """
    t = np.arange(n_samples) * dwell_time
    out = np.zeros(n_samples, dtype=np.complex128)
    for k in range(len(amplitudes)):
        out += amplitudes[k] * np.exp(
            (dampings[k] + 2j * np.pi * frequencies[k]) * t + 1j * phases[k]
        )
    return out


def pole_powers_numpy(poles: np.ndarray, n_samples: int) -> np.ndarray:
    """Vandermonde-style matrix P[n, k] = poles[k] ** n, built by recurrence."""
    k = len(poles)
    if n_samples == 1:
        return np.ones((1, k), dtype=np.complex128)
    steps = np.broadcast_to(poles, (n_samples - 1, k))
    out = np.empty((n_samples, k), dtype=np.complex128)
    out[0] = 1.0
    np.cumprod(steps, axis=0, out=out[1:])
    return out


# ---------------------------------------------------------------------------
# numba implementations

_HAVE_NUMBA = False
hankel_build_numba = None
antidiag_mean_numba = None
synth_components_numba = None
pole_powers_numba = None

if _requested_backend() != "numpy":
    try:
        import numba

        _HAVE_NUMBA = True
    except ImportError:
        if _requested_backend() == "numba":
            raise

if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _hankel_build_nb(samples, l, m):  # pragma: no cover - thin jit wrapper
        out = np.empty((l, m), dtype=np.complex128)
        for i in range(l):
            for j in range(m):
                out[i, j] = samples[i + j]
        return out

    @numba.njit(cache=True)
    def _antidiag_mean_nb(h):  # pragma: no cover - thin jit wrapper
        l, m = h.shape
        n = l + m - 1
        acc = np.zeros(n, dtype=np.complex128)
        cnt = np.zeros(n, dtype=np.float64)
        for i in range(l):
            for j in range(m):
                acc[i + j] += h[i, j]
                cnt[i + j] += 1.0
        return acc / cnt

    @numba.njit(cache=True)
    def _synth_components_nb(
        amplitudes, dampings, frequencies, phases, n_samples, dwell_time
    ):  # pragma: no cover - thin jit wrapper
        out = np.zeros(n_samples, dtype=np.complex128)
        for k in range(len(amplitudes)):
            rate = complex(dampings[k], 2.0 * np.pi * frequencies[k])
            shift = complex(0.0, phases[k])
            for i in range(n_samples):
                out[i] += amplitudes[k] * np.exp(rate * (i * dwell_time) + shift)
        return out

    @numba.njit(cache=True)
    def _pole_powers_nb(poles, n_samples):  # pragma: no cover - thin jit wrapper
        k = len(poles)
        out = np.empty((n_samples, k), dtype=np.complex128)
        for j in range(k):
            out[0, j] = 1.0
        for i in range(1, n_samples):
            for j in range(k):
                out[i, j] = out[i - 1, j] * poles[j]
        return out

    def hankel_build_numba(samples, l, m):
        return _hankel_build_nb(np.ascontiguousarray(samples), l, m)

    def antidiag_mean_numba(h):
        return _antidiag_mean_nb(np.ascontiguousarray(h))

    def synth_components_numba(
        amplitudes, dampings, frequencies, phases, n_samples, dwell_time
    ):
        return _synth_components_nb(
            np.ascontiguousarray(amplitudes, dtype=np.float64),
            np.ascontiguousarray(dampings, dtype=np.float64),
            np.ascontiguousarray(frequencies, dtype=np.float64),
            np.ascontiguousarray(phases, dtype=np.float64),
            n_samples,
            dwell_time,
        )

    def pole_powers_numba(poles, n_samples):
        return _pole_powers_nb(np.ascontiguousarray(poles, dtype=np.complex128), n_samples)


if _HAVE_NUMBA:
    BACKEND = "numba"
    hankel_build = hankel_build_numba
    antidiag_mean = antidiag_mean_numba
    synth_components = synth_components_numba
    pole_powers = pole_powers_numba
else:
    BACKEND = "numpy"
    hankel_build = hankel_build_numpy
    antidiag_mean = antidiag_mean_numpy
    synth_components = synth_components_numpy
    pole_powers = pole_powers_numpy


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND


# ---------------------------------------------------------------------------
# magnitude-preserving rotation (numpy-only, see module docstring)


def magnitude(samples: np.ndarray) -> np.ndarray:
    """Per-sample magnitude used by every preservation contract.

    ``np.hypot`` rather than complex ``np.abs``: on current numpy builds the
    complex absolute value carries a systematic >0.5 ulp error in bands,
    which makes "output magnitude equals input magnitude bitwise" literally
    unsatisfiable under it (some targets have an empty preimage). hypot is
    faithfully rounded, so the tube of representable points around the true
    circle always maps onto the wanted value.
    """
    samples = np.asarray(samples)
    return np.hypot(samples.real, samples.imag)


def rotate_by_phase(samples: np.ndarray, phases) -> np.ndarray:
    """Rotate each sample by its phase while preserving magnitude bitwise.

    Returns ``out`` with ``magnitude(out)`` equal to ``magnitude(samples)``
    array-equal, and ``arg(out) = arg(samples) + phases`` to < 1e-13 rad.
    Samples with zero phase or zero magnitude pass through unchanged.

    The rotated point is built in polar form, then the larger of its two
    components is re-solved from the circle equation in extended precision,
    pinning the true modulus well inside the target's rounding interval.
    The handful of samples where hypot still misrounds are nudged by
    sub-ulp angle/radius jitter until they land.
    """
    s = np.asarray(samples, dtype=np.complex128)
    psi = np.broadcast_to(np.asarray(phases, dtype=np.float64), s.shape)
    if not np.all(np.isfinite(psi)):
        raise ValueError("rotation phases must be finite")
    out = s.copy()
    m_all = magnitude(s)
    active = np.flatnonzero((m_all > 0) & (psi != 0.0))
    if active.size == 0:
        return out

    m = m_all[active]
    theta = np.angle(s[active]) + psi[active]
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    mld = np.longdouble(m)
    # keep the smaller component (it carries the angle near the axes),
    # re-solve the larger one from x^2 + y^2 = m^2
    x_major = np.abs(cos_t) >= np.abs(sin_t)
    x_kept = m * cos_t
    y_kept = m * sin_t
    solved_x = np.sqrt(np.maximum(mld * mld - np.longdouble(y_kept) ** 2, 0)).astype(
        np.float64
    )
    solved_y = np.sqrt(np.maximum(mld * mld - np.longdouble(x_kept) ** 2, 0)).astype(
        np.float64
    )
    re = np.where(x_major, np.copysign(solved_x, cos_t), x_kept)
    im = np.where(x_major, y_kept, np.copysign(solved_y, sin_t))
    cand = re + 1j * im

    bad = np.flatnonzero(magnitude(cand) != m)
    k = 1
    eps = 2.0**-52
    while bad.size and k <= 256:
        step = (k + 1) // 2 if k % 2 else -(k // 2)
        radius_adj = 1.0 + ((k % 7) - 3) * eps
        quantum = np.spacing(np.abs(theta[bad]))
        trial = (m[bad] * radius_adj) * np.exp(1j * (theta[bad] + step * quantum))
        hit = magnitude(trial) == m[bad]
        cand[bad[hit]] = trial[hit]
        bad = bad[~hit]
        k += 1
    if bad.size:
        raise NumericalError(
            f"magnitude-preserving rotation unresolved for {bad.size} samples"
        )
    out[active] = cand
    return out
