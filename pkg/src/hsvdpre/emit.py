"""CSV and SVG artifact writers.

All numeric CSV values are printed with 17 significant digits so parsing
them back is lossless, and every writer is deterministic: identical inputs
give byte-identical files. Files appear atomically via temp + rename.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .model import Fid, ModelFit
from .spectrum import Spectrum

SPECTRUM_CSV_HEADER = "index,frequency_hz,ppm,real,imag"
COMPONENT_CSV_HEADER = "amplitude,damping_per_s,frequency_hz,ppm,phase_rad"


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _write_atomic(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def write_spectrum_csv(path, spec: Spectrum) -> None:
    rows = [SPECTRUM_CSV_HEADER]
    rows.extend(
        f"{i},{_fmt(spec.freq_axis[i])},{_fmt(spec.ppm_axis[i])},"
        f"{_fmt(spec.bins.real[i])},{_fmt(spec.bins.imag[i])}"
        for i in range(len(spec))
    )
    _write_atomic(path, "\n".join(rows) + "\n")


def write_component_csv(path, fit: ModelFit, fid: Fid) -> None:
    """Component table in fit order; chemical shifts via the Fid metadata."""
    rows = [COMPONENT_CSV_HEADER]
    rows.extend(
        f"{_fmt(c.amplitude)},{_fmt(c.damping)},{_fmt(c.frequency)},"
        f"{_fmt(float(fid.hz_to_ppm(c.frequency)))},{_fmt(c.phase)}"
        for c in fit.components
    )
    _write_atomic(path, "\n".join(rows) + "\n")


def write_spectrum_svg(path, spec: Spectrum, title: str = "spectrum") -> None:
    """Plot the real part against ppm, descending left to right."""
    width, height = 960, 480
    margin = 60
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin

    real = spec.bins.real
    ppm = spec.ppm_axis
    lo, hi = float(np.min(real)), float(np.max(real))
    if hi == lo:
        hi = lo + 1.0
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    ppm_left, ppm_right = float(np.max(ppm)), float(np.min(ppm))

    def x_of(p: float) -> float:
        return margin + (ppm_left - p) / (ppm_left - ppm_right) * plot_w

    def y_of(v: float) -> float:
        return margin + (hi - v) / (hi - lo) * plot_h

    points = " ".join(
        f"{x_of(float(ppm[i])):.2f},{y_of(float(real[i])):.2f}" for i in range(len(spec))
    )
    x_ticks = np.linspace(ppm_left, ppm_right, 6)
    y_ticks = np.linspace(lo, hi, 5)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<rect x="{margin}" y="{margin}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>',
    ]
    for t in x_ticks:
        x = x_of(float(t))
        parts.append(
            f'<line x1="{x:.2f}" y1="{margin + plot_h}" x2="{x:.2f}" '
            f'y2="{margin + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{margin + plot_h + 20}" text-anchor="middle" '
            f'font-size="11">{t:.2f}</text>'
        )
    for t in y_ticks:
        y = y_of(float(t))
        parts.append(
            f'<line x1="{margin - 5}" y1="{y:.2f}" x2="{margin}" y2="{y:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{margin - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="11">{t:.3g}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        'font-size="13">chemical shift (ppm)</text>'
    )
    parts.append(
        f'<text x="18" y="{height / 2:.0f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 18 {height / 2:.0f})">real part</text>'
    )
    parts.append(f'<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="1"/>')
    parts.append("</svg>")
    _write_atomic(path, "\n".join(parts) + "\n")
