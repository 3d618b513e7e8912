"""Line-oriented text format for FIDs.

Layout (version 1)::

    hsvdpre-fid 1
    dwell_time_s 0.00025
    transmitter_freq_mhz 123.2
    reference_ppm 4.7
    description optional free text on one line
    samples 2048
    data
    <re> <im>
    ...

Floats are written with ``repr``, so a write/read round trip is bit-exact.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import ParseError
from .model import Fid

MAGIC = "hsvdpre-fid"
FORMAT_VERSION = 1

_REQUIRED_FIELDS = ("dwell_time_s", "transmitter_freq_mhz", "reference_ppm")


def write_fid(path, fid: Fid, description: str | None = None) -> None:
    """Write a FID; the file appears atomically (temp file + rename)."""
    path = Path(path)
    lines = [f"{MAGIC} {FORMAT_VERSION}"]
    lines.append(f"dwell_time_s {fid.dwell_time!r}")
    lines.append(f"transmitter_freq_mhz {fid.transmitter_freq!r}")
    lines.append(f"reference_ppm {fid.reference_ppm!r}")
    if description:
        if "\n" in description:
            raise ValueError("description must be a single line")
        lines.append(f"description {description}")
    lines.append(f"samples {len(fid)}")
    lines.append("data")
    lines.extend(f"{float(s.real)!r} {float(s.imag)!r}" for s in fid.samples)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def _parse_float(raw: str, field: str, line_no: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"line {line_no}: {field} is not a number: {raw!r}") from None
    if value != value:  # NaN
        raise ParseError(f"line {line_no}: {field} is NaN")
    return value


def read_fid(path) -> Fid:
    """Read a FID, with line/field diagnostics on malformed input."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise ParseError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC:
        raise ParseError(f"{path}: line 1: expected '{MAGIC} <version>' header")
    if head[1] != str(FORMAT_VERSION):
        raise ParseError(f"{path}: unsupported format version {head[1]}")

    fields: dict[str, float] = {}
    description = None
    n_declared = None
    data_start = None
    for line_no, line in enumerate(lines[1:], start=2):
        if line == "data":
            data_start = line_no
            break
        key, _, raw = line.partition(" ")
        if key == "description":
            description = raw
        elif key == "samples":
            try:
                n_declared = int(raw)
            except ValueError:
                raise ParseError(f"line {line_no}: samples is not an integer: {raw!r}") from None
        elif key in _REQUIRED_FIELDS:
            fields[key] = _parse_float(raw, key, line_no)
        else:
            raise ParseError(f"line {line_no}: unknown field {key!r}")
    if data_start is None:
        raise ParseError(f"{path}: missing 'data' section")
    for field in _REQUIRED_FIELDS:
        if field not in fields:
            raise ParseError(f"{path}: missing metadata field {field!r}")
    if n_declared is None:
        raise ParseError(f"{path}: missing 'samples' count")
    if fields["dwell_time_s"] <= 0:
        raise ParseError(f"{path}: dwell_time must be positive")
    if fields["transmitter_freq_mhz"] <= 0:
        raise ParseError(f"{path}: transmitter_freq must be positive")

    data_lines = [line for line in lines[data_start:] if line.strip()]
    if len(data_lines) != n_declared:
        raise ParseError(
            f"{path}: length mismatch: declared {n_declared} samples, found {len(data_lines)}"
        )
    samples = np.empty(n_declared, dtype=np.complex128)
    for offset, line in enumerate(data_lines):
        parts = line.split()
        line_no = data_start + 1 + offset
        if len(parts) != 2:
            raise ParseError(f"line {line_no}: expected '<re> <im>', got {line!r}")
        re = _parse_float(parts[0], "real part", line_no)
        im = _parse_float(parts[1], "imaginary part", line_no)
        if not (np.isfinite(re) and np.isfinite(im)):
            raise ParseError(f"line {line_no}: non-finite sample")
        samples[offset] = complex(re, im)
    try:
        return Fid(
            samples,
            dwell_time=fields["dwell_time_s"],
            transmitter_freq=fields["transmitter_freq_mhz"],
            reference_ppm=fields["reference_ppm"],
        )
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
