"""Command-line pipeline driver.

Each subcommand reads a FID file (or a phantom spec for ``synth``), applies
exactly one operation, and writes a FID file or a spectrum CSV, plus an
optional SVG. Exit codes: 0 success, 1 usage error, 2 data/parse error,
3 numerical failure. Outputs are written atomically, so a failing run
leaves no partial files behind.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import emit, fidfile, preprocess, spectrum as spectrum_mod
from .errors import NumericalError, ParseError
from .hsvd import DEFAULT_ORDER, decompose
from .model import PpmBand
from .phantom import default_phantom_path, load_phantom_spec, synth_phantom

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_band(text: str) -> PpmBand:
    center, sep, half = text.partition(":")
    if not sep:
        raise _UsageError(f"--band expects 'center:halfwidth', got {text!r}")
    try:
        return PpmBand(center=float(center), half_width=float(half))
    except ValueError as exc:
        raise _UsageError(f"bad --band value {text!r}: {exc}") from None


def _parse_anchors(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"--anchors expects comma-separated integers, got {text!r}") from None


def build_parser() -> _Parser:
    parser = _Parser(prog="hsvdpre", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, needs_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help="input FID file")
        p.add_argument("--output", "-o", required=True, help="output path")
        return p

    p = sub.add_parser("synth", help="synthesize a phantom FID from a JSON spec")
    p.add_argument("spec", nargs="?", default=None, help="phantom spec JSON (default: bundled)")
    p.add_argument("--output", "-o", required=True, help="output FID file")
    p.add_argument("--water-output", help="also write the water-reference FID here")
    p.add_argument("--truth", help="also write the generating component table here")
    p.add_argument("--seed", type=int, default=None, help="override the spec's noise seed")

    p = add("decompose", "fit damped sinusoids and write the component table")
    p.add_argument("--order", "-k", type=int, default=DEFAULT_ORDER)

    p = add("filter", "keep only the rank-k model of the signal")
    p.add_argument("--order", "-k", type=int, default=DEFAULT_ORDER)

    p = add("cadzow", "iterative rank-truncation denoising")
    p.add_argument("--order", "-k", type=int, default=DEFAULT_ORDER)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("phase", "zero-order phase correction")
    p.add_argument("--phi", type=float, default=None, help="rotation angle in radians")
    p.add_argument("--auto", action="store_true", help="derive the angle from a component")
    p.add_argument("--band", default=None, help="ppm band 'center:halfwidth' for --auto")
    p.add_argument("--order", "-k", type=int, default=None, help="model order for --auto")

    p = add("eddy", "eddy-current correction against a water reference")
    p.add_argument("--reference", required=True, help="unsuppressed-water FID file")

    p = add("water", "model and subtract residual water")
    p.add_argument("--band", default="4.7:0.3", help="ppm band 'center:halfwidth'")
    p.add_argument("--order", "-k", type=int, default=DEFAULT_ORDER)

    p = add("baseline", "anchor-point baseline subtraction (writes spectrum CSV)")
    p.add_argument("--anchors", required=True, help="comma-separated bin indices")
    p.add_argument("--smoothing", choices=preprocess.SMOOTHING_MODES, default="linear")
    p.add_argument("--zero-fill", type=int, default=None)
    p.add_argument("--svg", help="also plot the result here")

    p = add("spectrum", "Fourier transform to a spectrum CSV")
    p.add_argument("--zero-fill", type=int, default=None)
    p.add_argument("--svg", help="also plot the result here")

    return parser


def _run(args) -> None:
    if args.command == "synth":
        spec_path = args.spec if args.spec is not None else default_phantom_path()
        spec = load_phantom_spec(spec_path)
        if args.seed is not None:
            spec = dataclasses.replace(spec, noise_seed=args.seed)
        fid, reference, truth = synth_phantom(spec)
        fidfile.write_fid(args.output, fid, description="synthetic phantom")
        if args.water_output:
            if reference is None:
                raise NumericalError("phantom spec has no water_reference block")
            fidfile.write_fid(args.water_output, reference, description="water reference")
        if args.truth:
            emit.write_component_csv(args.truth, truth, fid)
        return

    fid = fidfile.read_fid(args.input)

    if args.command == "decompose":
        fit = decompose(fid, args.order)
        emit.write_component_csv(args.output, fit, fid)
    elif args.command == "filter":
        fidfile.write_fid(args.output, preprocess.filter_rank(fid, args.order))
    elif args.command == "cadzow":
        result = preprocess.cadzow(fid, args.order, max_iters=args.iters, tol=args.tol)
        if not result.converged:
            print(
                f"cadzow: no convergence in {result.iterations} pass(es)",
                file=sys.stderr,
            )
        fidfile.write_fid(args.output, result.fid)
    elif args.command == "phase":
        if args.auto == (args.phi is not None):
            raise _UsageError("phase needs exactly one of --phi or --auto")
        if args.auto:
            if args.band is None:
                raise _UsageError("--auto requires --band")
            phi = preprocess.auto_phase(fid, _parse_band(args.band), args.order)
        else:
            phi = args.phi
        fidfile.write_fid(args.output, preprocess.phase_correct(fid, phi))
    elif args.command == "eddy":
        reference = fidfile.read_fid(args.reference)
        fidfile.write_fid(args.output, preprocess.eddy_correct(fid, reference))
    elif args.command == "water":
        result = preprocess.remove_water(fid, _parse_band(args.band), args.order)
        if not result.removed:
            print("water: nothing removed", file=sys.stderr)
        fidfile.write_fid(args.output, result.fid)
    elif args.command == "baseline":
        spec = spectrum_mod.to_spectrum(fid, args.zero_fill)
        anchors = preprocess.BaselineAnchors(
            anchor_indices=_parse_anchors(args.anchors), smoothing=args.smoothing
        )
        corrected = preprocess.baseline_correct(spec, anchors)
        emit.write_spectrum_csv(args.output, corrected)
        if args.svg:
            emit.write_spectrum_svg(args.svg, corrected, title="baseline-corrected spectrum")
    elif args.command == "spectrum":
        spec = spectrum_mod.to_spectrum(fid, args.zero_fill)
        emit.write_spectrum_csv(args.output, spec)
        if args.svg:
            emit.write_spectrum_svg(args.svg, spec, title="spectrum")
    else:  # pragma: no cover - argparse enforces the choices
        raise _UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _run(args)
    except _UsageError as exc:
        print(f"hsvdpre: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, OSError) as exc:
        print(f"hsvdpre: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, ValueError) as exc:
        print(f"hsvdpre: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
