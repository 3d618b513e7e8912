"""Damped-sinusoid decomposition of MRS FIDs and model-based preprocessing."""

from ._kernels import backend_name, magnitude
from .fidfile import read_fid, write_fid
from .hsvd import DEFAULT_ORDER, HankelDims, decompose, default_dims, hankel, reconstruct
from .model import (
    Fid,
    HarmonicComponent,
    ModelFit,
    PpmBand,
    params_of,
    pole_of,
    synthesize,
)
from .phantom import (
    EddyRamp,
    PhantomComponent,
    PhantomSpec,
    default_phantom_path,
    load_phantom_spec,
    synth_phantom,
)
from .preprocess import (
    BaselineAnchors,
    CadzowResult,
    WaterRemovalResult,
    auto_phase,
    baseline_correct,
    cadzow,
    eddy_correct,
    filter_rank,
    phase_correct,
    remove_water,
)
from .spectrum import Spectrum, peak_at, to_fid, to_spectrum

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_ORDER",
    "BaselineAnchors",
    "CadzowResult",
    "EddyRamp",
    "Fid",
    "HankelDims",
    "HarmonicComponent",
    "ModelFit",
    "PhantomComponent",
    "PhantomSpec",
    "PpmBand",
    "Spectrum",
    "WaterRemovalResult",
    "auto_phase",
    "backend_name",
    "baseline_correct",
    "cadzow",
    "decompose",
    "default_dims",
    "default_phantom_path",
    "eddy_correct",
    "filter_rank",
    "hankel",
    "load_phantom_spec",
    "magnitude",
    "params_of",
    "peak_at",
    "phase_correct",
    "pole_of",
    "read_fid",
    "reconstruct",
    "remove_water",
    "synth_phantom",
    "synthesize",
    "to_fid",
    "to_spectrum",
    "write_fid",
    "__version__",
]
