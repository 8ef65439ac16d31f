"""Motivic DT generating series for crepant resolutions of XY - Z^N0 W^N1."""

from .motive import MotiveRat, VPolynomial, adams, eval_even, gl_order, vir_normalize
from .quiver import (
    SigmaPartition,
    ToricData,
    build_cut,
    build_quiver,
    flip,
    loop_set,
    special_cut,
    special_sigma,
)
from .roots import RootKind, StabilityParam, enumerate_positive_roots, simple_reflection
from .series import TruncatedSeries, dtpt_series, universal_series, z_alpha, z_zeta

__all__ = [
    "MotiveRat",
    "VPolynomial",
    "adams",
    "eval_even",
    "gl_order",
    "vir_normalize",
    "SigmaPartition",
    "ToricData",
    "build_cut",
    "build_quiver",
    "flip",
    "loop_set",
    "special_cut",
    "special_sigma",
    "RootKind",
    "StabilityParam",
    "enumerate_positive_roots",
    "simple_reflection",
    "TruncatedSeries",
    "dtpt_series",
    "universal_series",
    "z_alpha",
    "z_zeta",
]

__version__ = "0.1.0"
