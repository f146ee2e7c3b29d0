"""Continuous (K-)operator frames in Hilbert C*-modules.

Thin Python front end over the C++ library. Matrices are numpy arrays of
complex128; campaign and analysis results are returned as parsed JSON.
"""

import json

from ._opframe import (
    Error,
    frame_bounds,
    frame_gram,
    k_frame_bounds,
    normalize_instance,
    pencil_inf,
    pencil_sup,
    run_cli,
    theorems,
)
from . import _opframe


def analyze_instance(text):
    return json.loads(_opframe.analyze_instance(text))


def run_campaign(seed=0, trials=200, theorems=(), threads=1):
    return json.loads(_opframe.run_campaign(seed, trials, list(theorems), threads))


__all__ = [
    "Error",
    "analyze_instance",
    "frame_bounds",
    "frame_gram",
    "k_frame_bounds",
    "normalize_instance",
    "pencil_inf",
    "pencil_sup",
    "run_campaign",
    "run_cli",
    "theorems",
]
