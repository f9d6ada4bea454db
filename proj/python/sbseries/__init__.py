"""Stochastic B-series toolkit.

Trees use the bracket encoding ``color[child,...]``; half-integers and
rationals are passed as strings such as ``"3/2"`` or ``"0.5"``.
"""

import json

from ._core import (
    TreeParseError,
    UnsupportedError,
    alpha,
    canonical,
    check_strong,
    check_weak,
    decompositions,
    enumerate_trees,
    exact_weight,
    rho,
    run_cli,
    sample_increments,
    strong_error_study,
)


def correction_table(max_nodes=4):
    """Correction terms for every tree shape with up to ``max_nodes`` nodes."""
    code, out, err = run_cli(["table", "--max-nodes", str(max_nodes), "--format", "json"])
    if code != 0:
        raise ValueError(err.strip())
    return json.loads(out)


__all__ = [
    "TreeParseError",
    "UnsupportedError",
    "alpha",
    "canonical",
    "check_strong",
    "check_weak",
    "correction_table",
    "decompositions",
    "enumerate_trees",
    "exact_weight",
    "rho",
    "run_cli",
    "sample_increments",
    "strong_error_study",
]
