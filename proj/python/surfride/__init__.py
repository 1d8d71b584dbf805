"""Surf-riding threshold solver.

Config-driven functions accept a dict, a JSON string, or a path to a JSON
config file, and return the decoded ``{"metadata", "payload"}`` document.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Union

from . import _core
from ._core import (
    NoThresholdError,
    OracleError,
    SolverError,
    SurfrideError,
    ValidationError,
    diffraction_mu,
    mean_speed_steepness_limit,
    orbit_moment,
    u_positive_steepness_limit,
)

__version__ = _core.__version__

ConfigLike = Union[dict, str, os.PathLike]

__all__ = [
    "NoThresholdError",
    "OracleError",
    "SolverError",
    "SurfrideError",
    "ValidationError",
    "config_digest",
    "diffraction_mu",
    "fk_force",
    "mean_speed_steepness_limit",
    "oracle",
    "orbit_moment",
    "threshold",
    "u_positive_steepness_limit",
    "validate",
]


def _encode(config: ConfigLike) -> tuple[str, str]:
    """Returns (json_text, base_dir) for relative file references."""
    if isinstance(config, dict):
        return json.dumps(config), os.getcwd()
    if isinstance(config, os.PathLike) or (isinstance(config, str) and not config.lstrip().startswith("{")):
        path = Path(config)
        return path.read_text(), str(path.resolve().parent)
    return config, os.getcwd()


def _run(fn, config: ConfigLike) -> dict[str, Any]:
    text, base = _encode(config)
    return json.loads(fn(text, base))


def threshold(config: ConfigLike) -> dict[str, Any]:
    """Melnikov threshold report."""
    return _run(_core.threshold_json, config)


def oracle(config: ConfigLike) -> dict[str, Any]:
    """Melnikov threshold alongside the ODE capture oracle."""
    return _run(_core.oracle_json, config)


def fk_force(config: ConfigLike) -> dict[str, Any]:
    """Wave-induced surge force amplitude from the hull stations."""
    return _run(_core.fk_force_json, config)


def validate(config: ConfigLike) -> dict[str, Any]:
    """Normalized config, resolved wave quantities and warnings."""
    return _run(_core.validate_json, config)


def config_digest(config: ConfigLike) -> str:
    text, base = _encode(config)
    return _core.config_digest(text, base)
