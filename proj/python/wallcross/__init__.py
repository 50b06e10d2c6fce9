"""Exact wall-crossing coefficients and rationality checks on toy cone models."""

import json
from pathlib import Path

from ._wallcross import (
    ConeModel,
    ConfigError,
    DomainError,
    InputError,
    NumClass,
    PreconditionError,
    command_names,
    criterion,
    decompositions,
    deg,
    dominates_below,
    euler_pairing,
    phase_key,
    render,
    run,
    s_coeff,
    slope,
    u_coeff,
    walls,
)


def run_config(command, config):
    """Like run(), but config may be a dict or a path to a JSON file."""
    if isinstance(config, (str, Path)) and Path(config).exists():
        config = Path(config).read_text()
    elif isinstance(config, dict):
        config = json.dumps(config)
    return run(command, config)


__all__ = [
    "ConeModel", "ConfigError", "DomainError", "InputError", "NumClass", "PreconditionError",
    "command_names", "criterion", "decompositions", "deg", "dominates_below", "euler_pairing",
    "phase_key", "render", "run", "run_config", "s_coeff", "slope", "u_coeff", "walls",
]
