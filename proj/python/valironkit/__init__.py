"""Iteration of analytic self-maps of the disk, half-plane and ball."""

import json

from . import _core
from ._core import (
    KORANYI_THRESHOLD,
    ConfigError,
    ConvergenceError,
    DomainError,
    Inconclusive,
    NotSelfMapError,
    SingularSystemError,
    __version__,
    ball_dilatation,
    evaluate,
    limit_data,
    orbit,
    psi_boundary_fixed_point,
    sigma,
)


def run(*args):
    """Run a CLI command in-process and return (exit_code, parsed JSON output)."""
    code, out, _err = _core.run([str(a) for a in args])
    return code, (json.loads(out) if out.strip() else None)


__all__ = [
    "KORANYI_THRESHOLD",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "Inconclusive",
    "NotSelfMapError",
    "SingularSystemError",
    "__version__",
    "ball_dilatation",
    "evaluate",
    "limit_data",
    "orbit",
    "psi_boundary_fixed_point",
    "run",
    "sigma",
]
