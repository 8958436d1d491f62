"""Exact Manin maps and tangency data for elliptic surfaces over the line."""

from pathlib import Path

from ._ellsurf import (
    Curve,
    Error,
    HypothesisError,
    InputError,
    NotFound,
    commands,
    run,
)

__all__ = [
    "Curve",
    "Error",
    "HypothesisError",
    "InputError",
    "NotFound",
    "commands",
    "run",
    "run_file",
]


def run_file(command, path, **options):
    """Like run(), reading the manifest from a file."""
    return run(command, Path(path).read_text(), **options)
