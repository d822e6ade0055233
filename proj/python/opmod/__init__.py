"""Certify or refute orthogonality preservation for maps between Hilbert C*-modules
over finite-dimensional C*-algebras."""

import json

from ._core import (
    SCHEMA_VERSION,
    DomainError,
    Error,
    FormatError,
    GenerationError,
    Incompatible,
    Instance,
    InternalInconsistency,
    InvalidInput,
    ParseError,
    PreconditionError,
    ValidationError,
    ZeroModule,
    adversarial,
    analyze_json,
    degradation,
    gallery,
    gallery_names,
    planted,
    run_suite,
    witness,
)

__all__ = [
    "SCHEMA_VERSION",
    "DomainError",
    "Error",
    "FormatError",
    "GenerationError",
    "Incompatible",
    "Instance",
    "InternalInconsistency",
    "InvalidInput",
    "ParseError",
    "PreconditionError",
    "ValidationError",
    "ZeroModule",
    "adversarial",
    "analyze",
    "degradation",
    "gallery",
    "gallery_names",
    "load",
    "planted",
    "run_suite",
    "witness",
]


def analyze(instance, **options):
    """Run the full analysis and return the report as a dict (same layout as the CLI's machine output)."""
    return json.loads(analyze_json(instance, **options))


def load(path, tol=1e-8):
    with open(path, encoding="utf-8") as fh:
        return Instance.from_json(fh.read(), tol)
