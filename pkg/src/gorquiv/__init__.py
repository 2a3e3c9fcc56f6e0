"""Exact homological calculator for finite-dimensional monomial quiver algebras."""

from .core import (
    MonomialPresentation,
    Path,
    PresentationError,
    Quiver,
    parse_presentation,
    presentation_from_json,
)

__all__ = [
    "MonomialPresentation",
    "Path",
    "PresentationError",
    "Quiver",
    "parse_presentation",
    "presentation_from_json",
]

__version__ = "0.1.0"
