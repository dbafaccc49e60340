"""Exact tropical curve counts on abelian surfaces through pearl diagrams."""

from .qpoly import HalfLaurent, bracket_minus
from .diagrams import Diagram, Edge, Kind, Vertex, enumerate_diagrams, validate

__version__ = "0.1.0"

__all__ = [
    "Diagram",
    "Edge",
    "HalfLaurent",
    "Kind",
    "Vertex",
    "bracket_minus",
    "enumerate_diagrams",
    "validate",
]
