"""Certify non-triviality of alternating links via the augmented Dehn
presentation and a small-cancellation word solver."""

from .pipeline import Certificate, certify
from .diagram import Diagram, load_diagram, parse_pd
from .presentation import Presentation, build_presentation
from .solver import geodesic_reduce, is_identity

__all__ = [
    "Certificate",
    "Diagram",
    "Presentation",
    "build_presentation",
    "certify",
    "geodesic_reduce",
    "is_identity",
    "load_diagram",
    "parse_pd",
]
