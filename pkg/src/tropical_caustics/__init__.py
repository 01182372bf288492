"""Tropical caustics of convex domains: exact polygon engine, smooth oracles,
lattice approximation and reconstruction from caustic coordinates."""

from .caustic import CausticGraph, graph_from_json, graph_to_json
from .domain import RationalPolygon, from_vertices, monomial_set, propagate
from .engine import EngineError, run
from .verify import verify

__all__ = ["CausticGraph", "EngineError", "RationalPolygon", "from_vertices", "graph_from_json",
           "graph_to_json", "monomial_set", "propagate", "run", "verify"]
__version__ = "0.1.0"
