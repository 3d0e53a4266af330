"""Multicolor Turan numbers: exact solvers, constructions and certificates.

The central quantity is the largest number of edge-disjoint copies of a
pattern F that fit on n vertices without a "multicolor" G: a copy of G
whose edges all come from distinct F-copies. The package computes it
exactly at desk scale, evaluates every applicable closed-form bound, emits
verified lower-bound constructions, and bridges to Berge-G-free linear
hypergraphs.
"""

__version__ = "0.1.0"

from .budget import SearchBudget, default_budget
from .graphs import (
    Graph,
    blow_up,
    clique,
    cycle,
    biclique,
    enumerate_copies,
    generate,
    has_homomorphism,
    invariants,
    path,
    star,
    turan_graph,
    turan_number_exact,
)
from .systems import CopySystem, MulticolorWitness, find_multicolor
from .kernels import backend_name

__all__ = [
    "Graph",
    "CopySystem",
    "MulticolorWitness",
    "SearchBudget",
    "backend_name",
    "blow_up",
    "biclique",
    "clique",
    "cycle",
    "default_budget",
    "enumerate_copies",
    "find_multicolor",
    "generate",
    "has_homomorphism",
    "invariants",
    "path",
    "star",
    "turan_graph",
    "turan_number_exact",
]
