"""Apollonian ball packings of stacked-polytope graphs."""

from .builder import (Packing, PackingError, build_from_graph, canonical_kd_pm, detect_hexlet,
                      orthoplex_join_packing, soddy_hexlet, tangency_graph)
from .descartes import (DescartesConfiguration, canonical_configuration, generator_matrix,
                        q_matrix, replace, validate)
from .geometry import Ball, Contact, ContactKind, ball_from_ccv, contact, curvature_center
from .graphs import Graph, StackProgram, decide_packable_stacked4, is_stacked_polytopal
from .scalar import Surd
from .words import Word, is_reduced, simplify, weighted_sums

__version__ = "0.1.0"

__all__ = [
    "Ball", "Contact", "ContactKind", "DescartesConfiguration", "Graph", "Packing",
    "PackingError", "StackProgram", "Surd", "Word", "ball_from_ccv", "build_from_graph",
    "canonical_configuration", "canonical_kd_pm", "contact", "curvature_center",
    "decide_packable_stacked4", "detect_hexlet", "generator_matrix", "is_reduced",
    "is_stacked_polytopal", "orthoplex_join_packing", "q_matrix", "replace", "simplify",
    "soddy_hexlet", "tangency_graph", "validate", "weighted_sums",
]
