"""Signless-Laplacian spectral analysis of random walks on finite graphs."""

from . import bounds, energy, errors, graphs, operators, report, spectral, walks
from .graphs import (WeightedGraph, Bipartition, build_graph, bipartiteness,
                     generate, petersen)
from .operators import GraphOperator, OperatorKind, build_operator, q_form, theta_form
from .report import BoundCheck
from .spectral import (SpectralDecomposition, StepMeasure, decompose,
                       decompose_kind, vertex_measure, reduced_measure,
                       average_measure, counting_identity, embedding)
from .walks import (WalkEstimate, ChainTimes, chain_times, monte_carlo_return,
                    return_prob_power, return_prob_spectral, jump_walk_return)
from .energy import (EfficiencyEstimate, efficiency_lower, efficiency_upper,
                     set_selection, tree_energy)

__version__ = "0.1.0"

__all__ = [
    "WeightedGraph", "Bipartition", "build_graph", "bipartiteness",
    "generate", "petersen", "GraphOperator", "OperatorKind", "build_operator",
    "q_form", "theta_form", "BoundCheck", "SpectralDecomposition",
    "StepMeasure", "decompose", "decompose_kind", "vertex_measure",
    "reduced_measure", "average_measure", "counting_identity", "embedding",
    "WalkEstimate", "ChainTimes", "chain_times", "monte_carlo_return",
    "return_prob_power", "return_prob_spectral", "jump_walk_return",
    "EfficiencyEstimate", "efficiency_lower", "efficiency_upper",
    "set_selection", "tree_energy",
    "bounds", "energy", "errors", "graphs", "operators", "report",
    "spectral", "walks",
]
