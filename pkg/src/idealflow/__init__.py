"""Premagic matrices and ideal flow on strongly connected directed networks."""

from .errors import IdealFlowError
from .graph import DirectedNetwork, strong_connectivity, uniform_walk_matrix
from .ideal_flow import IdealFlowMatrix, ideal_flow_from_stochastic, min_scale, to_whole_numbers
from .markov import StochasticMatrix, stationary_exact, stationary_power
from .matrix import FLOAT, RATIONAL, PermutationMatrix, SquareMatrix, is_premagic

__all__ = [
    "DirectedNetwork", "FLOAT", "IdealFlowError", "IdealFlowMatrix", "PermutationMatrix",
    "RATIONAL", "SquareMatrix", "StochasticMatrix", "ideal_flow_from_stochastic", "is_premagic",
    "min_scale", "stationary_exact", "stationary_power", "strong_connectivity", "to_whole_numbers",
    "uniform_walk_matrix",
]
