"""Commitment and institutional rewards in the optional Prisoner's Dilemma.

Pipeline: strategies -> payoff matrix -> fixation probabilities ->
rare-mutation stationary distribution -> population metrics.
"""

from .dynamics import DynamicsParams, FixationMatrix, fixation_matrix, fixation_probability
from .metrics import (
    Behaviour,
    BehaviourFrequencies,
    behaviour_frequencies,
    commitment_acceptance,
    dominant_behaviour,
    improvement_percentage,
    prevalent_strategies,
    social_welfare,
)
from .payoffs import GameParams, PayoffMatrix, Scheme, build_matrix, pair_payoff, welfare_matrix
from .stationary import StationaryDistribution, stationary_distribution, transition_matrix
from .strategies import Action, Disposition, Strategy, Variant, enumerate_strategies, parse_strategy
from .sweep import PointResult, SweepSpec, run_point, run_sweep

__version__ = "0.1.0"
