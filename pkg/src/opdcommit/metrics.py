"""Population-level quantities derived from a stationary distribution."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .payoffs import PayoffMatrix
from .stationary import StationaryDistribution
from .strategies import Action, Strategy


class Behaviour(enum.Enum):
    COOPERATION = "cooperation"
    DEFECTION = "defection"
    EXIT = "exit"


_BEHAVIOUR_OF = {
    Action.COOPERATE: Behaviour.COOPERATION,
    Action.DEFECT: Behaviour.DEFECTION,
    Action.EXIT: Behaviour.EXIT,
}


@dataclass(frozen=True)
class BehaviourFrequencies:
    cooperation: float
    defection: float
    exit: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.cooperation, self.defection, self.exit)


def homogeneous_action(s: Strategy) -> Action:
    """Action played in a population made entirely of ``s``.

    Accepting strategies always meet another acceptor there, so the committed
    slot is what gets played.
    """
    return s.when_committed if s.accepts else s.when_uncommitted


def behaviour_frequencies(dist: StationaryDistribution) -> BehaviourFrequencies:
    totals = {a: 0.0 for a in Action}
    for strategy, p in zip(dist.strategies, dist.p):
        totals[homogeneous_action(strategy)] += float(p)
    return BehaviourFrequencies(
        totals[Action.COOPERATE], totals[Action.DEFECT], totals[Action.EXIT]
    )


def commitment_acceptance(dist: StationaryDistribution) -> float:
    return float(sum(p for s, p in zip(dist.strategies, dist.p) if s.accepts))


def social_welfare(dist: StationaryDistribution, w: PayoffMatrix) -> float:
    """Stationary average of self-play payoffs ``sum_n pi_nn p_n``.

    ``w`` should come from :func:`opdcommit.payoffs.welfare_matrix`; rewards
    are transfers from the institution and cancel out.
    """
    if tuple(w.strategies) != tuple(dist.strategies):
        raise ValueError("welfare matrix and distribution use different strategy orders")
    return float(np.dot(np.diag(w.values), dist.p))


def dominant_behaviour(b: BehaviourFrequencies) -> Behaviour:
    # max() keeps the first maximum, which gives the C > D > L tie-break
    ranked = [
        (b.cooperation, Behaviour.COOPERATION),
        (b.defection, Behaviour.DEFECTION),
        (b.exit, Behaviour.EXIT),
    ]
    return max(ranked, key=lambda item: item[0])[1]


def prevalent_strategies(
    dist: StationaryDistribution, threshold: float = 0.1
) -> list[tuple[Strategy, float]]:
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    picked = [
        (idx, s, float(p))
        for idx, (s, p) in enumerate(zip(dist.strategies, dist.p))
        if p > threshold
    ]
    picked.sort(key=lambda t: (-t[2], t[0]))
    return [(s, p) for _, s, p in picked]


def improvement_percentage(opd_accept: float, pd_accept: float) -> float:
    """Relative gain in acceptance of the optional game over the PD baseline, in percent."""
    if pd_accept == 0:
        raise ZeroDivisionError("PD acceptance is zero; improvement percentage undefined")
    return 100.0 * (opd_accept - pd_accept) / pd_accept
