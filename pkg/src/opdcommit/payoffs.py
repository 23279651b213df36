"""Pairwise payoffs for the optional Prisoner's Dilemma with prior commitment."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .strategies import (
    Action,
    Strategy,
    Variant,
    commitment_formed,
    enumerate_strategies,
    realized_action,
)


class Scheme(enum.Enum):
    NONE = "none"
    STRICT = "strict"
    FLEXIBLE = "flexible"

    def rewards(self, strategy: Strategy) -> bool:
        """Whether a committed ``strategy`` qualifies for the institutional reward."""
        if self is Scheme.STRICT:
            return strategy.when_committed is Action.COOPERATE
        if self is Scheme.FLEXIBLE:
            return strategy.when_committed is not Action.DEFECT
        return False


class ParameterOrderingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GameParams:
    sigma: float = 0.1
    epsilon: float = 0.0
    u: float = 0.0
    scheme: Scheme = Scheme.NONE
    variant: Variant = Variant.OPD
    R: float = 1.0
    S: float = -1.0
    T: float = 2.0
    P: float = 0.0

    def __post_init__(self):
        for name in ("sigma", "epsilon", "u", "R", "S", "T", "P"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)!r}")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in [0, 1], got {self.sigma}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.u < 0:
            raise ValueError(f"u must be >= 0, got {self.u}")
        if 0.0 < self.sigma < 1.0 and not (self.T > self.R > self.sigma > self.P > self.S):
            warnings.warn(
                f"payoff ordering T > R > sigma > P > S violated "
                f"(T={self.T}, R={self.R}, sigma={self.sigma}, P={self.P}, S={self.S})",
                ParameterOrderingWarning,
                stacklevel=3,
            )

    def with_(self, **changes) -> "GameParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class PayoffMatrix:
    strategies: tuple[Strategy, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        q = len(self.strategies)
        if values.shape != (q, q):
            raise ValueError(f"payoff matrix shape {values.shape} does not match {q} strategies")
        if not np.all(np.isfinite(values)):
            raise ValueError("payoff matrix has non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.strategies]

    def __len__(self) -> int:
        return len(self.strategies)

    def entry(self, row: str, col: str) -> float:
        labels = self.labels
        return float(self.values[labels.index(row), labels.index(col)])

    def submatrix(self, labels) -> "PayoffMatrix":
        idx = [self.labels.index(label) for label in labels]
        return PayoffMatrix(
            tuple(self.strategies[i] for i in idx), self.values[np.ix_(idx, idx)]
        )


def base_opd_payoff(a: Action, b: Action, params: GameParams) -> float:
    """One-shot payoff to the player choosing ``a`` against ``b``."""
    if a is Action.EXIT or b is Action.EXIT:
        return params.sigma
    if a is Action.COOPERATE:
        return params.R if b is Action.COOPERATE else params.S
    return params.T if b is Action.COOPERATE else params.P


def pair_payoff(i: Strategy, j: Strategy, params: GameParams) -> float:
    """Payoff of strategy ``i`` when matched with ``j``.

    A formed commitment costs both sides ``epsilon`` whatever they do next.
    The reward depends on the committed action ``i`` chose (its Y slot), not
    on what the opponent did, so a committed cooperator facing an exiter is
    still paid.
    """
    payoff = base_opd_payoff(realized_action(i, j), realized_action(j, i), params)
    if commitment_formed(i, j):
        payoff -= params.epsilon
        if params.scheme.rewards(i):
            payoff += params.u
    return payoff


def build_matrix(params: GameParams) -> PayoffMatrix:
    strategies = tuple(enumerate_strategies(params.variant))
    values = [[pair_payoff(i, j, params) for j in strategies] for i in strategies]
    return PayoffMatrix(strategies, np.array(values))


def welfare_matrix(params: GameParams) -> PayoffMatrix:
    """Payoffs with rewards stripped; commitment costs stay in."""
    return build_matrix(params.with_(scheme=Scheme.NONE))
