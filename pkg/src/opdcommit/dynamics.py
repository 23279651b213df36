"""Pairwise-comparison (Fermi) imitation dynamics in a finite well-mixed population."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit, logsumexp

from .payoffs import PayoffMatrix
from .strategies import Strategy


@dataclass(frozen=True)
class DynamicsParams:
    M: int = 100
    s: float = 0.1

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 2:
            raise ValueError(f"population size M must be an integer >= 2, got {self.M!r}")
        if not math.isfinite(self.s) or self.s < 0:
            raise ValueError(f"selection intensity s must be finite and >= 0, got {self.s!r}")
        object.__setattr__(self, "M", int(self.M))


@dataclass(frozen=True)
class FixationMatrix:
    """``values[i, j]``: probability that one ``j`` mutant takes over an all-``i`` population."""

    strategies: tuple[Strategy, ...]
    values: np.ndarray = field(repr=False)
    M: int = 100

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.strategies]


def group_payoffs(i: int, j: int, m: int, matrix: PayoffMatrix, M: int) -> tuple[float, float]:
    """Average payoffs of an ``i`` player and a ``j`` player with ``m`` ``i`` players present.

    Players do not interact with themselves.
    """
    if not 1 <= m <= M - 1:
        raise ValueError(f"count m={m} outside [1, {M - 1}]")
    pi = matrix.values
    p_ij = ((m - 1) * pi[i, i] + (M - m) * pi[i, j]) / (M - 1)
    p_ji = (m * pi[j, i] + (M - m - 1) * pi[j, j]) / (M - 1)
    return float(p_ij), float(p_ji)


def imitation_prob(p_focal: float, p_model: float, s: float) -> float:
    """Probability that the focal player copies the model: ``1 / (1 + exp(s (p_focal - p_model)))``."""
    return float(expit(-s * (p_focal - p_model)))


def _payoff_gaps(pi: np.ndarray, resident, mutant, M: int) -> np.ndarray:
    """``P_mutant(m) - P_resident(m)`` for m = 1..M-1; broadcasts over index arrays."""
    m = np.arange(1, M, dtype=float)
    r = np.asarray(resident)[..., None]
    k = np.asarray(mutant)[..., None]
    p_mut = ((m - 1) * pi[k, k] + (M - m) * pi[k, r]) / (M - 1)
    p_res = (m * pi[r, k] + (M - m - 1) * pi[r, r]) / (M - 1)
    return p_mut - p_res


def _fixation_from_gaps(gaps: np.ndarray, s: float) -> np.ndarray:
    # log of prod_{m<=k} T-/T+ for k = 0..M-1, with T-/T+ = exp(-s * gap)
    log_terms = np.cumsum(-s * gaps, axis=-1)
    zeros = np.zeros(log_terms.shape[:-1] + (1,))
    log_terms = np.concatenate([zeros, log_terms], axis=-1)
    return np.exp(-logsumexp(log_terms, axis=-1))


def fixation_probability(resident: int, mutant: int, matrix: PayoffMatrix, dyn: DynamicsParams) -> float:
    if resident == mutant:
        raise ValueError("resident and mutant must be different strategies")
    if dyn.s == 0:
        return 1.0 / dyn.M
    gaps = _payoff_gaps(matrix.values, resident, mutant, dyn.M)
    return float(_fixation_from_gaps(gaps, dyn.s))


def fixation_matrix(matrix: PayoffMatrix, dyn: DynamicsParams) -> FixationMatrix:
    q = len(matrix)
    if dyn.s == 0:
        rho = np.full((q, q), 1.0 / dyn.M)
    else:
        residents, mutants = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
        gaps = _payoff_gaps(matrix.values, residents, mutants, dyn.M)
        rho = _fixation_from_gaps(gaps, dyn.s)
    np.fill_diagonal(rho, 0.0)
    rho.setflags(write=False)
    return FixationMatrix(matrix.strategies, rho, dyn.M)
