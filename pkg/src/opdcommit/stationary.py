"""Embedded Markov chain over monomorphic states in the rare-mutation limit."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import FixationMatrix
from .strategies import Strategy

CLAMP_TOL = 1e-12
RESIDUAL_TOL = 1e-9


class StationarySolveError(RuntimeError):
    pass


@dataclass(frozen=True)
class StationaryDistribution:
    strategies: tuple[Strategy, ...]
    p: np.ndarray = field(repr=False)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.strategies]

    def as_dict(self) -> dict[str, float]:
        return {s.label: float(x) for s, x in zip(self.strategies, self.p)}

    def __getitem__(self, label: str) -> float:
        return float(self.p[self.labels.index(label)])


def transition_matrix(fix: FixationMatrix) -> np.ndarray:
    rho = np.asarray(fix.values, dtype=float)
    q = rho.shape[0]
    if q < 2:
        raise ValueError("need at least two strategies")
    t = rho / (q - 1)
    np.fill_diagonal(t, 0.0)
    np.fill_diagonal(t, 1.0 - t.sum(axis=1))
    return t


def _residual(p: np.ndarray, t: np.ndarray) -> float:
    return float(np.max(np.abs(p @ t - p)))


def _clean(p: np.ndarray) -> np.ndarray:
    if np.min(p) < -CLAMP_TOL:
        raise StationarySolveError(f"stationary vector has negative entry {np.min(p):.3e}")
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def solve_stationary(t: np.ndarray) -> np.ndarray:
    """Left eigenvector of ``t`` for eigenvalue 1 via a direct solve.

    One balance equation of ``(T' - I) p = 0`` is replaced by ``sum(p) = 1``.
    """
    q = t.shape[0]
    a = t.T - np.eye(q)
    a[-1, :] = 1.0
    b = np.zeros(q)
    b[-1] = 1.0
    try:
        p = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise StationarySolveError(f"singular system: {exc}") from exc
    return _clean(p)


def power_iteration(t: np.ndarray, tol: float = 1e-12, max_iter: int = 1_000_000) -> np.ndarray:
    q = t.shape[0]
    p = np.full(q, 1.0 / q)
    for _ in range(max_iter):
        nxt = p @ t
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - p)) < tol:
            return _clean(nxt)
        p = nxt
    raise StationarySolveError(f"power iteration did not converge within {max_iter} iterations")


def stationary_distribution(
    t: np.ndarray, strategies=None, method: str = "solve"
) -> StationaryDistribution:
    t = np.asarray(t, dtype=float)
    if method == "solve":
        p = solve_stationary(t)
    elif method == "power":
        p = power_iteration(t)
    else:
        raise ValueError(f"unknown method {method!r}")
    res = _residual(p, t)
    if not res < RESIDUAL_TOL:
        raise StationarySolveError(f"stationarity residual {res:.3e} exceeds {RESIDUAL_TOL}")
    if strategies is None:
        strategies = tuple(range(len(p)))
    p.setflags(write=False)
    return StationaryDistribution(tuple(strategies), p)


def stationary_from_fixation(fix: FixationMatrix, method: str = "solve") -> StationaryDistribution:
    return stationary_distribution(transition_matrix(fix), fix.strategies, method)
