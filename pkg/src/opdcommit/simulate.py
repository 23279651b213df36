"""Agent-based Monte Carlo estimates used to cross-check the analytic pipeline.

Random numbers come from numpy's Philox4x64-10 counter-based generator, which
produces the same stream on every platform. Run ``r`` of a simulation seeded
with ``seed`` uses the Philox key ``seed + r * 2**64``, so runs are
independent streams and can be executed in any order.

Within a run, each update step consumes three doubles in this order: focal
player, model player, acceptance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .dynamics import DynamicsParams, FixationMatrix, group_payoffs, imitation_prob
from .payoffs import PayoffMatrix

DEFAULT_MAX_STEPS = 100_000_000
_FIRST_CHUNK = 256
_MAX_CHUNK = 65536
_MASK64 = (1 << 64) - 1


class SimulationTruncated(RuntimeError):
    pass


@dataclass(frozen=True)
class SimConfig:
    matrix: PayoffMatrix
    dyn: DynamicsParams
    runs: int = 10_000
    seed: int = 0
    max_steps_per_run: int = DEFAULT_MAX_STEPS

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.max_steps_per_run < 1:
            raise ValueError("max_steps_per_run must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class FixationEstimate:
    p_hat: float
    stderr: float
    runs_used: int


def run_generator(seed: int, run: int) -> np.random.Generator:
    """Generator for run ``run`` of a simulation seeded with ``seed``."""
    return np.random.Generator(np.random.Philox(key=(seed & _MASK64) + (run << 64)))


@numba.njit(cache=True)
def _moran_steps(count, M, p_up, p_down, draws, steps, max_steps):
    # draws[k] = (focal, model, acceptance) uniforms
    for k in range(draws.shape[0]):
        if steps >= max_steps:
            return count, steps
        focal = int(draws[k, 0] * M)
        if focal >= M:
            focal = M - 1
        model = int(draws[k, 1] * (M - 1))
        if model >= M - 1:
            model = M - 2
        if model >= focal:
            model += 1
        # players 0..count-1 carry the mutant strategy
        focal_mut = focal < count
        model_mut = model < count
        if focal_mut != model_mut:
            if focal_mut:
                if draws[k, 2] < p_down[count]:
                    count -= 1
            elif draws[k, 2] < p_up[count]:
                count += 1
        steps += 1
        if count == 0 or count == M:
            return count, steps
    return count, steps


def _switch_probabilities(resident: int, mutant: int, matrix: PayoffMatrix, dyn: DynamicsParams):
    M = dyn.M
    p_up = np.zeros(M + 1)
    p_down = np.zeros(M + 1)
    for m in range(1, M):
        p_mut, p_res = group_payoffs(mutant, resident, m, matrix, M)
        p_up[m] = imitation_prob(p_res, p_mut, dyn.s)
        p_down[m] = imitation_prob(p_mut, p_res, dyn.s)
    return p_up, p_down


def simulate_run(resident: int, mutant: int, cfg: SimConfig, run: int, _probs=None) -> tuple[bool, int]:
    """One invasion attempt; returns (fixated, steps)."""
    M = cfg.dyn.M
    p_up, p_down = _probs if _probs is not None else _switch_probabilities(resident, mutant, cfg.matrix, cfg.dyn)
    gen = run_generator(cfg.seed, run)
    count, steps = 1, 0
    chunk = _FIRST_CHUNK
    while 0 < count < M:
        if steps >= cfg.max_steps_per_run:
            raise SimulationTruncated(
                f"run {run} exceeded max_steps_per_run={cfg.max_steps_per_run}"
            )
        draws = gen.random((chunk, 3))
        count, steps = _moran_steps(count, M, p_up, p_down, draws, steps, cfg.max_steps_per_run)
        chunk = min(2 * chunk, _MAX_CHUNK)
    return count == M, steps


def simulate_fixation(resident: int, mutant: int, cfg: SimConfig) -> FixationEstimate:
    if resident == mutant:
        raise ValueError("resident and mutant must be different strategies")
    probs = _switch_probabilities(resident, mutant, cfg.matrix, cfg.dyn)
    fixations = sum(simulate_run(resident, mutant, cfg, r, probs)[0] for r in range(cfg.runs))
    p_hat = fixations / cfg.runs
    return FixationEstimate(p_hat, math.sqrt(p_hat * (1 - p_hat) / cfg.runs), cfg.runs)


@numba.njit(cache=True)
def _jump_chain(rho, start, draws, visits):
    q = rho.shape[0]
    state = start
    for k in range(draws.shape[0]):
        visits[state] += 1
        j = int(draws[k, 0] * (q - 1))
        if j >= q - 1:
            j = q - 2
        if j >= state:
            j += 1
        if draws[k, 1] < rho[state, j]:
            state = j
    return state


def simulate_embedded_chain(fix: FixationMatrix | np.ndarray, jumps: int, seed: int, start: int = 0) -> np.ndarray:
    """Fraction of ``jumps`` steps the monomorphic jump chain spends in each state.

    Each step proposes one of the other ``q - 1`` states uniformly and moves
    there with the corresponding fixation probability. Uses two doubles per
    step (proposal, acceptance) from the run-0 stream of ``seed``.
    """
    if jumps < 1:
        raise ValueError("jumps must be >= 1")
    rho = np.ascontiguousarray(getattr(fix, "values", fix), dtype=float)
    visits = np.zeros(rho.shape[0], dtype=np.int64)
    gen = run_generator(seed, 0)
    state = start
    done = 0
    while done < jumps:
        n = min(1 << 20, jumps - done)
        state = _jump_chain(rho, state, gen.random((n, 2)), visits)
        done += n
    return visits / jumps
