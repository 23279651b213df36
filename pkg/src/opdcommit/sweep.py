"""Parameter grids, point evaluation and CSV output."""

from __future__ import annotations

import csv
import io
import itertools
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dynamics import DynamicsParams, fixation_matrix
from .metrics import (
    Behaviour,
    BehaviourFrequencies,
    behaviour_frequencies,
    commitment_acceptance,
    dominant_behaviour,
    improvement_percentage,
    social_welfare,
)
from .payoffs import GameParams, Scheme, build_matrix, welfare_matrix
from .stationary import StationaryDistribution, stationary_from_fixation
from .strategies import OPD_LABELS, Variant

OUTPUT_DIR_ENV = "OPDCOMMIT_OUTPUT_DIR"
AXIS_NAMES = ("sigma", "epsilon", "u")
COMPARE_MODES = ("none", "pd", "schemes")
DIFF_METRICS = ("coop_freq", "defect_freq", "exit_freq", "accept_freq", "social_welfare")

BASE_COLUMNS = (
    ["variant", "scheme", "sigma", "epsilon", "u", "M", "s"]
    + [f"p_{label}" for label in OPD_LABELS]
    + ["coop_freq", "defect_freq", "exit_freq", "accept_freq", "social_welfare", "dominant"]
)
COMPARE_COLUMNS = {
    "none": [],
    "pd": ["accept_opd_minus_pd", "improvement_pct"],
    "schemes": [f"{m}_strict_minus_flexible" for m in DIFF_METRICS],
}


@dataclass(frozen=True)
class PointResult:
    params: GameParams
    dyn: DynamicsParams
    stationary: StationaryDistribution
    behaviour: BehaviourFrequencies
    acceptance: float
    social_welfare: float
    dominant: Behaviour

    def metric(self, name: str) -> float:
        return {
            "coop_freq": self.behaviour.cooperation,
            "defect_freq": self.behaviour.defection,
            "exit_freq": self.behaviour.exit,
            "accept_freq": self.acceptance,
            "social_welfare": self.social_welfare,
        }[name]


def run_point(params: GameParams, dyn: DynamicsParams) -> PointResult:
    fix = fixation_matrix(build_matrix(params), dyn)
    dist = stationary_from_fixation(fix)
    behaviour = behaviour_frequencies(dist)
    return PointResult(
        params=params,
        dyn=dyn,
        stationary=dist,
        behaviour=behaviour,
        acceptance=commitment_acceptance(dist),
        social_welfare=social_welfare(dist, welfare_matrix(params)),
        dominant=dominant_behaviour(behaviour),
    )


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"unknown sweep parameter {self.name!r}; expected one of {', '.join(AXIS_NAMES)}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"sweep.{self.name}: step count must be an integer >= 2, got {self.steps}")
        if self.lo > self.hi:
            raise ValueError(f"sweep.{self.name}: min {self.lo} exceeds max {self.hi}")
        if self.lo < 0:
            raise ValueError(f"sweep.{self.name}: values must be >= 0")
        if self.name == "sigma" and self.hi > 1:
            raise ValueError(f"sweep.sigma: values must lie in [0, 1]")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, int(self.steps))

    def text(self) -> str:
        return f"{self.lo:g}:{self.hi:g}:{self.steps}"


@dataclass(frozen=True)
class SweepSpec:
    base: GameParams = field(default_factory=GameParams)
    dyn: DynamicsParams = field(default_factory=DynamicsParams)
    axes: tuple[Axis, ...] = ()
    outputs: tuple[str, ...] = ()
    compare: str = "none"
    output: Path | None = None
    name: str = "sweep"
    description: str = ""

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if len(names) > 2:
            raise ValueError("at most two sweep axes are supported")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate sweep axes: {names}")
        if self.compare not in COMPARE_MODES:
            raise ValueError(f"compare must be one of {', '.join(COMPARE_MODES)}, got {self.compare!r}")
        if self.compare == "pd" and self.base.variant is not Variant.OPD:
            raise ValueError("compare = pd requires variant = opd")
        known = set(BASE_COLUMNS) | set(COMPARE_COLUMNS[self.compare]) | {"stationary"}
        for name in self.outputs:
            if name not in known:
                raise ValueError(f"unknown output {name!r} for compare mode {self.compare!r}")

    @property
    def columns(self) -> list[str]:
        return BASE_COLUMNS + COMPARE_COLUMNS[self.compare]

    def grid(self) -> list[GameParams]:
        """Parameter points in row-major order (first axis outermost)."""
        values = [a.values for a in self.axes]
        points = []
        for combo in itertools.product(*values):
            points.append(self.base.with_(**{a.name: float(v) for a, v in zip(self.axes, combo)}))
        return points

    def resolved_output(self) -> Path:
        if self.output is not None:
            return Path(self.output)
        return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / f"{self.name}.csv"


@dataclass(frozen=True)
class SweepRow:
    point: PointResult
    comparison: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: list[SweepRow]


def evaluate(params: GameParams, dyn: DynamicsParams, compare: str = "none") -> SweepRow:
    """One grid point, with the extra runs needed by the comparison mode."""
    if compare == "schemes":
        strict = run_point(params.with_(scheme=Scheme.STRICT), dyn)
        flexible = run_point(params.with_(scheme=Scheme.FLEXIBLE), dyn)
        diffs = {
            f"{m}_strict_minus_flexible": strict.metric(m) - flexible.metric(m)
            for m in DIFF_METRICS
        }
        return SweepRow(strict, diffs)
    point = run_point(params, dyn)
    if compare == "pd":
        pd = run_point(params.with_(variant=Variant.PD), dyn)
        return SweepRow(
            point,
            {
                "accept_opd_minus_pd": point.acceptance - pd.acceptance,
                "improvement_pct": improvement_percentage(point.acceptance, pd.acceptance),
            },
        )
    return SweepRow(point)


def _evaluate_args(args):
    return evaluate(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    jobs = [(p, spec.dyn, spec.compare) for p in spec.grid()]
    if workers <= 1 or len(jobs) < 2:
        rows = [_evaluate_args(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(jobs) // (4 * workers))
            rows = list(pool.map(_evaluate_args, jobs, chunksize=chunk))
    return SweepResult(spec, rows)


def format_number(x: float) -> str:
    x = float(x)
    if x == 0:
        x = 0.0
    return f"{x:.12g}"


def row_values(row: SweepRow, columns: list[str]) -> list[str]:
    pt = row.point
    gp = pt.params
    stationary = pt.stationary.as_dict()
    values = {
        "variant": gp.variant.value,
        "scheme": gp.scheme.value,
        "sigma": format_number(gp.sigma),
        "epsilon": format_number(gp.epsilon),
        "u": format_number(gp.u),
        "M": str(pt.dyn.M),
        "s": format_number(pt.dyn.s),
        "accept_freq": format_number(pt.acceptance),
        "coop_freq": format_number(pt.behaviour.cooperation),
        "defect_freq": format_number(pt.behaviour.defection),
        "exit_freq": format_number(pt.behaviour.exit),
        "social_welfare": format_number(pt.social_welfare),
        "dominant": pt.dominant.value,
    }
    for label in OPD_LABELS:
        values[f"p_{label}"] = format_number(stationary[label]) if label in stationary else ""
    for key, val in row.comparison.items():
        values[key] = format_number(val)
    return [values[c] for c in columns]


def render_csv(rows: list[SweepRow], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row_values(row, columns))
    return buf.getvalue()


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_csv(result: SweepResult, path: Path | str | None = None) -> Path:
    target = Path(path) if path is not None else result.spec.resolved_output()
    atomic_write_text(target, render_csv(result.rows, result.spec.columns))
    return target
