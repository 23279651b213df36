"""Command line entry point: ``opdcommit <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, build_spec, parse_config
from .dynamics import DynamicsParams, fixation_probability
from .payoffs import GameParams, Scheme, build_matrix
from .presets import DEFAULT_STEPS, PRESET_NAMES, describe_presets, preset_figure
from .simulate import DEFAULT_MAX_STEPS, SimConfig, simulate_fixation
from .strategies import Variant, strategy_index
from .sweep import (
    BASE_COLUMNS,
    OUTPUT_DIR_ENV,
    SweepRow,
    atomic_write_text,
    emit_csv,
    format_number,
    render_csv,
    run_point,
    run_sweep,
)


def _game_flags(p: argparse.ArgumentParser, defaults: bool = True) -> None:
    d = (lambda v: v) if defaults else (lambda v: None)
    p.add_argument("--scheme", choices=[s.value for s in Scheme], default=d("none"))
    p.add_argument("--variant", choices=[v.value for v in Variant], default=d("opd"))
    p.add_argument("--sigma", type=float, default=d(0.1), help="exit payoff (default 0.1)")
    p.add_argument("--epsilon", type=float, default=d(0.0), help="commitment cost (default 0)")
    p.add_argument("--u", type=float, default=d(0.0), help="per-capita reward (default 0)")


def _dyn_flags(p: argparse.ArgumentParser, defaults: bool = True) -> None:
    p.add_argument("--M", type=int, default=100 if defaults else None, help="population size (default 100)")
    p.add_argument("--s", type=float, default=0.1 if defaults else None, help="selection intensity (default 0.1)")


def _game(args) -> GameParams:
    return GameParams(
        sigma=args.sigma,
        epsilon=args.epsilon,
        u=args.u,
        scheme=Scheme(args.scheme),
        variant=Variant(args.variant),
    )


def _cmd_matrix(args) -> None:
    matrix = build_matrix(_game(args))
    lines = [",".join(["strategy"] + matrix.labels)]
    for label, row in zip(matrix.labels, matrix.values):
        lines.append(",".join([label] + [format_number(v) for v in row]))
    text = "\n".join(lines) + "\n"
    if args.out:
        atomic_write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)


def _cmd_fixation(args) -> None:
    gp = _game(args)
    rho = fixation_probability(
        strategy_index(args.resident, gp.variant),
        strategy_index(args.mutant, gp.variant),
        build_matrix(gp),
        DynamicsParams(args.M, args.s),
    )
    print(f"{rho:.12g}")


def _cmd_stationary(args) -> None:
    point = run_point(_game(args), DynamicsParams(args.M, args.s))
    sys.stdout.write(render_csv([SweepRow(point)], list(BASE_COLUMNS)))


def _cmd_simulate(args) -> None:
    gp = _game(args)
    cfg = SimConfig(
        build_matrix(gp),
        DynamicsParams(args.M, args.s),
        runs=args.runs,
        seed=args.seed,
        max_steps_per_run=args.max_steps,
    )
    est = simulate_fixation(
        strategy_index(args.resident, gp.variant), strategy_index(args.mutant, gp.variant), cfg
    )
    print("p_hat,stderr,runs")
    print(f"{est.p_hat:.12g},{est.stderr:.12g},{est.runs_used}")


def _cmd_sweep(args) -> None:
    overrides = {}
    for key in ("scheme", "variant", "sigma", "epsilon", "u", "M", "s", "compare"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    if args.out:
        overrides["output"] = args.out
    for axis in args.sweep or []:
        name, _, rng = axis.partition("=")
        overrides[f"sweep.{name.strip()}"] = rng.strip()
    if args.config:
        spec = parse_config(args.config, overrides)
    else:
        spec = build_spec([(0, k, str(v)) for k, v in overrides.items()])
    path = emit_csv(run_sweep(spec, workers=args.workers))
    print(f"wrote {path}", file=sys.stderr)


def _cmd_figure(args) -> None:
    spec = preset_figure(args.name, steps=args.steps)
    path = emit_csv(run_sweep(spec, workers=args.workers), args.out)
    print(f"wrote {path}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opdcommit",
        description="Evolutionary dynamics of commitment in the optional Prisoner's Dilemma.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="print the pairwise payoff matrix as CSV")
    _game_flags(p)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("fixation", help="fixation probability of one mutant")
    p.add_argument("--resident", required=True, help="resident strategy label, e.g. NDD")
    p.add_argument("--mutant", required=True, help="mutant strategy label, e.g. NLL")
    _game_flags(p)
    _dyn_flags(p)
    p.set_defaults(func=_cmd_fixation)

    p = sub.add_parser("stationary", help="stationary distribution and metrics at one point (CSV row)")
    _game_flags(p)
    _dyn_flags(p)
    p.set_defaults(func=_cmd_stationary)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of a fixation probability")
    p.add_argument("--resident", required=True)
    p.add_argument("--mutant", required=True)
    _game_flags(p)
    _dyn_flags(p)
    p.add_argument("--runs", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "sweep",
        help="run a parameter grid from a config file",
        epilog=f"Output goes to the 'output' key, --out, or ${OUTPUT_DIR_ENV}/<name>.csv.",
    )
    p.add_argument("--config", help="flat key = value config file")
    _game_flags(p, defaults=False)
    _dyn_flags(p, defaults=False)
    p.add_argument("--compare", choices=["none", "pd", "schemes"])
    p.add_argument("--sweep", action="append", metavar="PARAM=MIN:MAX:STEPS",
                   help="sweep axis (repeatable, at most two)")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "figure",
        help="regenerate one figure's data",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Presets (axis bounds and grid density are assumptions, not published values;\n"
            "all use M=100, s=0.1):\n" + describe_presets()
        ),
    )
    p.add_argument("name", choices=PRESET_NAMES, metavar="name")
    p.add_argument("--out")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="grid points per axis")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, RuntimeError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
