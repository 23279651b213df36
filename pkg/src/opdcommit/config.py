"""Flat ``key = value`` sweep configuration files.

Example::

    # strict reward phase diagram
    scheme = strict
    sigma = 0.1
    sweep.epsilon = 0:1:51
    sweep.u = 0:1.5:51
    outputs = dominant
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from .dynamics import DynamicsParams
from .payoffs import GameParams, Scheme
from .strategies import Variant
from .sweep import Axis, SweepSpec

GAME_KEYS = ("sigma", "epsilon", "u", "R", "S", "T", "P")


class ConfigError(ValueError):
    pass


def _parse_axis(name: str, text: str) -> Axis:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"axis must be min:max:steps, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    steps = int(parts[2])
    return Axis(name, lo, hi, steps)


def _parse_scheme(text: str) -> Scheme:
    try:
        return Scheme(text.strip().lower())
    except ValueError:
        raise ValueError(f"unknown scheme {text!r}; expected none, strict or flexible") from None


def _parse_variant(text: str) -> Variant:
    try:
        return Variant(text.strip().lower())
    except ValueError:
        raise ValueError(f"unknown variant {text!r}; expected opd or pd") from None


def read_config(path: Path | str) -> list[tuple[int, str, str]]:
    """(line number, key, raw value) triples in file order."""
    entries = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        entries.append((lineno, key, value))
    return entries


def _check_domain(key: str, value: float) -> None:
    if key == "sigma" and not 0.0 <= value <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {value}")
    if key in ("epsilon", "u") and value < 0:
        raise ValueError(f"{key} must be >= 0, got {value}")


def build_spec(entries, source: str = "<overrides>", base: SweepSpec | None = None) -> SweepSpec:
    """Fold (lineno, key, value) entries onto ``base`` (defaults when None)."""
    spec = base or SweepSpec()
    game = {k: getattr(spec.base, k) for k in GAME_KEYS}
    game["scheme"] = spec.base.scheme
    game["variant"] = spec.base.variant
    M, s = spec.dyn.M, spec.dyn.s
    axes = {a.name: a for a in spec.axes}
    fields = {
        "name": spec.name,
        "compare": spec.compare,
        "outputs": spec.outputs,
        "output": spec.output,
    }
    for lineno, key, value in entries:
        where = f"{source}:{lineno}" if lineno else source
        try:
            if key in GAME_KEYS:
                game[key] = float(value)
                _check_domain(key, game[key])
            elif key == "scheme":
                game["scheme"] = _parse_scheme(value)
            elif key == "variant":
                game["variant"] = _parse_variant(value)
            elif key == "M":
                M = int(value)
            elif key == "s":
                s = float(value)
            elif key == "name":
                fields["name"] = value
            elif key == "compare":
                fields["compare"] = value.strip().lower()
            elif key == "outputs":
                fields["outputs"] = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "output":
                fields["output"] = Path(value)
            elif key.startswith("sweep."):
                axis = _parse_axis(key[len("sweep."):], value)
                axes[axis.name] = axis
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    try:
        return replace(
            spec,
            base=GameParams(**game),
            dyn=DynamicsParams(M, s),
            axes=tuple(axes.values()),
            **fields,
        )
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def parse_config(path: Path | str, overrides: dict | None = None) -> SweepSpec:
    """Load a sweep spec from ``path``; ``overrides`` (key -> text) win over the file."""
    spec = build_spec(read_config(path), source=str(path), base=SweepSpec(name=Path(path).stem))
    if overrides:
        spec = build_spec([(0, k, str(v)) for k, v in overrides.items()], base=spec)
    return spec
