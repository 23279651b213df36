"""Sweep presets that regenerate each published figure as CSV data.

Fixed parameters follow the figure captions. Axis bounds and grid density
are not published; every preset uses 51 points per axis, sigma and epsilon
over [0, 1] and the reward u over [0, 1.5].
"""

from __future__ import annotations

from dataclasses import replace

from .dynamics import DynamicsParams
from .payoffs import GameParams, Scheme
from .sweep import Axis, SweepSpec

DEFAULT_STEPS = 51
U_MAX = 1.5
DYN = DynamicsParams(M=100, s=0.1)


class UnknownPresetError(ValueError):
    pass


def _axis(name, steps):
    return Axis(name, 0.0, U_MAX if name == "u" else 1.0, steps)


# name -> (description, fixed game params, axis names, compare mode, outputs)
_TABLE = {}


def _add(name, description, game, axes, compare="none", outputs=()):
    _TABLE[name] = (description, game, axes, compare, tuple(outputs))


_NO_REWARD = dict(u=0.0, scheme=Scheme.NONE)
_add("fig1a", "OPD minus PD commitment acceptance over epsilon x sigma (u=0)",
     _NO_REWARD, ("epsilon", "sigma"), "pd", ["accept_opd_minus_pd"])
_add("fig1b", "overall cooperation over epsilon x sigma (u=0)",
     _NO_REWARD, ("epsilon", "sigma"), outputs=["coop_freq"])
_add("fig1c", "overall exit over epsilon x sigma (u=0)",
     _NO_REWARD, ("epsilon", "sigma"), outputs=["exit_freq"])
_add("figA1", "acceptance improvement percentage of OPD over PD, epsilon x sigma (u=0)",
     _NO_REWARD, ("epsilon", "sigma"), "pd", ["improvement_pct"])


def _incentive_panels(prefix, scheme, sigma, eps_d, label):
    """Panels (a)-(d) of a reward-scheme figure."""
    _add(f"{prefix}a", f"{label}: dominant behaviour over epsilon x u (sigma={sigma})",
         dict(scheme=scheme, sigma=sigma), ("epsilon", "u"), outputs=["dominant"])
    _add(f"{prefix}b", f"{label}: social welfare over epsilon x u (sigma={sigma})",
         dict(scheme=scheme, sigma=sigma), ("epsilon", "u"), outputs=["social_welfare"])
    _add(f"{prefix}c", f"{label}: strategy frequencies over u (epsilon=0.1, sigma={sigma})",
         dict(scheme=scheme, sigma=sigma, epsilon=0.1), ("u",), outputs=["stationary"])
    _add(f"{prefix}d", f"{label}: strategy frequencies over sigma (u=0.5, epsilon={eps_d})",
         dict(scheme=scheme, u=0.5, epsilon=eps_d), ("sigma",), outputs=["stationary"])


_incentive_panels("fig2", Scheme.STRICT, 0.1, 0.1, "strict reward")
_incentive_panels("fig3", Scheme.FLEXIBLE, 0.1, 0.1, "flexible reward")
for _prefix, _scheme, _sigma, _label in (
    ("figA2", Scheme.STRICT, 0.5, "strict reward"),
    ("figA4", Scheme.STRICT, 0.9, "strict reward"),
    ("figA3", Scheme.FLEXIBLE, 0.5, "flexible reward"),
    ("figA5", Scheme.FLEXIBLE, 0.9, "flexible reward"),
):
    _incentive_panels(_prefix, _scheme, _sigma, _sigma, _label)
    # the bare appendix name is its phase-diagram / welfare grid
    _add(_prefix, f"{_label}: dominant behaviour and welfare over epsilon x u (sigma={_sigma})",
         dict(scheme=_scheme, sigma=_sigma), ("epsilon", "u"),
         outputs=["dominant", "social_welfare"])

_DIFFS = {
    "fig4a": ["social_welfare_strict_minus_flexible"],
    "fig4b": ["coop_freq_strict_minus_flexible"],
    "fig4c": ["exit_freq_strict_minus_flexible"],
}
for _name, _outputs in _DIFFS.items():
    _add(_name, f"strict minus flexible ({_outputs[0].split('_strict')[0]}) over sigma x u (epsilon=0.1)",
         dict(epsilon=0.1), ("sigma", "u"), "schemes", _outputs)
_add("fig4-3", "strict minus flexible welfare, cooperation and exit over sigma x u (epsilon=0.2)",
     dict(epsilon=0.2), ("sigma", "u"), "schemes",
     ["social_welfare_strict_minus_flexible", "coop_freq_strict_minus_flexible",
      "exit_freq_strict_minus_flexible"])

PRESET_NAMES = tuple(_TABLE)


def preset_figure(name: str, steps: int = DEFAULT_STEPS) -> SweepSpec:
    try:
        description, game, axes, compare, outputs = _TABLE[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown figure preset {name!r}; valid names: {', '.join(PRESET_NAMES)}"
        ) from None
    base = replace(GameParams(), **{"u": 0.0, "epsilon": 0.0, **game})
    return SweepSpec(
        base=base,
        dyn=DYN,
        axes=tuple(_axis(a, steps) for a in axes),
        outputs=outputs,
        compare=compare,
        name=name,
        description=description,
    )


def describe_presets() -> str:
    lines = []
    for name in PRESET_NAMES:
        spec = preset_figure(name)
        axes = ", ".join(f"{a.name}={a.text()}" for a in spec.axes)
        lines.append(f"  {name:7s} {spec.description} [{axes}]")
    return "\n".join(lines)
