import numpy as np
import pytest

from opdcommit.config import ConfigError, parse_config
from opdcommit.dynamics import DynamicsParams
from opdcommit.metrics import Behaviour
from opdcommit.payoffs import GameParams, Scheme
from opdcommit.presets import PRESET_NAMES, UnknownPresetError, preset_figure
from opdcommit.strategies import OPD_LABELS, Variant
from opdcommit.sweep import (
    BASE_COLUMNS,
    OUTPUT_DIR_ENV,
    Axis,
    SweepSpec,
    emit_csv,
    render_csv,
    run_point,
    run_sweep,
)


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_run_point_contracts():
    r = run_point(GameParams(sigma=0.1), DynamicsParams(100, 0.1))
    assert r.stationary.p.sum() == pytest.approx(1.0, abs=1e-9)
    assert 0 <= r.acceptance <= 1
    assert r.params.scheme is Scheme.NONE


def test_run_point_neutral():
    r = run_point(GameParams(sigma=0.5, epsilon=0.3, u=0.4, scheme=Scheme.STRICT), DynamicsParams(100, 0.0))
    np.testing.assert_allclose(r.behaviour.as_tuple(), (1 / 3,) * 3, atol=1e-9)
    assert r.acceptance == pytest.approx(0.5, abs=1e-9)


def test_run_point_strict_reward_cooperates():
    r = run_point(GameParams(sigma=0.1, epsilon=0.1, u=1.0, scheme=Scheme.STRICT), DynamicsParams(100, 0.1))
    assert r.dominant is Behaviour.COOPERATION


def test_grid_row_major():
    spec = SweepSpec(axes=(Axis("epsilon", 0, 1, 2), Axis("sigma", 0.2, 0.4, 2)))
    points = [(p.epsilon, p.sigma) for p in spec.grid()]
    assert points == [(0, 0.2), (0, 0.4), (1, 0.2), (1, 0.4)]
    assert len(run_sweep(spec).rows) == 4


def test_one_axis_sweep_ascending():
    spec = SweepSpec(base=GameParams(scheme=Scheme.STRICT), axes=(Axis("u", 0, 1, 21),))
    result = run_sweep(spec)
    us = [row.point.params.u for row in result.rows]
    assert len(us) == 21 and us == sorted(us)


@pytest.mark.parametrize(
    "axes",
    [
        (Axis("u", 0, 1, 3), Axis("u", 0, 1, 3)),
        (Axis("u", 0, 1, 3), Axis("sigma", 0, 1, 3), Axis("epsilon", 0, 1, 3)),
    ],
)
def test_spec_rejects_bad_axes(axes):
    with pytest.raises(ValueError):
        SweepSpec(axes=axes)


@pytest.mark.parametrize(
    "args",
    [("M", 0, 1, 3), ("u", 0, 1, 1), ("sigma", 0, 1.5, 3), ("u", -1, 1, 3), ("u", 1, 0, 3)],
)
def test_axis_validation(args):
    with pytest.raises(ValueError):
        Axis(*args)


def test_csv_schema_single_point(tmp_path):
    result = run_sweep(SweepSpec(base=GameParams(sigma=0.3)))
    path = emit_csv(result, tmp_path / "one.csv")
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert len(lines) == 2
    header = lines[0].split(",")
    assert header == BASE_COLUMNS
    assert header[7:25] == [f"p_{label}" for label in OPD_LABELS]
    row = dict(zip(header, lines[1].split(",")))
    assert row["variant"] == "opd" and row["scheme"] == "none" and row["sigma"] == "0.3"
    assert float(row["coop_freq"]) + float(row["defect_freq"]) + float(row["exit_freq"]) == pytest.approx(1, abs=1e-9)
    assert row["dominant"] in {"cooperation", "defection", "exit"}
    # 12 significant digits
    assert all(len(v.lstrip("-").replace(".", "").lstrip("0").split("e")[0]) <= 12 for v in lines[1].split(",")[2:-1])


def test_pd_rows_leave_exit_columns_empty():
    result = run_sweep(SweepSpec(base=GameParams(variant=Variant.PD)))
    lines = render_csv(result.rows, result.spec.columns).splitlines()
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    for label in OPD_LABELS:
        if "L" in label[1:]:
            assert row[f"p_{label}"] == ""
        else:
            assert row[f"p_{label}"] != ""
    assert float(row["exit_freq"]) == 0


def test_compare_columns():
    pd_spec = SweepSpec(compare="pd", axes=(Axis("sigma", 0.2, 0.8, 2),))
    result = run_sweep(pd_spec)
    assert result.spec.columns[-2:] == ["accept_opd_minus_pd", "improvement_pct"]
    row = result.rows[0]
    pd_accept = run_point(GameParams(sigma=0.2, variant=Variant.PD), DynamicsParams()).acceptance
    assert row.comparison["accept_opd_minus_pd"] == pytest.approx(row.point.acceptance - pd_accept)
    assert row.comparison["improvement_pct"] == pytest.approx(100 * (row.point.acceptance - pd_accept) / pd_accept)

    sch = run_sweep(SweepSpec(base=GameParams(epsilon=0.1, u=1.0), compare="schemes"))
    row = sch.rows[0]
    strict = run_point(GameParams(epsilon=0.1, u=1.0, scheme=Scheme.STRICT), DynamicsParams())
    flexible = run_point(GameParams(epsilon=0.1, u=1.0, scheme=Scheme.FLEXIBLE), DynamicsParams())
    assert row.point.params.scheme is Scheme.STRICT
    assert row.comparison["social_welfare_strict_minus_flexible"] == pytest.approx(
        strict.social_welfare - flexible.social_welfare
    )
    assert row.comparison["exit_freq_strict_minus_flexible"] == pytest.approx(
        strict.behaviour.exit - flexible.behaviour.exit
    )


def test_rerun_is_byte_identical(tmp_path):
    spec = SweepSpec(base=GameParams(scheme=Scheme.STRICT), axes=(Axis("u", 0, 1.5, 4), Axis("epsilon", 0, 1, 3)))
    a = emit_csv(run_sweep(spec), tmp_path / "a.csv").read_bytes()
    b = emit_csv(run_sweep(spec, workers=2), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_failed_write_leaves_nothing(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="cannot write"):
        emit_csv(run_sweep(SweepSpec()), blocker / "out.csv")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["file"]


def test_invalid_point_fails_fast():
    with pytest.raises(ValueError):
        run_sweep(SweepSpec(axes=(Axis("u", 0, 1, 2),), base=GameParams(epsilon=-1)))


def test_default_output_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    path = emit_csv(run_sweep(SweepSpec(name="envtest")))
    assert path == tmp_path / "envtest.csv" and path.exists()


# --- config ---------------------------------------------------------------

def test_parse_config_defaults_and_axes(tmp_path):
    spec = parse_config(write(tmp_path, "# demo\nscheme = strict\nsigma = 0.1  # exit\nsweep.u = 0:1.5:4\n"))
    assert spec.base.scheme is Scheme.STRICT
    assert spec.base.sigma == 0.1
    assert spec.dyn == DynamicsParams(100, 0.1)
    assert spec.axes == (Axis("u", 0.0, 1.5, 4),)
    assert spec.name == "run"


def test_flags_override_file(tmp_path):
    spec = parse_config(write(tmp_path, "scheme = strict\n"), {"scheme": "flexible", "M": 50})
    assert spec.base.scheme is Scheme.FLEXIBLE
    assert spec.dyn.M == 50


@pytest.mark.parametrize(
    "text, message",
    [
        ("sigma = 1.5\n", ":1: sigma must lie in"),
        ("\n\nbogus = 3\n", ":3: unknown key 'bogus'"),
        ("epsilon = abc\n", ":1: could not convert"),
        ("u = -1\n", ":1: u must be"),
        ("sweep.u = 0:1\n", ":1: axis must be"),
        ("sweep.M = 0:1:3\n", ":1: unknown sweep parameter"),
        ("just words\n", ":1: expected 'key = value'"),
        ("scheme = lax\n", ":1: unknown scheme"),
        ("M = 1\n", "population size"),
    ],
)
def test_config_errors(tmp_path, text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(write(tmp_path, text))


# --- presets --------------------------------------------------------------

CAPTIONS = {
    # name: (scheme, fixed params, axes, compare)
    "fig1a": (Scheme.NONE, dict(u=0.0), ("epsilon", "sigma"), "pd"),
    "fig1b": (Scheme.NONE, dict(u=0.0), ("epsilon", "sigma"), "none"),
    "fig1c": (Scheme.NONE, dict(u=0.0), ("epsilon", "sigma"), "none"),
    "figA1": (Scheme.NONE, dict(u=0.0), ("epsilon", "sigma"), "pd"),
    "fig2a": (Scheme.STRICT, dict(sigma=0.1), ("epsilon", "u"), "none"),
    "fig2b": (Scheme.STRICT, dict(sigma=0.1), ("epsilon", "u"), "none"),
    "fig2c": (Scheme.STRICT, dict(sigma=0.1, epsilon=0.1), ("u",), "none"),
    "fig2d": (Scheme.STRICT, dict(u=0.5, epsilon=0.1), ("sigma",), "none"),
    "fig3a": (Scheme.FLEXIBLE, dict(sigma=0.1), ("epsilon", "u"), "none"),
    "fig3b": (Scheme.FLEXIBLE, dict(sigma=0.1), ("epsilon", "u"), "none"),
    "fig3c": (Scheme.FLEXIBLE, dict(sigma=0.1, epsilon=0.1), ("u",), "none"),
    "fig3d": (Scheme.FLEXIBLE, dict(u=0.5, epsilon=0.1), ("sigma",), "none"),
    "figA2": (Scheme.STRICT, dict(sigma=0.5), ("epsilon", "u"), "none"),
    "figA2c": (Scheme.STRICT, dict(sigma=0.5, epsilon=0.1), ("u",), "none"),
    "figA2d": (Scheme.STRICT, dict(u=0.5, epsilon=0.5), ("sigma",), "none"),
    "figA3": (Scheme.FLEXIBLE, dict(sigma=0.5), ("epsilon", "u"), "none"),
    "figA3c": (Scheme.FLEXIBLE, dict(sigma=0.5, epsilon=0.1), ("u",), "none"),
    "figA3d": (Scheme.FLEXIBLE, dict(u=0.5, epsilon=0.5), ("sigma",), "none"),
    "figA4": (Scheme.STRICT, dict(sigma=0.9), ("epsilon", "u"), "none"),
    "figA4c": (Scheme.STRICT, dict(sigma=0.9, epsilon=0.1), ("u",), "none"),
    "figA4d": (Scheme.STRICT, dict(u=0.5, epsilon=0.9), ("sigma",), "none"),
    "figA5": (Scheme.FLEXIBLE, dict(sigma=0.9), ("epsilon", "u"), "none"),
    "figA5c": (Scheme.FLEXIBLE, dict(sigma=0.9, epsilon=0.1), ("u",), "none"),
    "figA5d": (Scheme.FLEXIBLE, dict(u=0.5, epsilon=0.9), ("sigma",), "none"),
    "fig4a": (Scheme.NONE, dict(epsilon=0.1), ("sigma", "u"), "schemes"),
    "fig4b": (Scheme.NONE, dict(epsilon=0.1), ("sigma", "u"), "schemes"),
    "fig4c": (Scheme.NONE, dict(epsilon=0.1), ("sigma", "u"), "schemes"),
    "fig4-3": (Scheme.NONE, dict(epsilon=0.2), ("sigma", "u"), "schemes"),
}
for _name in ("figA2", "figA3", "figA4", "figA5"):
    CAPTIONS[_name + "a"] = CAPTIONS[_name + "b"] = CAPTIONS[_name]


def test_required_presets_exist():
    required = {
        "fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c",
        "fig3d", "fig4a", "fig4b", "fig4c", "figA1", "figA2", "figA3", "figA4", "figA5", "fig4-3",
    }
    assert required <= set(PRESET_NAMES)
    assert set(CAPTIONS) == set(PRESET_NAMES)


@pytest.mark.parametrize("name", sorted(CAPTIONS))
def test_preset_matches_caption(name):
    scheme, fixed, axes, compare = CAPTIONS[name]
    spec = preset_figure(name)
    assert spec.dyn == DynamicsParams(100, 0.1)
    assert spec.base.scheme is scheme
    for key, value in fixed.items():
        assert getattr(spec.base, key) == value
    assert tuple(a.name for a in spec.axes) == axes
    assert all(a.steps == 51 for a in spec.axes)
    for a in spec.axes:
        assert (a.lo, a.hi) == ((0.0, 1.5) if a.name == "u" else (0.0, 1.0))
    assert spec.compare == compare


def test_fig2a_and_fig1c_outputs():
    assert preset_figure("fig2a").outputs == ("dominant",)
    assert preset_figure("fig1c").outputs == ("exit_freq",)
    assert preset_figure("figA1").outputs == ("improvement_pct",)


def test_unknown_preset_lists_names():
    with pytest.raises(UnknownPresetError, match="valid names: fig1a"):
        preset_figure("nosuch")


def test_preset_steps_override():
    spec = preset_figure("fig2a", steps=5)
    assert [a.steps for a in spec.axes] == [5, 5]
    assert len(run_sweep(spec).rows) == 25
