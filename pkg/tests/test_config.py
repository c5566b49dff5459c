import json
import math

import pytest

from composition_lab import (
    CompositionLab,
    ConfigurationError,
    RunConfig,
    RunConfigBuilder,
    Subcommand,
    load_orlicz_spec,
    load_symbol_spec,
)
from composition_lab.config import parse_complex, parse_h_grid, parse_range


def test_parse_h_grid():
    assert parse_h_grid("geometric:0.25:2:3") == pytest.approx([0.25, 0.125, 0.0625])
    assert parse_h_grid("0.1, 0.05") == [0.1, 0.05]
    for text in ("geometric:2:2:3", "geometric:0.5:2", "a,b", ""):
        with pytest.raises(ConfigurationError):
            parse_h_grid(text)


@pytest.mark.parametrize("text, expected", [
    ("0.5+3.0i", complex(0.5, 3.0)),
    ("1 + 2i", complex(1.0, 2.0)),
    ([0.2, -0.1], complex(0.2, -0.1)),
    (1j, 1j),
])
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


def test_parse_complex_rejects_garbage():
    with pytest.raises(ConfigurationError):
        parse_complex("one")
    with pytest.raises(ConfigurationError):
        parse_complex([1.0])


def test_parse_range():
    assert parse_range("1..8") == (1, 8)
    assert parse_range("3") == (3, 3)
    assert parse_range(2) == (2, 2)
    for text in ("0..3", "4..2", "x"):
        with pytest.raises(ConfigurationError):
            parse_range(text)


def test_orlicz_spec_from_file(tmp_path):
    path = tmp_path / "psi.json"
    path.write_text(json.dumps({"family": "power", "p": 3}), encoding="utf-8")
    assert load_orlicz_spec(str(path)).label == "power:3"
    with pytest.raises(ConfigurationError):
        load_orlicz_spec({"family": "power"})
    with pytest.raises(ConfigurationError):
        load_orlicz_spec({"family": "table"})
    with pytest.raises(ConfigurationError):
        load_orlicz_spec(str(tmp_path / "missing.json"))


def test_orlicz_spec_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_orlicz_spec(str(path))


def test_symbol_spec_lft_and_slow():
    lft = load_symbol_spec({"kind": "lft", "a": [0.5, 0], "b": [0.5, 0], "c": [0, 0], "d": [1, 0]})
    assert not lft.is_inner
    slow = load_symbol_spec({"kind": "slow", "psi": {"family": "power", "p": 2}, "depth": 9})
    assert slow.spec.depth == 9
    with pytest.raises(ConfigurationError):
        load_symbol_spec({"kind": "slow"})
    with pytest.raises(ConfigurationError):
        load_symbol_spec({"kind": "blaschke", "factors": [{"p": 2}]})


def test_symbol_spec_from_saved_slow_spec(tmp_path):
    from composition_lab import build_slow_blaschke, delta_from_psi, make_orlicz

    spec = build_slow_blaschke(delta_from_psi(make_orlicz("power", 2.0)), 9)
    path = tmp_path / "slow.json"
    path.write_text(json.dumps(spec.to_dict()), encoding="utf-8")
    symbol = load_symbol_spec({"kind": "slow", "spec": str(path)})
    assert symbol.spec == spec


def test_run_config_defaults():
    config = RunConfig("selftest", "out")
    assert config.subcommand is Subcommand.SELFTEST
    assert config.samples == 2 ** 14
    assert config.a is None
    assert config.hs[0] == 0.25
    assert RunConfig.from_dict(config.to_dict()).to_dict() == config.to_dict()


@pytest.mark.parametrize("kwargs", [
    {"subcommand": "plot"},
    {"out": ""},
    {"samples": 1000},
    {"samples": 0},
    {"paths": -1},
    {"seed": -1},
    {"workers": True},
    {"p": [0.0]},
    {"h_grid": "geometric:0:2:3"},
    {"levels": "3..1"},
    {"a": "north"},
    {"eps_scheme": "linear"},
])
def test_run_config_rejects_invalid(kwargs):
    options = {"subcommand": "selftest", "out": "out"}
    options.update(kwargs)
    with pytest.raises(ConfigurationError):
        RunConfig(**options)


@pytest.mark.parametrize("subcommand", ["rho", "report", "nevanlinna"])
def test_symbol_commands_need_a_symbol(subcommand):
    with pytest.raises(ConfigurationError, match="symbol"):
        RunConfig(subcommand, "out.csv", psi={"family": "power", "p": 2})


def test_report_and_build_need_psi():
    with pytest.raises(ConfigurationError, match="Orlicz"):
        RunConfig("build-blaschke", "spec.json")


def test_from_dict_rejects_unknown_and_missing_keys():
    with pytest.raises(ConfigurationError):
        RunConfig.from_dict({"subcommand": "selftest", "out": "x", "colour": "red"})
    with pytest.raises(ConfigurationError):
        RunConfig.from_dict({"subcommand": "selftest"})


def test_builder_fluent_interface():
    config = (
        CompositionLab.builder()
        .subcommand(Subcommand.RHO)
        .out("rho.csv")
        .symbol({"kind": "identity"})
        .samples(2 ** 12)
        .h_grid("0.1,0.05")
        .seed(3)
        .option("workers", 2)
        .build()
    )
    assert config.subcommand is Subcommand.RHO
    assert config.samples == 4096
    assert config.workers == 2
    assert config.hs == [0.1, 0.05]


def test_builder_reports_missing_fields():
    with pytest.raises(ConfigurationError, match=r"Use \.subcommand"):
        RunConfigBuilder().out("x").build()
    with pytest.raises(ConfigurationError, match=r"Use \.out"):
        RunConfigBuilder().subcommand("selftest").build()


def test_builder_p_values_are_floats():
    config = RunConfigBuilder().subcommand("selftest").out("x").p([1, 2]).build()
    assert config.p == [1.0, 2.0]
    assert all(isinstance(x, float) and math.isfinite(x) for x in config.p)


def test_lab_requires_run_config():
    with pytest.raises(ConfigurationError):
        CompositionLab({"subcommand": "selftest"})
