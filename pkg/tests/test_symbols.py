import numpy as np
import pytest

from composition_lab import (
    ConfigurationError,
    EquidistributedFactor,
    FiniteBlaschkeSymbol,
    IdentitySymbol,
    LinearFractionalSymbol,
    MonomialSymbol,
    PuncturedDiskSymbol,
    ScalingSymbol,
    SolverUnavailableError,
    SquaredAutomorphismSymbol,
    SymbolKind,
    check_self_map,
    eval_symbol,
    load_symbol_spec,
    preimages,
    radial_boundary_value,
)


def test_eval_symbol_scalar_and_array():
    assert eval_symbol(ScalingSymbol(0.5), 0.4j) == 0.2j
    out = eval_symbol(MonomialSymbol(3), np.array([0.5, -0.5]))
    np.testing.assert_allclose(out, [0.125, -0.125])


def test_eval_symbol_rejects_boundary_points():
    with pytest.raises(ConfigurationError):
        eval_symbol(IdentitySymbol(), 1.0)


def test_labels_and_kinds():
    assert IdentitySymbol().label == "identity"
    assert ScalingSymbol(0.5).label == "scaling:0.5"
    assert MonomialSymbol(2).label == "monomial:2"
    assert FiniteBlaschkeSymbol([EquidistributedFactor(2, 0.5)]).label == "blaschke:2@0.5"
    assert PuncturedDiskSymbol().kind is SymbolKind.PUNCTURED


def test_scaling_sup_norm_and_parameter_range():
    assert ScalingSymbol(0.3).sup_norm == 0.3
    assert IdentitySymbol().sup_norm == 1.0
    for s in (0.0, 1.0, 1.5):
        with pytest.raises(ConfigurationError):
            ScalingSymbol(s)


def test_monomial_preimages():
    roots = preimages(MonomialSymbol(3), 0.125)
    assert len(roots) == 3
    for z, multiplicity in roots:
        assert multiplicity == 1
        assert abs(z ** 3 - 0.125) < 1e-12
    assert preimages(MonomialSymbol(4), 0j) == [(0j, 4)]


def test_scaling_preimage_outside_is_dropped():
    assert preimages(ScalingSymbol(0.5), 0.7) == []
    assert preimages(ScalingSymbol(0.5), 0.2)[0][0] == pytest.approx(0.4)


def test_lft_self_map_and_solver():
    symbol = LinearFractionalSymbol(0.5, 0.5, 0, 1)
    assert not symbol.is_inner
    assert preimages(symbol, 0.5) == [(0j, 1)]
    assert check_self_map(symbol)


@pytest.mark.parametrize("coefficients", [(2, 0, 0, 1), (1, 0, 1, 0.5), (1, 1, 1, 1)])
def test_lft_rejects_non_self_maps(coefficients):
    with pytest.raises(ConfigurationError):
        LinearFractionalSymbol(*coefficients)


def test_finite_blaschke_preimages_have_small_residuals():
    symbol = FiniteBlaschkeSymbol([EquidistributedFactor(2, 0.5), EquidistributedFactor(1, 0.3)], rotation=0.4)
    assert symbol.valence == 3
    w = 0.2 - 0.1j
    roots = preimages(symbol, w)
    assert sum(m for _, m in roots) == 3
    for z, _ in roots:
        assert abs(symbol.evaluate(np.array([z]))[0] - w) < 1e-10


def test_evaluation_only_kinds_have_no_solver():
    with pytest.raises(SolverUnavailableError):
        preimages(PuncturedDiskSymbol(), 0.1)
    with pytest.raises(ConfigurationError):
        preimages(IdentitySymbol(), 1.2)


def test_squared_automorphism():
    symbol = SquaredAutomorphismSymbol(IdentitySymbol(), 0j)
    assert eval_symbol(symbol, 0.5) == pytest.approx(0.25)
    assert symbol.valence == 2
    shifted = SquaredAutomorphismSymbol(MonomialSymbol(2), 0.5)
    assert abs(eval_symbol(shifted, np.sqrt(0.5))) < 1e-15
    with pytest.raises(ConfigurationError):
        SquaredAutomorphismSymbol(IdentitySymbol(), 1.0)


def test_radial_boundary_values_converge_for_identity():
    values, unconverged = radial_boundary_value(IdentitySymbol(), np.array([0.0, np.pi / 2]))
    np.testing.assert_allclose(values, [1.0, 1j], atol=1e-5)
    assert not unconverged.any()
    with pytest.raises(ConfigurationError):
        radial_boundary_value(IdentitySymbol(), 0.0, epsilon=0.1)


def test_punctured_boundary_values_are_unimodular_away_from_one():
    values, _ = radial_boundary_value(PuncturedDiskSymbol(), np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(np.abs(values), 1.0, atol=1e-6)


@pytest.mark.parametrize("spec", [
    {"kind": "identity"},
    {"kind": "scaling", "s": 0.5},
    {"kind": "monomial", "k": 2},
    {"kind": "punctured"},
    {"kind": "blaschke", "factors": [{"p": 1, "r": 0.5}]},
    {"kind": "squared_automorphism", "base": {"kind": "identity"}, "alpha": [0.2, 0.0]},
])
def test_symbol_specs_build_self_maps(spec):
    symbol = load_symbol_spec(spec)
    assert symbol.to_dict()["kind"] == spec["kind"]
    assert check_self_map(symbol, samples=2000)


def test_symbol_spec_rejects_unknown_keys():
    with pytest.raises(ConfigurationError):
        load_symbol_spec({"kind": "monomial", "k": 2, "extra": 1})
    with pytest.raises(ConfigurationError):
        load_symbol_spec({"kind": "cusp"})
