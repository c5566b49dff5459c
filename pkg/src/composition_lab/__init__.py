# -*- coding: utf-8 -*-
"""
composition_lab - numerical experiments on composition operators C_φ f = f∘φ on
Hardy-Orlicz spaces.

This library provides:
- Slow Blaschke products built for a prescribed decay rate, with certificates
- Orlicz functions and the Δ/pointwise compactness ratios
- Carleson and Luecking window measures of pull-back measures m_φ
- Nevanlinna counting functions and Luecking area integrals
- Walk-on-spheres harmonic measure, the hole principle and barrier calibration
- Compactness and Schatten-class diagnostic reports (JSON, CSV, PDF)
- Builder pattern for run configuration and a command-line front end
"""

from .core import CompositionLab
from .config import (
    RunConfig,
    RunConfigBuilder,
    Subcommand,
    load_orlicz_spec,
    load_symbol_spec,
)
from .exceptions import (
    CompositionLabError,
    ConfigurationError,
    SolverUnavailableError,
    DomainError,
    NumericalError,
    NonterminatingWalkError,
    StatisticalFloorError,
    ArtifactError,
)
from .orlicz import (
    OrliczFamily,
    OrliczFunction,
    DecayFunction,
    make_orlicz,
    load_orlicz_table,
    validate_orlicz,
    psi_inverse,
    delta_from_psi,
    orlicz_ratio,
)
from .blaschke import (
    EquidistributedFactor,
    SlowBlaschkeSpec,
    eval_factor,
    eval_factor_product,
    build_slow_blaschke,
    eval_slow_blaschke,
    certify_slow_blaschke,
    pseudo_hyperbolic,
    strong_triangle_gap,
)
from .symbols import (
    SymbolKind,
    SymbolMap,
    IdentitySymbol,
    ScalingSymbol,
    MonomialSymbol,
    LinearFractionalSymbol,
    FiniteBlaschkeSymbol,
    SlowBlaschkeSymbol,
    PuncturedDiskSymbol,
    SquaredAutomorphismSymbol,
    eval_symbol,
    radial_boundary_value,
    preimages,
    check_self_map,
)
from .carleson import (
    WindowForm,
    CarlesonWindow,
    PullbackSample,
    build_pullback,
    region_measure,
    rho,
    rho_table,
    luecking_sum,
    closed_range_test,
    carleson_constant,
    embedding_ratio,
)
from .nevanlinna import (
    counting_function,
    counting_grid,
    window_average,
    submean_check,
    luecking_integral,
    luecking_window_ratios,
)
from .domains import (
    PlanarDomain,
    BarrierSpec,
    disk_domain,
    slit_disk_domain,
    cut_disk_domain,
    half_plane_domain,
    region_r_domain,
    omega_n_domain,
    omega_domain,
    make_barrier,
)
from .harmonic import (
    EpsilonScheme,
    ExitBatch,
    BarrierRun,
    brownian_exits,
    harmonic_measure,
    poisson_arc_measure,
    hole_principle_check,
    calibrate_barriers,
    rho_bound_report,
)
from .compactness import (
    DiagnosticReport,
    SchattenReport,
    delta_ratio,
    pointwise_ratios,
    schatten_report,
    build_report,
    verdicts_agree,
)
from .internal.trends import GrowthVerdict, Trend

__version__ = "0.1.0"
__author__ = "composition_lab developers"

__all__ = [
    # Core classes
    "CompositionLab",
    "RunConfig",
    "RunConfigBuilder",
    "Subcommand",
    "load_orlicz_spec",
    "load_symbol_spec",

    # Exceptions
    "CompositionLabError",
    "ConfigurationError",
    "SolverUnavailableError",
    "DomainError",
    "NumericalError",
    "NonterminatingWalkError",
    "StatisticalFloorError",
    "ArtifactError",

    # Orlicz functions
    "OrliczFamily",
    "OrliczFunction",
    "DecayFunction",
    "make_orlicz",
    "load_orlicz_table",
    "validate_orlicz",
    "psi_inverse",
    "delta_from_psi",
    "orlicz_ratio",

    # Blaschke products
    "EquidistributedFactor",
    "SlowBlaschkeSpec",
    "eval_factor",
    "eval_factor_product",
    "build_slow_blaschke",
    "eval_slow_blaschke",
    "certify_slow_blaschke",
    "pseudo_hyperbolic",
    "strong_triangle_gap",

    # Symbols
    "SymbolKind",
    "SymbolMap",
    "IdentitySymbol",
    "ScalingSymbol",
    "MonomialSymbol",
    "LinearFractionalSymbol",
    "FiniteBlaschkeSymbol",
    "SlowBlaschkeSymbol",
    "PuncturedDiskSymbol",
    "SquaredAutomorphismSymbol",
    "eval_symbol",
    "radial_boundary_value",
    "preimages",
    "check_self_map",

    # Carleson measures
    "WindowForm",
    "CarlesonWindow",
    "PullbackSample",
    "build_pullback",
    "region_measure",
    "rho",
    "rho_table",
    "luecking_sum",
    "closed_range_test",
    "carleson_constant",
    "embedding_ratio",

    # Nevanlinna counting
    "counting_function",
    "counting_grid",
    "window_average",
    "submean_check",
    "luecking_integral",
    "luecking_window_ratios",

    # Planar domains and harmonic measure
    "PlanarDomain",
    "BarrierSpec",
    "disk_domain",
    "slit_disk_domain",
    "cut_disk_domain",
    "half_plane_domain",
    "region_r_domain",
    "omega_n_domain",
    "omega_domain",
    "make_barrier",
    "EpsilonScheme",
    "ExitBatch",
    "BarrierRun",
    "brownian_exits",
    "harmonic_measure",
    "poisson_arc_measure",
    "hole_principle_check",
    "calibrate_barriers",
    "rho_bound_report",

    # Diagnostics
    "DiagnosticReport",
    "SchattenReport",
    "delta_ratio",
    "pointwise_ratios",
    "schatten_report",
    "build_report",
    "verdicts_agree",
    "GrowthVerdict",
    "Trend",
]
