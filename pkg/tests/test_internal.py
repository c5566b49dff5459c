import json
import math

import numpy as np
import pytest

from composition_lab import ArtifactError, NumericalError, ScalingSymbol, build_report, make_orlicz
from composition_lab.internal.pdf_report import render_report_pdf
from composition_lab.internal.quadrature import gauss_legendre, refine_until_stable
from composition_lab.internal.roots import cluster_roots, polynomial_roots
from composition_lab.internal.serialization import (
    dumps,
    format_float,
    sha256_file,
    to_plain,
    write_csv,
    write_json,
    write_manifest,
)
from composition_lab.internal.styles import StylesManager
from composition_lab.internal.trends import GrowthVerdict, Trend, divergence_verdict, thirds_trend


@pytest.mark.parametrize("value, text", [
    (0.1, "0.10000000000000001"),
    (1.0, "1.0"),
    (-2.0, "-2.0"),
    (1e-20, "9.9999999999999995e-21"),
    (math.inf, "Infinity"),
    (float("nan"), "NaN"),
])
def test_format_float(value, text):
    assert format_float(value) == text


def test_dumps_sorts_keys_and_converts_numpy():
    payload = {"b": np.float64(1.5), "a": [np.int64(1), 2], "z": 1 + 2j, "t": Trend.TO_ZERO}
    text = dumps(payload)
    assert text == dumps(dict(reversed(list(payload.items()))))
    assert text.endswith("\n")
    assert json.loads(text) == {"a": [1, 2], "b": 1.5, "t": "to-zero", "z": [1.0, 2.0]}


def test_to_plain_handles_arrays_and_objects():
    assert to_plain(np.array([1.0, 2.0])) == [1.0, 2.0]
    assert to_plain((np.bool_(True), 3)) == [True, 3]
    assert to_plain(GrowthVerdict.DIVERGING) == "diverging"


def test_write_csv_uses_full_precision(tmp_path):
    path = tmp_path / "rows.csv"
    write_csv(str(path), [{"h": 0.1, "rho": 1 / 3}, {"h": 0.05}], ["h", "rho"])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == ["h,rho", "0.10000000000000001,0.33333333333333331", "0.050000000000000003,"]


def test_manifest_lists_output_hashes(tmp_path):
    out = tmp_path / "nested" / "a.json"
    digest = write_json(str(out), {"x": 1})
    assert sha256_file(str(out)) == digest
    manifest = tmp_path / "a.json.manifest.json"
    write_manifest(str(manifest), {"seed": 3}, 3, [str(out)], 0.25)
    data = json.loads(manifest.read_text(encoding="utf-8"))
    assert data["outputs"] == {"a.json": digest}
    assert data["seed"] == 3
    assert data["wall_time_seconds"] == 0.25
    assert {"numpy", "scipy", "reportlab", "python"} <= set(data["versions"])


def test_hashing_missing_file_is_an_artifact_error(tmp_path):
    with pytest.raises(ArtifactError):
        sha256_file(str(tmp_path / "missing.json"))


def test_polynomial_roots_of_unity():
    roots = polynomial_roots(np.array([-1.0, 0.0, 0.0, 1.0]))
    np.testing.assert_allclose(np.sort_complex(roots) ** 3, 1.0, atol=1e-12)
    assert polynomial_roots(np.array([2.0, 4.0])).tolist() == [-0.5]
    with pytest.raises(NumericalError):
        polynomial_roots(np.zeros(3))


def test_double_roots_are_clustered():
    roots = polynomial_roots(np.array([0.25, -1.0, 1.0]))
    clusters = cluster_roots(roots)
    assert len(clusters) == 1
    root, multiplicity = clusters[0]
    assert multiplicity == 2
    assert abs(root - 0.5) < 1e-7


def test_gauss_legendre_is_exact_for_polynomials():
    nodes, weights = gauss_legendre(3, 0.0, 2.0)
    assert np.sum(weights * nodes ** 5) == pytest.approx(2.0 ** 6 / 6, rel=1e-13)
    nodes, weights = gauss_legendre(4, np.array([0.0, 1.0]), np.array([1.0, 3.0]))
    assert nodes.shape == (2, 4)
    np.testing.assert_allclose(weights.sum(axis=1), [1.0, 2.0])


def test_refine_until_stable():
    value, level, converged = refine_until_stable(lambda lv: 1.0 + 1.0 / lv ** 4, start=8)
    assert converged
    assert value == pytest.approx(1.0, abs=1e-3)
    with pytest.raises(NumericalError):
        refine_until_stable(float, start=8, max_level=64)
    _, _, converged = refine_until_stable(float, start=8, max_level=64, strict=False)
    assert not converged


@pytest.mark.parametrize("sums, verdict", [
    ([1.0, 2.0, 3.0, 4.0, 5.0], GrowthVerdict.DIVERGING),
    ([1.0, 1.5, 1.5, 1.5, 1.5], GrowthVerdict.STABILIZING),
    ([0.0, 0.0, 0.0], GrowthVerdict.STABILIZING),
    ([1.0, math.inf], GrowthVerdict.DIVERGING),
    (np.cumsum(1.0 / np.arange(1, 11) ** 2).tolist(), GrowthVerdict.STABILIZING),
    (np.cumsum(0.9 ** np.arange(1, 11)).tolist(), GrowthVerdict.STABILIZING),
    (np.cumsum(0.5 ** np.arange(1, 30)).tolist(), GrowthVerdict.STABILIZING),
    (np.cumsum(2.0 ** np.arange(1, 11)).tolist(), GrowthVerdict.DIVERGING),
    (np.cumsum(1.0 + 0.1 * np.sin(np.arange(12))).tolist(), GrowthVerdict.DIVERGING),
])
def test_divergence_verdict(sums, verdict):
    assert divergence_verdict(sums) is verdict


@pytest.mark.parametrize("values, trend", [
    ([1.0, 1.0, 1.0], Trend.BOUNDED_AWAY),
    ([1.0, 0.5, 0.1], Trend.TO_ZERO),
    ([1.0, 0.4, 0.4], Trend.INCONCLUSIVE),
    ([1.0, 0.0], Trend.INCONCLUSIVE),
])
def test_thirds_trend(values, trend):
    assert thirds_trend(values) is trend


def test_greek_letters_are_spelled_out():
    assert StylesManager().process_text("ρ(h) ≤ ε_n, Ψ") == "rho(h) <= eps_n, Psi"
    assert StylesManager().process_text("") == ""


def test_report_pdf_renders(tmp_path):
    report = build_report(ScalingSymbol(0.5), make_orlicz("power", 2.0), [0.2, 0.1, 0.05],
                          samples=2 ** 12, p_list=(2.0,), integral_depth=4)
    path = render_report_pdf(report, str(tmp_path / "report.pdf"))
    with open(path, "rb") as handle:
        assert handle.read(5) == b"%PDF-"


def test_report_pdf_failure_is_an_artifact_error(tmp_path):
    report = build_report(ScalingSymbol(0.5), make_orlicz("power", 2.0), [0.2, 0.1, 0.05],
                          samples=2 ** 12, p_list=(2.0,), integral_depth=4)
    with pytest.raises(ArtifactError):
        render_report_pdf(report, str(tmp_path / "missing-dir" / "report.pdf"))
