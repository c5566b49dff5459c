import argparse
import json

import pytest

from composition_lab import (
    ArtifactError,
    ConfigurationError,
    DomainError,
    NonterminatingWalkError,
    NumericalError,
    SolverUnavailableError,
    StatisticalFloorError,
    __version__,
)
from composition_lab import cli, core
from composition_lab.internal import acceptance


@pytest.fixture
def specs(tmp_path):
    paths = {}
    for name, spec in {
        "identity": {"kind": "identity"},
        "scaling": {"kind": "scaling", "s": 0.5},
        "punctured": {"kind": "punctured"},
        "square": {"family": "power", "p": 2},
    }.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(spec), encoding="utf-8")
        paths[name] = str(path)
    return paths


def _load(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


@pytest.mark.parametrize("error, code", [
    (ConfigurationError("x"), 2),
    (SolverUnavailableError("x"), 2),
    (DomainError("x"), 2),
    (NumericalError("x"), 3),
    (NonterminatingWalkError("x"), 3),
    (StatisticalFloorError("x"), 4),
    (ArtifactError("x"), 1),
])
def test_exit_codes(error, code):
    assert cli.exit_code(error) == code


def test_count_accepts_scientific_notation():
    assert cli._count("1e5") == 100000
    assert cli._count("4096") == 4096
    with pytest.raises(argparse.ArgumentTypeError):
        cli._count("1.5")


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_rho_writes_csv_and_manifest(tmp_path, specs):
    out = tmp_path / "rho.csv"
    code = cli.main(["rho", "--symbol", specs["identity"], "--h", "0.2,0.1", "--samples", "4096",
                     "--out", str(out)])
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "h,rho,stderr"
    assert len(lines) == 3
    manifest = _load(str(out) + ".manifest.json")
    assert list(manifest["outputs"]) == ["rho.csv"]
    assert manifest["config"]["samples"] == 4096


def test_rho_below_floor_exits_4(tmp_path, specs):
    code = cli.main(["rho", "--symbol", specs["identity"], "--h", "0.001", "--samples", "1024",
                     "--out", str(tmp_path / "rho.csv")])
    assert code == 4


def test_calibrate_below_floor_exits_4(tmp_path):
    code = cli.main(["calibrate", "--eps", "1e-9", "--paths", "1e5", "--out", str(tmp_path / "cal.json")])
    assert code == 4
    assert not (tmp_path / "cal.json").exists()


@pytest.mark.parametrize("argv", [
    ["rho", "--h", "0.1"],
    ["nevanlinna", "--symbol", "{punctured}"],
    ["harmonic", "--domain", "annulus"],
    ["harmonic", "--domain", "disk", "--a", "2+0i"],
    ["harmonic", "--domain", "disk", "--target", "slit", "--paths", "100"],
    ["rho", "--symbol", "{identity}", "--samples", "1000"],
])
def test_configuration_errors_exit_2(tmp_path, specs, argv):
    argv = [arg.format(**specs) for arg in argv] + ["--out", str(tmp_path / "out.json")]
    assert cli.main(argv) == 2


def test_missing_out_exits_2(specs):
    assert cli.main(["nevanlinna", "--symbol", specs["identity"]]) == 2


def test_harmonic_disk_target(tmp_path):
    out = tmp_path / "h.json"
    code = cli.main(["harmonic", "--domain", "disk", "--paths", "2000", "--target", "circle", "--out", str(out)])
    assert code == 0
    data = _load(str(out))
    assert data["target"] == {"label": "circle", "estimate": 1.0, "stderr": 0.0}
    assert data["a"] == [0.0, 0.0]
    assert data["distribution"] == {"circle": 1.0}


def test_outputs_do_not_depend_on_workers(tmp_path):
    outputs = []
    for workers in ("1", "3"):
        out = tmp_path / f"h{workers}.json"
        assert cli.main(["harmonic", "--domain", "slit_disk", "--paths", "9000", "--seed", "11",
                         "--workers", workers, "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_config_file_is_merged_with_flags(tmp_path, specs):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"subcommand": "nevanlinna", "symbol": specs["identity"], "grid": 5}),
                      encoding="utf-8")
    out = tmp_path / "n.csv"
    assert cli.main(["nevanlinna", "--config", str(config), "--grid", "9", "--out", str(out)]) == 0
    assert _load(str(out) + ".manifest.json")["config"]["grid"] == 9


def test_eps_implies_fixed_scheme():
    args = cli.build_parser().parse_args(["calibrate", "--eps", "0.1", "--out", "c.json"])
    assert cli.config_from_args(args).eps_scheme == "fixed"
    args = cli.build_parser().parse_args(["calibrate", "--eps", "0.1", "--eps-scheme", "exp", "--out", "c.json"])
    assert cli.config_from_args(args).eps_scheme == "exp"


def test_report_writes_json_csv_and_pdf(tmp_path, specs, capsys):
    out = tmp_path / "report.json"
    pdf = tmp_path / "report.pdf"
    code = cli.main(["report", "--symbol", specs["scaling"], "--psi", specs["square"],
                     "--h", "geometric:0.2:2:5", "--samples", "4096", "--p", "2",
                     "--pdf", str(pdf), "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "compact, all S_p"
    assert _load(str(out))["headline"] == "compact, all S_p"
    assert (tmp_path / "report.csv").read_text(encoding="utf-8").startswith("h,rho,stderr,delta")
    assert pdf.read_bytes().startswith(b"%PDF-")
    manifest = _load(str(out) + ".manifest.json")
    assert sorted(manifest["outputs"]) == ["report.csv", "report.json", "report.pdf"]


def test_build_blaschke_spec(tmp_path, specs):
    out = tmp_path / "slow.json"
    assert cli.main(["build-blaschke", "--psi", specs["square"], "--depth", "10", "--out", str(out)]) == 0
    data = _load(str(out))
    assert data["depth"] == 10
    assert data["p_counts"]["7"] > 0


def test_selftest_writes_records_and_manifest(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(core, "run_selftest", lambda settings: acceptance.run_selftest(settings, only=[2, 8]))
    out = tmp_path / "selftest"
    assert cli.main(["selftest", "--out", str(out)]) == 0
    data = _load(str(out / "selftest.json"))
    assert data["seed"] == 7
    assert [r["id"] for r in data["records"]] == [2, 8]
    assert data["all_passed"]
    assert "selftest.json" in _load(str(out / "manifest.json"))["outputs"]
    assert "2 passed, 0 failed" in capsys.readouterr().out


@pytest.mark.slow
def test_quick_selftest_passes():
    result = acceptance.run_selftest(acceptance.SelftestSettings.quick())
    failed = [r["name"] for r in result["records"] if not r["passed"]]
    assert not failed
