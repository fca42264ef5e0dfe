"""Experiment runners and the laglab command-line interface."""

import json
import math

import pytest

from lagseries import cli, lab
from lagseries.specfun import DomainError


def _write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# runners


def test_semiconvergence_integral_case_is_flat_and_tiny():
    cfg = lab.RunConfig.from_dict(
        {"N": 2.0, "L": 0, "beta": 1.0, "gamma": 1.0, "k": 0.0,
         "orders": [1, 2, 3, 4, 5]},
        experiment="semiconv",
    )
    rep = lab.run_semiconvergence(cfg)
    assert all(e <= 1e-12 for e in rep.weighted_errors)
    assert all(b <= a * 1.0 + 1e-15 for a, b in zip(rep.weighted_errors, rep.weighted_errors[1:]))


def test_semiconvergence_nonintegral_case_has_interior_minimum():
    cfg = lab.RunConfig.from_dict(
        {"N": 2.5, "L": 0, "beta": 1.0, "gamma": 1.0, "k": 0.0,
         "orders": list(range(1, 61))},
        experiment="semiconv",
    )
    rep = lab.run_semiconvergence(cfg)
    assert rep.argmin_interior
    emin = min(rep.weighted_errors)
    assert rep.weighted_errors[-1] >= 2.0 * emin
    assert rep.divergence_onset is not None


def test_semiconvergence_rejects_bad_parameters():
    cfg = lab.RunConfig.from_dict(
        {"N": 2.0, "L": 0, "beta": 1.0, "gamma": -1.0, "k": 0.0},
        experiment="semiconv",
    )
    with pytest.raises(DomainError):
        lab.run_semiconvergence(cfg)


def test_config_validation_errors():
    with pytest.raises(lab.ConfigError):
        lab.RunConfig.from_dict({}, experiment="nonesuch")
    with pytest.raises(lab.ConfigError):
        lab.run_semiconvergence(
            lab.RunConfig.from_dict({"orders": [3, 2, 1]}, experiment="semiconv")
        )
    with pytest.raises(lab.ConfigError):
        lab.run_semiconvergence(
            lab.RunConfig.from_dict({"N": "not-a-number"}, experiment="semiconv")
        )
    with pytest.raises(lab.ConfigError):
        lab.run_coefficient_flow(lab.RunConfig.from_dict({}, experiment="coeff-flow"))


def test_run_sum_summarizes_partial_sums():
    values = []
    s = 0.0
    for n in range(1, 21):
        s += (-1.0) ** (n + 1) / n
        values.append(s)
    cfg = lab.RunConfig.from_dict(
        {"values": values, "kind": "partial_sums", "method": "weniger_s"},
        experiment="sum",
    )
    header, rows = lab.run_sum(cfg)
    assert rows[-1][0] == "best"
    assert rows[-1][1] == pytest.approx(math.log(2.0), abs=1e-10)


def test_run_check_all_pass():
    header, rows = lab.run_check(lab.RunConfig.from_dict({}, experiment="check"))
    assert rows, "check suite must produce rows"
    assert all(row[-1] == "pass" for row in rows)


# ---------------------------------------------------------------------------
# CLI


def test_cli_semiconv_csv_roundtrip(tmp_path):
    cfg = _write_config(tmp_path, {"N": 2.0, "orders": [1, 2, 3]})
    out = tmp_path / "out.csv"
    code = cli.main(["semiconv", "--config", cfg, "--out", str(out), "--quiet"])
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "order,weighted_error,sup_error,is_argmin"
    assert len(lines) == 4


def test_cli_json_output_parses(tmp_path):
    cfg = _write_config(tmp_path, {"N": 2.0, "orders": [1, 2, 3]})
    out = tmp_path / "out.json"
    code = cli.main(["semiconv", "--config", cfg, "--out", str(out),
                     "--format", "json", "--quiet"])
    assert code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert len(data) == 3
    assert set(data[0]) == {"order", "weighted_error", "sup_error", "is_argmin"}


def test_cli_is_deterministic(tmp_path):
    cfg = _write_config(tmp_path, {"rho": 0.5, "nu": [0, 1], "cutoffs": [100, 1000]})
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["coeff-flow", "--config", cfg, "--out", str(out1), "--quiet"]) == 0
    assert cli.main(["coeff-flow", "--config", cfg, "--out", str(out2), "--quiet"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_region_map_and_decay_run(tmp_path):
    out = tmp_path / "r.csv"
    assert cli.main(["region-map", "--out", str(out), "--quiet"]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "ratio,theta,verdict,geometric_rate"
    assert cli.main(["decay", "--out", str(tmp_path / "d.csv"), "--quiet"]) == 0


def test_cli_check_passes(tmp_path):
    out = tmp_path / "c.csv"
    assert cli.main(["check", "--out", str(out), "--quiet"]) == 0


def test_cli_exit_code_for_bad_config(tmp_path):
    missing = str(tmp_path / "nope.json")
    assert cli.main(["semiconv", "--config", missing, "--quiet"]) == cli.EXIT_CONFIG
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert cli.main(["semiconv", "--config", str(bad), "--quiet"]) == cli.EXIT_CONFIG
    unordered = _write_config(tmp_path, {"orders": [3, 1]}, name="u.json")
    assert cli.main(["semiconv", "--config", unordered, "--quiet"]) == cli.EXIT_CONFIG


def test_cli_exit_code_for_domain_error(tmp_path):
    cfg = _write_config(tmp_path, {"N": 2.0, "gamma": -1.0})
    assert cli.main(["semiconv", "--config", cfg, "--quiet"]) == cli.EXIT_DOMAIN


def test_csv_cells_never_need_quoting(tmp_path):
    # Every writer in the suite must emit plain comma-separated cells.
    for sub, cfg in (("decay", None),
                     ("coeff-flow", {"rho": 0.5, "nu": [0, 1], "cutoffs": [100, 1000]})):
        out = tmp_path / f"{sub}.csv"
        argv = [sub, "--out", str(out), "--quiet"]
        if cfg is not None:
            argv += ["--config", _write_config(tmp_path, cfg, name=f"{sub}.json")]
        assert cli.main(argv) == 0
        for line in out.read_text(encoding="utf-8").splitlines():
            assert '"' not in line
