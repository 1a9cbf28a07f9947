"""Configuration validation, CLI verbs, exports and determinism."""

import json
import os

import numpy as np
import pytest

from nilquant.cli import main
from nilquant.config import ConfigError, parse_config
from nilquant.exports import (field_to_csv, load_matrix, load_matrix_csv, matrix_to_csv,
                              save_matrix)
from nilquant.grids import Grid
from nilquant.operators import OperatorMatrix
from nilquant.verify import run_suites

SMALL = {
    "group": "abelian:1",
    "grid": {"half_width": 8.0, "count": 32},
    "xi_grid": {"g": {"half_width": 8.0, "count": 32},
                "dual": {"half_width": 8.0, "count": 32}},
}


def test_parse_minimal_defaults():
    cfg = parse_config({})
    assert cfg.algebra.name == "heisenberg:1"
    assert cfg.g_grid.counts == (11, 11, 11)
    assert cfg.xi_grid.g_grid.counts == (9, 9, 9)
    assert cfg.scheme == "berezin"


def test_parse_preset_group():
    cfg = parse_config({"group": "abelian:2"})
    assert cfg.algebra.dim == 2


def test_parse_inline_group():
    cfg = parse_config({"group": {"dim": 3, "step": 2,
                                  "brackets": [[1, 2, 3, 1.0], [2, 1, 3, -1.0]]},
                        "grid": {"half_width": 4.0, "count": 7},
                        "xi_grid": {"g": {"half_width": 4.0, "count": 7},
                                    "dual": {"half_width": 4.0, "count": 7}}})
    assert cfg.algebra.step == 2
    assert cfg.g_grid.counts == (7, 7, 7)


def test_parse_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown keys"):
        parse_config({"grupo": "heisenberg:1"})


def test_parse_rejects_missing_antisymmetry():
    with pytest.raises(ConfigError, match="antisymmetric"):
        parse_config({"group": {"dim": 3, "step": 2, "brackets": [[1, 2, 3, 1.0]]}})


def test_parse_rejects_jacobi_failure():
    bad = {"dim": 3, "step": 2,
           "brackets": [[1, 2, 3, 1.0], [2, 1, 3, -1.0], [2, 3, 2, 1.0], [3, 2, 2, -1.0]]}
    with pytest.raises(ConfigError, match="Jacobi"):
        parse_config({"group": bad})


def test_parse_rejects_large_step():
    with pytest.raises(ConfigError, match="step"):
        parse_config({"group": {"dim": 2, "step": 7, "brackets": []}})


def test_parse_rejects_wrong_declared_step():
    with pytest.raises(ConfigError, match="certifies"):
        parse_config({"group": {"dim": 3, "step": 1,
                                "brackets": [[1, 2, 3, 1.0], [2, 1, 3, -1.0]]}})


def test_cost_guard_on_phase_space_grid():
    big = {"group": "heisenberg:1",
           "xi_grid": {"g": {"count": 64}, "dual": {"count": 64}}}
    with pytest.raises(ConfigError, match="guard"):
        parse_config(big)
    cfg = parse_config({**big, "allow_large_grids": True})
    assert cfg.xi_grid.g_grid.counts == (64, 64, 64)


def test_parse_collects_multiple_problems():
    try:
        parse_config({"scheme": "fourier", "tau": "weyl", "seed": -3})
    except ConfigError as exc:
        text = str(exc)
        assert "scheme" in text and "tau" in text and "seed" in text
    else:
        raise AssertionError("expected ConfigError")


def test_symbol_kinds():
    for kind in ("gaussian", "delta", "phase", "one", "x_gaussian", "xi_gaussian"):
        cfg = parse_config({**SMALL, "symbol": {"kind": kind}})
        assert cfg.symbol is not None
    with pytest.raises(ConfigError, match="symbol"):
        parse_config({**SMALL, "symbol": {"kind": "chirp"}})


# -- exports -------------------------------------------------------------------

def test_matrix_binary_round_trip(tmp_path):
    g = Grid.box(1, 6.0, 16)
    rng = np.random.default_rng(0)
    op = OperatorMatrix(g, rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
    base = str(tmp_path / "m")
    bin_path, meta_path = save_matrix(op, base, scheme="berezin")
    assert os.path.exists(bin_path) and os.path.exists(meta_path)
    meta = json.loads(open(meta_path).read())
    assert meta["format_version"] == 1 and meta["scheme"] == "berezin"
    back = load_matrix(base)
    assert np.array_equal(back.kernel, op.kernel)
    assert back.grid == g


def test_matrix_csv_round_trip(tmp_path):
    g = Grid.box(1, 6.0, 8)
    rng = np.random.default_rng(1)
    op = OperatorMatrix(g, rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
    path = str(tmp_path / "m.csv")
    matrix_to_csv(op, path)
    back = load_matrix_csv(path, g)
    assert np.max(np.abs(back.kernel - op.kernel)) < 1e-15


def test_field_csv(tmp_path):
    g = Grid.box(2, 2.0, 4)
    vals = np.arange(16, dtype=complex)
    path = str(tmp_path / "f.csv")
    field_to_csv(vals, g, path)
    rows = open(path).read().strip().splitlines()
    assert len(rows) == 16
    assert len(rows[0].split(",")) == 4  # two coordinates + re + im


# -- CLI -----------------------------------------------------------------------

def test_cli_algebra_validate():
    assert main(["algebra", "validate", "--preset", "heisenberg:1"]) == 0
    assert main(["algebra", "validate", "--preset", "engel"]) == 0
    assert main(["algebra", "validate", "--preset", "su2"]) == 2


def test_cli_verify_pass_and_fail(capsys):
    assert main(["verify", "--suite", "weyl", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "weyl" in out
    # an absurd tolerance scale forces a failure exit
    assert main(["verify", "--suite", "weyl", "--tol-scale", "1e-20"]) == 1
    assert main(["verify", "--suite", "nonexistent"]) == 2


def test_cli_quantize_and_export(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    out_dir = tmp_path / "out"
    cfg_path.write_text(json.dumps({**SMALL, "scheme": "berezin"}))
    assert main(["quantize", "--config", str(cfg_path), "--out", str(out_dir)]) == 0
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["scheme"] == "berezin"
    assert {"trace", "schatten", "hermiticity_residual"} <= set(summary)
    for name in ("matrix.bin", "matrix.json", "matrix.csv", "window.csv", "symbol.csv"):
        assert (out_dir / name).exists()
    csv_out = tmp_path / "again.csv"
    assert main(["export", "--matrix", str(out_dir / "matrix"),
                 "--csv", str(csv_out)]) == 0
    assert csv_out.exists()


def test_cli_verify_empty_suite_is_config_error(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({**SMALL, "suite": []}))
    assert main(["verify", "--config", str(cfg)]) == 2


def test_cli_magnetic_zero_field_byte_identical(tmp_path):
    cfg_b = tmp_path / "b.json"
    cfg_m = tmp_path / "m.json"
    cfg_b.write_text(json.dumps({**SMALL, "scheme": "berezin"}))
    cfg_m.write_text(json.dumps({**SMALL, "scheme": "magnetic", "potential": "zero"}))
    out_b, out_m = tmp_path / "ob", tmp_path / "om"
    assert main(["quantize", "--config", str(cfg_b), "--out", str(out_b)]) == 0
    assert main(["quantize", "--config", str(cfg_m), "--out", str(out_m)]) == 0
    assert (out_b / "matrix.bin").read_bytes() == (out_m / "matrix.bin").read_bytes()


def test_cli_scheme_flags_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(SMALL))
    out_t = tmp_path / "ot"
    assert main(["quantize", "--config", str(cfg), "--scheme", "tau",
                 "--tau", "symmetric", "--out", str(out_t)]) == 0
    summary = json.loads((out_t / "summary.json").read_text())
    assert summary["scheme"] == "tau"
    # a magnetic run on a 1-d group must reject the landau preset cleanly
    assert main(["quantize", "--config", str(cfg), "--scheme", "magnetic",
                 "--potential", "landau:1.0", "--out", str(tmp_path / "bad")]) == 2


def test_cli_quantize_phase_symbol_special_path(tmp_path):
    cfg = {**SMALL, "scheme": "op", "symbol": {"kind": "phase", "z": [0.5], "zeta": [0.7]}}
    cfg_path = tmp_path / "p.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "o"
    assert main(["quantize", "--config", str(cfg_path), "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["special_path"] == "weyl_shift" and summary["unitary"]


def test_cli_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["quantize", "--config", str(bad)]) == 2


def test_report_determinism():
    a = run_suites("weyl", seed=5)
    b = run_suites("weyl", seed=5)
    ra = [(c.name, c.residual, c.tolerance) for c in a.checks]
    rb = [(c.name, c.residual, c.tolerance) for c in b.checks]
    assert ra == rb


def test_run_suites_rejects_empty_and_unknown():
    with pytest.raises(ValueError):
        run_suites([])
    with pytest.raises(KeyError):
        run_suites("nope")
