import csv
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helios.assembly import assemble, assemble_fem, discretize, loads_for
from helios.cli import main
from helios.experiments import (CSV_COLUMNS, ExperimentConfig, error_grid, evaluate_solution,
                                manufactured_data, relative_error, run_experiment,
                                scattering_data)
from helios.krylov import direct_solve

KAPPA = 4 * np.pi


def test_manufactured_source_against_finite_differences():
    u, f, _ = manufactured_data(KAPPA)
    rng = np.random.default_rng(11)
    x, y = rng.uniform(0.05, 0.95, (2, 100))
    h = 1e-3
    c = np.array([-1, 16, -30, 16, -1]) / (12 * h * h)
    offs = np.arange(-2, 3) * h
    lap = sum(ci * (u(x + o, y) + u(x, y + o)) for ci, o in zip(c, offs))
    assert np.abs(f(x, y) - lap - KAPPA**2 * u(x, y)).max() <= 1e-5


def test_manufactured_boundary_values():
    u, _, _ = manufactured_data(KAPPA)
    t = np.linspace(0, 1, 17)
    assert np.abs(u(t, 0.0)).max() == 0
    assert np.abs(u(0.0, t)).max() == 0
    assert np.abs(u(1.0, t)).max() < 1e-13


def test_aperture_data_normal_derivative():
    # g + T(u) equals the normal derivative of u on the aperture
    from helios.nonlocal_op import apply_T_to_trace
    u, _, g = manufactured_data(KAPPA)
    x = np.array([0.2, 0.55, 0.8])
    h = 1e-5
    uy = (u(x, 1 + h) - u(x, 1 - h)) / (2 * h)
    tu = apply_T_to_trace(lambda s: u(s, 1.0), KAPPA, x)
    assert np.abs(g(x) + tu - uy).max() <= 1e-5 * np.abs(uy).max()


def test_scattering_data():
    assert scattering_data(KAPPA, 0.0)(0.3) == pytest.approx(-2j * KAPPA)
    k = 8 * np.pi
    g = scattering_data(k, np.pi / 4)
    x = np.linspace(0, 1, 9)
    assert np.allclose(np.abs(g(x)), 2 * k / math.sqrt(2))
    with pytest.raises(ValueError):
        scattering_data(k, np.pi / 2)


@pytest.fixture(scope="module")
def solved():
    u, f, g = manufactured_data(KAPPA)
    disc = discretize("sr3", 3, KAPPA)
    loads = loads_for(disc, f, g)
    w = assemble("sr3", 1, 3, KAPPA, disc=disc, loads=loads)
    fe = assemble_fem("sr3", 3, KAPPA, disc=disc, loads=loads)
    cw = w.normalization * direct_solve(w.matrix, w.rhs)
    cf = fe.normalization * direct_solve(fe.matrix, fe.rhs)
    return u, w, fe, cw, cf


def test_wavelet_and_fem_fields_agree(solved):
    _, w, fe, cw, cf = solved
    pts = error_grid(6)
    vw, vf = evaluate_solution(w, cw, pts), evaluate_solution(fe, cf, pts)
    assert np.abs(vw - vf).max() <= 1e-8 * np.abs(vf).max()


def test_single_coefficient_reproduces_tensor_function(solved):
    _, _, fe, _, _ = solved
    c = np.zeros(fe.size)
    a, b = 5, 7
    c[a * fe.disc.ny + b] = 1.0
    x, y = np.linspace(0, 1, 11), np.linspace(0, 1, 13)
    ref = np.outer(fe.disc.bx.phi_functions[a](x), fe.disc.by.phi_functions[b](y))
    assert np.abs(evaluate_solution(fe, c, (x, y)) - ref).max() < 1e-14
    assert np.abs(evaluate_solution(fe, 0 * c, (x, y))).max() == 0
    with pytest.raises(ValueError):
        evaluate_solution(fe, c[:-1], x)


def test_relative_error(solved):
    u, w, _, cw, _ = solved
    g = error_grid(6)
    v = evaluate_solution(w, cw, g)
    X, Y = np.meshgrid(g, g, indexing="ij")
    assert relative_error(u(X, Y), u) == 0
    err = relative_error(v, u)
    assert 0 < err < 0.5
    assert err == pytest.approx(relative_error(v, u(X, Y)))


@given(st.floats(-1.5, 1.5), st.floats(0.5, 20))
def test_config_accepts_valid(theta, kop):
    cfg = ExperimentConfig(theta=theta, kappa_over_pi=kop)
    assert cfg.kappa == pytest.approx(kop * math.pi)


@pytest.mark.parametrize("kw", [dict(theta=2.0), dict(kappa_over_pi=0), dict(J0=0),
                                dict(experiment="x"), dict(solver="cg"), dict(svd_mode="qr")])
def test_config_rejects_invalid(kw):
    with pytest.raises(ValueError):
        ExperimentConfig(**kw)


def test_table_coarse_levels():
    assert ExperimentConfig(family="sr3", kappa_over_pi=4).coarse_level == 2
    assert ExperimentConfig(family="hmt", kappa_over_pi=4).coarse_level == 4
    assert ExperimentConfig(family="sr3", kappa_over_pi=5).coarse_level == 1


def _read(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_manufactured_run_writes_report(tmp_path):
    cfg = ExperimentConfig(family="sr3", J0=1, J_min=2, J_max=3, svd_mode="exact",
                           error_grid_exp=6, out=str(tmp_path))
    rep = run_experiment(cfg)
    assert not rep.failures
    rows = _read(tmp_path / "report.csv")
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert [(r["basis"], r["J"]) for r in rows] == [("wavelet", "2"), ("wavelet", "3"),
                                                    ("fem", "2"), ("fem", "3")]
    assert rows[0]["order"] == "" and float(rows[1]["order"]) > 1
    assert rep.row(3, "wavelet").rel_err == pytest.approx(rep.row(3, "fem").rel_err, rel=1e-6)
    res = _read(tmp_path / "residuals-3.csv")
    assert {r["basis"] for r in res} == {"wavelet", "fem"}


def test_scattering_run_uses_next_level(tmp_path):
    cfg = ExperimentConfig(family="sr3", J0=1, J_min=2, J_max=3, experiment="scattering",
                           theta=0.3, solver="direct", svd_mode="skip", error_grid_exp=6)
    rep = run_experiment(cfg)
    assert [r.J for r in rep.rows if r.basis == "fem"] == [2, 3]
    assert all(r.iter is None and math.isnan(r.sigma_max) for r in rep.rows)
    assert all(0 < r.rel_err < 1 for r in rep.rows)


def test_cli_empty_range(tmp_path, capsys):
    code = main(["--family", "sr3", "--J-min", "4", "--J-max", "3", "--out", str(tmp_path)])
    assert code == 0
    assert _read(tmp_path / "report.csv") == []
    assert capsys.readouterr().out.strip() == ",".join(CSV_COLUMNS)


def test_cli_small_run(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HELIOS_THREADS", "1")
    code = main(["--family", "hmt", "--J0", "2", "--J-min", "2", "--J-max", "2",
                 "--svd-mode", "skip", "--error-grid-exp", "6", "--out", str(tmp_path)])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3 and lines[1].startswith("hmt,2,")
