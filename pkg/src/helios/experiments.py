"""Manufactured-solution and scattering studies over a range of levels."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .assembly import (AssembledSystem, assemble, assemble_fem, discretize,
                       evaluate_coefficients, loads_for)
from .catalog import TABLE_J0, get_family
from .krylov import SolveReport, direct_solve, extreme_singular_values, gmres
from .nonlocal_op import apply_T_to_trace

CSV_COLUMNS = ("family", "J", "size", "sigma_max", "sigma_min", "cond", "iter",
               "rel_err", "order", "basis")
AUTO_EXACT_LIMIT = 4096


@dataclass(frozen=True)
class ExperimentConfig:
    family: str = "sr3"
    recombined: bool = False
    kappa_over_pi: float = 4.0
    J0: int | None = None
    J_min: int = 5
    J_max: int = 6
    experiment: str = "manufactured"
    theta: float = 0.0
    solver: str = "both"
    gmres_tol: float = 1e-8
    svd_mode: str = "auto"
    error_grid_exp: int = 9
    out: str | None = None

    def __post_init__(self):
        spec = get_family(self.family)
        if not self.kappa_over_pi > 0:
            raise ValueError("kappa must be positive")
        if self.J0 is not None and self.J0 < spec.J0_min:
            raise ValueError(f"J0 must be >= {spec.J0_min} for {self.family}")
        if not -math.pi / 2 < self.theta < math.pi / 2:
            raise ValueError("theta must lie in (-pi/2, pi/2)")
        if self.experiment not in ("manufactured", "scattering"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.solver not in ("gmres", "direct", "both"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.svd_mode not in ("auto", "exact", "iterative", "skip"):
            raise ValueError(f"unknown svd mode {self.svd_mode!r}")

    @property
    def kappa(self) -> float:
        return self.kappa_over_pi * math.pi

    @property
    def coarse_level(self) -> int:
        if self.J0 is not None:
            return self.J0
        key = (self.family, int(round(self.kappa_over_pi)))
        return TABLE_J0.get(key, get_family(self.family).J0_min)


@dataclass
class ReportRow:
    family: str
    J: int
    size: int
    sigma_max: float
    sigma_min: float
    cond: float
    iter: int | None
    rel_err: float
    order: float
    basis: str

    def as_csv(self) -> list:
        def fmt(v):
            if v is None or (isinstance(v, float) and math.isnan(v)):
                return ""
            return f"{v:.6e}" if isinstance(v, float) else str(v)
        return [fmt(getattr(self, c)) for c in CSV_COLUMNS]


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list = field(default_factory=list)
    histories: dict = field(default_factory=dict)  # (J, basis) -> residual history
    failures: list = field(default_factory=list)

    def row(self, J: int, basis: str) -> ReportRow:
        for r in self.rows:
            if r.J == J and r.basis == basis:
                return r
        raise KeyError((J, basis))

    def write(self, out: str | Path) -> None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "report.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in self.rows:
                w.writerow(r.as_csv())
        for J in sorted({j for j, _ in self.histories}):
            with open(out / f"residuals-{J}.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(("basis", "iteration", "relative_residual"))
                for basis in ("wavelet", "fem"):
                    for k, v in enumerate(self.histories.get((J, basis), ())):
                        w.writerow((basis, k, f"{v:.6e}"))


# ---------------------------------------------------------------- data
def manufactured_data(kappa: float):
    """(u, f, g) for u = e^{xy} sin(k x) sin(m y), m = k + pi/2."""
    mu = kappa + math.pi / 2

    def u(x, y):
        return np.exp(x * y) * np.sin(kappa * x) * np.sin(mu * y)

    def f(x, y):
        # Laplacian(u) + k^2 u
        sx, cx = np.sin(kappa * x), np.cos(kappa * x)
        sy, cy = np.sin(mu * y), np.cos(mu * y)
        return np.exp(x * y) * ((x * x + y * y - mu * mu) * sx * sy
                                + 2 * kappa * y * cx * sy + 2 * mu * x * sx * cy)

    def trace(x):
        return u(np.asarray(x, dtype=float), 1.0)

    def g(x):
        x = np.asarray(x, dtype=float)
        uy = np.exp(x) * np.sin(kappa * x) * (x * math.sin(mu) + mu * math.cos(mu))
        return uy - apply_T_to_trace(trace, kappa, x)

    return u, f, g


def scattering_data(kappa: float, theta: float):
    """Aperture data for a plane wave at angle theta; the source is zero."""
    if not -math.pi / 2 < theta < math.pi / 2:
        raise ValueError("theta must lie in (-pi/2, pi/2)")
    alpha, beta = kappa * math.sin(theta), kappa * math.cos(theta)

    def g(x):
        return -2j * beta * np.exp(1j * alpha * np.asarray(x, dtype=float))

    return g


# ---------------------------------------------------------------- errors
def error_grid(exp: int) -> np.ndarray:
    return np.arange(2**exp + 1) / 2.0**exp


def evaluate_solution(system: AssembledSystem, coefficients: np.ndarray, points) -> np.ndarray:
    """Field values on the tensor grid points x points (or (x, y) pair)."""
    coefficients = np.asarray(coefficients)
    if coefficients.shape != (system.size,):
        raise ValueError(f"expected {system.size} coefficients, got {coefficients.shape}")
    x, y = points if isinstance(points, tuple) else (points, points)
    U = (system.R.T @ coefficients).reshape(system.disc.nx, system.disc.ny)
    return evaluate_coefficients(system.disc, U, x, y)


def grid_values(system: AssembledSystem, y_normalized: np.ndarray, exp: int) -> np.ndarray:
    g = error_grid(exp)
    return evaluate_solution(system, system.normalization * y_normalized, g)


def relative_error(values: np.ndarray, reference) -> float:
    """Grid relative L2 error; ``reference`` is an array or a callable u(x, y)."""
    if callable(reference):
        n = values.shape[0]
        g = np.arange(n) / (n - 1)
        X, Y = np.meshgrid(g, g, indexing="ij")
        reference = reference(X, Y)
    den = np.linalg.norm(reference)
    return float(np.linalg.norm(values - reference) / den) if den else float(np.linalg.norm(values))


def convergence_order(err_coarse: float, err_fine: float) -> float:
    if not (err_coarse > 0 and err_fine > 0):
        return float("nan")
    return math.log2(err_coarse / err_fine)


# ---------------------------------------------------------------- driver
def _svd(system: AssembledSystem, mode: str):
    if mode == "skip":
        return float("nan"), float("nan")
    if mode == "auto":
        mode = "exact" if system.size <= AUTO_EXACT_LIMIT else "iterative"
    s = extreme_singular_values(system.matrix, mode)
    return s.sigma_max, s.sigma_min


def _solve(system: AssembledSystem, cfg: ExperimentConfig):
    rep: SolveReport | None = None
    y = None
    if cfg.solver in ("gmres", "both"):
        rep = gmres(system.matrix, system.rhs, tol=cfg.gmres_tol)
        y = rep.x
    if cfg.solver in ("direct", "both"):
        y = direct_solve(system.matrix, system.rhs)
    return rep, y


def run_level(cfg: ExperimentConfig, J: int, data) -> dict:
    """Assemble, solve and measure both systems at one level."""
    f, g = data
    J0 = cfg.coarse_level
    disc = discretize(cfg.family, J, cfg.kappa, cfg.recombined)
    loads = loads_for(disc, f, g)
    out = {}
    for basis in ("wavelet", "fem"):
        if basis == "wavelet":
            sysm = assemble(cfg.family, J0, J, cfg.kappa, recombined=cfg.recombined,
                            disc=disc, loads=loads)
        else:
            sysm = assemble_fem(cfg.family, J, cfg.kappa, recombined=cfg.recombined,
                                disc=disc, loads=loads)
        smax, smin = _svd(sysm, cfg.svd_mode)
        rep, y = _solve(sysm, cfg)
        out[basis] = dict(system=sysm, sigma=(smax, smin), report=rep,
                          values=grid_values(sysm, y, cfg.error_grid_exp))
    return out


def run_experiment(cfg: ExperimentConfig, log=None) -> ExperimentReport:
    report = ExperimentReport(cfg)
    levels = list(range(max(cfg.J_min, cfg.coarse_level), cfg.J_max + 1))
    if not levels:
        if cfg.out:
            report.write(cfg.out)
        return report
    if cfg.experiment == "manufactured":
        u, f, g = manufactured_data(cfg.kappa)
        data = (f, g)
        exact = u(*np.meshgrid(error_grid(cfg.error_grid_exp), error_grid(cfg.error_grid_exp),
                               indexing="ij"))
    else:
        data = (None, scattering_data(cfg.kappa, cfg.theta))
        exact = None
        # the error at the last level needs one more solution
        levels = levels + [levels[-1] + 1]

    values = {}
    for J in levels:
        t0 = time.perf_counter()
        try:
            res = run_level(cfg, J, data)
        except Exception as exc:  # partial report on per-level failure
            report.failures.append((J, repr(exc)))
            break
        values[J] = {b: res[b]["values"] for b in res}
        reporting = exact is not None or J != levels[-1]
        for basis in ("wavelet", "fem"):
            r = res[basis]
            if r["report"] is not None:
                report.histories[(J, basis)] = r["report"].residual_history
            if not reporting:
                continue
            smax, smin = r["sigma"]
            it = r["report"].iterations if r["report"] is not None else None
            report.rows.append(ReportRow(cfg.family, J, r["system"].size, smax, smin,
                                         smax / smin if smin else float("nan"), it,
                                         float("nan"), float("nan"), basis))
        if exact is not None:
            for basis in ("wavelet", "fem"):
                report.row(J, basis).rel_err = relative_error(values[J][basis], exact)
        elif J - 1 in values:
            for basis in ("wavelet", "fem"):
                report.row(J - 1, basis).rel_err = relative_error(values[J - 1][basis],
                                                                  values[J][basis])
        if log:
            log(f"J={J} done in {time.perf_counter() - t0:.1f}s")
        if exact is None and J - 1 in values:
            values.pop(J - 2, None)
    for basis in ("wavelet", "fem"):
        rows = [r for r in report.rows if r.basis == basis]
        for prev, cur in zip(rows, rows[1:]):
            cur.order = convergence_order(prev.rel_err, cur.rel_err)
    report.rows.sort(key=lambda r: (r.basis != "wavelet", r.J))
    if cfg.out:
        report.write(cfg.out)
    return report


