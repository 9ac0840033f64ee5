import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, strategies as st

from helios.krylov import EXACT_SVD_LIMIT, direct_solve, extreme_singular_values, gmres


def test_identity_one_iteration():
    b = np.arange(1.0, 6.0)
    rep = gmres(sp.identity(5, format="csr"), b)
    assert rep.iterations == 1 and rep.converged
    assert np.allclose(rep.x, b)


def test_diagonal_within_dimension():
    A = np.diag([1.0, 2.0, 3.0, 4.0, 5.0])
    rep = gmres(A, np.ones(5), tol=1e-14)
    assert rep.iterations <= 5 and rep.converged


@given(st.integers(0, 10**6), st.integers(5, 40))
def test_history_non_increasing_and_accurate(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 2 * n**0.5 * np.eye(n)
    b = rng.standard_normal(n) + 0j
    rep = gmres(A, b, tol=1e-10)
    h = rep.residual_history
    assert np.all(np.diff(h) <= 1e-14)
    assert rep.converged
    assert np.linalg.norm(A @ rep.x - b) <= 1e-9 * np.linalg.norm(b)


def test_breakdown_reported_distinctly():
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    rep = gmres(A, np.array([1.0, 0.0]))
    assert rep.breakdown and not rep.converged


def test_max_iter_not_converged():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((30, 30))
    rep = gmres(A, np.ones(30), max_iter=3)
    assert rep.iterations == 3 and not rep.converged and not rep.breakdown


def test_direct_solve_residual():
    rng = np.random.default_rng(4)
    A = sp.random(200, 200, density=0.05, random_state=4) + 10 * sp.identity(200)
    b = rng.standard_normal(200)
    x = direct_solve(A.tocsr(), b)
    assert np.linalg.norm(A @ x - b) <= 1e-10 * np.linalg.norm(b)
    assert np.allclose(direct_solve(np.eye(3), np.ones(3)), 1)


def test_gmres_agrees_with_direct():
    rng = np.random.default_rng(5)
    A = sp.random(300, 300, density=0.02, random_state=5) + 4 * sp.identity(300)
    A = A.tocsr().astype(complex)
    b = rng.standard_normal(300) + 0j
    x = direct_solve(A, b)
    assert np.linalg.norm(gmres(A, b).x - x) <= 1e-6 * np.linalg.norm(x)


def test_singular_values_small():
    s = extreme_singular_values(np.diag([3.0, 1.0, 0.5]))
    assert (s.sigma_max, s.sigma_min) == pytest.approx((3.0, 0.5))
    assert s.cond == pytest.approx(6.0)


def test_iterative_matches_exact():
    rng = np.random.default_rng(6)
    A = rng.standard_normal((500, 500)) + 1j * rng.standard_normal((500, 500))
    e = extreme_singular_values(A, "exact")
    i = extreme_singular_values(sp.csr_matrix(A), "iterative")
    assert i.sigma_max == pytest.approx(e.sigma_max, rel=1e-4)
    assert i.sigma_min == pytest.approx(e.sigma_min, rel=1e-4)


def test_exact_mode_size_limit():
    with pytest.raises(ValueError):
        extreme_singular_values(sp.identity(EXACT_SVD_LIMIT + 1, format="csr"), "exact")
    with pytest.raises(ValueError):
        extreme_singular_values(np.eye(2), "lanczos")
