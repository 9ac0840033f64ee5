import numpy as np
import pytest
import scipy.sparse as sp

from helios.assembly import (assemble, assemble_fem, build_R_S, discretize, dump_triplets,
                             fem_matrix, gram_1d, loads_for, source_load)
from helios.experiments import manufactured_data
from helios.krylov import direct_solve
from helios.interval_basis import build_level_basis

KAPPA = 4 * np.pi


@pytest.fixture(scope="module")
def sr3_small():
    u, f, g = manufactured_data(KAPPA)
    disc = discretize("sr3", 3, KAPPA)
    loads = loads_for(disc, f, g)
    w = assemble("sr3", 1, 3, KAPPA, disc=disc, loads=loads)
    fe = assemble_fem("sr3", 3, KAPPA, disc=disc, loads=loads)
    return disc, w, fe


def test_sizes_and_unit_diagonal(sr3_small):
    disc, w, fe = sr3_small
    assert w.size == fe.size == disc.nx * disc.ny == 15 * 16
    for s in (w, fe):
        assert np.abs(np.abs(s.matrix.diagonal()) - 1).max() <= 1e-14
        assert len(s.index_map) == s.size


def test_gram_symmetric_positive():
    M, K = gram_1d(build_level_basis("hmt", "y", 3))
    for G in (M, K):
        D = G.toarray()
        assert np.abs(D - D.T).max() <= 1e-14 * np.abs(D).max()
        assert np.linalg.eigvalsh(D)[0] > 0


def test_R_is_permutation_at_coarsest_level():
    R, _, _ = build_R_S("hmt", 4, 4)
    D = R.toarray()
    assert np.array_equal(np.sort(D.sum(axis=0)), np.ones(D.shape[0]))
    assert set(np.unique(D)) <= {0.0, 1.0}
    assert np.array_equal(D @ D.T, np.eye(D.shape[0]))


@pytest.mark.parametrize("fid,J0,J", [("sr3", 1, 3), ("r3", 1, 3), ("b3", 2, 4)])
def test_trace_block_through_S(fid, J0, J):
    disc = discretize(fid, J, KAPPA)
    R, S, _ = build_R_S(fid, J0, J)
    ee = sp.csr_matrix(np.outer(disc.e, disc.e))
    lhs = (R @ sp.kron(sp.csr_matrix(disc.T), ee) @ R.T).toarray()
    n, m = R.shape[0], S.shape[0]
    ref = np.zeros((n, n), complex)
    # the trace-coupled rows come last; right-free values are 2^{J/2}
    ref[n - m:, n - m:] = (S @ disc.T @ S.T) * (disc.e[-1] / 2 ** (J / 2)) ** 2
    assert np.abs(lhs - ref).max() <= 1e-9 * np.abs(ref).max()


def test_kronecker_action_matches_sparse(sr3_small):
    disc, _, _ = sr3_small
    A = fem_matrix(disc)
    rng = np.random.default_rng(1)
    X = rng.standard_normal((disc.nx, disc.ny)) + 1j * rng.standard_normal((disc.nx, disc.ny))
    Mx, Kx, My, Ky = (m.toarray() for m in (disc.Mx, disc.Kx, disc.My, disc.Ky))
    act = (Mx @ X @ Ky.T + Kx @ X @ My.T - KAPPA**2 * Mx @ X @ My.T
           - disc.T @ X @ np.outer(disc.e, disc.e).T)
    assert np.abs(A @ X.ravel() - act.ravel()).max() <= 1e-9 * np.abs(act).max()


def test_wavelet_and_fem_solutions_coincide(sr3_small):
    _, w, fe = sr3_small
    uw = w.fem_coefficients(direct_solve(w.matrix, w.rhs))
    uf = fe.fem_coefficients(direct_solve(fe.matrix, fe.rhs))
    assert np.abs(uw - uf).max() <= 1e-9 * np.abs(uf).max()


def test_source_load_converged_in_gl_order(sr3_small):
    disc, _, _ = sr3_small
    _, f, _ = manufactured_data(KAPPA)
    a, b = source_load(disc, f, 8), source_load(disc, f, 16)
    assert np.abs(a - b).max() <= 1e-10 * np.abs(b).max()


def test_zero_energy_function_is_rejected():
    from helios.assembly import _normalize
    with pytest.raises(ZeroDivisionError):
        _normalize(sp.csr_matrix(np.diag([1.0, 0.0])), np.ones(2))


def test_invalid_levels():
    with pytest.raises(ValueError):
        build_R_S("sr3", 3, 2)
    with pytest.raises(ValueError):
        build_R_S("hmt", 1, 4)


def test_triplet_dump(tmp_path, sr3_small):
    _, w, _ = sr3_small
    path = tmp_path / "sys.txt"
    dump_triplets(w, path)
    lines = path.read_text().splitlines()
    nnz = w.matrix.nnz
    rows = np.array([l.split() for l in lines[1:1 + nnz]], dtype=float)
    back = sp.coo_matrix((rows[:, 2] + 1j * rows[:, 3], (rows[:, 0].astype(int), rows[:, 1].astype(int))),
                         shape=w.matrix.shape)
    assert np.abs((back - w.matrix).toarray()).max() == 0
    assert lines[1 + nnz] == "# rhs"
    assert len(lines) == 2 + nnz + w.size
