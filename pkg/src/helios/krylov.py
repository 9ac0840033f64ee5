"""Full GMRES, direct solves and extreme singular values."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

EXACT_SVD_LIMIT = 20000


@dataclass(frozen=True)
class SolveReport:
    x: np.ndarray
    iterations: int
    converged: bool
    breakdown: bool
    residual_history: np.ndarray  # relative residual norms, entry 0 is 1
    message: str = ""


def gmres(A, b: np.ndarray, tol: float = 1e-8, max_iter: int | None = None) -> SolveReport:
    """Unrestarted GMRES from x0 = 0, stopping when ||r_k|| <= tol ||b||.

    Modified Gram-Schmidt with one reorthogonalization pass; Givens
    rotations give the residual norm without forming x each step.
    """
    b = np.asarray(b, dtype=complex)
    n = b.size
    max_iter = n if max_iter is None else min(max_iter, n)
    beta = np.linalg.norm(b)
    if beta == 0:
        return SolveReport(np.zeros(n, complex), 0, True, False, np.array([0.0]), "zero rhs")
    matvec = A.matvec if hasattr(A, "matvec") else (lambda v: A @ v)

    V = np.zeros((max_iter + 1, n), dtype=complex)
    H = np.zeros((max_iter + 1, max_iter), dtype=complex)
    cs = np.zeros(max_iter, dtype=complex)
    sn = np.zeros(max_iter, dtype=complex)
    g = np.zeros(max_iter + 1, dtype=complex)
    g[0] = beta
    V[0] = b / beta
    hist = [1.0]
    k = 0
    breakdown = False
    converged = False
    while k < max_iter:
        w = matvec(V[k])
        wnorm0 = np.linalg.norm(w)
        for _ in range(2):
            for i in range(k + 1):
                h = np.vdot(V[i], w)
                H[i, k] += h
                w = w - h * V[i]
        hn = np.linalg.norm(w)
        H[k + 1, k] = hn
        # rotation i maps (p, q) to (conj(c) p + conj(s) q, -s p + c q)
        for i in range(k):
            t = np.conj(cs[i]) * H[i, k] + np.conj(sn[i]) * H[i + 1, k]
            H[i + 1, k] = -sn[i] * H[i, k] + cs[i] * H[i + 1, k]
            H[i, k] = t
        a, c = H[k, k], H[k + 1, k]
        r = np.hypot(abs(a), abs(c))
        if r == 0:
            breakdown = True
            break
        cs[k] = a / r
        sn[k] = c / r
        H[k, k] = r
        H[k + 1, k] = 0
        g[k + 1] = -sn[k] * g[k]
        g[k] = np.conj(cs[k]) * g[k]
        k += 1
        hist.append(abs(g[k]) / beta)
        if hist[-1] <= tol:
            converged = True
            break
        if hn <= 1e-14 * max(wnorm0, 1.0):
            # invariant subspace without meeting tol: lucky only if residual small
            breakdown = True
            break
        V[k] = w / hn
    y = sla.solve_triangular(H[:k, :k], g[:k]) if k else np.zeros(0)
    x = V[:k].T @ y
    msg = "converged" if converged else ("breakdown" if breakdown else "max_iter reached")
    return SolveReport(x, k, converged, breakdown, np.array(hist), msg)


def direct_solve(A, b: np.ndarray) -> np.ndarray:
    b = np.asarray(b)
    dtype = np.result_type(A.dtype, b.dtype)
    if sp.issparse(A):
        return spla.splu(sp.csc_matrix(A, dtype=dtype)).solve(b.astype(dtype))
    return np.linalg.solve(np.asarray(A, dtype=dtype), b.astype(dtype))


@dataclass(frozen=True)
class SingularValues:
    sigma_max: float
    sigma_min: float
    mode: str

    @property
    def cond(self) -> float:
        return self.sigma_max / self.sigma_min


def extreme_singular_values(A, mode: str = "exact", tol: float = 1e-6) -> SingularValues:
    """Largest and smallest singular values.

    ``exact`` uses a dense SVD (N <= EXACT_SVD_LIMIT).  ``iterative`` uses
    Lanczos on A^H A for the top and shift-invert through a sparse LU of A
    for the bottom.
    """
    n = A.shape[0]
    if mode == "exact":
        if n > EXACT_SVD_LIMIT:
            raise ValueError(f"exact SVD limited to N <= {EXACT_SVD_LIMIT}")
        M = A.toarray() if sp.issparse(A) else np.asarray(A)
        s = sla.svd(M, compute_uv=False, check_finite=False, overwrite_a=True)
        return SingularValues(float(s[0]), float(s[-1]), mode)
    if mode != "iterative":
        raise ValueError(f"unknown mode {mode!r}")
    A = sp.csr_matrix(A)
    AH = A.conj().T.tocsr()
    top = spla.LinearOperator((n, n), matvec=lambda v: AH @ (A @ v), dtype=complex)
    lmax = spla.eigsh(top, k=1, which="LM", tol=tol, return_eigenvectors=False)[0]
    lu = spla.splu(sp.csc_matrix(A))

    def inv_normal(v):
        # (A^H A)^{-1} v = A^{-1} A^{-H} v
        return lu.solve(lu.solve(v, trans="H"))

    bot = spla.LinearOperator((n, n), matvec=inv_normal, dtype=complex)
    lmin_inv = spla.eigsh(bot, k=1, which="LM", tol=tol, return_eigenvectors=False)[0]
    return SingularValues(float(np.sqrt(lmax.real)), float(1.0 / np.sqrt(lmin_inv.real)), mode)
