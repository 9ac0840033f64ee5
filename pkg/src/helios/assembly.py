"""Galerkin systems for the cavity problem in the FEM and wavelet bases.

Unknowns are ordered x-major: index a * ny + b pairs x-function a with
y-function b.  The FEM matrix over Phi^x_J x Phi^y_J is

    kron(Mx, Ky) + kron(Kx, My) - k^2 kron(Mx, My) - kron(T, e e^T)

where e holds the y functions' values at y = 1 (only the right-free one is
nonzero).  The wavelet matrix is R A_fem R^T with R stacking the Kronecker
blocks of the refinement matrices.  Both are then scaled symmetrically so
every diagonal entry has modulus 1.  Per-level 2^{-j} factors of the basis
are dropped since the diagonal scaling absorbs any positive rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .catalog import FamilySpec, get_family
from .interval_basis import (LevelBasis, build_level_basis, cell_gram, cell_matrix,
                             refinement_matrices)
from .nonlocal_op import assemble_T_matrix, cell_quadrature
from .special import gauss_legendre_01

SOURCE_GL_ORDER = 8


@dataclass(frozen=True)
class Discretization:
    """The level-J 1D bases and the pieces shared by both systems."""

    family_id: str
    J: int
    kappa: float
    recombined: bool
    bx: LevelBasis
    by: LevelBasis
    Mx: sp.csr_matrix
    Kx: sp.csr_matrix
    My: sp.csr_matrix
    Ky: sp.csr_matrix
    T: np.ndarray
    e: np.ndarray

    @property
    def nx(self) -> int:
        return len(self.bx.phi)

    @property
    def ny(self) -> int:
        return len(self.by.phi)


@dataclass(frozen=True)
class AssembledSystem:
    kind: str  # "wavelet" or "fem"
    family_id: str
    J0: int
    J: int
    kappa: float
    matrix: sp.csr_matrix  # normalized
    rhs: np.ndarray  # normalized
    normalization: np.ndarray
    index_map: tuple
    R: sp.csr_matrix  # rows: basis functions, columns: Phi^x_J x Phi^y_J
    disc: Discretization = field(repr=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def fem_coefficients(self, y: np.ndarray) -> np.ndarray:
        """Map a solution of the normalized system to Phi_J coefficients (nx, ny)."""
        c = self.normalization * y
        return (self.R.T @ c).reshape(self.disc.nx, self.disc.ny)


# ---------------------------------------------------------------- 1D pieces
def gram_1d(basis: LevelBasis | list, level: int | None = None):
    """Exact mass and stiffness matrices of the level scaling functions."""
    if isinstance(basis, LevelBasis):
        funcs, level = basis.phi_functions, basis.level
    else:
        funcs = list(basis)
    C = cell_matrix(funcs, level)
    return cell_gram(C, level), cell_gram(C, level, derivative=True)


def discretize(family: FamilySpec | str, J: int, kappa: float,
               recombined: bool = False) -> Discretization:
    fid = family if isinstance(family, str) else family.family_id
    bx = build_level_basis(fid, "x", J, recombined)
    by = build_level_basis(fid, "y", J, recombined)
    Mx, Kx = gram_1d(bx)
    My, Ky = gram_1d(by)
    T = assemble_T_matrix(bx, kappa).matrix if kappa is not None else np.zeros((len(bx.phi),) * 2)
    e = np.array([f(1.0) for f in by.phi_functions])
    return Discretization(fid, J, float(kappa), recombined, bx, by, Mx, Kx, My, Ky, T, e)


# ---------------------------------------------------------------- transforms
def _level_mats(fid, variant, j, J, recombined):
    """Full (A, B) for level j into level J; identity A when j == J."""
    if j == J:
        n = len(build_level_basis(fid, variant, J, recombined).phi)
        return sp.identity(n, format="csr"), None
    rm = refinement_matrices(fid, variant, j, J, recombined)
    return rm.full_A(), rm.full_B()


def build_R_S(family: FamilySpec | str, J0: int, J: int, recombined: bool = False):
    """Wavelet transform R (rows = 2D basis) and trace transform S.

    Block order: Phi x Phi_nonfree, then per level (Psi x Phi, Phi x Psi,
    Psi x Psi) with non-free y factors, then the same with the y factor
    replaced by its right-free row.
    """
    fid = family if isinstance(family, str) else family.family_id
    spec = get_family(fid)
    if J0 < spec.J0_min or J < J0:
        raise ValueError(f"need {spec.J0_min} <= J0 <= J")
    bx = {j: build_level_basis(fid, "x", j, recombined) for j in range(J0, J + 1)}
    by = {j: build_level_basis(fid, "y", j, recombined) for j in range(J0, J + 1)}
    X = {j: _level_mats(fid, "x", j, J, recombined) for j in range(J0, J + 1)}
    Y = {j: _level_mats(fid, "y", j, J, recombined) for j in range(J0, J + 1)}

    blocks, tags = [], []
    s_blocks = []

    def add(xm, ym, xb, yb, j):
        blocks.append(sp.kron(xm, ym, format="csr"))
        tags.extend((j, tx.tag, ty.tag) for tx in xb for ty in yb)

    for free in (False, True):
        ax, _ = X[J0]
        ay, _ = Y[J0]
        ysel = slice(-1, None) if free else slice(None, -1)
        add(ax, ay[ysel], bx[J0].phi, by[J0].phi[ysel], J0)
        if free:
            s_blocks.append(2.0 ** (J0 / 2) * ax)
        for j in range(J0, J):
            axj, bxj = X[j]
            ayj, byj = Y[j]
            add(bxj, ayj[ysel], bx[j].psi, by[j].phi[ysel], j)
            add(axj, byj[ysel], bx[j].phi, by[j].psi[ysel], j)
            add(bxj, byj[ysel], bx[j].psi, by[j].psi[ysel], j)
            if free:
                s_blocks.append(2.0 ** (j / 2) * sp.vstack([bxj, axj, bxj]))
    R = sp.vstack(blocks).tocsr()
    S = sp.vstack(s_blocks).tocsr()
    return R, S, tuple(tags)


# ---------------------------------------------------------------- loads
def basis_values(funcs, x: np.ndarray) -> sp.csr_matrix:
    """Sparse (n_funcs, n_points) matrix of function values."""
    rows, cols, vals = [], [], []
    order = np.argsort(x)
    xs = x[order]
    for i, f in enumerate(funcs):
        lo, hi = (float(v) for v in f.support)
        i0, i1 = np.searchsorted(xs, lo, "left"), np.searchsorted(xs, hi, "right")
        idx = order[i0:i1]
        v = f(x[idx])
        nz = v != 0
        rows.extend([i] * int(nz.sum()))
        cols.extend(idx[nz].tolist())
        vals.extend(v[nz].tolist())
    return sp.csr_matrix((vals, (rows, cols)), shape=(len(funcs), x.size))


def cell_gauss_points(level: int, order: int = SOURCE_GL_ORDER):
    g, w = gauss_legendre_01(order)
    N = 2**level
    x = ((np.arange(N)[:, None] + g[None, :]) / N).ravel()
    return x, np.tile(w / N, N)


def source_load(disc: Discretization, f, order: int = SOURCE_GL_ORDER) -> np.ndarray:
    """[<f, vx vy>] as an (nx, ny) array (GL per finest cell)."""
    x, w = cell_gauss_points(disc.J, order)
    Ex = basis_values(disc.bx.phi_functions, x)
    Ey = basis_values(disc.by.phi_functions, x)
    X, Y = np.meshgrid(x, x, indexing="ij")
    F = np.asarray(f(X, Y)) * (w[:, None] * w[None, :])
    return np.asarray(Ex @ (Ey @ F.T).T)


def boundary_load(disc: Discretization, g) -> np.ndarray:
    """[<g, vx>] over the aperture.

    Interior cells use Gauss-Legendre; the two end cells use the DE rule
    because data built from T(u) carries x ln x behaviour at the corners.
    """
    N = 2**disc.J
    x, w = cell_gauss_points(disc.J)
    inner = (x > 1.0 / N) & (x < 1.0 - 1.0 / N)
    xd, wd = cell_quadrature(disc.J, de_level=5)
    # end-cell nodes can round onto 0 or 1; their weights are negligible
    edge = ((xd < 1.0 / N) | (xd > 1.0 - 1.0 / N)) & (xd > 0) & (xd < 1)
    xq = np.concatenate([x[inner], xd[edge]])
    wq = np.concatenate([w[inner], wd[edge]])
    gv = np.asarray(g(xq), dtype=complex)
    Ex = basis_values(disc.bx.phi_functions, xq)
    return np.asarray(Ex @ (wq * gv))


# ---------------------------------------------------------------- systems
def fem_matrix(disc: Discretization) -> sp.csr_matrix:
    k2 = disc.kappa**2
    A = (sp.kron(disc.Mx, disc.Ky) + sp.kron(disc.Kx, disc.My)
         - k2 * sp.kron(disc.Mx, disc.My)).astype(complex)
    ee = sp.csr_matrix(np.outer(disc.e, disc.e))
    A = A - sp.kron(sp.csr_matrix(disc.T), ee)
    return sp.csr_matrix(A)


def fem_rhs(disc: Discretization, f=None, g=None, g_load=None, f_load=None) -> np.ndarray:
    """vec(<g, vx> e - <f, vx vy>) in x-major order."""
    F = np.zeros((disc.nx, disc.ny), dtype=complex)
    if g_load is None and g is not None:
        g_load = boundary_load(disc, g)
    if g_load is not None:
        F += np.outer(g_load, disc.e)
    if f_load is None and f is not None:
        f_load = source_load(disc, f)
    if f_load is not None:
        F -= f_load
    return F.ravel()


def _normalize(A: sp.csr_matrix, b: np.ndarray):
    diag = np.abs(A.diagonal())
    if np.any(diag == 0):
        raise ZeroDivisionError("zero diagonal entry; basis function has zero energy")
    d = diag ** -0.5
    D = sp.diags(d)
    return sp.csr_matrix(D @ A @ D), d * b, d


def assemble_fem(family: FamilySpec | str, J: int, kappa: float, f=None, g=None,
                 recombined: bool = False, disc: Discretization | None = None,
                 loads: tuple | None = None) -> AssembledSystem:
    fid = family if isinstance(family, str) else family.family_id
    disc = disc or discretize(fid, J, kappa, recombined)
    A = fem_matrix(disc)
    gl, fl = loads if loads is not None else (None, None)
    b = fem_rhs(disc, f, g, g_load=gl, f_load=fl)
    An, bn, d = _normalize(A, b)
    n = disc.nx * disc.ny
    tags = tuple((J, tx.tag, ty.tag) for tx in disc.bx.phi for ty in disc.by.phi)
    return AssembledSystem("fem", fid, J, J, disc.kappa, An, bn, d, tags,
                           sp.identity(n, format="csr"), disc)


def assemble(family: FamilySpec | str, J0: int, J: int, kappa: float, f=None, g=None,
             recombined: bool = False, disc: Discretization | None = None,
             loads: tuple | None = None) -> AssembledSystem:
    """Wavelet system R A_fem R^T c = R F_fem, normalized."""
    fid = family if isinstance(family, str) else family.family_id
    disc = disc or discretize(fid, J, kappa, recombined)
    R, _, tags = build_R_S(fid, J0, J, recombined)
    A = sp.csr_matrix(R @ fem_matrix(disc) @ R.T)
    A.sum_duplicates()
    A.sort_indices()
    gl, fl = loads if loads is not None else (None, None)
    b = R @ fem_rhs(disc, f, g, g_load=gl, f_load=fl)
    An, bn, d = _normalize(A, b)
    return AssembledSystem("wavelet", fid, J0, J, disc.kappa, An, bn, d, tags, R, disc)


def loads_for(disc: Discretization, f=None, g=None) -> tuple:
    """Precompute (g_load, f_load) once for both systems at a level."""
    gl = boundary_load(disc, g) if g is not None else None
    fl = source_load(disc, f) if f is not None else None
    return gl, fl


def evaluate_coefficients(disc: Discretization, U: np.ndarray, x: np.ndarray,
                          y: np.ndarray) -> np.ndarray:
    """Values of sum U[a, b] vx_a(x) vy_b(y) on the tensor grid x by y."""
    Ex = basis_values(disc.bx.phi_functions, np.asarray(x, dtype=float))
    Ey = basis_values(disc.by.phi_functions, np.asarray(y, dtype=float))
    return np.asarray((Ex.T @ (Ey.T @ U.T).T))


def dump_triplets(system: AssembledSystem, path) -> None:
    """Write the normalized matrix and rhs as ``row col re im`` lines.

    Matrix entries first; then one line ``# rhs``; then ``row 0 re im`` for
    the right-hand side.
    """
    A = system.matrix.tocoo()
    with open(path, "w") as fh:
        fh.write(f"# {system.kind} {system.family_id} J0={system.J0} J={system.J} "
                 f"kappa={system.kappa:.17g} n={system.size} nnz={A.nnz}\n")
        for r, c, v in zip(A.row, A.col, A.data):
            fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")
        fh.write("# rhs\n")
        for i, v in enumerate(system.rhs):
            fh.write(f"{i} 0 {v.real:.17g} {v.imag:.17g}\n")
