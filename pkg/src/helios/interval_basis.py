"""Interval bases Phi_j, Psi_j on (0, 1) and their refinement matrices.

Two variants per family: ``x`` vanishes at both ends, ``y`` vanishes at 0
only and carries one right-free function (last in every level set) with
value 1 at x = 1 before dilation.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .catalog import B4_RECOMBINATION, FamilySpec, Relation, get_family
from .piecewise import PiecewisePolynomial, VectorFunction, moment

REFINE_TOL = 1e-10
_DROP = 1e-13


@dataclass(frozen=True)
class Tag:
    kind: str  # "phi" or "psi"
    position: str  # "left", "interior", "right", "right-free"
    k: int
    comp: object  # component index for interior, generator name otherwise

    def label(self) -> str:
        return f"{self.kind}:{self.position}:{self.k}:{self.comp}"


@dataclass(frozen=True)
class BasisFunction:
    tag: Tag
    fn: PiecewisePolynomial


@dataclass(frozen=True)
class LevelBasis:
    family_id: str
    variant: str
    level: int
    phi: tuple
    psi: tuple

    @property
    def phi_functions(self) -> list:
        return [b.fn for b in self.phi]

    @property
    def psi_functions(self) -> list:
        return [b.fn for b in self.psi]


@dataclass(frozen=True)
class RefinementMatrices:
    """``Phi_j = A Phi_j'`` and ``Psi_j = B Phi_j'``.

    For the y variant ``A``/``B`` hold the rows of the non-free functions and
    ``A_R``/``B_R`` the single right-free row.
    """

    variant: str
    j: int
    j_prime: int
    A: sp.csr_matrix
    B: sp.csr_matrix
    A_R: sp.csr_matrix | None = None
    B_R: sp.csr_matrix | None = None

    @property
    def A_x(self):
        return self.A if self.variant == "x" else None

    @property
    def B_x(self):
        return self.B if self.variant == "x" else None

    def full_A(self) -> sp.csr_matrix:
        return self.A if self.A_R is None else sp.vstack([self.A, self.A_R]).tocsr()

    def full_B(self) -> sp.csr_matrix:
        return self.B if self.B_R is None else sp.vstack([self.B, self.B_R]).tocsr()


# ---------------------------------------------------------------- generators
@dataclass(frozen=True)
class Generators:
    """Level-0 functions on the real line (boundary ones already cut at 0)."""

    spec: FamilySpec
    recombined: bool
    phi: VectorFunction
    psi: VectorFunction
    left_phi: dict
    left_psi: dict


def _q(v) -> float:
    return float(Fraction(str(v)))


def _combine(terms) -> PiecewisePolynomial:
    out = None
    for c, f in terms:
        if c == 0:
            continue
        out = c * f if out is None else out + c * f
    return PiecewisePolynomial.zero() if out is None else out.trim()


def _expand(rel: Relation, phi: VectorFunction, left_phi: dict) -> PiecewisePolynomial:
    terms = [(_q(c), left_phi[name].compose_affine(2, 0)) for name, c in rel.boundary]
    for shift, row in rel.interior:
        for comp, c in enumerate(row):
            terms.append((_q(c), phi[comp].compose_affine(2, -shift)))
    return _combine(terms)


def _phi_from_pieces(spec: FamilySpec) -> VectorFunction:
    comps = []
    for breaks, polys in spec.phi_pieces:
        comps.append(PiecewisePolynomial.from_global(breaks, [[_q(c) for c in p] for p in polys]))
    return VectorFunction(comps)


def _psi_from_mask(spec: FamilySpec, phi: VectorFunction) -> VectorFunction:
    taps = spec.b.array()
    comps = []
    for l in range(spec.r):
        terms = []
        for i, k in enumerate(range(spec.b.lo, spec.b.hi + 1)):
            for m in range(spec.r):
                terms.append((2.0 * taps[i, l, m], phi[m].compose_affine(2, -k)))
        comps.append(_combine(terms))
    return VectorFunction(comps)


@lru_cache(maxsize=None)
def generators(family_id: str, recombined: bool = False) -> Generators:
    spec = get_family(family_id)
    if recombined and family_id != "b4":
        raise ValueError("the recombined variant exists only for b4")
    phi = _phi_from_pieces(spec)
    psi = _psi_from_mask(spec, phi)
    left = {}
    for name, combo in spec.left_phi.items():
        f = _combine([(_q(c), phi[comp].compose_affine(1, -shift)) for c, comp, shift in combo])
        left[name] = f.restrict(0, None).trim()
    # wavelets are defined through the printed generators
    left_psi = {name: _expand(rel, phi, left) for name, rel in spec.left_psi.items()}
    if recombined:
        left = {name: _combine([(_q(c), left[src]) for src, c in B4_RECOMBINATION[name]])
                for name in left}
    return Generators(spec, recombined, phi, psi, left, left_psi)


# ---------------------------------------------------------------- level sets
def _right(f: PiecewisePolynomial, j: int, sign: float = 1.0) -> PiecewisePolynomial:
    return (sign * f.reflect()).dilate_translate(j, 2**j - 1)


def _interior_range(j: int, rng: tuple) -> range:
    lo, off = rng
    return range(lo, 2**j - off + 1)


def _check_min_level(spec: FamilySpec, j: int):
    if j < spec.J0_min:
        raise ValueError(f"{spec.family_id}: level {j} is below the minimum {spec.J0_min}")


@lru_cache(maxsize=None)
def _build(family_id: str, variant: str, j: int, recombined: bool) -> LevelBasis:
    spec = get_family(family_id)
    _check_min_level(spec, j)
    if variant not in ("x", "y"):
        raise ValueError("variant must be 'x' or 'y'")
    g = generators(family_id, recombined)

    phi = [BasisFunction(Tag("phi", "left", 0, n), g.left_phi[n].dilate_translate(j, 0))
           for n in spec.phi_x_left]
    for k in _interior_range(j, spec.phi_interior):
        for c in range(spec.r):
            phi.append(BasisFunction(Tag("phi", "interior", k, c), g.phi[c].dilate_translate(j, k)))
    for n, sign in spec.phi_x_right:
        phi.append(BasisFunction(Tag("phi", "right", 2**j - 1, n), _right(g.left_phi[n], j, sign)))

    psi = [BasisFunction(Tag("psi", "left", 0, n), g.left_psi[n].dilate_translate(j, 0))
           for n in spec.psi_x_left]
    inner = [(k, c) for k in _interior_range(j, spec.psi_interior) for c in range(spec.r)]
    inner = sorted(set(inner) | set(spec.psi_extra))
    for k, c in inner:
        psi.append(BasisFunction(Tag("psi", "interior", k, c), g.psi[c].dilate_translate(j, k)))
    right = spec.psi_x_right if variant == "x" else spec.psi_y_right
    for n, sign in right:
        if variant == "y" and n == "L":
            f = g.left_psi["L"]
            psi.append(BasisFunction(Tag("psi", "right-free", 2**j - 1, "L"),
                                     _right(f * (1.0 / float(f(0.0))), j)))
        else:
            psi.append(BasisFunction(Tag("psi", "right", 2**j - 1, n), _right(g.left_psi[n], j, sign)))
    if variant == "y":
        f = g.left_phi["L"]
        phi.append(BasisFunction(Tag("phi", "right-free", 2**j - 1, "L"),
                                 _right(f * (1.0 / float(f(0.0))), j)))
    for b in phi + psi:
        lo, hi = b.fn.support
        if lo < 0 or hi > 1:
            raise ValueError(f"{family_id} level {j}: {b.tag.label()} leaves [0, 1]")
    return LevelBasis(family_id, variant, j, tuple(phi), tuple(psi))


def build_level_basis(spec: FamilySpec | str, variant: str, j: int,
                      recombined: bool = False) -> LevelBasis:
    """Ordered Phi_j and Psi_j: left block, interior by (k, component), right block."""
    fid = spec if isinstance(spec, str) else spec.family_id
    return _build(fid, variant, j, recombined)


# ---------------------------------------------------------------- cell algebra
def cell_matrix(functions, level: int) -> sp.csr_matrix:
    """Rows: local cubic coefficients of each function on the level cells."""
    n = 2**level
    rows, cols, vals = [], [], []
    for i, f in enumerate(functions):
        lo, hi = f.support
        m0 = max(0, int(np.floor(lo * n)))
        m1 = min(n, int(np.ceil(hi * n)))
        block = f.values_on_cells(level, m0, m1).ravel()
        nz = np.nonzero(block)[0]
        rows.extend([i] * nz.size)
        cols.extend((4 * m0 + nz).tolist())
        vals.extend(block[nz].tolist())
    return sp.csr_matrix((vals, (rows, cols)), shape=(len(functions), 4 * n))


def _local_mass() -> np.ndarray:
    p = np.arange(4)
    return 1.0 / (p[:, None] + p[None, :] + 1)


def _local_stiff() -> np.ndarray:
    p = np.arange(4)
    den = p[:, None] + p[None, :] - 1
    out = np.zeros((4, 4))
    m = den > 0
    out[m] = (p[:, None] * p[None, :])[m] / den[m]
    return out


def cell_gram(C: sp.csr_matrix, level: int, derivative: bool = False) -> sp.csr_matrix:
    n = 2**level
    h = 1.0 / n
    loc = _local_stiff() / h if derivative else _local_mass() * h
    W = sp.kron(sp.identity(n, format="csr"), sp.csr_matrix(loc), format="csr")
    return (C @ W @ C.T).tocsr()


def _drop_small(M: sp.spmatrix) -> sp.csr_matrix:
    M = sp.csr_matrix(M)
    if M.nnz:
        M.data[np.abs(M.data) < _DROP * max(1.0, np.abs(M.data).max())] = 0.0
        M.eliminate_zeros()
    return M


def _project(F: sp.csr_matrix, P: sp.csr_matrix) -> tuple[np.ndarray, float]:
    X, *_ = np.linalg.lstsq(P.T.toarray(), F.T.toarray(), rcond=None)
    X = X.T
    resid = np.abs(X @ P.toarray() - F.toarray()).max() if F.shape[0] else 0.0
    return X, float(resid)


@lru_cache(maxsize=None)
def _one_level(family_id: str, variant: str, j: int, recombined: bool):
    coarse = _build(family_id, variant, j, recombined)
    fine = _build(family_id, variant, j + 1, recombined)
    P = cell_matrix(fine.phi_functions, j + 1)
    A, ra = _project(cell_matrix(coarse.phi_functions, j + 1), P)
    B, rb = _project(cell_matrix(coarse.psi_functions, j + 1), P)
    if max(ra, rb) > REFINE_TOL:
        raise RuntimeError(f"{family_id}/{variant} level {j}: not refinable (residual {max(ra, rb):.2e})")
    return _drop_small(A), _drop_small(B)


def refinement_matrices(spec: FamilySpec | str, variant: str, j: int, j_prime: int,
                        recombined: bool = False) -> RefinementMatrices:
    """Chain one-level relations to get Phi_j = A Phi_j', Psi_j = B Phi_j'.

    One-level rows are obtained by projecting each level-j function onto the
    level-(j+1) scaling set in the exact cell-coefficient representation; a
    residual above ``REFINE_TOL`` means the set is not nested and raises.
    """
    fid = spec if isinstance(spec, str) else spec.family_id
    if j_prime <= j:
        raise ValueError("need j < j_prime")
    _check_min_level(get_family(fid), j)
    A, B = _one_level(fid, variant, j, recombined)
    for level in range(j + 1, j_prime):
        Al, _ = _one_level(fid, variant, level, recombined)
        A, B = _drop_small(A @ Al), _drop_small(B @ Al)
    if variant == "x":
        return RefinementMatrices("x", j, j_prime, A, B)
    return RefinementMatrices("y", j, j_prime, A[:-1], B[:-1], A[-1:], B[-1:])


# ---------------------------------------------------------------- checks
def printed_relation_residual(family_id: str, samples: int = 1025) -> dict:
    """Pointwise residual of every printed scaling-generator relation."""
    spec = get_family(family_id)
    g = generators(family_id)
    out = {}
    for name, rel in spec.phi_relations.items():
        rhs = _expand(rel, g.phi, g.left_phi)
        f = g.left_phi[name]
        hi = float(max(f.support[1], rhs.support[1]))
        x = np.linspace(0.0, hi, samples)
        out[name] = float(np.abs(f(x) - rhs(x)).max())
    return out


def refinability_residual(family_id: str, samples: int = 1024) -> float:
    """max |phi(x) - 2 sum_k a(k) phi(2x - k)| on dyadic samples."""
    spec = get_family(family_id)
    g = generators(family_id)
    lo = min(float(c.support[0]) for c in g.phi)
    hi = max(float(c.support[1]) for c in g.phi)
    x = lo + (hi - lo) * np.arange(samples) / samples
    taps = spec.a.array()
    rhs = np.zeros((spec.r, samples))
    for i, k in enumerate(range(spec.a.lo, spec.a.hi + 1)):
        rhs += 2.0 * taps[i] @ g.phi(2 * x - k)
    return float(np.abs(g.phi(x) - rhs).max())


def boundary_values(basis: LevelBasis) -> dict:
    """Values at 0 and 1 of every function, keyed by tag label."""
    return {b.tag.label(): (float(b.fn(0.0)), float(b.fn(1.0))) for b in basis.phi + basis.psi}


def _exact_poly_value(spec: FamilySpec, comp: int, x: Fraction) -> Fraction:
    """phi^comp(x) from the printed pieces in rational arithmetic, right-continuous."""
    breaks, polys = spec.phi_pieces[comp]
    for lo, hi, poly in zip(breaks, breaks[1:], polys):
        if lo <= x < hi:
            return sum((Fraction(str(c)) * x**n for n, c in enumerate(poly)), Fraction(0))
    return Fraction(0)


def exact_endpoint_values(family_id: str, recombined: bool = False) -> dict:
    """Values that must vanish, in rational arithmetic.

    Keys: left bc generators at 0+ and the interior translates nearest each
    end at that end.  Right generators are reflections of left ones, so
    their values at 1 are the same numbers.
    """
    spec = get_family(family_id)
    zero = Fraction(0)
    phi = lambda comp, x: _exact_poly_value(spec, comp, Fraction(x))
    left = {name: sum((Fraction(str(c)) * phi(comp, -shift) for c, comp, shift in combo), zero)
            for name, combo in spec.left_phi.items()}
    taps = spec.b.taps

    def psi(l, x):
        # psi^l(x) = 2 sum_k b(k)[l, m] phi^m(2x - k)
        return sum((2 * Fraction(str(taps[i][l][m])) * phi(m, 2 * Fraction(x) - k)
                    for i, k in enumerate(range(spec.b.lo, spec.b.hi + 1))
                    for m in range(spec.r)), zero)

    left_psi = {}
    for name, rel in spec.left_psi.items():
        v = sum((Fraction(str(c)) * left[b] for b, c in rel.boundary), zero)
        for shift, row in rel.interior:
            v += sum((Fraction(str(c)) * phi(m, -shift) for m, c in enumerate(row)), zero)
        left_psi[name] = v
    if recombined:
        left = {name: sum((Fraction(str(c)) * left[src] for src, c in B4_RECOMBINATION[name]), zero)
                for name in left}
    out = {}
    for n in spec.phi_x_left:
        out[f"phi:{n}(0)"] = left[n]
    for n in spec.psi_x_left:
        out[f"psi:{n}(0)"] = left_psi[n]
    k0, off = spec.phi_interior
    for m in range(spec.r):
        out[f"phi{m}(-{k0})"] = phi(m, -k0)
        out[f"phi{m}({off})"] = phi(m, off)
    k0, off = spec.psi_interior
    first = sorted({(k0, m) for m in range(spec.r)} | set(spec.psi_extra))
    for k, m in first:
        out[f"psi{m}(-{k})"] = psi(m, -k)
    for m in range(spec.r):
        out[f"psi{m}({off})"] = psi(m, off)
    return out


def boundary_wavelet_moments(family_id: str, variant: str = "x") -> dict:
    """Moments 0..vmo-1 of the boundary wavelets at the minimum level."""
    spec = get_family(family_id)
    basis = build_level_basis(family_id, variant, spec.J0_min)
    return {b.tag.label(): [moment(b.fn, k) for k in range(spec.sr)]
            for b in basis.psi if b.tag.position in ("left", "right")}


def level_sizes(spec: FamilySpec | str, variant: str, j: int) -> tuple[int, int]:
    b = build_level_basis(spec, variant, j)
    return len(b.phi), len(b.psi)


def truncated_transform(spec: FamilySpec | str, variant: str, J0: int, J: int,
                        scaled: bool = False, recombined: bool = False) -> sp.csr_matrix:
    """Rows of Phi_J0, Psi_J0, ..., Psi_{J-1} in the Phi_J coefficients.

    With ``scaled`` each level-j block carries the factor 2**-j.
    """
    blocks = []
    n = len(build_level_basis(spec, variant, J, recombined).phi)
    if J == J0:
        blocks.append(sp.identity(n, format="csr") * (2.0**-J0 if scaled else 1.0))
    else:
        rm = refinement_matrices(spec, variant, J0, J, recombined)
        blocks.append(rm.full_A() * (2.0**-J0 if scaled else 1.0))
        for j in range(J0, J):
            Bj = rm.full_B() if j == J0 else refinement_matrices(spec, variant, j, J, recombined).full_B()
            blocks.append(Bj * (2.0**-j if scaled else 1.0))
    return sp.vstack(blocks).tocsr()


def verify_riesz_bounds(spec: FamilySpec | str, variant: str, J0: int, J: int) -> tuple[float, float]:
    """Extreme eigenvalues of the H1 Gram matrix of the 2^-j scaled system."""
    fine = build_level_basis(spec, variant, J)
    C = cell_matrix(fine.phi_functions, J)
    G = cell_gram(C, J) + cell_gram(C, J, derivative=True)
    R = truncated_transform(spec, variant, J0, J, scaled=True)
    M = (R @ G @ R.T).toarray()
    ev = np.linalg.eigvalsh(0.5 * (M + M.T))
    return float(ev[0]), float(ev[-1])


def dump_basis(spec: FamilySpec | str, variant: str, j: int, path, samples: int = 257):
    """CSV with columns tag, x, value for every function of Phi_j and Psi_j."""
    b = build_level_basis(spec, variant, j)
    x = np.linspace(0.0, 1.0, samples)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["tag", "x", "value"])
        for item in b.phi + b.psi:
            for xi, v in zip(x, item.fn(x)):
                w.writerow([item.tag.label(), f"{xi:.10g}", f"{v:.16g}"])
