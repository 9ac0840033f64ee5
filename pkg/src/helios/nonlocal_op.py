"""The nonlocal boundary operator on the aperture y = 1.

    T(v)(x) = int_0^1 K_r(x - x') v(x') dx' + (1/pi) fp int_0^1 v(x') / (x - x')^2 dx'

with K_r(s) = q0(s) + ln|s| q1(s).  Galerkin entries are assembled on the
finest dyadic cells: with x = h(m + t), x' = h(n + s) every cell pair only
depends on d = m - n, so each route builds one 4 x 4 block per d and the
trace functions enter through their local cubic coefficients.

Two routes for the hypersingular part:

* ``finite-part``: closed-form finite part of each inner cell at outer DE
  nodes.  Only d in {-1, 0, 1} needs it; farther cells use the full Hankel
  kernel with Gauss-Legendre.
* ``ibp``: for functions vanishing at 0 and 1, integrating by parts twice
  gives (1/pi) int int v'(x) w'(x') ln|x - x'|.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
from numpy.polynomial import chebyshev as C

from .interval_basis import LevelBasis, cell_matrix
from .piecewise import PiecewisePolynomial
from .special import (de_endpoint_rule, finite_part_poly, gauss_legendre_01, hankel_kernel,
                      q0, q1)

DE_LEVEL = 6
GL_ORDER = 20


@dataclass(frozen=True)
class BoundaryOperatorMatrix:
    matrix: np.ndarray
    kappa: float
    level: int
    method: str


def regular_kernel(s, kappa, log_abs_s=None):
    """K_r(s) = q0(s) + ln|s| q1(s); ``log_abs_s`` may be supplied when s is tiny."""
    s = np.asarray(s, dtype=float)
    ls = np.log(np.abs(s)) if log_abs_s is None else log_abs_s
    return q0(s, kappa) + ls * q1(s, kappa)


# ---------------------------------------------------------------- cell blocks
def _w_moments(t_lo, length, shift):
    """W[p, q] = int_{t_lo}^{t_lo+length} t^p (t - shift)^q dt per node (4-pt GL, exact)."""
    g, w = gauss_legendre_01(4)
    t = t_lo[:, None] + length[:, None] * g[None, :]
    ts = t - shift[:, None]
    P = t[:, :, None] ** np.arange(4)
    Q = ts[:, :, None] ** np.arange(4)
    return np.einsum("nk,nkp,nkq->npq", length[:, None] * w[None, :], P, Q)


def _half_nodes(d: int, half: str, singular: bool, de_level: int, gl_order: int):
    """Nodes of one half of u in [-1, 1] with stable d + u.

    Returns (weights, d_plus_u, t_lo, length, u).
    """
    if singular:
        r = de_endpoint_rule(de_level)
        x, xc, w = r.nodes, r.complement, r.weights
    else:
        x, w = gauss_legendre_01(gl_order)
        xc = 1.0 - x
    if half == "A":  # u = x in (0, 1), t in [u, 1]
        u = x
        dpu = {0: x, -1: -xc}.get(d, d + x)
        return w, dpu, x, xc, u
    u = -x  # u in (-1, 0), t in [0, 1 + u]
    dpu = {0: -x, 1: xc}.get(d, d - x)
    return w, dpu, np.zeros_like(x), xc, u


def _cell_block(kernel, d: int, h: float, de_level: int, gl_order: int) -> np.ndarray:
    """h^2 int_{-1}^{1} kernel(h (d + u), ln|h (d + u)|) W(u) du as a 4 x 4 block."""
    singular = abs(d) <= 1
    out = np.zeros((4, 4), dtype=complex)
    for half in ("A", "B"):
        w, dpu, t_lo, length, u = _half_nodes(d, half, singular, de_level, gl_order)
        s = h * dpu
        k = kernel(s, np.log(h) + np.log(np.abs(dpu)))
        W = _w_moments(t_lo, length, u)
        out += np.einsum("n,n,npq->pq", w, k, W)
    return h * h * out


def _toeplitz(blocks: np.ndarray, N: int) -> np.ndarray:
    """Assemble the 4N x 4N matrix whose (m, n) block is blocks[m - n + N - 1]."""
    m = np.arange(N)
    G = blocks[m[:, None] - m[None, :] + N - 1]  # (N, N, 4, 4)
    return G.transpose(0, 2, 1, 3).reshape(4 * N, 4 * N)


def _fp_cell(d: int, t: np.ndarray, tc: np.ndarray) -> np.ndarray:
    """F[q, p] = fp int_0^1 s^p / (s - D)^2 ds with D = d + t[q]."""
    if d == 0:
        D, a, b = t, -t, tc
    elif d == 1:
        D, a, b = 1.0 + t, -1.0 - t, -t
    elif d == -1:
        D, a, b = -tc, tc, 1.0 + tc
    else:
        raise ValueError("closed-form cells only for |d| <= 1")
    X = [1.0 / a - 1.0 / b, np.log(np.abs(b)) - np.log(np.abs(a)), b - a, 0.5 * (b * b - a * a)]
    F = np.zeros((t.size, 4))
    for p in range(4):
        for k in range(p + 1):
            F[:, p] += comb(p, k) * D ** (p - k) * X[k]
    return F


def _hyper_blocks(de_level: int) -> dict:
    r = de_endpoint_rule(de_level)
    t, tc, w = r.nodes, r.complement, r.weights
    T = t[:, None] ** np.arange(4)
    return {d: np.einsum("q,qa,qb->ab", w, T, _fp_cell(d, t, tc)) / np.pi for d in (-1, 0, 1)}


def cell_operator(kappa: float, level: int, method: str = "finite-part",
                  de_level: int = DE_LEVEL, gl_order: int = GL_ORDER) -> np.ndarray:
    """Operator on local cubic coefficients of all level cells (4N x 4N)."""
    N = 2**level
    h = 1.0 / N

    def k_reg(s, ls):
        return regular_kernel(s, kappa, ls)

    def k_full(s, ls):
        return hankel_kernel(s, kappa)

    blocks = np.zeros((2 * N - 1, 4, 4), dtype=complex)
    if method == "finite-part":
        hyper = _hyper_blocks(de_level)
        for d in range(-(N - 1), N):
            if abs(d) <= 1:
                blocks[d + N - 1] = _cell_block(k_reg, d, h, de_level, gl_order) + hyper[d]
            else:
                blocks[d + N - 1] = _cell_block(k_full, d, h, de_level, gl_order)
        return _toeplitz(blocks, N)
    if method == "ibp":
        lblocks = np.zeros_like(blocks)
        for d in range(-(N - 1), N):
            blocks[d + N - 1] = _cell_block(k_reg, d, h, de_level, gl_order)
            lblocks[d + N - 1] = _cell_block(lambda s, ls: ls + 0j, d, h, de_level, gl_order)
        # derivative of sum_p c_p t^p in x is (1/h) sum_p p c_p t^(p-1)
        Dl = np.zeros((4, 4))
        for p in range(1, 4):
            Dl[p, p - 1] = p / h
        Dbig = np.kron(np.eye(N), Dl)
        return _toeplitz(blocks, N) + Dbig @ _toeplitz(lblocks, N) @ Dbig.T / np.pi
    raise ValueError(f"unknown method {method!r}")


def assemble_T_matrix(trace_basis, kappa: float, level: int | None = None,
                      method: str = "finite-part", de_level: int = DE_LEVEL,
                      gl_order: int = GL_ORDER) -> BoundaryOperatorMatrix:
    """[<T(eta), zeta>] over the trace functions (rows zeta, columns eta).

    ``trace_basis`` is a LevelBasis (its scaling functions are used) or a
    list of piecewise polynomials living on level ``level`` cells.
    """
    if isinstance(trace_basis, LevelBasis):
        funcs, level = trace_basis.phi_functions, trace_basis.level
    else:
        funcs = list(trace_basis)
        if level is None:
            raise ValueError("level is required for a plain list of functions")
    Cm = cell_matrix(funcs, level)
    op = cell_operator(kappa, level, method, de_level, gl_order)
    M = np.asarray(Cm @ (Cm @ op.T).T)
    return BoundaryOperatorMatrix(M, float(kappa), level, method)


# ---------------------------------------------------------------- pointwise
def _split_points(x: float, breaks=()) -> list:
    pts = sorted({0.0, 1.0, x, *[float(b) for b in breaks if 0.0 < float(b) < 1.0]})
    out = [pts[0]]
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(1, int(np.ceil((b - a) * 16)))
        out.extend(list(a + (b - a) * np.arange(1, n) / n))
        out.append(b)
    return out


def _regular_part(f, kappa: float, x: float, breaks=()) -> complex:
    """int_0^1 K_r(x - x') f(x') dx' with the log point x at panel ends."""
    pts = _split_points(x, breaks)
    r = de_endpoint_rule(DE_LEVEL)
    g, gw = gauss_legendre_01(GL_ORDER)
    total = 0.0 + 0.0j
    for a, b in zip(pts[:-1], pts[1:]):
        L = b - a
        if L <= 0:
            continue
        if a == x or b == x:
            # distance to x via the node that is small at that end
            near = r.nodes if a == x else r.complement
            dist = L * near
            xs = x + dist if a == x else x - dist
            k = q0(dist, kappa) + np.log(dist) * q1(dist, kappa)
            total += L * np.dot(r.weights, k * f(xs))
        elif min(abs(a - x), abs(b - x)) < 0.5 * L:
            # x just outside the panel: DE resolves the nearby log
            lo_half = r.nodes < 0.5
            s = np.where(lo_half, (x - a) - L * r.nodes, (x - b) + L * r.complement)
            xs = np.where(lo_half, a + L * r.nodes, b - L * r.complement)
            total += L * np.dot(r.weights, regular_kernel(s, kappa) * f(xs))
        else:
            xs = a + L * g
            total += L * np.dot(gw, regular_kernel(x - xs, kappa) * f(xs))
    return complex(total)


def _cheb_fp(p, x: float) -> float:
    """fp int_0^1 p(x') / (x - x')^2 dx' for a polynomial p on [0, 1]."""
    dp, d2p = p.deriv(), p.deriv(2)
    px, dpx = p(x), dp(x)
    total = px * (-1.0 / x - 1.0 / (1.0 - x)) + dpx * (np.log1p(-x) - np.log(x))
    # remainder q(x') = int_0^1 (1 - tau) p''(x + tau (x' - x)) dtau
    n = max(8, p.degree() // 2 + 2)
    xs, ws = gauss_legendre_01(n)
    tau, tw = gauss_legendre_01(n)
    pts = x + tau[None, :] * (xs[:, None] - x)
    q = (d2p(pts) * (1.0 - tau[None, :])) @ tw
    return float(total + np.dot(ws, q))


def chebyshev_trace(u, kappa: float, degree: int | None = None):
    deg = degree if degree is not None else max(64, int(np.ceil(4 * kappa)))
    p = C.Chebyshev.interpolate(lambda t: np.real(u(t)), deg, domain=[0, 1])
    if np.iscomplexobj(u(np.array([0.5]))):
        pi = C.Chebyshev.interpolate(lambda t: np.imag(u(t)), deg, domain=[0, 1])
        return p, pi
    return p, None


def apply_T_to_trace(u, kappa: float, x, degree: int | None = None):
    """T(u)(x) for a smooth callable or a PiecewisePolynomial on [0, 1]."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros(xs.shape, dtype=complex)
    if isinstance(u, PiecewisePolynomial):
        lo, hi = (float(v) for v in u.support)
        for i, xi in enumerate(xs):
            fp = 0.0
            for k in range(len(u.breaks) - 1):
                c, d = float(u.breaks[k]), float(u.breaks[k + 1])
                fp += finite_part_poly(u.coeffs[k], c, d, xi)
            reg = _regular_part(u, kappa, xi, u.breaks)
            out[i] = reg + fp / np.pi
        return out if np.ndim(x) else complex(out[0])
    pr, pim = chebyshev_trace(u, kappa, degree)
    for i, xi in enumerate(xs):
        fp = _cheb_fp(pr, xi) + (1j * _cheb_fp(pim, xi) if pim is not None else 0.0)
        reg = _regular_part(lambda t: pr(t) + (1j * pim(t) if pim is not None else 0.0), kappa, xi)
        out[i] = reg + fp / np.pi
    return out if np.ndim(x) else complex(out[0])


def cell_quadrature(level: int, de_level: int = DE_LEVEL):
    """Per-cell DE nodes and weights on [0, 1] (robust to log ends)."""
    r = de_endpoint_rule(de_level)
    N = 2**level
    h = 1.0 / N
    x = ((np.arange(N)[:, None] + r.nodes[None, :]) * h).ravel()
    w = np.tile(r.weights * h, N)
    return x, w


def T_inner(u, v: PiecewisePolynomial, kappa: float, level: int) -> complex:
    """<T(u), v> by per-cell DE quadrature over v's support cells."""
    x, w = cell_quadrature(level)
    lo, hi = (float(b) for b in v.support)
    m = (x > lo) & (x < hi)
    return complex(np.dot(w[m] * v(x[m]), apply_T_to_trace(u, kappa, x[m])))
