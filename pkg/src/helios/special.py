"""Bessel functions, kernel pieces and quadrature rules.

Kernel convention: for s != 0,

    i k H1(k|s|) / (2|s|) = q0(s) + ln|s| q1(s) + 1 / (pi s^2)

with q0, q1 even and analytic.  q0 uses its power series when k|s| is small,
where the three singular terms of the direct formula cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np
from scipy import special as sps

Q0_SERIES_SWITCH = 1.0
_Q0_TERMS = 24


def bessel_j1(x):
    return sps.j1(x)


def bessel_y1(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Y1 is defined for x > 0 only")
    return sps.y1(x)


def hankel1_1(x):
    x = np.asarray(x, dtype=float)
    return bessel_j1(x) + 1j * bessel_y1(x)


@lru_cache(maxsize=None)
def _q0_series_coeffs(kappa: float) -> np.ndarray:
    """c[m] with q0(s) = sum_m c[m] (k s / 2)^(2m)."""
    out = np.zeros(_Q0_TERMS, dtype=complex)
    for m in range(_Q0_TERMS):
        base = (-1) ** m / (factorial(m) * factorial(m + 1))
        dig = (sps.digamma(m + 1) + sps.digamma(m + 2)) / (2 * np.pi)
        out[m] = 0.5 * kappa**2 * base * (0.5j - np.log(kappa / 2) / np.pi + dig)
    return out


def q0_series(s, kappa: float):
    z2 = (0.5 * kappa * np.asarray(s, dtype=float)) ** 2
    c = _q0_series_coeffs(float(kappa))
    acc = np.zeros_like(z2, dtype=complex)
    for m in range(len(c) - 1, -1, -1):
        acc = acc * z2 + c[m]
    return acc


def q0_direct(s, kappa: float):
    a = np.abs(np.asarray(s, dtype=float))
    z = kappa * a
    return (1j * kappa * hankel1_1(z) / (2 * a) + kappa * sps.j1(z) * np.log(a) / (np.pi * a)
            - 1.0 / (np.pi * a**2))


def q0(s, kappa: float, switch: float = Q0_SERIES_SWITCH):
    s = np.asarray(s, dtype=float)
    small = np.abs(kappa * s) < switch
    out = np.empty(s.shape, dtype=complex)
    out[small] = q0_series(s[small], kappa)
    if np.any(~small):
        out[~small] = q0_direct(s[~small], kappa)
    return out if out.ndim else complex(out)


def q1(s, kappa: float):
    s = np.abs(np.asarray(s, dtype=float))
    z = kappa * s
    safe = np.where(z > 0, s, 1.0)
    small = kappa**2 * (-1.0 / (2 * np.pi)) * (1 - z**2 / 8 + z**4 / 192 - z**6 / 9216)
    out = np.where(z < 1e-3, small, -kappa * sps.j1(z) / (np.pi * safe))
    return out if out.ndim else float(out)


def hankel_kernel(s, kappa: float):
    """i k H1(k|s|) / (2|s|) evaluated directly."""
    a = np.abs(np.asarray(s, dtype=float))
    return 1j * kappa * hankel1_1(kappa * a) / (2 * a)


# ---------------------------------------------------------------- quadrature
@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    # for rules on (0, 1): 1 - nodes computed without cancellation
    complement: np.ndarray | None = None

    def integrate(self, f) -> float:
        return np.dot(self.weights, f(self.nodes))


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point rule on [-1, 1]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(x, w, f"gauss_legendre({n})")


def gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    r = gauss_legendre(n)
    return 0.5 * (r.nodes + 1), 0.5 * r.weights


@lru_cache(maxsize=None)
def de_endpoint_rule(level: int, t_max: float = 3.2) -> QuadratureRule:
    """tanh-sinh rule on (0, 1) built for endpoint singularities.

    Node x(t) = 1 / (1 + exp(-pi sinh t)); the step halves per level.
    ``complement`` stores 1 - x evaluated as 1 / (1 + exp(pi sinh t)).
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    h = 2.0 ** (-(level - 2))
    n = int(np.ceil(t_max / h))
    t = h * np.arange(-n, n + 1)
    u = np.pi * np.sinh(t)
    x = 1.0 / (1.0 + np.exp(-u))
    xc = 1.0 / (1.0 + np.exp(u))
    w = h * np.pi * np.cosh(t) * x * xc
    keep = (x > 0) & (xc > 0) & (w > 0)
    x, xc, w = x[keep], xc[keep], w[keep]
    for a in (x, xc, w):
        a.setflags(write=False)
    return QuadratureRule(x, w, f"double_exponential(h={h:g}, level={level})", xc)


# ---------------------------------------------------------------- finite part
def _taylor_about(coeffs, c: float, x: float) -> np.ndarray:
    """Coefficients of v in powers of (x' - x), v given in powers of (x' - c)."""
    c0 = np.asarray(coeffs, dtype=float)
    d = x - c
    out = np.zeros(4)
    for k in range(len(c0)):
        for m in range(k + 1):
            out[m] += c0[k] * _binom(k, m) * d ** (k - m)
    return out


def _binom(n, k):
    return factorial(n) // (factorial(k) * factorial(n - k))


def finite_part_poly(coeffs, c: float, d: float, x: float) -> float:
    """Hadamard finite part of int_c^d v(x') / (x - x')^2 dx'.

    ``coeffs`` are ascending powers of ``(x' - c)``.  Handles x inside,
    outside or at an endpoint of [c, d]; at an endpoint the divergent
    pieces are dropped, matching the symmetric epsilon limit of the whole
    line integral once neighbouring pieces are added.
    """
    v = _taylor_about(coeffs, c, x)
    a, b = c - x, d - x
    total = 0.0
    # k = 0: int da / u^2 = 1/a - 1/b
    if a != 0:
        total += v[0] / a
    if b != 0:
        total -= v[0] / b
    # k = 1: int du / u = ln|b| - ln|a|
    if v[1] != 0:
        total += v[1] * ((np.log(abs(b)) if b != 0 else 0.0) - (np.log(abs(a)) if a != 0 else 0.0))
    for k in range(2, 4):
        total += v[k] * (b ** (k - 1) - a ** (k - 1)) / (k - 1)
    return float(total)


def finite_part_oracle(coeffs, c: float, d: float, x: float,
                       eps=(1e-3, 5e-4, 2.5e-4)) -> float:
    """Epsilon-limit bracket with Richardson extrapolation, x interior.

    The bracket is int_c^{x-e} + int_{x+e}^d - 2 v(x)/e; each integral is done
    by high-order Gauss-Legendre after the substitution u = ln|x - x'|, which
    is smooth.  The error is O(e) with an O(e^2) tail, so two Richardson
    steps remove both.
    """
    if not c < x < d:
        raise ValueError("oracle needs an interior point")
    p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))
    gx, gw = np.polynomial.legendre.leggauss(80)

    def side(lo_dist, hi_dist, sign):
        # int over dist in [lo, hi] of v(x + sign*dist) / dist^2, dist = e^u
        ua, ub = np.log(lo_dist), np.log(hi_dist)
        u = 0.5 * (ub - ua) * (gx + 1) + ua
        dist = np.exp(u)
        return 0.5 * (ub - ua) * np.dot(gw, p(x + sign * dist - c) / dist)

    vals = []
    for e in eps:
        vals.append(side(e, d - x, 1) + side(e, x - c, -1) - 2 * p(x - c) / e)
    r1 = [(e0 * v1 - e1 * v0) / (e0 - e1) for (e0, v0), (e1, v1) in
          zip(zip(eps, vals), zip(eps[1:], vals[1:]))]
    if len(r1) == 1:
        return float(r1[0])
    # second step: remaining error ~ e^2
    a0, a1 = eps[0] * eps[1], eps[1] * eps[2]
    return float((a0 * r1[1] - a1 * r1[0]) / (a0 - a1))
