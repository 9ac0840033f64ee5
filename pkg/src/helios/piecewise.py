"""Piecewise polynomials on dyadic breakpoints.

Every basis function in the package is stored as a list of polynomial
pieces in the local monomial basis ``(x - left)**k``.  Breakpoints are exact
``Fraction`` values so that dilations, shifts and partition merges never
drift; coefficients are doubles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, ceil
from typing import Iterable, Sequence

import numpy as np

MAX_DEGREE = 3


@lru_cache(maxsize=None)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def shift_scale(c: np.ndarray, a: float, s: float) -> np.ndarray:
    """Coefficients of ``q(u) = p(a + s*u)`` where ``p(y) = sum c[k] y**k``."""
    c = np.asarray(c, dtype=float)
    n = c.shape[-1]
    out = np.zeros_like(c)
    for k in range(n):
        for m in range(k + 1):
            out[..., m] += c[..., k] * comb(k, m) * a ** (k - m) * s**m
    return out


@dataclass(frozen=True, eq=False)
class PiecewisePolynomial:
    """Compactly supported piecewise polynomial.

    ``coeffs[i, k]`` multiplies ``(x - breaks[i])**k`` on ``[breaks[i], breaks[i+1])``.
    The last piece is closed on the right; the function is zero elsewhere.
    """

    breaks: tuple
    coeffs: np.ndarray

    def __post_init__(self):
        b = tuple(_as_fraction(v) for v in self.breaks)
        c = np.array(self.coeffs, dtype=float, copy=True)
        if c.ndim != 2:
            raise ValueError("coeffs must be 2-D")
        if len(b) and c.shape[0] != len(b) - 1:
            raise ValueError("need len(breaks) - 1 pieces")
        if any(b[i + 1] <= b[i] for i in range(len(b) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if c.shape[1] < MAX_DEGREE + 1:
            c = np.pad(c, ((0, 0), (0, MAX_DEGREE + 1 - c.shape[1])))
        if c.shape[1] > MAX_DEGREE + 1:
            if np.any(c[:, MAX_DEGREE + 1:] != 0):
                raise ValueError("degree exceeds 3")
            c = c[:, : MAX_DEGREE + 1]
        c.setflags(write=False)
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "coeffs", c)

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "PiecewisePolynomial":
        return cls((Fraction(0), Fraction(1)), np.zeros((1, 4)))

    @classmethod
    def from_global(cls, breaks: Sequence, polys: Sequence[Sequence[float]]):
        """Build from pieces given as ascending coefficients in the global ``x``."""
        b = [_as_fraction(v) for v in breaks]
        rows = []
        for i, p in enumerate(polys):
            p = np.zeros(4) + np.pad(np.asarray(p, float), (0, 4 - len(p)))
            rows.append(shift_scale(p, float(b[i]), 1.0))
        return cls(tuple(b), np.array(rows))

    # -- basic queries ----------------------------------------------------
    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breaks[0], self.breaks[-1]

    @property
    def degree(self) -> int:
        nz = np.nonzero(np.any(self.coeffs != 0, axis=0))[0]
        return int(nz[-1]) if nz.size else 0

    def _locate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        fb = np.array([float(v) for v in self.breaks])
        idx = np.searchsorted(fb, x, side="right") - 1
        idx = np.where(x == fb[-1], len(fb) - 2, idx)
        inside = (idx >= 0) & (idx < len(fb) - 1)
        return np.clip(idx, 0, len(fb) - 2), inside

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx, inside = self._locate(x)
        fb = np.array([float(v) for v in self.breaks])
        t = x - fb[idx]
        c = self.coeffs[idx]
        val = ((c[..., 3] * t + c[..., 2]) * t + c[..., 1]) * t + c[..., 0]
        return np.where(inside, val, 0.0)

    evaluate = __call__

    # -- algebra ----------------------------------------------------------
    def refine_to(self, breaks: Iterable) -> "PiecewisePolynomial":
        """Same function on a finer partition (outside pieces become zero)."""
        nb = sorted(set(_as_fraction(v) for v in breaks) | set(self.breaks))
        lo, hi = self.breaks[0], self.breaks[-1]
        rows = []
        for left, right in zip(nb[:-1], nb[1:]):
            if left >= lo and right <= hi:
                i = max(k for k in range(len(self.breaks) - 1) if self.breaks[k] <= left)
                rows.append(shift_scale(self.coeffs[i], float(left - self.breaks[i]), 1.0))
            else:
                rows.append(np.zeros(4))
        return PiecewisePolynomial(tuple(nb), np.array(rows))

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        nb = sorted(set(self.breaks) | set(other.breaks))
        a, b = self.refine_to(nb), other.refine_to(nb)
        return PiecewisePolynomial(a.breaks, a.coeffs + b.coeffs)

    def __mul__(self, s: float) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breaks, self.coeffs * float(s))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def compose_affine(self, s, t) -> "PiecewisePolynomial":
        """Return ``x -> p(s*x + t)`` for dyadic ``s != 0`` and ``t``."""
        s, t = _as_fraction(s), _as_fraction(t)
        if s == 0:
            raise ValueError("s must be nonzero")
        nb = [(b - t) / s for b in self.breaks]
        rows = []
        for i in range(len(self.breaks) - 1):
            if s > 0:
                rows.append(shift_scale(self.coeffs[i], 0.0, float(s)))
            else:
                width = float(self.breaks[i + 1] - self.breaks[i])
                rows.append(shift_scale(self.coeffs[i], width, float(s)))
        if s < 0:
            nb, rows = nb[::-1], rows[::-1]
        return PiecewisePolynomial(tuple(nb), np.array(rows))

    def dilate_translate(self, j: int, k: int) -> "PiecewisePolynomial":
        """``2**(j/2) p(2**j x - k)``."""
        if j < 0:
            raise ValueError("level must be nonnegative")
        return self.compose_affine(Fraction(2) ** j, -k) * 2.0 ** (j / 2)

    def reflect(self) -> "PiecewisePolynomial":
        """``x -> p(1 - x)``."""
        return self.compose_affine(-1, 1)

    def restrict(self, lo=None, hi=None) -> "PiecewisePolynomial":
        """Multiply by the indicator of ``[lo, hi]``."""
        a, b = self.support
        lo = a if lo is None else max(a, _as_fraction(lo))
        hi = b if hi is None else min(b, _as_fraction(hi))
        if hi <= lo:
            return PiecewisePolynomial.zero()
        r = self.refine_to([lo, hi])
        keep = [i for i in range(len(r.breaks) - 1) if r.breaks[i] >= lo and r.breaks[i + 1] <= hi]
        return PiecewisePolynomial(r.breaks[keep[0]: keep[-1] + 2], r.coeffs[keep])

    def trim(self, tol: float = 0.0) -> "PiecewisePolynomial":
        """Drop leading and trailing zero pieces."""
        nz = np.nonzero(np.any(np.abs(self.coeffs) > tol, axis=1))[0]
        if nz.size == 0:
            return PiecewisePolynomial.zero()
        i0, i1 = nz[0], nz[-1]
        return PiecewisePolynomial(self.breaks[i0: i1 + 2], self.coeffs[i0: i1 + 1])

    def derivative(self) -> "PiecewisePolynomial":
        c = self.coeffs
        d = np.zeros_like(c)
        d[:, :3] = c[:, 1:] * np.arange(1, 4)
        return PiecewisePolynomial(self.breaks, d)

    # -- integrals --------------------------------------------------------
    def integrate(self, weight=None, order: int = 4) -> float:
        """Integral of ``p * weight`` with per-piece Gauss-Legendre."""
        x, w = _gauss(order)
        total = 0.0
        for i in range(len(self.breaks) - 1):
            a, b = float(self.breaks[i]), float(self.breaks[i + 1])
            xs = 0.5 * (b - a) * (x + 1) + a
            vals = np.polyval(self.coeffs[i][::-1], xs - a)
            if weight is not None:
                vals = vals * weight(xs)
            total += 0.5 * (b - a) * np.dot(w, vals)
        return float(total)

    def values_on_cells(self, level: int, lo: int = 0, hi: int | None = None) -> np.ndarray:
        """Local coefficients on the level-``level`` dyadic cells ``lo..hi-1``.

        Returns ``(hi - lo, 4)`` with ``out[m, p]`` multiplying ``t**p`` where
        ``x = (lo + m + t) / 2**level``.
        """
        n = 2**level
        hi = n if hi is None else hi
        h = Fraction(1, n)
        out = np.zeros((hi - lo, 4))
        a, b = self.support
        for i in range(len(self.breaks) - 1):
            pl, pr = self.breaks[i], self.breaks[i + 1]
            m0 = max(lo, ceil(pl / h))
            m1 = min(hi, int(pr / h))
            for m in range(m0, m1):
                out[m - lo] = shift_scale(self.coeffs[i], float(m * h - pl), float(h))
        return out


def inner_product(p: PiecewisePolynomial, q: PiecewisePolynomial) -> float:
    """Exact ``<p, q>`` over the merged partition."""
    lo = max(p.support[0], q.support[0])
    hi = min(p.support[1], q.support[1])
    if hi <= lo:
        return 0.0
    nb = sorted(b for b in set(p.breaks) | set(q.breaks) if lo <= b <= hi)
    order = max(1, ceil((p.degree + q.degree + 1) / 2))
    x, w = _gauss(order)
    total = 0.0
    for left, right in zip(nb[:-1], nb[1:]):
        a, b = float(left), float(right)
        xs = 0.5 * (b - a) * (x + 1) + a
        total += 0.5 * (b - a) * np.dot(w, p(xs) * q(xs))
    return float(total)


def inner_product_d1(p: PiecewisePolynomial, q: PiecewisePolynomial) -> float:
    return inner_product(p.derivative(), q.derivative())


def moment(p: PiecewisePolynomial, k: int) -> float:
    """``int x**k p(x) dx``, exact for the degrees used here."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    order = max(1, ceil((p.degree + k + 1) / 2))
    return p.integrate(lambda x: x**k, order=order)


def continuity_defect(p: PiecewisePolynomial, ends: bool = True) -> float:
    """Largest jump over the breakpoints; ``ends`` also counts the drop to zero
    at the two support ends."""
    c = p.coeffs
    widths = np.array([float(p.breaks[i + 1] - p.breaks[i]) for i in range(len(p.breaks) - 1)])
    right_end = np.array([np.polyval(c[i][::-1], widths[i]) for i in range(len(widths))])
    left_end = c[:, 0]
    jumps = [abs(left_end[0]), abs(right_end[-1])] if ends else [0.0]
    jumps += list(np.abs(left_end[1:] - right_end[:-1]))
    return float(max(jumps))


@dataclass(frozen=True)
class VectorFunction:
    """Ordered components of a vector refinable function or multiwavelet."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not 1 <= len(self.components) <= 3:
            raise ValueError("vector functions here have 1, 2 or 3 components")

    @property
    def r(self) -> int:
        return len(self.components)

    def __getitem__(self, i) -> PiecewisePolynomial:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __call__(self, x) -> np.ndarray:
        return np.stack([c(x) for c in self.components])
