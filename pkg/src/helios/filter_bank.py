"""Biorthogonal filter-bank checks done on tap coefficients.

Every frequency-domain identity is expanded into finite sums over taps, so
nothing here samples xi.  Conventions: u_hat(xi) = sum_k u(k) exp(-i k xi),
phi = 2 sum_k a(k) phi(2. - k).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .catalog import FamilySpec, Mask, get_family, parse_complex


@dataclass(frozen=True)
class FilterBank:
    family_id: str
    a: Mask
    b: Mask
    a_dual: Mask
    b_dual: Mask
    phi_hat0: np.ndarray | None = None
    phi_dual_hat0: np.ndarray | None = None
    jets: np.ndarray | None = None
    jets_dual: np.ndarray | None = None

    @property
    def r(self) -> int:
        return self.a.r

    @classmethod
    def from_family(cls, spec: FamilySpec | str) -> "FilterBank":
        if isinstance(spec, str):
            spec = get_family(spec)

        def vec(v):
            return np.array([parse_complex(s) for s in v])

        def jets(j):
            return None if j is None else np.array([vec(row) for row in j])

        return cls(spec.family_id, spec.a, spec.b, spec.a_dual, spec.b_dual,
                   vec(spec.phi_hat0), vec(spec.phi_dual_hat0),
                   jets(spec.jets), jets(spec.jets_dual))

    @classmethod
    def haar(cls) -> "FilterBank":
        lo = Mask(0, (((0.5,),), ((0.5,),)))
        hi = Mask(0, (((0.5,),), ((-0.5,),)))
        return cls("haar", lo, hi, lo, hi, np.array([1.0]), np.array([1.0]),
                   np.array([[1.0]]), np.array([[1.0]]))


def _taps(m: Mask) -> dict:
    arr = m.array()
    return {m.lo + i: arr[i] for i in range(arr.shape[0])}


def _correlate(dual: Mask, primal: Mask, n: int) -> np.ndarray:
    """2 sum_l dual(l + 2n) primal(l)^T."""
    d, p = _taps(dual), _taps(primal)
    out = np.zeros((dual.r, primal.r))
    for l, pl in p.items():
        dl = d.get(l + 2 * n)
        if dl is not None:
            out += dl @ pl.T
    return 2.0 * out


def perfect_reconstruction_residual(fb: FilterBank) -> float:
    """Max coefficient residual of the 2r x 2r perfect reconstruction identity."""
    masks = (fb.a, fb.b, fb.a_dual, fb.b_dual)
    if len({m.r for m in masks}) != 1:
        raise ValueError("masks of a filter bank must share the dimension r")
    r = fb.r
    lo = min(m.lo for m in masks) - max(m.hi for m in masks)
    hi = max(m.hi for m in masks) - min(m.lo for m in masks)
    worst = 0.0
    for n in range(lo // 2 - 1, hi // 2 + 2):
        eye = np.eye(r) if n == 0 else np.zeros((r, r))
        for dual, primal, target in ((fb.a_dual, fb.a, eye), (fb.b_dual, fb.b, eye),
                                     (fb.a_dual, fb.b, 0 * eye), (fb.b_dual, fb.a, 0 * eye)):
            worst = max(worst, float(np.abs(_correlate(dual, primal, n) - target).max()))
    return worst


def _symbol_at(m: Mask, shift_pi: bool = False) -> np.ndarray:
    out = np.zeros((m.r, m.r))
    for k, t in _taps(m).items():
        out += t * ((-1) ** k if shift_pi else 1)
    return out


def lowpass_moment_conditions(fb: FilterBank) -> dict:
    """Residuals of the xi = 0 conditions tying masks to phi_hat(0)."""
    p, pd = fb.phi_hat0, fb.phi_dual_hat0
    return {
        "eigen": float(np.abs(_symbol_at(fb.a) @ p - p).max()),
        "eigen_dual": float(np.abs(_symbol_at(fb.a_dual) @ pd - pd).max()),
        "highpass": float(np.abs(_symbol_at(fb.b) @ p).max()),
        "highpass_dual": float(np.abs(_symbol_at(fb.b_dual) @ pd).max()),
        "pairing": complex(np.conj(p) @ pd),
    }


def _symbol_derivative(m: Mask, order: int, shift_pi: bool) -> np.ndarray:
    out = np.zeros((m.r, m.r), dtype=complex)
    for k, t in _taps(m).items():
        sign = (-1) ** k if shift_pi else 1
        out += t * sign * (-1j * k) ** order
    return out


def sum_rule_order(mask: Mask, jets, m: int) -> float:
    """Max residual of the order-m sum rules with matching filter jets.

    ``jets[n]`` is the n-th derivative at 0 of the matching filter.  Checks
    [v(2.) a]^(j)(0) = v^(j)(0) and [v(2.) a(. + pi)]^(j)(0) = 0 for j < m.
    """
    if jets is None or len(jets) < m:
        raise ValueError(f"need {m} matching-filter jets, got {0 if jets is None else len(jets)}")
    jets = np.asarray(jets, dtype=complex)
    worst = 0.0
    for j in range(m):
        for shift_pi, target in ((False, jets[j]), (True, np.zeros_like(jets[j]))):
            acc = np.zeros(mask.r, dtype=complex)
            for n in range(j + 1):
                acc += comb(j, n) * 2.0 ** n * jets[n] @ _symbol_derivative(mask, j - n, shift_pi)
            worst = max(worst, float(np.abs(acc - target).max()))
    return worst


def scalar_sum_rule_residual(mask: Mask, m: int) -> float:
    """Scalar masks: a_hat(. + pi) has a zero of order m at 0."""
    if mask.r != 1:
        raise ValueError("scalar criterion needs r = 1")
    return max(abs(complex(_symbol_derivative(mask, n, True)[0, 0])) for n in range(m))
