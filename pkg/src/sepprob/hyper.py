"""Regularized hypergeometric evaluation used by the chi-function formulas.

Two regimes cover everything needed here:

* terminating series (a numerator parameter is a nonpositive integer):
  summed exactly over Fractions, returning polynomial coefficients;
* non-terminating series (odd division-ring dimension): summed in float
  over an array of arguments with a geometric tail certificate, plus an
  mpmath fallback for the slowly convergent z = 1 endpoint.

"Regularized" means each term is divided by Gamma(b + n) for the lower
parameters, so lower-parameter poles are harmless.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np


def poch(a: Fraction, n: int) -> Fraction:
    """Pochhammer symbol (a)_n over exact rationals."""
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def hyp3f2_reg_poly(a: tuple[int, int, int], b: tuple[int, int]) -> list[Fraction]:
    """Coefficients of the terminating regularized 3F2 as a polynomial in z.

    Requires at least one nonpositive-integer numerator parameter and
    positive-integer denominator parameters (the only case arising from
    the even-d master formulas).
    """
    stops = [-ai for ai in a if ai <= 0]
    if not stops:
        raise ValueError("series does not terminate: no nonpositive numerator parameter")
    n_terms = min(stops) + 1
    if any(bi <= 0 for bi in b):
        raise ValueError("expected positive integer lower parameters")
    coeffs = []
    for n in range(n_terms):
        num = poch(Fraction(a[0]), n) * poch(Fraction(a[1]), n) * poch(Fraction(a[2]), n)
        den = (math.factorial(b[0] + n - 1) * math.factorial(b[1] + n - 1)
               * math.factorial(n))
        coeffs.append(num / den)
    return coeffs


def hyp3f2_reg_series(a: tuple[float, float, float], b: tuple[float, float],
                      z: np.ndarray, rtol: float = 1e-18,
                      max_terms: int = 2_000_000) -> np.ndarray:
    """Regularized 3F2 summed termwise over an array of z in [0, 1).

    Terms are advanced by the ratio recurrence; an element is retired once
    the geometric tail bound  |t|*r/(1-r)  drops below rtol times its
    partial sum.  Arguments at z = 1 must go through
    :func:`hyp3f2_reg_endpoint` instead.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z >= 1.0) or np.any(z < 0.0):
        raise ValueError("series evaluation requires 0 <= z < 1")
    flat = z.ravel()
    t = np.full(flat.shape, 1.0 / (math.gamma(b[0]) * math.gamma(b[1])))
    total = t.copy()
    active = np.arange(flat.size)
    zz = flat.copy()
    n = 0
    while active.size and n < max_terms:
        ratio = ((a[0] + n) * (a[1] + n) * (a[2] + n)
                 / ((b[0] + n) * (b[1] + n) * (n + 1.0)))
        t = t * ratio * zz
        total[active] += t
        if n > max(abs(a[0]), abs(a[1]), abs(a[2])):
            # past all numerator roots the step ratio increases toward z from
            # below, so max(z, current ratio*z) bounds every later step
            r = np.minimum(np.maximum(zz, abs(ratio) * zz), 1.0 - 1e-12)
            tail = np.abs(t) * r / (1.0 - r)
            live = tail > rtol * np.abs(total[active])
            if not live.all():
                active = active[live]
                t = t[live]
                zz = zz[live]
        n += 1
    if active.size:
        raise ArithmeticError("3F2 series failed to converge within max_terms")
    return total.reshape(z.shape)


def hyp3f2_reg_endpoint(a: tuple[float, float, float], b: tuple[float, float]) -> float:
    """Regularized 3F2 at z = 1 (convergent but too slow for naive summation)."""
    with mpmath.workdps(30):
        v = mpmath.hyp3f2(a[0], a[1], a[2], b[0], b[1], 1)
        v /= mpmath.gamma(b[0]) * mpmath.gamma(b[1])
        return float(v)


def hyp2f1_poly_coeffs(c: Fraction, k: int) -> list[Fraction]:
    """Coefficients of the terminating 2F1(c, -k; c+1; w) in powers of w."""
    return [poch(c, j) * poch(Fraction(-k), j) / (poch(c + 1, j) * math.factorial(j))
            for j in range(k + 1)]
