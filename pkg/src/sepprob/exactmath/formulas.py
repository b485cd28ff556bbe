"""Closed-form volumes, separability probabilities, and chi functions.

Every operation here evaluates a fixed formula catalog exactly (big-integer
rationals, radicals carried symbolically) or, where a result is genuinely
irrational, to a requested number of digits via mpmath.  Gamma ratios with
half-integer arguments are telescoped into Pochhammer-style products so
that rational answers come out as exact rationals; the stray sqrt(pi)
factors cancel identically.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np

from .. import hyper
from .values import PiRational, RadicalPiRational


class CatalogMiss(LookupError):
    """Requested (d, k) has no closed form; use quadrature.chi_numeric."""


# ---------------------------------------------------------------------------
# gamma-function plumbing over exact rationals
# ---------------------------------------------------------------------------

def gamma_half_exact(twice: int) -> tuple[Fraction, int]:
    """Gamma(twice/2) as ``(rational, e)`` meaning ``rational * sqrt(pi)**e``.

    ``twice`` must be a positive integer; e is 1 exactly when it is odd.
    """
    if twice <= 0:
        raise ValueError("gamma argument must be positive")
    if twice % 2 == 0:
        return Fraction(math.factorial(twice // 2 - 1)), 0
    m = (twice - 1) // 2  # Gamma(m + 1/2)
    return Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m)), 1


def _require_int(name: str, value) -> int:
    if int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


# ---------------------------------------------------------------------------
# volume formulas
# ---------------------------------------------------------------------------

def volume_lebesgue(field: str, n: int) -> PiRational:
    """Lebesgue-measure volume of the n x n density matrices over a field.

    ``field`` is "C", "R" or "H"; for "R" the argument is the
    half-dimension l (matrix size 2l).  The complex and quaternionic cases
    take the matrix dimension N directly.
    """
    f = field.upper()
    if f == "C":
        if n < 2:
            raise ValueError("complex case requires N >= 2")
        num = math.prod(math.factorial(i) for i in range(1, n))
        return PiRational(Fraction(num, math.factorial(n * n - 1)), n * (n - 1) // 2)
    if f == "R":
        l = n
        if l < 1:
            raise ValueError("real case requires l >= 1")
        coeff = (Fraction(math.factorial(2 * l), 2 ** (l * l + l))
                 / math.factorial(l) / math.factorial(2 * l * l + l - 1))
        coeff *= math.prod(math.factorial(2 * i) for i in range(1, l))
        return PiRational(coeff, l * l)
    if f == "H":
        if n < 2:
            raise ValueError("quaternionic case requires N >= 2")
        coeff = Fraction(math.factorial(2 * n - 2), math.factorial(2 * n * n - n - 1))
        coeff *= math.prod(math.factorial(2 * i) for i in range(1, n - 1))
        return PiRational(coeff, n * n - n)
    raise ValueError(f"unsupported field tag {field!r}")


def volume_hs(field: str, n: int) -> RadicalPiRational:
    """Hilbert-Schmidt volume of the N x N density matrices over R or C.

    The sqrt(N) normalization (and any half-integer powers of 2 and pi in
    the real case) is carried symbolically.
    """
    f = field.upper()
    if n < 2:
        raise ValueError("requires N >= 2")
    if f == "C":
        coeff = Fraction(2 ** (n * (n - 1) // 2))
        coeff *= math.prod(math.factorial(i - 1) for i in range(1, n + 1))
        coeff /= math.factorial(n * n - 1)
        return RadicalPiRational(coeff, n * (n - 1), n)
    if f == "R":
        # sqrt(N) 2^N (2pi)^(N(N-1)/4) Gamma((N+1)/2) prod Gamma(1+i/2)
        #   / (Gamma(N(N+1)/2) Gamma(1/2))
        two_twice = n * (n - 1) // 2 + 2 * n   # exponent of sqrt(2)
        pi_twice = n * (n - 1) // 2            # exponent of sqrt(pi)
        coeff = Fraction(1)
        g, e = gamma_half_exact(n + 1)
        coeff *= g
        pi_twice += e
        for i in range(1, n + 1):
            g, e = gamma_half_exact(i + 2)     # Gamma(1 + i/2)
            coeff *= g
            pi_twice += e
        coeff /= math.factorial(n * (n + 1) // 2 - 1)
        pi_twice -= 1                          # / Gamma(1/2)
        half2, odd2 = divmod(two_twice, 2)
        coeff *= 2 ** half2
        radicand = n * (2 if odd2 else 1)
        return RadicalPiRational(coeff, pi_twice, radicand)
    raise ValueError(f"unsupported field tag {field!r} (HS volumes cover R and C)")


def milz_strunz_volume(m: int, r: float) -> tuple[RadicalPiRational, float]:
    """Conjectured HS volume of 2 x m states at fixed qubit Bloch radius r.

    Returns the exact r = 0 value (sqrt(m) carried symbolically) and the
    radial profile factor ``(1 - r^2)^(2(m^2-1))`` evaluated at r.
    """
    if m < 2:
        raise ValueError("requires m >= 2")
    if not 0.0 <= r <= 1.0:
        raise ValueError("Bloch radius must lie in [0, 1]")
    two_twice = 2 * (6 * m * m - m) - 23
    pi_twice = 2 * (2 * m * m - m) - 3
    coeff = Fraction(math.prod(math.factorial(k - 1) for k in range(1, 2 * m + 1)))
    g, e = gamma_half_exact(4 * m * m + 1)     # Gamma(1/2 + 2 m^2)
    coeff *= g
    pi_twice += e
    coeff /= math.factorial(4 * m * m - 1)
    coeff /= math.factorial(2 * m * m - 2)
    half2, odd2 = divmod(two_twice, 2)
    if half2 >= 0:
        coeff *= 2 ** half2
    else:
        coeff /= 2 ** (-half2)
    radicand = m * (2 if odd2 else 1)
    v0 = RadicalPiRational(coeff, pi_twice, radicand)
    profile = (1.0 - r * r) ** (2 * (m * m - 1))
    return v0, profile


# ---------------------------------------------------------------------------
# induced-measure separability probabilities (two-level x two-level systems)
# ---------------------------------------------------------------------------

def p_2qubits(k: int) -> Fraction:
    """Exact complex two-qubit separability probability at induced order k."""
    k = _require_int("k", k)
    if k < -2:
        raise ValueError("formula domain is k >= -2")
    g, _ = gamma_half_exact(2 * k + 7)         # Gamma(k + 7/2) / sqrt(pi)
    num = 3 * 4 ** (k + 3) * (2 * k * (k + 7) + 25)
    frac = num * g * math.factorial(2 * k + 8) / Fraction(math.factorial(3 * k + 12))
    return 1 - frac


def p_2rebits(k: int) -> Fraction:
    """Exact real (two-rebit) separability probability at induced order k."""
    k = _require_int("k", k)
    if k < -1:
        raise ValueError("formula domain is k >= -1")
    g, _ = gamma_half_exact(4 * k + 9)         # Gamma(2k + 9/2) / sqrt(pi)
    frac = (4 ** (k + 1) * (8 * k + 15) * math.factorial(k + 1) * g
            / Fraction(math.factorial(3 * k + 6)))
    return 1 - frac


def p_2quaterbits(k: int) -> Fraction:
    """Exact quaternionic (two-quaterbit) separability probability at order k."""
    k = _require_int("k", k)
    if k < 0:
        raise ValueError("formula domain is k >= 0")
    poly = k * (k * (2 * k * (k + 21) + 355) + 1452) + 2430
    g, _ = gamma_half_exact(2 * k + 13)        # Gamma(k + 13/2) / sqrt(pi)
    frac = (4 ** (k + 6) * poly * g * math.factorial(2 * k + 14)
            / Fraction(3 * math.factorial(3 * k + 21)))
    return 1 - frac


# ---------------------------------------------------------------------------
# the interpolation formula u(eta)
# ---------------------------------------------------------------------------

def _u_closed_raw(eta: mpmath.mpf) -> mpmath.mpf:
    """The closed-form expression away from the removable eta in {0, 1}."""
    a = -3 * eta * (eta + 4) * ((eta - 6) * eta - 15)
    b = (mpmath.mpf(16) ** (2 * eta + 3) * ((eta - 10) * eta - 5)
         * mpmath.gamma(eta + mpmath.mpf(3) / 2)
         * mpmath.gamma(eta + mpmath.mpf(5) / 2) ** 3
         * mpmath.rgamma(4 * eta + 5)
         / (mpmath.pi ** 2 * (2 * eta + 3)))
    num = -(a + b + 60)
    den = 3 * (eta - 1) ** 2 * eta ** 2
    return num / den


def _u_numerator(eta: mpmath.mpf) -> mpmath.mpf:
    a = -3 * eta * (eta + 4) * ((eta - 6) * eta - 15)
    b = (mpmath.mpf(16) ** (2 * eta + 3) * ((eta - 10) * eta - 5)
         * mpmath.gamma(eta + mpmath.mpf(3) / 2)
         * mpmath.gamma(eta + mpmath.mpf(5) / 2) ** 3
         * mpmath.rgamma(4 * eta + 5)
         / (mpmath.pi ** 2 * (2 * eta + 3)))
    return -(a + b + 60)


def u_closed(eta, dps: int = 50) -> mpmath.mpf:
    """Interpolated two-qubit separability probability u(eta), eta > -3/2.

    The denominator 3 (eta-1)^2 eta^2 has removable zeros at eta = 0 and 1;
    there the analytic limit is taken via a second-order expansion of the
    numerator.  The result carries at least ``dps`` significant digits.
    """
    if eta <= -1.5:
        raise ValueError("domain is eta > -3/2")
    with mpmath.workdps(max(dps, 15) + 25):
        e = mpmath.mpf(eta)
        if e in (0, 1):
            # numerator has a double zero; u = N''(eta0)/6 by the expansion
            # of 3 (eta-1)^2 eta^2 around either zero
            q = max(dps, 15) // 2 + 8
            with mpmath.workdps(max(dps, 15) + 3 * q + 20):
                h = mpmath.mpf(10) ** (-q)
                c2 = (_u_numerator(e + h) + _u_numerator(e - h)
                      - 2 * _u_numerator(e)) / (2 * h * h)
                out = c2 / 3
            return +out
        return +_u_closed_raw(e)


# ---------------------------------------------------------------------------
# the chi-function catalog and the master formula
# ---------------------------------------------------------------------------

def chi_catalog(d: int, k, eps, family: str = "full"):
    """Closed-form separability function chi_{d,k}(eps).

    Catalog coverage: d = 2 for any rational k > -3 (general closed form);
    d = 4 for k in {0, 1}; and the X-state reduction eps**d for any d
    (``family="xstate"``).  Anything else raises :class:`CatalogMiss` to
    signal that the numeric constrained integration must be used.

    Accepts scalar or ndarray eps; returns the same shape.
    """
    eps_arr = np.asarray(eps, dtype=float)
    scalar = np.isscalar(eps) or eps_arr.ndim == 0
    if family == "xstate":
        out = eps_arr ** d
        return float(out) if scalar else out
    if family != "full":
        raise ValueError(f"unknown family {family!r}")
    e2 = eps_arr * eps_arr
    if d == 2:
        kf = float(k)
        if kf <= -3:
            raise CatalogMiss("d=2 closed form requires k > -3")
        with np.errstate(divide="ignore", invalid="ignore"):
            out = ((-kf + e2 - 3) * (1 - e2) ** (kf + 1) + kf + 3) / (kf + 3)
        return float(out) if scalar else out
    if d == 4:
        if k == 0:
            out = e2 * e2 * (15 * e2 * e2 - 64 * e2 + 84) / 35
        elif k == 1:
            out = e2 * e2 * (-9 * e2 ** 3 + 55 * e2 * e2 - 125 * e2 + 100) / 21
        else:
            raise CatalogMiss(f"no quaternionic closed form for k={k}")
        return float(out) if scalar else out
    raise CatalogMiss(f"no catalog entry for d={d}")


def master_chi_coefficients(d: int) -> list[Fraction]:
    """Exact coefficients c_n of chi_{d,0}(eps) = eps^d sum c_n eps^(2n), even d."""
    if d < 2 or d % 2:
        raise ValueError("terminating master series requires even d >= 2")
    f = hyper.hyp3f2_reg_poly((-d // 2, d // 2, d), (d // 2 + 1, 3 * d // 2 + 1))
    scale = Fraction(math.factorial(d) ** 3, math.factorial(d // 2) ** 2)
    return [scale * c for c in f]


def master_chi(d: int, eps, series_rtol: float = 1e-18):
    """Hilbert-Schmidt master formula chi_{d,0}(eps) for positive integer d.

    Even d terminates and is evaluated from exact coefficients.  Odd d is a
    convergent infinite series for eps < 1, truncated under a geometric
    tail certificate; the slowly convergent eps = 1 endpoint goes through
    mpmath's accelerated evaluation.
    """
    d = _require_int("d", d)
    if d < 1:
        raise ValueError("d must be a positive integer")
    eps_arr = np.asarray(eps, dtype=float)
    scalar = np.isscalar(eps) or eps_arr.ndim == 0
    if np.any((eps_arr < 0) | (eps_arr > 1)):
        raise ValueError("eps must lie in [0, 1]")
    e2 = eps_arr * eps_arr
    if d % 2 == 0:
        coeffs = [float(c) for c in master_chi_coefficients(d)]
        acc = np.zeros_like(e2)
        for c in reversed(coeffs):
            acc = acc * e2 + c
        out = eps_arr ** d * acc
        return float(out) if scalar else out
    a = (-d / 2, d / 2, float(d))
    b = (d / 2 + 1, 3 * d / 2 + 1)
    scale = math.factorial(d) ** 3 / math.gamma(d / 2 + 1) ** 2
    out = np.empty_like(e2)
    at_one = e2 >= 1.0
    if np.any(~at_one):
        out[~at_one] = hyper.hyp3f2_reg_series(a, b, e2[~at_one], rtol=series_rtol)
    if np.any(at_one):
        out[at_one] = hyper.hyp3f2_reg_endpoint(a, b)
    out = eps_arr ** d * scale * out
    return float(out) if scalar else out
