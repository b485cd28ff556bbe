"""Deterministic integration for the chi-function framework.

Four integration problems live here:

* the (d, k)-parameterized double-integral separability probability over
  the ordered square -1 <= y <= x <= 1 with weight
  (1-x^2)^(d+k) (1-y^2)^(d+k) (x-y)^d, and its eta-interpolated variant;
* the constrained unit-cube integration defining chi_{d,k}(eps), reduced
  to two smooth 2D pieces by integrating the innermost variable in closed
  (incomplete-beta) form, plus a quasi-random 3D oracle of the raw
  constrained integral;
* the X-state reduction eps^d;
* the extended master decomposition: a terminating regularized 3F2 term
  plus a 2D integral, summing to chi_{d,k}(eps) for even d.

Endpoint weight singularities (fractional exponents > -1) are absorbed by
Gauss-Jacobi rules; the integrable blowup some chi functions have as the
two arguments coalesce (eps -> 1) is flattened by a square-root
substitution of the inner variable near the diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi, roots_legendre
from scipy.stats import qmc

from . import hyper
from .exactmath import chi_catalog, master_chi

# Orientation resolved for the 2D part of the extended master decomposition:
# the inner variable is the product of the two radial coordinates, running
# over [eps*r^2, eps*r] at outer coordinate r.  This is the unique reading
# that reproduces the k = 0 half-identity (see extended_master).
EXTENDED_MASTER_DOMAIN = "Y in [eps*r14^2, eps*r14], r14 in [0, 1]"


@dataclass
class ChiFunction:
    """A separability function eps -> chi(eps) on [0, 1] with provenance."""

    fn: Callable[[np.ndarray], np.ndarray]
    provenance: str  # catalog | numeric | empirical | master
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __call__(self, eps):
        return self.fn(eps)


def chi_from_catalog(d: int, k, family: str = "full") -> ChiFunction:
    """Wrap a closed-form catalog entry (raises CatalogMiss if absent)."""
    chi_catalog(d, k, 0.5, family=family)  # probe coverage early
    meta = {}
    if family == "full" and d == 2 and float(k) < -1.0:
        meta["singular_at_one"] = True  # (1-eps^2)^(k+1) blows up at eps = 1
    return ChiFunction(lambda e: chi_catalog(d, k, e, family=family),
                       "catalog", f"chi[{d},{k}]" + ("" if family == "full" else ":x"),
                       meta)


def chi_from_master(d: int) -> ChiFunction:
    """Wrap the (k = 0) master formula, including the numeric odd-d path."""
    return ChiFunction(lambda e: master_chi(d, e), "master", f"master[{d}]")


def chi_xstate(d: int, eps):
    """X-state separability function: exactly eps**d."""
    eps_arr = np.asarray(eps, dtype=float)
    if np.any((eps_arr < 0) | (eps_arr > 1)):
        raise ValueError("eps must lie in [0, 1]")
    out = eps_arr ** d
    return float(out) if np.isscalar(eps) or eps_arr.ndim == 0 else out


@lru_cache(maxsize=128)
def _gl01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=128)
def _gj(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    return roots_jacobi(n, alpha, beta)


def _triangle_nodes(exponent: float, d_power: int, n_outer: int, n_inner: int,
                    diagonal_sub: bool):
    """Nodes, weights and eps values for the ordered-square ratio integrals.

    Returns flat arrays (eps, weight); the numerator of the probability is
    sum(weight * chi(eps)) and the denominator sum(weight).  The weight
    (1-x^2)^exponent is absorbed into the outer Gauss-Jacobi rule.  The
    inner integral over y in [-1, x] splits at the midpoint m: on [-1, m]
    the substitution 1 + y = (1+m) s^2 makes chi factors eps^d smooth for
    odd d and turns the (1+y)^exponent weight into a Jacobi one in s; on
    [m, x] either a plain Gauss-Legendre map or (for chi functions that
    blow up at eps = 1) the substitution y = x - (x-m) t^2, which flattens
    any integrable diagonal singularity.
    """
    eta = exponent
    x, wx = _gj(n_outer, eta, eta)
    # segment 1: y in [-1, m], m = (x-1)/2; with 1+y = (1+m) s^2,
    # int u^eta g du = 2 int s^(2 eta + 1) g(s^2) ds -> Jacobi(0, 2 eta + 1)
    tj, wj = _gj(n_inner, 0.0, 2.0 * eta + 1.0)
    s = (tj + 1.0) / 2.0
    y1 = -1.0 + ((1.0 + x[:, None]) / 2.0) * s[None, :] ** 2
    seg1_scale = ((1.0 + x) / 2.0) ** (1.0 + eta) * 2.0 ** (-2.0 * eta - 1.0)
    w1 = seg1_scale[:, None] * wj[None, :] * (1.0 - y1) ** eta \
        * (x[:, None] - y1) ** d_power
    # segment 2: y in [m, x], h = (x+1)/2
    h = (1.0 + x) / 2.0
    t, wt = _gl01(n_inner)
    if diagonal_sub:
        y2 = x[:, None] - h[:, None] * t[None, :] ** 2
        w2 = (wt[None, :] * 2.0 * h[:, None] * t[None, :]
              * ((1.0 - y2) * (1.0 + y2)) ** eta
              * (h[:, None] * t[None, :] ** 2) ** d_power)
    else:
        y2 = x[:, None] - h[:, None] * (1.0 - t[None, :])
        w2 = (wt[None, :] * h[:, None]
              * ((1.0 - y2) * (1.0 + y2)) ** eta
              * (h[:, None] * (1.0 - t[None, :])) ** d_power)
    y = np.concatenate([y1, y2], axis=1)
    w = np.concatenate([w1, w2], axis=1) * wx[:, None]
    e2 = (1.0 - x[:, None]) * (1.0 + y) / ((1.0 + x[:, None]) * (1.0 - y))
    eps = np.sqrt(np.clip(e2, 0.0, 1.0))
    return eps.ravel(), w.ravel()


def _triangle_ratio(exponent: float, d_power: int, chi,
                    n_outer: int, n_inner: int,
                    diagonal_sub: bool | None) -> float:
    if diagonal_sub is None:
        diagonal_sub = bool(getattr(chi, "meta", {}).get("singular_at_one", False))
    eps, w = _triangle_nodes(exponent, d_power, n_outer, n_inner, diagonal_sub)
    vals = np.asarray(chi(eps), dtype=float)
    num = float(np.dot(w, vals))
    den = float(np.sum(w))
    return num / den


def sep_prob_general(d: int, k, chi, n_outer: int = 200,
                     n_inner: int = 120,
                     diagonal_substitution: bool | None = None) -> float:
    """Separability probability for division-ring dimension d and order k.

    Evaluates the ratio of the two ordered-square double integrals with
    weight exponent d + k and diagonal power d, the chi function applied
    to the singular-value ratio sqrt((1-x)(1+y)/((1+x)(1-y))).  The
    diagonal substitution (needed when chi blows up at eps = 1) is picked
    up from the ChiFunction metadata unless forced here.
    """
    if d not in (1, 2, 4):
        raise ValueError("d must be 1, 2 or 4")
    exponent = float(d + k)
    if exponent <= -1.0:
        raise ValueError("requires d + k > -1 for integrability")
    return _triangle_ratio(exponent, d, chi, n_outer, n_inner,
                           diagonal_substitution)


def u_eta(eta, chi, n_outer: int = 200, n_inner: int = 120,
          diagonal_substitution: bool | None = None) -> float:
    """The interpolated two-qubit probability at weight exponent eta.

    eta = 2 is the Hilbert-Schmidt case and eta = -1/2 the sqrt(x) operator
    monotone one.  At eta = -1 both integrals diverge and their ratio tends
    to zero; that documented limit is returned directly.
    """
    if eta == -1:
        return 0.0
    if eta < -1:
        raise ValueError("requires eta >= -1")
    return _triangle_ratio(float(eta), 2, chi, n_outer, n_inner,
                           diagonal_substitution)


# ---------------------------------------------------------------------------
# constrained-cube integration for chi_{d,k}
# ---------------------------------------------------------------------------

def _chi_norm(d: int, k: int) -> float:
    """Normalizing constant: the unconstrained-positivity integral with the
    k-th determinant power, divided out of the constrained numerator."""
    return (math.gamma(d / 2) ** 3 * math.gamma(k + 1) * math.gamma(d / 2 + k + 1)
            / (8.0 * math.gamma(d + k + 1) ** 2))


def chi_numeric(d: int, k: int, eps: float, nodes: int = 120) -> float:
    """chi_{d,k}(eps) by deterministic constrained integration.

    The three radial coordinates are integrated over the unit cube subject
    to the positivity constraints of the state and its partial transpose;
    the innermost coordinate has a closed binomial antiderivative for
    integer k >= 0, leaving two smooth 2D integrals (the constraint split
    follows the diagonal r23 = eps * r14).  Even d makes both integrands
    polynomial, so the tensor Gauss-Legendre rule converges to roundoff.
    """
    if k < 0 or int(k) != k:
        raise ValueError("numeric path requires integer k >= 0")
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    if eps == 0.0:
        return 0.0
    k = int(k)
    t, wt = _gl01(nodes)
    r = t[:, None]
    wr = wt[:, None]
    c = t[None, :]
    wc = wt[None, :]
    # region A: r23 in [0, eps r], the inner bound is the state constraint
    rt = eps * r * c
    a = (1.0 - r * r) * (1.0 - rt * rt)
    ca = math.gamma(d / 2) * math.gamma(k + 1) / (2.0 * math.gamma(d / 2 + k + 1))
    integrand_a = (r * rt) ** (d - 1) * ca * a ** (k + d / 2) * (eps * r)
    num_a = float(np.sum(wr * wc * integrand_a))
    # region B: r23 in [eps r, eps], the PT constraint binds
    sigma = r + (1.0 - r) * c
    a2 = (1.0 - r * r) * (1.0 - (eps * sigma) ** 2)
    b2 = (1.0 - (eps * r) ** 2) * (1.0 - sigma * sigma)
    q = np.zeros_like(a2)
    for j in range(k + 1):
        q += (math.comb(k, j) * (-1.0) ** j / (2 * j + d)
              * a2 ** (k - j) * b2 ** (j + d / 2))
    integrand_b = (r * eps * sigma) ** (d - 1) * q * eps * (1.0 - r)
    num_b = float(np.sum(wr * wc * integrand_b))
    return (num_a + num_b) / _chi_norm(d, k)


def chi_numeric_qmc(d: int, k: int, eps: float, n_points: int = 1 << 18,
                    seed: int = 20240701) -> float:
    """Quasi-random 3D oracle for chi_{d,k}(eps): the raw constrained
    integral over [0,1]^3, no reduction.  Accuracy ~1e-3; retained as an
    independent cross-check of the deterministic path."""
    if k < 0 or int(k) != k:
        raise ValueError("requires integer k >= 0")
    if eps == 0.0:
        return 0.0
    sampler = qmc.Sobol(d=3, scramble=True, seed=seed)
    pts = sampler.random(n_points)
    r14, r23, r24 = pts[:, 0], pts[:, 1], pts[:, 2]
    a = (1.0 - r14 * r14) * (1.0 - r23 * r23)
    b = (1.0 - (eps * r14) ** 2) * (1.0 - (r23 / eps) ** 2)
    feasible = (r24 * r24 < a) & (r24 * r24 < b) & (r23 < eps)
    weight = (r14 * r23 * r24) ** (d - 1) * np.clip(a - r24 * r24, 0.0, None) ** k
    return float(np.mean(np.where(feasible, weight, 0.0))) / _chi_norm(d, int(k))


def chi_numeric_function(d: int, k: int, nodes: int = 120) -> ChiFunction:
    def evaluate(eps):
        arr = np.asarray(eps, dtype=float)
        out = np.array([chi_numeric(d, k, float(e), nodes) for e in arr.ravel()])
        out = out.reshape(arr.shape)
        return float(out) if arr.ndim == 0 else out
    return ChiFunction(evaluate, "numeric", f"numeric[{d},{k}]")


# ---------------------------------------------------------------------------
# extended master decomposition (even d)
# ---------------------------------------------------------------------------

def _extended_t1_coeffs(d: int, k: int) -> list[Fraction]:
    f = hyper.hyp3f2_reg_poly((d // 2, d, -(d // 2) - k),
                              (d // 2 + 1, 3 * d // 2 + k + 1))
    scale = (Fraction(math.factorial(d)) * math.factorial(d + k) ** 2
             / (d * math.factorial(d // 2 - 1) * math.factorial(d // 2 + k)))
    return [scale * c for c in f]


def extended_master_parts(d: int, k: int, eps: float,
                          nodes: int = 80) -> tuple[float, float]:
    """The two summands of the extended master expression for chi_{d,k}.

    The first is the closed terminating-3F2 term; the second is the 2D
    integral over EXTENDED_MASTER_DOMAIN of the hypergeometric-weighted
    product (evaluated with A^k 2F1(d/2,-k;d/2+1;B/A) expanded into the
    finite polynomial sum_j c_j A^(k-j) B^j, which removes all divisions).
    For k = 0 each part equals half of the d-th master formula.
    """
    if d % 2 or d < 2:
        raise ValueError("extended decomposition implemented for even d")
    if k < 0 or int(k) != k:
        raise ValueError("requires integer k >= 0")
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    k = int(k)
    e2 = eps * eps
    t1 = 0.0
    for c in reversed(_extended_t1_coeffs(d, k)):
        t1 = t1 * e2 + float(c)
    t1 *= eps ** d

    t, wt = _gl01(nodes)
    r = t[:, None]
    wr = wt[:, None]
    v = t[None, :]
    wv = wt[None, :]
    sigma = r + (1.0 - r) * v
    a = (1.0 - r * r) * (1.0 - e2 * sigma * sigma)
    b = (1.0 - e2 * r * r) * (1.0 - sigma * sigma)
    c2f1 = hyper.hyp2f1_poly_coeffs(Fraction(d, 2), k)
    poly = np.zeros_like(a)
    for j, cj in enumerate(c2f1):
        poly += float(cj) * a ** (k - j) * b ** j
    integrand = r ** (d - 1) * sigma ** (d - 1) * b ** (d // 2) * poly * (1.0 - r)
    c2 = (8.0 * math.gamma(d + k + 1) ** 2
          / (d * math.gamma(d / 2) ** 3 * math.gamma(k + 1)
             * math.gamma(d / 2 + k + 1)))
    t2 = c2 * eps ** d * float(np.sum(wr * wv * integrand))
    return t1, t2


def extended_master(d: int, k: int, eps: float, nodes: int = 80) -> float:
    """chi_{d,k}(eps) via the extended master decomposition (even d)."""
    t1, t2 = extended_master_parts(d, k, eps, nodes)
    return t1 + t2
