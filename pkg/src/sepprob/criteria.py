"""Per-sample classification: PPT, negative PT eigenvalues, determinant test,
and separability from spectrum.

The PSD decision uses min eigenvalue >= -1e-13 * trace; the PPT boundary
has measure zero under every sampled measure, so this cannot bias the
estimates, and the symmetric tolerance avoids one-sided rounding drift.
Ties in the strict determinant and spectrum inequalities classify False
(also measure-zero).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, Spectrum, partial_transpose_batch

PSD_TOL = 1e-13  # scaled by the (unit) trace


@dataclass(frozen=True)
class SampleVerdict:
    """Outcome of all per-sample tests; johnston is meaningful only when PPT."""

    is_ppt: bool
    neg_pt_eigs: int
    det_pt_gt_det: bool
    johnston_separable: bool

    def __post_init__(self):
        if self.is_ppt != (self.neg_pt_eigs == 0):
            raise ValueError("is_ppt must mirror neg_pt_eigs == 0")
        if self.johnston_separable and not self.is_ppt:
            raise ValueError("johnston_separable implies is_ppt")


def johnston_from_spectrum(s, m: int) -> bool:
    """Separability-from-spectrum test for a 2 x m state.

    True iff lambda_1 < lambda_(2m-1) + 2 sqrt(lambda_(2m-2) lambda_(2m))
    holds strictly for the descending eigenvalues of the state itself.
    """
    vals = list(s.values if isinstance(s, Spectrum) else s)
    if len(vals) != 2 * m:
        raise ValueError(f"expected 2m = {2*m} eigenvalues, got {len(vals)}")
    lam = np.asarray(vals, dtype=float)
    prod = max(lam[2 * m - 3], 0.0) * max(lam[2 * m - 1], 0.0)
    return bool(lam[0] < lam[2 * m - 2] + 2.0 * np.sqrt(prod))


def classify_batch(rhos: np.ndarray, dA: int, dB: int) -> dict[str, np.ndarray]:
    """Vectorized verdicts for a stack of states (the Monte Carlo hot path).

    Returns boolean/int arrays: is_ppt, neg_pt_eigs, det_gt, johnston.
    The johnston entry is already PPT-conditioned; for systems with no
    two-level factor it is identically False.
    """
    pt = partial_transpose_batch(rhos, dA, dB, side="B")
    pt_eigs = np.linalg.eigvalsh(pt)
    rho_eigs = np.linalg.eigvalsh(rhos)
    neg = np.count_nonzero(pt_eigs < -PSD_TOL, axis=-1)
    is_ppt = neg == 0
    det_rho = np.prod(rho_eigs, axis=-1)
    det_pt = np.prod(pt_eigs, axis=-1)
    det_gt = det_pt > det_rho
    if dA == 2 or dB == 2:
        n = dA * dB
        lam = rho_eigs[:, ::-1]  # descending
        prod = np.clip(lam[:, n - 3], 0.0, None) * np.clip(lam[:, n - 1], 0.0, None)
        johnston = lam[:, 0] < lam[:, n - 2] + 2.0 * np.sqrt(prod)
        johnston &= is_ppt
    else:
        johnston = np.zeros(rhos.shape[0], dtype=bool)
    return {"is_ppt": is_ppt, "neg_pt_eigs": neg, "det_gt": det_gt,
            "johnston": johnston}


def classify(rho: DensityMatrix) -> SampleVerdict:
    """Verdict for a single state (PT taken over subsystem B; side A gives
    the same spectrum)."""
    if rho.split is None:
        raise ValueError("classification requires a declared bipartition")
    dA, dB = rho.split
    out = classify_batch(rho.entries[None], dA, dB)
    return SampleVerdict(
        is_ppt=bool(out["is_ppt"][0]),
        neg_pt_eigs=int(out["neg_pt_eigs"][0]),
        det_pt_gt_det=bool(out["det_gt"][0]),
        johnston_separable=bool(out["johnston"][0]),
    )


def det_inequality(rho: DensityMatrix) -> bool:
    """True iff det(rho^PT) > det(rho) strictly (PT side is irrelevant)."""
    if rho.split is None:
        raise ValueError("requires a declared bipartition")
    dA, dB = rho.split
    return bool(classify_batch(rho.entries[None], dA, dB)["det_gt"][0])
