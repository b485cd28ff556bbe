"""Monte Carlo experiment runner with mergeable tallies and reports.

Work is cut into fixed 65536-sample chunks on a (stream, chunk) grid; each
chunk draws from its own counter-keyed Philox stream, so the tally for a
given (seed, streams, samples) triple is bit-identical no matter how many
worker processes execute the grid.  Chunk results are merged by plain
field-wise addition and can be checkpointed as JSON lines and resumed.

Interval reporting uses the Wald normal approximation (matching the
conventions of the published estimates this reproduces) with an exact
Clopper-Pearson fallback in the rare-hit regime.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from scipy.stats import beta as beta_dist
from scipy.stats import norm as norm_dist

from .criteria import classify_batch
from .exactmath import CatalogMiss, chi_catalog, is_prime
from .linalg import epsilon_ratio_batch_2x2
from .sampling import RandomStream, SamplerSpec, sample_batch

CHUNK_SAMPLES = 65_536
CP_FALLBACK_HITS = 30  # below this many hits (or misses), Wald is unreliable


def build_info() -> dict:
    from . import __version__
    return {
        "sepprob": __version__,
        "numpy": np.__version__,
        "normals": "float64 (standard double precision)",
    }


@dataclass
class TrialTally:
    """Mergeable Monte Carlo counts with seed provenance.

    ``neg_eig_histogram[i]`` counts samples whose partial transpose had
    exactly i negative eigenvalues; johnston hits are PPT-conditioned by
    construction, and the determinant-inequality count is restricted to
    PPT samples.  Merging is field-wise addition; wall time is additive
    CPU bookkeeping and excluded from equality comparisons.
    """

    samples: int = 0
    ppt_hits: int = 0
    johnston_hits: int = 0
    det_gt_hits_given_ppt: int = 0
    neg_eig_histogram: list[int] = field(default_factory=list)
    seed: int = 0
    stream_ids: list[int] = field(default_factory=list)
    wall_time: float = 0.0

    def merge(self, other: "TrialTally") -> "TrialTally":
        if self.samples and other.samples and self.seed != other.seed:
            raise ValueError("refusing to merge tallies from different seeds")
        width = max(len(self.neg_eig_histogram), len(other.neg_eig_histogram))
        hist = [0] * width
        for src in (self.neg_eig_histogram, other.neg_eig_histogram):
            for i, v in enumerate(src):
                hist[i] += v
        return TrialTally(
            samples=self.samples + other.samples,
            ppt_hits=self.ppt_hits + other.ppt_hits,
            johnston_hits=self.johnston_hits + other.johnston_hits,
            det_gt_hits_given_ppt=self.det_gt_hits_given_ppt + other.det_gt_hits_given_ppt,
            neg_eig_histogram=hist,
            seed=self.seed if self.samples else other.seed,
            stream_ids=sorted(set(self.stream_ids) | set(other.stream_ids)),
            wall_time=self.wall_time + other.wall_time,
        )

    def counts_dict(self) -> dict:
        """The deterministic content (everything except wall time)."""
        return {
            "samples": self.samples,
            "ppt_hits": self.ppt_hits,
            "johnston_hits": self.johnston_hits,
            "det_gt_hits_given_ppt": self.det_gt_hits_given_ppt,
            "neg_eig_histogram": list(self.neg_eig_histogram),
            "seed": self.seed,
            "stream_ids": list(self.stream_ids),
        }

    def to_json(self) -> dict:
        out = self.counts_dict()
        out["wall_time"] = self.wall_time
        return out

    @classmethod
    def from_json(cls, payload: dict) -> "TrialTally":
        return cls(
            samples=payload["samples"],
            ppt_hits=payload["ppt_hits"],
            johnston_hits=payload["johnston_hits"],
            det_gt_hits_given_ppt=payload["det_gt_hits_given_ppt"],
            neg_eig_histogram=list(payload["neg_eig_histogram"]),
            seed=payload.get("seed", 0),
            stream_ids=list(payload.get("stream_ids", [])),
            wall_time=payload.get("wall_time", 0.0),
        )


@dataclass
class ExperimentConfig:
    """A full experiment: sampler spec, sample budget, parallelism, output."""

    sampler: SamplerSpec
    target_samples: int
    streams: int = 8
    threads: int = 1
    checkpoint: str | None = None
    ci_level: float = 0.95

    def __post_init__(self):
        if self.target_samples < 1:
            raise ValueError("target_samples must be >= 1")
        if not 1 <= self.streams <= 2**31:
            raise ValueError("streams out of range")


def stream_quotas(total: int, streams: int) -> list[int]:
    """Round-robin assignment: stream i serves samples j with j % streams == i."""
    base, extra = divmod(total, streams)
    return [base + (1 if i < extra else 0) for i in range(streams)]


def _chunk_grid(cfg: ExperimentConfig) -> list[tuple[int, int, int]]:
    """(stream_id, chunk_index, chunk_samples) covering the whole budget."""
    grid = []
    for s, quota in enumerate(stream_quotas(cfg.target_samples, cfg.streams)):
        idx = 0
        while quota > 0:
            take = min(CHUNK_SAMPLES, quota)
            grid.append((s, idx, take))
            quota -= take
            idx += 1
    return grid


def _experiment_chunk(spec: SamplerSpec, stream_id: int, chunk_index: int,
                      count: int) -> dict:
    stream = RandomStream(spec.seed, stream_id, chunk_index)
    rhos = sample_batch(replace(spec, stream_id=stream_id), stream, count)
    dA, dB = spec.split
    out = classify_batch(rhos, dA, dB)
    hist = np.bincount(out["neg_pt_eigs"], minlength=spec.n + 1)
    return {
        "stream_id": stream_id,
        "chunk_index": chunk_index,
        "samples": count,
        "ppt_hits": int(np.count_nonzero(out["is_ppt"])),
        "johnston_hits": int(np.count_nonzero(out["johnston"])),
        "det_gt_hits_given_ppt": int(np.count_nonzero(out["det_gt"] & out["is_ppt"])),
        "neg_eig_histogram": hist.tolist(),
    }


def _chunk_to_tally(row: dict, seed: int) -> TrialTally:
    return TrialTally(
        samples=row["samples"],
        ppt_hits=row["ppt_hits"],
        johnston_hits=row["johnston_hits"],
        det_gt_hits_given_ppt=row["det_gt_hits_given_ppt"],
        neg_eig_histogram=list(row["neg_eig_histogram"]),
        seed=seed,
        stream_ids=[row["stream_id"]],
    )


def _load_checkpoint(path: str) -> dict[tuple[int, int], dict]:
    done = {}
    if path and os.path.exists(path):
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                row = json.loads(line)
                done[(row["stream_id"], row["chunk_index"])] = row
    return done


def run_experiment(cfg: ExperimentConfig) -> tuple[TrialTally, dict]:
    """Run (or resume) an experiment; returns the merged tally and a report.

    Deterministic for fixed (seed, streams, target_samples): the chunk grid
    and each chunk's Philox key are independent of the thread count.
    """
    t0 = time.perf_counter()
    grid = _chunk_grid(cfg)
    done = _load_checkpoint(cfg.checkpoint) if cfg.checkpoint else {}
    pending = [g for g in grid if (g[0], g[1]) not in done]
    rows = [done[(s, c)] for (s, c, _n) in grid if (s, c) in done]

    ckpt_fh = open(cfg.checkpoint, "a") if cfg.checkpoint else None
    try:
        if cfg.threads <= 1:
            for s, c, n in pending:
                row = _experiment_chunk(cfg.sampler, s, c, n)
                rows.append(row)
                if ckpt_fh:
                    ckpt_fh.write(json.dumps(row) + "\n")
                    ckpt_fh.flush()
        else:
            with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
                futures = [pool.submit(_experiment_chunk, cfg.sampler, s, c, n)
                           for s, c, n in pending]
                for fut in as_completed(futures):
                    row = fut.result()
                    rows.append(row)
                    if ckpt_fh:
                        ckpt_fh.write(json.dumps(row) + "\n")
                        ckpt_fh.flush()
    finally:
        if ckpt_fh:
            ckpt_fh.close()

    tally = TrialTally(seed=cfg.sampler.seed)
    for row in rows:
        tally = tally.merge(_chunk_to_tally(row, cfg.sampler.seed))
    tally.wall_time = time.perf_counter() - t0
    return tally, experiment_report(cfg, tally)


def experiment_report(cfg: ExperimentConfig, tally: TrialTally) -> dict:
    spec = cfg.sampler
    n, h = tally.samples, tally.ppt_hits
    lo, hi = wald_ci(n, h, cfg.ci_level)
    return {
        "system": f"{spec.split[0]}x{spec.split[1]}",
        "field": spec.field,
        "k": spec.k,
        "family": spec.family,
        "samples": n,
        "ppt_hits": h,
        "estimate": h / n if n else float("nan"),
        "ci": [lo, hi],
        "johnston": {
            "hits": tally.johnston_hits,
            "rate": tally.johnston_hits / h if h else float("nan"),
        },
        "det_gt": {
            "hits": tally.det_gt_hits_given_ppt,
            "rate": tally.det_gt_hits_given_ppt / h if h else float("nan"),
        },
        "neg_eig_histogram": list(tally.neg_eig_histogram),
        "seed": spec.seed,
        "streams": cfg.streams,
        "wall_time_s": tally.wall_time,
        "build_info": build_info(),
    }


def wald_ci(samples: int, hits: int, level: float = 0.95) -> tuple[float, float]:
    """Binomial confidence interval: Wald, with exact fallback near 0 or n.

    The Wald form p +- z sqrt(p(1-p)/n) reproduces the published intervals;
    with fewer than 30 hits (or misses) it degenerates, so the exact
    Clopper-Pearson interval is substituted there.
    """
    if samples < 1 or not 0 <= hits <= samples:
        raise ValueError("need 0 <= hits <= samples, samples >= 1")
    if not 0.0 < level < 1.0:
        raise ValueError("level must be in (0, 1)")
    alpha = 1.0 - level
    if hits < CP_FALLBACK_HITS or samples - hits < CP_FALLBACK_HITS:
        lo = 0.0 if hits == 0 else float(beta_dist.ppf(alpha / 2, hits, samples - hits + 1))
        hi = 1.0 if hits == samples else float(beta_dist.ppf(1 - alpha / 2, hits + 1, samples - hits))
        return lo, hi
    p = hits / samples
    half = float(norm_dist.ppf(1.0 - alpha / 2)) * math.sqrt(p * (1.0 - p) / samples)
    return p - half, p + half


def equipartition_report(cfg: ExperimentConfig) -> dict:
    """Fraction of PPT (separable, for 2x2 and 2x3) samples satisfying
    det(rho^PT) > det(rho), with its own confidence interval."""
    tally, report = run_experiment(cfg)
    h, n = tally.det_gt_hits_given_ppt, tally.ppt_hits
    lo, hi = wald_ci(max(n, 1), h, cfg.ci_level)
    report["equipartition"] = {
        "ppt_samples": n,
        "det_gt_hits": h,
        "rate": h / n if n else float("nan"),
        "ci": [lo, hi],
    }
    return report


# ---------------------------------------------------------------------------
# empirical chi estimation
# ---------------------------------------------------------------------------

def _chifit_chunk(spec: SamplerSpec, stream_id: int, chunk_index: int,
                  count: int, bins: int) -> dict:
    stream = RandomStream(spec.seed, stream_id, chunk_index)
    rhos = sample_batch(replace(spec, stream_id=stream_id), stream, count)
    eps = epsilon_ratio_batch_2x2(rhos)
    out = classify_batch(rhos, 2, 2)
    good = np.isfinite(eps)
    idx = np.minimum((eps[good] * bins).astype(int), bins - 1)
    totals = np.bincount(idx, minlength=bins)
    hits = np.bincount(idx[out["is_ppt"][good]], minlength=bins)
    return {
        "stream_id": stream_id,
        "chunk_index": chunk_index,
        "totals": totals.tolist(),
        "hits": hits.tolist(),
        "discarded": int(np.count_nonzero(~good)),
    }


def estimate_chi_empirical(field: str, k: int, bins: int, samples: int,
                           seed: int = 0, streams: int = 8, threads: int = 1,
                           ci_level: float = 0.95) -> dict:
    """Binned conditional PPT rate vs the singular-value ratio, for 2x2.

    Returns per-bin totals, rates, confidence intervals, the catalog
    reference (complex field only; the real-field closed forms are not in
    the catalog) and residuals.  Bins partition (0, 1] uniformly.
    """
    if bins < 10:
        raise ValueError("need at least 10 bins")
    spec = SamplerSpec(field=field, n=4, split=(2, 2), k=k, seed=seed)
    cfg = ExperimentConfig(sampler=spec, target_samples=samples,
                           streams=streams, threads=threads)
    grid = _chunk_grid(cfg)
    totals = np.zeros(bins, dtype=np.int64)
    hits = np.zeros(bins, dtype=np.int64)
    discarded = 0
    if threads <= 1:
        results = (_chifit_chunk(spec, s, c, n, bins) for s, c, n in grid)
        for row in results:
            totals += np.asarray(row["totals"])
            hits += np.asarray(row["hits"])
            discarded += row["discarded"]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_chifit_chunk, spec, s, c, n, bins)
                       for s, c, n in grid]
            for fut in as_completed(futures):
                row = fut.result()
                totals += np.asarray(row["totals"])
                hits += np.asarray(row["hits"])
                discarded += row["discarded"]

    d = 2 if field == "C" else 1
    rows = []
    for i in range(bins):
        lo_edge, hi_edge = i / bins, (i + 1) / bins
        mid = (lo_edge + hi_edge) / 2
        nb, hb = int(totals[i]), int(hits[i])
        rate = hb / nb if nb else float("nan")
        ci = wald_ci(nb, hb, ci_level) if nb else (float("nan"), float("nan"))
        try:
            ref = chi_catalog(d, k, mid)
        except CatalogMiss:
            ref = float("nan")
        rows.append({
            "bin_lo": lo_edge, "bin_hi": hi_edge, "n": nb, "rate": rate,
            "ci_lo": ci[0], "ci_hi": ci[1], "chi_ref": ref,
            "residual": rate - ref if nb else float("nan"),
        })
    return {"field": field, "k": k, "bins": bins, "samples": samples,
            "seed": seed, "streams": streams, "discarded": discarded,
            "rows": rows, "build_info": build_info()}


# ---------------------------------------------------------------------------
# conjecture search over smooth rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureCandidate:
    """A rational p/q inside the target interval with smooth denominator."""

    numerator: int
    denominator: int
    prime_support: tuple[int, ...]
    score: int

    @property
    def value(self) -> float:
        return self.numerator / self.denominator


def _integer_nth_root(n: int, e: int) -> int:
    if n < 0:
        raise ValueError
    r = int(round(n ** (1.0 / e)))
    while r > 0 and r**e > n:
        r -= 1
    while (r + 1) ** e <= n:
        r += 1
    return r


def is_perfect_power(n: int) -> bool:
    """True if n = m**e for integers m >= 1, e >= 2 (1 counts)."""
    if n < 1:
        return False
    if n == 1:
        return True
    for e in range(2, n.bit_length() + 1):
        r = _integer_nth_root(n, e)
        if r**e == n:
            return True
    return False


def _smooth_values(primes: tuple[int, ...], max_value: int, max_exp: int) -> list[int]:
    values = [1]
    for p in primes:
        extended = []
        for v in values:
            pe = 1
            for _ in range(max_exp):
                pe *= p
                if v * pe > max_value:
                    break
                extended.append(v * pe)
        values.extend(extended)
    return sorted(values)


def conjecture_search(lo, hi, primes, max_denominator: int, max_exponent: int,
                      candidate_cap: int = 200_000) -> list[ConjectureCandidate]:
    """All reduced p/q in [lo, hi] with q smooth over ``primes``, ranked.

    The score favors the structured rationals the literature gravitates
    toward: fewer distinct primes in q, a short numerator, and a bonus when
    p or q is a perfect power (pure prime powers like 3^8 and 2^13 score
    well).  Lower score ranks first; ties break on (q, p).  Enumeration is
    exhaustive over the smooth-denominator lattice, so any admissible
    rational in the interval is guaranteed to appear.
    """
    lo_f = lo if isinstance(lo, Fraction) else Fraction(str(lo))
    hi_f = hi if isinstance(hi, Fraction) else Fraction(str(hi))
    if hi_f < lo_f:
        raise ValueError("empty interval")
    primes = tuple(sorted(set(int(p) for p in primes)))
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    out = []
    for q in _smooth_values(primes, max_denominator, max_exponent):
        p_min = -((-lo_f.numerator * q) // lo_f.denominator)  # ceil(lo*q)
        p_max = (hi_f.numerator * q) // hi_f.denominator      # floor(hi*q)
        for p in range(max(p_min, 1), p_max + 1):
            if math.gcd(p, q) != 1:
                continue
            support = tuple(pr for pr in primes if q % pr == 0)
            score = (len(support) + len(str(p))
                     - int(is_perfect_power(p)) - int(is_perfect_power(q)))
            out.append(ConjectureCandidate(p, q, support, score))
            if len(out) > candidate_cap:
                raise ValueError(
                    "candidate cap exceeded; narrow the interval or the lattice")
    out.sort(key=lambda c: (c.score, c.denominator, c.numerator))
    return out
