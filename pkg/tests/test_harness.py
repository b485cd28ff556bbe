"""Experiment runner: tallies, CIs, conjecture search, checkpoints, CLI."""

import json
import math

import numpy as np
import pytest

from sepprob.harness import (
    CHUNK_SAMPLES,
    ConjectureCandidate,
    ExperimentConfig,
    TrialTally,
    conjecture_search,
    equipartition_report,
    estimate_chi_empirical,
    is_perfect_power,
    run_experiment,
    stream_quotas,
    wald_ci,
)
from sepprob.sampling import SamplerSpec


def small_cfg(**overrides):
    spec = SamplerSpec(field="C", n=4, split=(2, 2), k=0, seed=1234)
    params = dict(sampler=spec, target_samples=150_000, streams=6, threads=1)
    params.update(overrides)
    return ExperimentConfig(**params)


# ---------------------------------------------------------------------------
# Wald / Clopper-Pearson intervals
# ---------------------------------------------------------------------------

def test_wald_ci_reproduces_published_intervals():
    lo, hi = wald_ci(2_900_000_000, 78_293_301, 0.95)
    assert round(lo, 7) == 0.0269918
    assert round(hi, 7) == 0.0270036
    lo, hi = wald_ci(3_530_000_000, 462_704_503, 0.95)
    assert round(lo, 6) == 0.131067
    assert round(hi, 6) == 0.131089


def test_wald_ci_degenerate_falls_back_to_exact():
    lo, hi = wald_ci(1000, 0, 0.95)
    assert lo == 0.0
    assert hi == pytest.approx(1 - 0.025 ** (1 / 1000), rel=1e-9)
    lo, hi = wald_ci(1000, 1000, 0.95)
    assert hi == 1.0
    assert lo == pytest.approx(0.025 ** (1 / 1000), rel=1e-9)
    # rare-hit regime uses Clopper-Pearson even away from 0
    lo, hi = wald_ci(10_000, 5, 0.95)
    assert 0 < lo < 5 / 10_000 < hi < 1


def test_wald_ci_validation():
    with pytest.raises(ValueError):
        wald_ci(0, 0)
    with pytest.raises(ValueError):
        wald_ci(10, 11)
    with pytest.raises(ValueError):
        wald_ci(10, 5, 1.5)


# ---------------------------------------------------------------------------
# tallies and experiments
# ---------------------------------------------------------------------------

def test_tally_merge_associative_commutative():
    a = TrialTally(10, 3, 1, 2, [3, 7], seed=5, stream_ids=[0])
    b = TrialTally(20, 8, 2, 5, [8, 12], seed=5, stream_ids=[1])
    c = TrialTally(5, 1, 0, 1, [1, 4], seed=5, stream_ids=[2])
    ab_c = a.merge(b).merge(c)
    a_bc = a.merge(b.merge(c))
    assert ab_c.counts_dict() == a_bc.counts_dict()
    ba = b.merge(a)
    assert ba.counts_dict() == a.merge(b).counts_dict()
    assert ab_c.samples == 35 and ab_c.ppt_hits == 12


def test_tally_merge_rejects_seed_mismatch():
    a = TrialTally(10, 3, 1, 2, [3, 7], seed=5)
    b = TrialTally(10, 3, 1, 2, [3, 7], seed=6)
    with pytest.raises(ValueError):
        a.merge(b)


def test_stream_quotas_round_robin():
    assert stream_quotas(10, 4) == [3, 3, 2, 2]
    assert stream_quotas(8, 4) == [2, 2, 2, 2]
    assert sum(stream_quotas(1_000_003, 17)) == 1_000_003


def test_experiment_estimate_and_report_schema():
    tally, report = run_experiment(small_cfg())
    assert tally.samples == 150_000
    p = 8 / 33
    sigma = math.sqrt(p * (1 - p) / tally.samples)
    assert abs(report["estimate"] - p) < 4 * sigma
    for key in ("system", "field", "k", "family", "samples", "ppt_hits",
                "estimate", "ci", "johnston", "det_gt", "neg_eig_histogram",
                "seed", "streams", "wall_time_s", "build_info"):
        assert key in report, key
    assert report["system"] == "2x2"
    assert sum(report["neg_eig_histogram"]) == tally.samples
    assert report["neg_eig_histogram"][0] == tally.ppt_hits
    assert tally.johnston_hits <= tally.ppt_hits


def test_experiment_bit_identical_across_thread_counts():
    results = [run_experiment(small_cfg(threads=t))[0].counts_dict()
               for t in (1, 2, 4)]
    assert results[0] == results[1] == results[2]


def test_experiment_merge_equals_single_run():
    # two half-budget runs on disjoint stream sets reproduce one full run
    cfg = small_cfg(target_samples=CHUNK_SAMPLES * 3, streams=3)
    full, _ = run_experiment(cfg)
    from sepprob.harness import _chunk_to_tally, _experiment_chunk

    parts = []
    for sid in range(3):
        spec = SamplerSpec(field="C", n=4, split=(2, 2), k=0, seed=1234,
                           stream_id=sid)
        row = _experiment_chunk(spec, sid, 0, CHUNK_SAMPLES)
        parts.append(_chunk_to_tally(row, 1234))
    merged = parts[0].merge(parts[1]).merge(parts[2])
    assert merged.counts_dict()["ppt_hits"] == full.counts_dict()["ppt_hits"]
    assert merged.counts_dict()["neg_eig_histogram"] == \
        full.counts_dict()["neg_eig_histogram"]


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "ckpt.jsonl"
    cfg = small_cfg(checkpoint=str(path))
    tally1, _ = run_experiment(cfg)
    lines = [json.loads(l) for l in path.read_text().splitlines()]
    assert sum(r["samples"] for r in lines) == 150_000
    # drop half the lines; the rerun only recomputes the missing chunks
    kept = lines[: len(lines) // 2]
    path.write_text("".join(json.dumps(r) + "\n" for r in kept))
    tally2, _ = run_experiment(cfg)
    assert tally1.counts_dict() == tally2.counts_dict()
    # untouched re-resume: nothing recomputed, same result
    tally3, _ = run_experiment(cfg)
    assert tally1.counts_dict() == tally3.counts_dict()


def test_equipartition_report_smoke():
    report = equipartition_report(small_cfg())
    eq = report["equipartition"]
    sigma = math.sqrt(0.25 / eq["ppt_samples"])
    assert abs(eq["rate"] - 0.5) < 4 * sigma


def test_induced_order_convention_matches_exact_formulas():
    # the det^k-weight reading of "order k" in both fields, pinned by the
    # exact induced-measure probabilities
    from sepprob.exactmath import p_2qubits, p_2rebits

    for field, k, ref in [("R", 1, float(p_2rebits(1))),
                          ("R", 2, float(p_2rebits(2))),
                          ("C", 1, float(p_2qubits(1)))]:
        spec = SamplerSpec(field=field, n=4, split=(2, 2), k=k, seed=6)
        cfg = ExperimentConfig(sampler=spec, target_samples=200_000,
                               streams=8, threads=1)
        tally, report = run_experiment(cfg)
        sigma = math.sqrt(ref * (1 - ref) / tally.samples)
        assert abs(report["estimate"] - ref) < 4 * sigma, (field, k)


# ---------------------------------------------------------------------------
# empirical chi estimation
# ---------------------------------------------------------------------------

def test_estimate_chi_empirical_shape_and_edges():
    table = estimate_chi_empirical("C", 1, 20, 150_000, seed=9, streams=6)
    rows = table["rows"]
    assert len(rows) == 20
    assert sum(r["n"] for r in rows) + table["discarded"] == 150_000
    # chi(1) = 1 and chi(0) = 0 show up in the edge bins
    top = rows[-1]
    assert top["rate"] > 0.9
    bottom = next(r for r in rows if r["n"] > 100)
    assert bottom["rate"] < 0.25
    for r in rows:
        if r["n"] > 5000:
            assert abs(r["residual"]) < 0.05


def test_estimate_chi_empirical_validation():
    with pytest.raises(ValueError):
        estimate_chi_empirical("C", 1, 5, 1000)


# ---------------------------------------------------------------------------
# conjecture search
# ---------------------------------------------------------------------------

def test_conjecture_search_examples():
    cands = conjecture_search("0.0269918", "0.0270036", [2, 3, 5], 10 ** 6, 40)
    assert (cands[0].numerator, cands[0].denominator) == (27, 1000)
    cands = conjecture_search("0.2424", "0.2425", [3, 11], 10 ** 3, 10)
    assert any(c.numerator == 8 and c.denominator == 33 for c in cands)
    cands = conjecture_search("0.00129235", "0.00129351", [2, 3, 5, 11], 10 ** 6, 40)
    assert any(c.numerator == 16 and c.denominator == 12375 for c in cands)


def test_conjecture_search_completeness():
    # every admissible catalog rational inside the window must appear
    lo, hi = "0.131067", "0.131089"
    cands = conjecture_search(lo, hi, [3], 10 ** 4, 10)
    assert any(c.numerator == 860 and c.denominator == 6561 for c in cands)


def test_conjecture_search_validation():
    with pytest.raises(ValueError):
        conjecture_search("0.5", "0.4", [2], 100, 5)
    with pytest.raises(ValueError):
        conjecture_search("0.1", "0.2", [4], 100, 5)
    with pytest.raises(ValueError):
        conjecture_search("0.0", "1.0", [2, 3, 5], 10 ** 6, 40)  # cap exceeded


def test_candidate_fields():
    c = ConjectureCandidate(27, 1000, (2, 5), 2)
    assert c.value == 0.027


def test_is_perfect_power():
    assert is_perfect_power(1)
    assert is_perfect_power(27)
    assert is_perfect_power(1000)
    assert is_perfect_power(2 ** 19)
    assert not is_perfect_power(12)
    assert not is_perfect_power(6561 * 2)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_exact_json(capsys):
    from sepprob.cli import main
    assert main(["exact", "--formula", "p2qubits", "--k", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exact"] == "8/33"
    assert out["factorization"] == {"num": "2^3", "den": "3*11"}


def test_cli_estimate_and_chi_fit(tmp_path, capsys):
    from sepprob.cli import main
    out_path = tmp_path / "report.json"
    main(["estimate", "--system", "2x2", "--field", "C", "--k", "0",
          "--samples", "20000", "--seed", "3", "--streams", "4",
          "--out", str(out_path)])
    report = json.loads(out_path.read_text())
    assert report["samples"] == 20000
    assert 0.2 < report["estimate"] < 0.3
    main(["chi-fit", "--field", "C", "--k", "1", "--bins", "10",
          "--samples", "20000", "--seed", "3"])
    csv_text = capsys.readouterr().out
    header = csv_text.splitlines()[0]
    assert header == "bin_lo,bin_hi,n,rate,ci_lo,ci_hi,chi_ref,residual"


def test_cli_quadrature_csv(capsys):
    from sepprob.cli import main
    main(["quadrature", "--d", "2", "--k", "1", "--epsilon", "0.5"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "epsilon,value,reference_value,abs_err"
    eps, val, ref, err = lines[1].split(",")
    assert float(val) == pytest.approx(0.47265625, abs=1e-9)
    assert float(err) < 1e-9
