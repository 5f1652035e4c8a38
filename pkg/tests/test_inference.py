from dataclasses import replace

import numpy as np
import pytest
from scipy import stats

from slotentropy.errors import DesignError, DomainError, FitQualityError
from slotentropy.stats import (
    CONTRASTS,
    DEFAULT_LEVELS,
    LongRow,
    analyze,
    chi2_sf,
    contrast_name,
    fit_lmm,
    format_p,
    lrt,
    permutation_test,
    summarize_constructions,
)
from slotentropy.entropy import EntropyRecord
from slotentropy.extractors import ConstructionKind
from tests.test_lmm import simulate


# ---- chi-square tail ----

@pytest.mark.parametrize(
    "x,df,expected",
    [
        (3.841458820694124, 1, 0.05),
        (7.814727903251178, 3, 0.05),
        (0.0, 3, 1.0),
    ],
)
def test_chi2_sf_reference_values(x, df, expected):
    assert chi2_sf(x, df) == pytest.approx(expected, abs=1e-6)


def test_chi2_sf_small_statistic():
    assert chi2_sf(0.0247, 1) == pytest.approx(0.8751, abs=1e-4)
    assert 0.874 <= chi2_sf(0.0247, 1) <= 0.876


@pytest.mark.parametrize("df", [1, 2, 3, 7])
@pytest.mark.parametrize("x", [0.5, 2.0, 10.0, 60.0])
def test_chi2_sf_agrees_with_scipy(x, df):
    assert chi2_sf(x, df) == pytest.approx(stats.chi2.sf(x, df), rel=1e-9, abs=1e-300)


def test_chi2_sf_is_monotone():
    values = [chi2_sf(x, 3) for x in np.linspace(0, 30, 61)]
    assert all(a >= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("x,df", [(-1.0, 1), (1.0, 0), (float("nan"), 1)])
def test_chi2_sf_domain(x, df):
    with pytest.raises(DomainError):
        chi2_sf(x, df)


# ---- likelihood ratio ----

def test_lrt_detects_construction_effect():
    rows = simulate(seed=11)
    full = fit_lmm(rows)
    reduced = fit_lmm(rows, include_construction=False)
    result = lrt(full, reduced, df=3)
    assert result.chi2 == pytest.approx(2.0 * (full.loglik - reduced.loglik))
    assert result.p < 1e-6


@pytest.mark.parametrize("chi2,df,reported", [(0.0247, 1, ".88"), (260.79, 3, "< .0001")])
def test_lrt_reference_statistics(chi2, df, reported):
    reduced = fit_lmm(simulate(seed=11))
    full = replace(reduced, loglik=reduced.loglik + chi2 / 2)
    result = lrt(full, reduced, df=df)
    assert result.chi2 == pytest.approx(chi2, abs=1e-9)
    assert format_p(result.p) == reported
    if df == 1:
        assert 0.874 <= result.p <= 0.876
    else:
        assert result.p < 1e-50


def test_lrt_rejects_swapped_models():
    rows = simulate(seed=11)
    full = fit_lmm(rows)
    reduced = fit_lmm(rows, include_construction=False)
    with pytest.raises(FitQualityError):
        lrt(reduced, full, df=3)


def test_lrt_of_identical_fits_is_null():
    fit = fit_lmm(simulate(seed=12))
    result = lrt(fit, fit, df=1)
    assert (result.chi2, result.p) == (0.0, 1.0)


@pytest.mark.parametrize(
    "p,text",
    [(0.00001, "< .0001"), (0.0032, ".0032"), (0.876, ".88"), (0.05, ".05"), (0.012, ".01"), (1.0, "1.00")],
)
def test_format_p(p, text):
    assert format_p(p) == text


# ---- permutation ----

def rows_with_differences(diffs, a="passive", b="hyphenated"):
    rows = []
    for i, d in enumerate(diffs):
        rows += [LongRow(f"p{i}", a, 5.0 + d), LongRow(f"p{i}", b, 5.0)]
    return rows


def test_permutation_consistent_effect_is_significant():
    result = permutation_test(rows_with_differences([1.0 + 0.1 * i for i in range(10)]), ("passive", "hyphenated"), 2000, seed=1)
    assert result.statistic == pytest.approx(1.45)
    assert result.p < 0.01
    assert result.p >= 1 / 2001
    assert result.n_groups == 10


def test_permutation_null_effect():
    result = permutation_test(rows_with_differences([0.0] * 8), ("passive", "hyphenated"), 500, seed=1)
    assert result.statistic == 0.0
    assert result.p == 1.0


def test_permutation_is_deterministic():
    rows = rows_with_differences([0.5, -0.2, 0.3, 0.1, -0.4, 0.6])
    first = permutation_test(rows, ("passive", "hyphenated"), 1000, seed=9)
    again = permutation_test(rows, ("passive", "hyphenated"), 1000, seed=9)
    assert first == again


def test_permutation_drops_incomplete_groups(log_messages):
    rows = rows_with_differences([1.0, 1.0, 1.0]) + [LongRow("lonely", "passive", 9.0), LongRow("lonely", "nvn", 1.0)]
    result = permutation_test(rows, ("passive", "hyphenated"), 100, seed=0)
    assert result.n_groups == 3
    assert any("lonely" in m for m in log_messages)


@pytest.mark.slow
def test_permutation_false_positive_rate_under_null():
    rng = np.random.default_rng(7)
    rejections = 0
    for rep in range(1000):
        rows = rows_with_differences(rng.normal(0.0, 1.0, size=36))
        rejections += permutation_test(rows, ("passive", "hyphenated"), 999, seed=rep).p <= 0.05
    assert 0.03 <= rejections / 1000 <= 0.07


def test_permutation_without_complete_groups():
    rows = [LongRow("a", "passive", 1.0), LongRow("b", "hyphenated", 1.0)]
    with pytest.raises(DesignError):
        permutation_test(rows, ("passive", "hyphenated"), 100, seed=0)


# ---- analysis ----

def test_contrasts_compare_against_hyphenated():
    assert [contrast_name(c) for c in CONTRASTS] == [
        "nvn_vs_hyphenated",
        "passive_vs_hyphenated",
        "reduced_relative_vs_hyphenated",
        "passive_vs_reduced_relative",
    ]


def test_analyze_full_report():
    rows = simulate(n_participles=10, seed=13)
    records = [EntropyRecord(r.participle, ConstructionKind(r.construction), 100, r.entropy_bits) for r in rows]
    report = analyze(records, n_perm=500, seed=2)

    assert report.n_participles == 10
    assert report.skipped_reason is None
    assert list(report.model.beta) == ["intercept", "nvn", "passive", "reduced_relative"]
    assert report.lrt_construction.df == 3
    assert report.lrt_construction.p < 1e-4
    assert report.lrt_phrasal_only.df == 1
    assert set(report.permutation) == {contrast_name(c) for c in CONTRASTS}
    assert report.permutation["passive_vs_hyphenated"].statistic > 0.8
    assert list(report.summary) == list(DEFAULT_LEVELS)


def test_analyze_single_participle_skips_models():
    records = [EntropyRecord("stain", kind, 100, 2.0 + i) for i, kind in enumerate(ConstructionKind)]
    report = analyze(records)
    assert report.model is None
    assert report.lrt_construction is None
    assert "2 participles" in report.skipped_reason
    assert report.summary["passive"].sd is None


def test_analyze_with_noise_free_entropies():
    records = [
        EntropyRecord(f"p{g}", kind, 100, 6.643856 if kind.is_phrasal else 0.0) for g in range(5) for kind in ConstructionKind
    ]
    report = analyze(records, n_perm=200, seed=1)
    assert report.lrt_construction.p < 1e-10
    assert report.lrt_phrasal_only.chi2 == pytest.approx(0.0, abs=1e-9)
    assert report.lrt_phrasal_only.p == pytest.approx(1.0)
    assert report.permutation["passive_vs_reduced_relative"].p == 1.0
    assert report.model.sigma_e2 > 0


def test_summarize_constructions():
    rows = [LongRow("a", "nvn", 1.0), LongRow("b", "nvn", 3.0), LongRow("a", "passive", 2.0)]
    summary = summarize_constructions(rows)
    assert list(summary) == ["nvn", "passive"]
    assert summary["nvn"].mean == 2.0
    assert summary["nvn"].sd == pytest.approx(np.sqrt(2.0))
    assert (summary["nvn"].min, summary["nvn"].max) == (1.0, 3.0)
