import json

import pytest

from slotentropy.config import PipelineConfig
from slotentropy.engine.pipeline import (
    CELL_COUNTS_FILE,
    ENTROPY_FILE,
    FIG1_FILE,
    FIG2_FILE,
    MANIFEST_FILE,
    MATCHES_FILE,
    STATS_FILE,
    PipelineEngine,
    run_pipeline,
)
from slotentropy.entropy import INSUFFICIENT_PARSED, INSUFFICIENT_RAW
from slotentropy.errors import EmptyAnalysisSetError, InputError
from slotentropy.extractors import ConstructionKind
from slotentropy.report import RunManifest, read_entropy, read_matches
from slotentropy.synth import DEFAULT_SPEC, SynthSpec, generate_synthetic_corpus


SPEC = SynthSpec(
    seed=11,
    n_participles=4,
    tokens_per_cell=130,
    decoys_per_cell=5,
    overrides={"make": {ConstructionKind.HYPHENATED: 60}},
)
RESULT_FILES = [MATCHES_FILE, CELL_COUNTS_FILE, ENTROPY_FILE, STATS_FILE, FIG1_FILE, FIG2_FILE]


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    return generate_synthetic_corpus(SPEC, tmp_path_factory.mktemp("corpus") / "synthetic.conllu")


def make_config(corpus_paths, output_dir, **overrides):
    settings = dict(
        corpus_paths=corpus_paths,
        output_dir=output_dir,
        seed=42,
        min_raw=100,
        min_parsed=100,
        n_perm=500,
        render_figures=False,
    )
    settings.update(overrides)
    return PipelineConfig(**settings)


def load_manifest(output_dir):
    return RunManifest.model_validate_json((output_dir / MANIFEST_FILE).read_text())


def test_end_to_end(corpus, tmp_path):
    report = run_pipeline(make_config([corpus.corpus_path], tmp_path))

    for name in RESULT_FILES + [MANIFEST_FILE]:
        assert (tmp_path / name).exists(), name

    records = read_entropy(tmp_path / ENTROPY_FILE)
    assert sorted({r.participle for r in records}) == ["cover", "fill", "stain"]
    assert {r.n for r in records} == {100}
    assert len(records) == 12

    assert report.n_participles == 3
    assert report.permutation["passive_vs_hyphenated"].statistic > 0
    assert report.summary["hyphenated"].mean < report.summary["passive"].mean

    manifest = load_manifest(tmp_path)
    assert manifest.seed == 42
    assert manifest.candidate_participles == ["cover", "fill", "stain", "make"]
    assert manifest.included_participles == ["cover", "fill", "stain"]
    assert "make" in manifest.exclusions[INSUFFICIENT_RAW]
    assert "make" in manifest.exclusions[INSUFFICIENT_PARSED]
    assert set(RESULT_FILES) <= set(manifest.outputs)


def test_cell_accounting(corpus, tmp_path):
    engine = PipelineEngine(make_config([corpus.corpus_path], tmp_path))
    matches = engine.extract()
    assert set(matches) == set(read_matches(corpus.truth_path))

    cells = {(c.participle, c.construction): c for c in load_manifest(tmp_path).cells}
    assert len(cells) == 16
    for cell in cells.values():
        assert cell.raw == cell.parsed_valid + cell.rejected_by_filter + cell.rejected_by_dependency
        assert cell.capped == 0
    stain_passive = cells[("stain", "passive")]
    assert (stain_passive.parsed_valid, stain_passive.rejected_by_filter) == (130, 5)
    assert cells[("make", "hyphenated")].parsed_valid == 60
    assert cells[("stain", "nvn")].rejected_by_dependency == 5


def test_stages_run_separately(corpus, tmp_path):
    engine = PipelineEngine(make_config([corpus.corpus_path], tmp_path))
    with pytest.raises(InputError):
        engine.stats()
    engine.extract()
    records = engine.entropy()
    assert len(records) == 12
    assert engine.stats().n_participles == 3
    written = engine.report()
    assert {p.name for p in written} == {FIG1_FILE, FIG2_FILE}
    cells = load_manifest(tmp_path).cells
    assert {c.sampled for c in cells if c.participle == "stain"} == {100}
    assert {c.sampled for c in cells if c.participle == "make"} == {0}


def test_rerun_is_byte_identical(corpus, tmp_path):
    run_pipeline(make_config([corpus.corpus_path], tmp_path / "a"))
    run_pipeline(make_config([corpus.corpus_path], tmp_path / "b"))
    for name in RESULT_FILES:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


def test_seed_changes_samples(corpus, tmp_path):
    run_pipeline(make_config([corpus.corpus_path], tmp_path / "a"))
    run_pipeline(make_config([corpus.corpus_path], tmp_path / "b", seed=43))
    assert (tmp_path / "a" / ENTROPY_FILE).read_bytes() != (tmp_path / "b" / ENTROPY_FILE).read_bytes()


def test_raw_cap(corpus, tmp_path):
    engine = PipelineEngine(make_config([corpus.corpus_path], tmp_path, raw_cap=50))
    engine.extract()
    cell = next(c for c in load_manifest(tmp_path).cells if (c.participle, c.construction) == ("stain", "passive"))
    assert cell.raw == 50
    assert cell.capped == 85


def test_explicit_participles(corpus, tmp_path):
    engine = PipelineEngine(make_config([corpus.corpus_path], tmp_path, participles="stain, fill"))
    matches = engine.extract()
    assert {m.participle_lemma for m in matches} == {"stain", "fill"}
    assert load_manifest(tmp_path).candidate_participles == ["stain", "fill"]


def test_empty_analysis_set(corpus, tmp_path):
    engine = PipelineEngine(make_config([corpus.corpus_path], tmp_path, min_raw=10_000))
    engine.extract()
    with pytest.raises(EmptyAnalysisSetError):
        engine.entropy()
    manifest = load_manifest(tmp_path)
    assert manifest.included_participles == []
    assert sorted(manifest.exclusions[INSUFFICIENT_RAW]) == ["cover", "fill", "make", "stain"]
    assert not (tmp_path / ENTROPY_FILE).exists()


def test_single_participle_skips_model(corpus, tmp_path):
    report = run_pipeline(make_config([corpus.corpus_path], tmp_path, participles="stain"))
    assert report.skipped_reason is not None
    stats = json.loads((tmp_path / STATS_FILE).read_text())
    assert stats["model"] is None


def test_dedup_across_files(corpus, tmp_path):
    copy = tmp_path / "copy.conllu"
    copy.write_bytes(corpus.corpus_path.read_bytes())
    single = PipelineEngine(make_config([corpus.corpus_path], tmp_path / "single", dedup=True)).extract()
    engine = PipelineEngine(make_config([corpus.corpus_path, copy], tmp_path / "out", dedup=True))
    matches = engine.extract()
    assert matches == single
    assert len(matches) <= corpus.n_planted
    files = load_manifest(tmp_path / "out").files
    assert files[1].duplicates == files[1].sentences


def test_missing_corpus_file(tmp_path):
    engine = PipelineEngine(make_config([tmp_path / "absent.conllu"], tmp_path))
    with pytest.raises(OSError):
        engine.extract()


@pytest.mark.slow
def test_parallel_matches_sequential(corpus, tmp_path):
    copy = tmp_path / "copy.conllu"
    copy.write_bytes(corpus.corpus_path.read_bytes())
    run_pipeline(make_config([corpus.corpus_path, copy], tmp_path / "seq", min_raw=200, min_parsed=200))
    run_pipeline(make_config([corpus.corpus_path, copy], tmp_path / "par", min_raw=200, min_parsed=200, jobs=2))
    for name in RESULT_FILES:
        assert (tmp_path / "seq" / name).read_bytes() == (tmp_path / "par" / name).read_bytes(), name


@pytest.mark.slow
def test_bundled_demo(tmp_path):
    demo = generate_synthetic_corpus(DEFAULT_SPEC, tmp_path / "demo.conllu")
    results = tmp_path / "results"
    report = run_pipeline(make_config([demo.corpus_path], results, min_raw=200, n_perm=10000, render_figures=True))

    manifest = load_manifest(results)
    assert "negotiate" in manifest.exclusions[INSUFFICIENT_PARSED]
    assert len(manifest.included_participles) == 15
    assert report.lrt_construction.p < 0.001
    assert report.permutation["passive_vs_hyphenated"].p < 0.001

    # every participle: compounds below phrasals; the two phrasal constructions indistinguishable
    by_participle = {}
    for record in read_entropy(results / ENTROPY_FILE):
        by_participle.setdefault(record.participle, {})[record.kind] = record.entropy_bits
    for participle, values in by_participle.items():
        compound = (values[ConstructionKind.HYPHENATED] + values[ConstructionKind.NVN]) / 2
        phrasal = (values[ConstructionKind.PASSIVE] + values[ConstructionKind.REDUCED_RELATIVE]) / 2
        assert compound < phrasal, participle
    assert len(by_participle) == 15
    assert report.lrt_phrasal_only.p > 0.05
    assert report.permutation["passive_vs_reduced_relative"].p > 0.05

    for name in ("fig1.html", "fig1.svg", "fig2.html", "fig2.svg"):
        assert (results / name).exists(), name
