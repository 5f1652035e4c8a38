"""
Pipeline engine module.
Runs ingest, extraction, sampling, entropy and statistics over a corpus
and writes every result file into the output directory.
"""

from collections import Counter, defaultdict
from pathlib import Path
from typing import Iterator, Optional

from joblib import Parallel, delayed
from loguru import logger

from slotentropy import __version__
from slotentropy.config import PipelineConfig
from slotentropy.data.dedup import filter_exact_duplicates
from slotentropy.data.lexicon import PARTICIPLE_TAG, CorpusLexicon
from slotentropy.data.models import Sentence
from slotentropy.data.reader import ConllReader, read_conllu_file
from slotentropy.entropy import (
    INSUFFICIENT_PARSED,
    CellKey,
    EntropyRecord,
    apply_inclusion,
    collect,
    downsample,
    entropy_record,
    exclusion_reasons,
)
from slotentropy.errors import ConfigError, EmptyAnalysisSetError, InsufficientSampleError, InvariantViolation
from slotentropy.extractors import (
    KIND_ORDER,
    ConstructionKind,
    ConstructionMatch,
    ExtractionRules,
    SpanOutcome,
    SpanStatus,
    build_extractors,
)
from slotentropy.report import (
    CellAccounting,
    FileCounters,
    RunManifest,
    StatsReport,
    construction_figure,
    emit_fig1_data,
    emit_fig2_data,
    participle_figure,
    preposition_counts,
    read_cell_counts,
    read_entropy,
    read_matches,
    save_figure,
    write_cell_counts,
    write_entropy,
    write_json,
    write_matches,
    write_table,
)
from slotentropy.stats import analyze


MATCHES_FILE = "matches.tsv"
CELL_COUNTS_FILE = "cell_counts.csv"
ENTROPY_FILE = "entropy.csv"
PREPOSITIONS_FILE = "prepositions.csv"
STATS_FILE = "stats.json"
FIG1_FILE = "fig1.csv"
FIG2_FILE = "fig2.csv"
MANIFEST_FILE = "run-manifest.json"


# ============ Per-file workers ============

def _stream(
    path: Path, config: PipelineConfig, seen: Optional[set[bytes]] = None
) -> tuple[Iterator[Sentence], FileCounters]:
    """Sentences of one file; counters are filled once the iterator is exhausted."""
    reader = ConllReader(map_tags=config.map_penn_tags, strict=config.strict_format)
    counters = FileCounters(path=str(path))

    def generate() -> Iterator[Sentence]:
        sentences = read_conllu_file(path, reader)
        if seen is not None:
            sentences = filter_exact_duplicates(sentences, seen)
        kept = 0
        for sentence in sentences:
            kept += 1
            yield sentence
        counters.sentences = reader.stats.sentences
        counters.malformed = reader.stats.malformed
        counters.invalid = reader.stats.invalid
        counters.duplicates = reader.stats.sentences - kept

    return generate(), counters


def _scan_file(
    path: Path, config: PipelineConfig, seen: Optional[set[bytes]] = None
) -> tuple[CorpusLexicon, FileCounters]:
    sentences, counters = _stream(path, config, seen)
    lexicon = CorpusLexicon(possessive_tags=frozenset(config.possessive_tags)).observe_all(sentences)
    logger.debug(f"Scanned {path}: {counters.sentences} sentences")
    return lexicon, counters


def _extract_file(
    path: Path,
    config: PipelineConfig,
    participles: list[str],
    lexicon: CorpusLexicon,
    seen: Optional[set[bytes]] = None,
) -> tuple[dict[CellKey, list[SpanOutcome]], Counter]:
    """Span outcomes per cell for one file, at most raw_cap per cell."""
    rules = ExtractionRules.from_config(config)
    extractors = {p: build_extractors(p, rules=rules, lexicon=lexicon) for p in participles}
    outcomes: dict[CellKey, list[SpanOutcome]] = defaultdict(list)
    totals: Counter = Counter()

    sentences, _ = _stream(path, config, seen)
    for sentence in sentences:
        participle_lemmas = {t.lemma for t in sentence.tokens if t.xpos == PARTICIPLE_TAG}
        has_hyphen = any("-" in t.form for t in sentence.tokens)
        for participle in participles:
            for extractor in extractors[participle]:
                if extractor.kind is ConstructionKind.HYPHENATED:
                    if not has_hyphen:
                        continue
                elif participle not in participle_lemmas:
                    continue
                cell = (participle, extractor.kind)
                for outcome in extractor.outcomes(sentence):
                    totals[cell] += 1
                    if len(outcomes[cell]) < config.raw_cap:
                        outcomes[cell].append(outcome)
    return dict(outcomes), totals


# ============ Engine ============

class PipelineEngine:
    """Runs the analysis stages for one configuration."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.output_dir = Path(config.output_dir)

    def _path(self, name: str) -> Path:
        return self.output_dir / name

    def _map_files(self, func, *args) -> list:
        """Apply a per-file worker to every corpus file, results in file order."""
        paths = list(self.config.corpus_paths)
        if self.config.dedup:
            if self.config.jobs > 1:
                logger.warning("Deduplication spans files; processing corpus files sequentially")
            seen: set[bytes] = set()
            return [func(path, self.config, *args, seen=seen) for path in paths]
        return Parallel(n_jobs=self.config.jobs)(delayed(func)(path, self.config, *args) for path in paths)

    def _load_manifest(self) -> RunManifest:
        path = self._path(MANIFEST_FILE)
        if path.exists():
            return RunManifest.model_validate_json(path.read_text(encoding="utf-8"))
        return RunManifest(
            version=__version__,
            seed=self.config.seed,
            config=self.config.model_dump(mode="json"),
        )

    def _save_manifest(self, manifest: RunManifest, *written: str) -> None:
        manifest.outputs = sorted(set(manifest.outputs) | set(written) | {MANIFEST_FILE})
        write_json(manifest, self._path(MANIFEST_FILE))

    # ---- stage: extract ----

    def select_participles(self, lexicon: CorpusLexicon) -> list[str]:
        explicit = self.config.explicit_participles
        if explicit is not None:
            return explicit
        candidates = lexicon.rank_participles(self.config.candidate_cap)
        logger.info(f"Discovered {len(candidates)} candidate participles by hyphenated-compound frequency")
        return candidates

    def extract(self) -> list[ConstructionMatch]:
        """
        Ingest the corpus and extract construction matches.

        Writes matches.tsv, cell_counts.csv and a fresh run manifest.

        Returns:
            Valid matches, grouped by participle then construction, in
            corpus order within each cell
        """
        if not self.config.corpus_paths:
            raise ConfigError("no corpus files given (corpus_paths is empty)")

        scans = self._map_files(_scan_file)
        lexicon = CorpusLexicon(possessive_tags=frozenset(self.config.possessive_tags))
        for file_lexicon, _ in scans:
            lexicon = lexicon.merge(file_lexicon)
        files = [counters for _, counters in scans]
        for counters in files:
            if counters.malformed or counters.invalid:
                logger.warning(
                    f"{counters.path}: skipped {counters.malformed} malformed and {counters.invalid} invalid sentence(s)"
                )

        participles = self.select_participles(lexicon)
        logger.info(f"Extracting constructions for {len(participles)} participle(s)")

        outcomes: dict[CellKey, list[SpanOutcome]] = defaultdict(list)
        totals: Counter = Counter()
        for file_outcomes, file_totals in self._map_files(_extract_file, participles, lexicon):
            totals.update(file_totals)
            for cell, items in file_outcomes.items():
                room = self.config.raw_cap - len(outcomes[cell])
                outcomes[cell].extend(items[:room])

        matches: list[ConstructionMatch] = []
        cells: list[CellAccounting] = []
        for participle in participles:
            for kind in KIND_ORDER:
                cell_outcomes = outcomes.get((participle, kind), [])
                status = Counter(o.status for o in cell_outcomes)
                accounting = CellAccounting(
                    participle=participle,
                    construction=kind.value,
                    raw=len(cell_outcomes),
                    parsed_valid=status[SpanStatus.VALID],
                    rejected_by_filter=status[SpanStatus.FILTERED],
                    rejected_by_dependency=status[SpanStatus.DEPENDENCY],
                    capped=totals[(participle, kind)] - len(cell_outcomes),
                )
                self._check_accounting(accounting)
                cells.append(accounting)
                matches.extend(o.match for o in cell_outcomes if o.status is SpanStatus.VALID)

        write_matches(matches, self._path(MATCHES_FILE))
        write_cell_counts(cells, self._path(CELL_COUNTS_FILE))

        manifest = RunManifest(
            version=__version__,
            seed=self.config.seed,
            config=self.config.model_dump(mode="json"),
            files=files,
            candidate_participles=participles,
            cells=cells,
        )
        self._save_manifest(manifest, MATCHES_FILE, CELL_COUNTS_FILE)
        logger.info(f"Extracted {len(matches)} valid matches into {self._path(MATCHES_FILE)}")
        return matches

    @staticmethod
    def _check_accounting(cell: CellAccounting) -> None:
        resolved = cell.parsed_valid + cell.rejected_by_filter + cell.rejected_by_dependency
        if resolved != cell.raw or cell.capped < 0:
            raise InvariantViolation(
                f"accounting mismatch for ({cell.participle}, {cell.construction}): "
                f"raw={cell.raw}, resolved={resolved}, capped={cell.capped}"
            )

    # ---- stage: entropy ----

    def entropy(self) -> list[EntropyRecord]:
        """
        Apply inclusion thresholds, downsample and compute entropies.

        Writes entropy.csv and prepositions.csv and updates the manifest.

        Raises:
            EmptyAnalysisSetError: no participle survives inclusion
        """
        config = self.config
        matches = read_matches(self._path(MATCHES_FILE))
        cells = read_cell_counts(self._path(CELL_COUNTS_FILE))
        raw_counts = {(c.participle, ConstructionKind(c.construction)): c.raw for c in cells}
        samples = collect(matches, key=config.alpha_key, lowercase=config.lowercase_alpha)

        exclusions = exclusion_reasons(raw_counts, samples, config.min_raw, config.min_parsed)
        included = apply_inclusion(raw_counts, samples, config.min_raw, config.min_parsed)

        records: list[EntropyRecord] = []
        sampled: dict[CellKey, int] = {}
        for participle in sorted(included):
            try:
                drawn = [
                    downsample(samples[(participle, kind)], n=config.sample_n, seed=config.seed) for kind in KIND_ORDER
                ]
            except InsufficientSampleError as e:
                logger.warning(f"Excluding {participle}: {e}")
                exclusions[INSUFFICIENT_PARSED] = sorted(set(exclusions[INSUFFICIENT_PARSED]) | {participle})
                continue
            for sample in drawn:
                records.append(entropy_record(sample))
                sampled[sample.key] = sample.total
        included_sorted = sorted({r.participle for r in records})

        for reason, participles in exclusions.items():
            if participles:
                logger.warning(f"Excluded ({reason}): {', '.join(participles)}")

        manifest = self._load_manifest()
        manifest.included_participles = included_sorted
        manifest.exclusions = exclusions
        manifest.cells = [
            cell.model_copy(update={"sampled": sampled.get((cell.participle, ConstructionKind(cell.construction)), 0)})
            for cell in manifest.cells
        ]

        if not records:
            self._save_manifest(manifest)
            raise EmptyAnalysisSetError(
                f"no participle survived inclusion (min_raw={config.min_raw}, min_parsed={config.min_parsed})"
            )

        write_entropy(records, self._path(ENTROPY_FILE))
        kept = set(included_sorted)
        write_table(
            preposition_counts(m for m in matches if m.participle_lemma in kept), self._path(PREPOSITIONS_FILE)
        )
        self._save_manifest(manifest, ENTROPY_FILE, PREPOSITIONS_FILE)
        logger.info(f"Computed entropy for {len(included_sorted)} participle(s) x {len(KIND_ORDER)} constructions")
        return records

    # ---- stage: stats ----

    def stats(self) -> StatsReport:
        """Fit the mixed model on entropy.csv and write stats.json."""
        records = read_entropy(self._path(ENTROPY_FILE))
        sizes = {r.n for r in records}
        if len(sizes) > 1:
            raise InvariantViolation(f"entropy records have unequal sample sizes {sorted(sizes)}")
        report = analyze(records, n_perm=self.config.n_perm, seed=self.config.seed)
        write_json(report, self._path(STATS_FILE))
        self._save_manifest(self._load_manifest(), STATS_FILE)
        return report

    # ---- stage: report ----

    def report(self) -> list[Path]:
        """Write figure tables and, when enabled, rendered figures."""
        records = read_entropy(self._path(ENTROPY_FILE))
        fig1 = emit_fig1_data(records)
        fig2 = emit_fig2_data(records)
        written = [
            write_table(fig1, self._path(FIG1_FILE)),
            write_table(fig2, self._path(FIG2_FILE)),
        ]
        if self.config.render_figures:
            written += save_figure(construction_figure(fig1), self._path("fig1"))
            written += save_figure(participle_figure(fig2), self._path("fig2"))
        self._save_manifest(self._load_manifest(), *(p.name for p in written))
        return written

    def run(self) -> StatsReport:
        """All stages in order."""
        logger.info(f"Running pipeline over {len(self.config.corpus_paths)} file(s) into {self.output_dir}")
        self.extract()
        self.entropy()
        report = self.stats()
        self.report()
        return report


def run_pipeline(config: PipelineConfig) -> StatsReport:
    """
    Run the full analysis for a configuration.

    Args:
        config: Validated pipeline configuration

    Returns:
        StatsReport (also written to stats.json)

    Raises:
        EmptyAnalysisSetError: no participle survives inclusion
    """
    return PipelineEngine(config).run()
