"""
Command-line interface.
Entry point of the `slotentropy` command.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from loguru import logger

from slotentropy import __version__
from slotentropy.config import PipelineConfig, load_config
from slotentropy.engine.pipeline import PipelineEngine
from slotentropy.errors import QueryParseError, SlotEntropyError
from slotentropy.query import parse_query, render
from slotentropy.report.schemas import StatsReport
from slotentropy.stats.inference import format_p
from slotentropy.synth import generate_synthetic_corpus, load_synth_spec


LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def configure_logging(level: str = "INFO") -> None:
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level.upper())


# ============ Argument Parsing ============

def _add_pipeline_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="Key file with SLOTENTROPY_<KEY>=value lines")
    parser.add_argument("--corpus", dest="corpus_paths", type=Path, nargs="+", help="CoNLL-U corpus file(s)")
    parser.add_argument("--output-dir", type=Path, help="Directory for result files")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--participles", help="'auto' or comma-separated participle lemmas")
    parser.add_argument("--candidate-cap", type=int, help="Candidates kept by auto discovery")
    parser.add_argument("--min-raw", type=int, help="Raw tokens required per construction")
    parser.add_argument("--min-parsed", type=int, help="Validated tokens required per construction")
    parser.add_argument("--sample-n", type=int, help="Tokens sampled per construction")
    parser.add_argument("--raw-cap", type=int, help="Spans kept per participle and construction")
    parser.add_argument("--alpha-key", choices=["lemma", "form"], help="Count alphas by lemma or surface form")
    parser.add_argument("--lowercase-alpha", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--map-penn-tags", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--strict-format", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--dedup", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--rr-allow-adverb", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--hyphen-noun-lexicon", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--n-perm", type=int, help="Permutations per contrast")
    parser.add_argument("--render-figures", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--jobs", type=int, help="Worker processes for corpus files")


_CONFIG_KEYS = (
    "corpus_paths",
    "output_dir",
    "seed",
    "participles",
    "candidate_cap",
    "min_raw",
    "min_parsed",
    "sample_n",
    "raw_cap",
    "alpha_key",
    "lowercase_alpha",
    "map_penn_tags",
    "strict_format",
    "dedup",
    "rr_allow_adverb",
    "hyphen_noun_lexicon",
    "n_perm",
    "render_figures",
    "jobs",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slotentropy",
        description="Slot entropy of participial compounds versus their phrasal paraphrases.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    verbs = parser.add_subparsers(dest="verb", required=True)

    for name, help_text in (
        ("extract", "Extract construction matches (matches.tsv, cell_counts.csv)"),
        ("entropy", "Apply inclusion, sample and compute entropy (entropy.csv)"),
        ("stats", "Fit the mixed model and run tests (stats.json)"),
        ("report", "Write figure tables and figures (fig1.csv, fig2.csv)"),
        ("run", "Run every stage"),
    ):
        _add_pipeline_options(verbs.add_parser(name, help=help_text))

    synth = verbs.add_parser("synth", help="Generate a synthetic CoNLL-U corpus")
    synth.add_argument("--spec", type=Path, help="SynthSpec JSON file (default: bundled demo)")
    synth.add_argument("--out", type=Path, default=Path("synthetic.conllu"), help="Corpus file to write")
    synth.add_argument("--seed", type=int, help="Override the SynthSpec seed")

    cql = verbs.add_parser("cql", help="Query language tools")
    cql_verbs = cql.add_subparsers(dest="cql_verb", required=True)
    check = cql_verbs.add_parser("check", help="Parse a query and print its canonical form")
    check.add_argument("query")

    return parser


# ============ Commands ============

def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    overrides = {key: getattr(args, key, None) for key in _CONFIG_KEYS}
    return load_config(args.config, **overrides)


def print_summary(report: StatsReport) -> None:
    """Short human-readable summary on stdout."""
    print(f"participles analyzed: {report.n_participles}")
    for level, summary in report.summary.items():
        print(f"  {level:<17} mean={summary.mean:.3f} bits  range=[{summary.min:.3f}, {summary.max:.3f}]")
    if report.skipped_reason:
        print(f"model fitting skipped: {report.skipped_reason}")
        return
    lrt = report.lrt_construction
    print(f"construction LRT: chi2({lrt.df}) = {lrt.chi2:.4f}, p {_p_text(lrt.p)}")
    phrasal = report.lrt_phrasal_only
    print(f"passive vs reduced relative LRT: chi2({phrasal.df}) = {phrasal.chi2:.4f}, p {_p_text(phrasal.p)}")
    for name in report.model.t:
        if name == "intercept":
            continue
        print(f"  {name:<17} beta={report.model.beta[name]:+.4f}  t={report.model.t[name]:.2f}")


def _p_text(p: float) -> str:
    text = format_p(p)
    return text if text.startswith("<") else f"= {text}"


def _stage(name: str) -> Callable[[argparse.Namespace], int]:
    def command(args: argparse.Namespace) -> int:
        engine = PipelineEngine(_config_from_args(args))
        result = getattr(engine, name)()
        if isinstance(result, StatsReport):
            print_summary(result)
        return 0

    return command


def cmd_synth(args: argparse.Namespace) -> int:
    spec = load_synth_spec(args.spec, seed=args.seed)
    result = generate_synthetic_corpus(spec, args.out)
    print(f"{result.corpus_path}: {result.n_sentences} sentences, {result.n_planted} planted matches")
    print(f"truth: {result.truth_path}")
    return 0


def cmd_cql_check(args: argparse.Namespace) -> int:
    try:
        ast = parse_query(args.query)
    except QueryParseError as e:
        print(args.query, file=sys.stderr)
        print(" " * e.offset + "^", file=sys.stderr)
        raise
    print(render(ast))
    return 0


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "extract": _stage("extract"),
    "entropy": _stage("entropy"),
    "stats": _stage("stats"),
    "report": _stage("report"),
    "run": _stage("run"),
    "synth": cmd_synth,
    "cql": cmd_cql_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        Exit code: 0 success, 1 input/config error, 2 empty analysis set,
        3 internal invariant violation
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # usage errors exit 1; 2 is reserved for an empty analysis set
        return 0 if e.code in (0, None) else 1
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.verb](args)
    except SlotEntropyError as e:
        logger.error(str(e))
        return e.exit_code
    except OSError as e:
        logger.error(f"{e.filename or ''}: {e.strerror or e}")
        return 1
