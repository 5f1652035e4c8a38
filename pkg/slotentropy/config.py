"""
Application configuration module.
Loads the pipeline configuration from a dotenv-style key file, the
environment and command-line overrides.
"""

from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import Field, ValidationError, field_serializer, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from slotentropy.errors import ConfigError


DEFAULT_COMPOUND_DEPRELS = frozenset({"compound", "nmod:npmod", "obl:npmod", "dep"})
DEFAULT_ADJECTIVAL_DEPRELS = frozenset({"amod", "acl"})
DEFAULT_PHRASAL_DEPRELS = frozenset({"obl", "nmod", "obl:agent", "pobj"})
DEFAULT_CASE_DEPRELS = frozenset({"case"})
DEFAULT_POSSESSIVE_TAGS = frozenset({"NNZ", "NNSZ", "NPZ", "NPSZ", "POS"})
DEFAULT_RELATIVIZERS = frozenset({"which", "that"})


class PipelineConfig(BaseSettings):
    """
    Settings for one analysis run.

    Every key can be set in the config file as SLOTENTROPY_<KEY>=value,
    overridden by the environment and then by CLI flags.
    """

    model_config = SettingsConfigDict(
        env_prefix="SLOTENTROPY_",
        extra="ignore",
        frozen=True,
    )

    # Input
    corpus_paths: list[Path] = Field(default_factory=list)
    map_penn_tags: bool = True
    strict_format: bool = False
    dedup: bool = False

    # Participle selection: "auto" or comma-separated lemmas
    participles: str = "auto"
    candidate_cap: int = Field(default=65, ge=1)

    # Sampling protocol
    min_raw: int = Field(default=200, ge=1)
    min_parsed: int = Field(default=100, ge=1)
    sample_n: int = Field(default=100, ge=2)
    raw_cap: int = Field(default=5000, ge=1)
    seed: int = Field(ge=0, lt=2**64)

    # Normalization of the alpha key
    alpha_key: Literal["lemma", "form"] = "lemma"
    lowercase_alpha: bool = True

    # Extraction rules
    compound_deprels: frozenset[str] = DEFAULT_COMPOUND_DEPRELS
    adjectival_deprels: frozenset[str] = DEFAULT_ADJECTIVAL_DEPRELS
    phrasal_deprels: frozenset[str] = DEFAULT_PHRASAL_DEPRELS
    case_deprels: frozenset[str] = DEFAULT_CASE_DEPRELS
    possessive_tags: frozenset[str] = DEFAULT_POSSESSIVE_TAGS
    relativizers: frozenset[str] = DEFAULT_RELATIVIZERS
    rr_allow_adverb: bool = False
    hyphen_noun_lexicon: bool = False

    # Statistics
    n_perm: int = Field(default=10000, ge=1)

    # Output
    output_dir: Path = Path("results")
    render_figures: bool = True
    jobs: int = Field(default=1, ge=1)

    @field_validator("participles")
    @classmethod
    def _normalize_participles(cls, value: str) -> str:
        value = value.strip()
        if not value:
            raise ValueError("participles must be 'auto' or a comma-separated lemma list")
        return value

    @field_serializer(
        "compound_deprels",
        "adjectival_deprels",
        "phrasal_deprels",
        "case_deprels",
        "possessive_tags",
        "relativizers",
    )
    def _serialize_set(self, value: frozenset[str]) -> list[str]:
        return sorted(value)

    @property
    def explicit_participles(self) -> Optional[list[str]]:
        """Requested lemmas, or None when participles are discovered automatically."""
        if self.participles.lower() == "auto":
            return None
        lemmas = [p.strip() for p in self.participles.split(",")]
        return list(dict.fromkeys(p for p in lemmas if p))


def load_config(config_path: Optional[Path] = None, **overrides: Any) -> PipelineConfig:
    """
    Build a PipelineConfig.

    Args:
        config_path: Optional key file (dotenv syntax)
        **overrides: Values from CLI flags; None values are ignored

    Returns:
        Validated configuration
    """
    if config_path is not None and not Path(config_path).is_file():
        raise ConfigError(f"config file not found: {config_path}")
    kwargs = {k: v for k, v in overrides.items() if v is not None}
    try:
        return PipelineConfig(_env_file=config_path, **kwargs)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration: {e}") from e
