"""
Synthetic corpus presets.
"""

from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from slotentropy.errors import ConfigError
from slotentropy.extractors.base import ConstructionKind
from slotentropy.synth.generator import VERBS, SynthSpec


DEMO_SEED = 20240501

# Bundled demo: skewed compound slots, uniform phrasal slots; "negotiate"
# is too rare as a hyphenated compound and drops out at inclusion.
DEFAULT_SPEC = SynthSpec(
    seed=DEMO_SEED,
    n_participles=len(VERBS),
    tokens_per_cell=240,
    overrides={"negotiate": {ConstructionKind.HYPHENATED: 50}},
)


def load_synth_spec(path: Optional[Path] = None, seed: Optional[int] = None) -> SynthSpec:
    """
    Read a SynthSpec from JSON, or the bundled default.

    Raises:
        ConfigError: unreadable file or invalid spec
    """
    if path is None:
        spec = DEFAULT_SPEC
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"synth spec not found: {path}")
        try:
            spec = SynthSpec.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as e:
            raise ConfigError(f"{path}: invalid synth spec: {e}") from None
    return spec if seed is None else spec.model_copy(update={"seed": seed})
