"""
Synth package.
Seeded synthetic corpora with planted constructions.
"""

from slotentropy.synth.generator import VERBS, SynthResult, SynthSpec, generate_synthetic_corpus
from slotentropy.synth.presets import DEFAULT_SPEC, load_synth_spec

__all__ = [
    "DEFAULT_SPEC",
    "VERBS",
    "SynthResult",
    "SynthSpec",
    "generate_synthetic_corpus",
    "load_synth_spec",
]
