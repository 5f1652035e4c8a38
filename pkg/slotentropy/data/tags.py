"""
Tag-set helpers.
Maps Penn Treebank verb tags onto the Sketch Engine (TreeTagger) names the
queries are written against, and classifies nominal tags.
"""

from typing import Collection, Optional

from slotentropy.config import DEFAULT_POSSESSIVE_TAGS


# Verb tag prefix by lemma: forms of "be" keep VB*, "have" becomes VH*, others VV*
_VERB_PREFIX = {"be": "VB", "have": "VH"}


def map_penn_tag(xpos: Optional[str], lemma: str) -> Optional[str]:
    """
    Translate a Penn verb tag to its Sketch Engine equivalent.

    Non-verb tags (IN, NN*, RB ...) are shared by both tag sets and pass
    through unchanged, as do tags that are already in Sketch Engine form.

    Examples:
        VBN + "stain" -> VVN
        VBD + "be"    -> VBD
        VBZ + "have"  -> VHZ
    """
    if not xpos or not xpos.startswith("VB"):
        return xpos
    prefix = _VERB_PREFIX.get(lemma.lower(), "VV")
    return prefix + xpos[2:]


def is_nominal(xpos: Optional[str], possessive_tags: Collection[str] = DEFAULT_POSSESSIVE_TAGS) -> bool:
    """True for N-initial tags that are not possessive."""
    if not xpos:
        return False
    return xpos.startswith("N") and xpos not in possessive_tags
