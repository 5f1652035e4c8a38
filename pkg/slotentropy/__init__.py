"""
slotentropy: slot entropy of participial compounds and their phrasal paraphrases.
"""

__version__ = "0.1.0"
