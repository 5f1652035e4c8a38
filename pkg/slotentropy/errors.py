"""
Error types.
Each error carries the process exit code the CLI reports for it.
"""

from typing import Optional


class SlotEntropyError(Exception):
    """Base class for all slotentropy errors."""

    exit_code: int = 3


class InputError(SlotEntropyError):
    """Bad input data, query text or configuration."""

    exit_code = 1


class ConfigError(InputError):
    """Invalid or incomplete pipeline configuration."""


class ConllFormatError(InputError):
    """A CoNLL-U line that violates the 10-column contract."""

    def __init__(self, message: str, line_no: int, source: Optional[str] = None):
        self.line_no = line_no
        self.source = source
        where = f"{source}:{line_no}" if source else f"line {line_no}"
        super().__init__(f"{where}: {message}")


class SentenceValidationError(InputError):
    """A sentence whose tokens or head pointers are inconsistent."""

    def __init__(self, message: str, sentence_id: str):
        self.sentence_id = sentence_id
        super().__init__(f"sentence {sentence_id}: {message}")


class QueryParseError(InputError):
    """A query that does not belong to the supported CQL subset."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"offset {offset}: {message}")


class DesignError(InputError):
    """Fixed-effect design matrix is singular."""


class InsufficientSampleError(InputError):
    """A slot sample holds fewer tokens than requested."""


class DomainError(SlotEntropyError, ValueError):
    """Argument outside the mathematical domain of an operation."""

    exit_code = 1


class FitQualityError(SlotEntropyError):
    """Nested model fits are inconsistent beyond optimizer tolerance."""


class EmptyAnalysisSetError(SlotEntropyError):
    """No participle survived the inclusion thresholds."""

    exit_code = 2


class InvariantViolation(SlotEntropyError):
    """An internal accounting invariant does not hold."""
