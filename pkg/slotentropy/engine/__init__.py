"""
Engine package.
Staged pipeline from corpus files to result tables and figures.
"""

from slotentropy.engine.pipeline import PipelineEngine, run_pipeline

__all__ = ["PipelineEngine", "run_pipeline"]
