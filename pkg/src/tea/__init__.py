"""Immune-memory-inspired trend evaluation for price time series."""

from .baseline import RandomSearchResult, random_search
from .encoding import Antigen, EncodingError, PricePoint, band, encode, price_changes
from .engine import (
    ANTIGEN_A,
    ANTIGEN_A1,
    ANTIGEN_A2,
    ExperimentSpec,
    PresentationPhase,
    RunStats,
    preset_config,
    preset_spec,
    run_batch,
    run_experiment,
)
from .matching import MatchResult, count_occurrences, enumerate_trends, longest_match
from .memory import MemoryCell, MemoryPool
from .population import PoolConfig, Tracker
from .report import detection_table, inefficiency, population_series

__all__ = [
    "ANTIGEN_A",
    "ANTIGEN_A1",
    "ANTIGEN_A2",
    "Antigen",
    "EncodingError",
    "ExperimentSpec",
    "MatchResult",
    "MemoryCell",
    "MemoryPool",
    "PoolConfig",
    "PresentationPhase",
    "PricePoint",
    "RandomSearchResult",
    "RunStats",
    "Tracker",
    "band",
    "count_occurrences",
    "detection_table",
    "encode",
    "enumerate_trends",
    "inefficiency",
    "longest_match",
    "population_series",
    "preset_config",
    "preset_spec",
    "price_changes",
    "random_search",
    "run_batch",
    "run_experiment",
]
