"""actrsim: a desk-scale ACT-R production-system engine.

Declarative chunks with power-law decaying activation, goal-indexed
production rules with rational conflict resolution, learning of chunk
activation, production strength, associative strength and utility, and
production compilation.
"""
from .association import AssociationStats, Context, build_context
from .compilation import compose, proceduralize
from .conflict import (Decision, ValuedMatch, decide, expected_gain, expected_value,
                       resolve, waiting_window, z_density)
from .declarative import Chunk, DeclarativeMemory, UsageEvent
from .engine import Engine, run
from .model import ChunkDef, Model
from .modelfile import format_model, load_model, parse_model
from .params import (ConflictParams, ConstantDecay, DeclarativeParams, Parameters,
                     SpacingDecayAS91, SpacingDecayPA08)
from .procedural import Instantiation, Pattern, Production, match
from .trace import Trace, TraceEvent
from .utility import ConstantR, CostDiscountR, UtilityStats
from .values import Ref

__version__ = "0.1.0"

__all__ = [
    "AssociationStats",
    "Chunk",
    "ChunkDef",
    "ConflictParams",
    "ConstantDecay",
    "ConstantR",
    "Context",
    "CostDiscountR",
    "Decision",
    "DeclarativeMemory",
    "DeclarativeParams",
    "Engine",
    "Instantiation",
    "Model",
    "Parameters",
    "Pattern",
    "Production",
    "Ref",
    "SpacingDecayAS91",
    "SpacingDecayPA08",
    "Trace",
    "TraceEvent",
    "UsageEvent",
    "UtilityStats",
    "ValuedMatch",
    "build_context",
    "compose",
    "decide",
    "expected_gain",
    "expected_value",
    "format_model",
    "load_model",
    "match",
    "parse_model",
    "proceduralize",
    "resolve",
    "run",
    "waiting_window",
    "z_density",
]
