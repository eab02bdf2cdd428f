"""Global constants of the theory, one field per symbol.

:class:`Parameters` is the flat record a model file's ``[parameters]``
section fills in. Each module reads its own typed view of it
(:meth:`Parameters.declarative`, :meth:`Parameters.conflict`, ...).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Union

from .errors import DomainError


@dataclass(frozen=True)
class ConstantDecay:
    """Every usage event decays with the same exponent ``d``."""

    d: float = 0.5

    def __post_init__(self):
        if not 0 < self.d < 1:
            raise DomainError(f"decay d must lie in (0, 1), got {self.d}")


@dataclass(frozen=True)
class SpacingDecayAS91:
    """Gap-sensitive decay: ``d_k = max(d1, b * gap**-d1)``."""

    d1: float = 0.5
    b: float = 1.0

    def __post_init__(self):
        if not 0 < self.d1 < 1:
            raise DomainError(f"d1 must lie in (0, 1), got {self.d1}")
        if not self.b > 0:
            raise DomainError(f"b must be positive, got {self.b}")


@dataclass(frozen=True)
class SpacingDecayPA08:
    """Activation-sensitive decay: ``d_k = c * exp(m_{k-1}) + alpha``."""

    c: float = 0.25
    alpha: float = 0.3

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.c >= 0:
            raise DomainError(f"c must be non-negative, got {self.c}")


DecayMode = Union[ConstantDecay, SpacingDecayAS91, SpacingDecayPA08]


@dataclass(frozen=True)
class DeclarativeParams:
    decay_mode: DecayMode = field(default_factory=ConstantDecay)
    base_B: float = 0.0
    retrieval_F: float = 1.0
    retrieval_C: float = 0.05
    recall_threshold_tau: float = 0.0
    recall_noise_s: float = 0.4

    def __post_init__(self):
        if not self.retrieval_F > 0:
            raise DomainError("retrieval_F must be positive")
        if not self.retrieval_C >= 0:
            raise DomainError("retrieval_C must be non-negative")
        if not self.recall_noise_s > 0:
            raise DomainError("recall_noise_s must be positive")


@dataclass(frozen=True)
class LatencyParams:
    latency_B: float = 0.05
    latency_b: float = 1.0

    def __post_init__(self):
        if not (self.latency_B > 0 and self.latency_b > 0):
            raise DomainError("latency_B and latency_b must be positive")


@dataclass(frozen=True)
class StrengthParams:
    decay: float = 0.5
    strength_B: float = 0.0
    # None disables the newborn floor: an unfired production then has strength -inf.
    initial_strength: Optional[float] = 0.0


@dataclass(frozen=True)
class ConflictParams:
    goal_value_G: float = 20.0
    waiting_cost_tau: float = 0.5

    def __post_init__(self):
        if not self.goal_value_G > 0:
            raise DomainError("goal_value_G must be positive")
        if not self.waiting_cost_tau >= 0:
            raise DomainError("waiting_cost_tau must be non-negative")


@dataclass(frozen=True)
class EngineParams:
    action_time: float = 0.05
    max_cycles: int = 1000
    start_time: float = 0.05
    strengthen_losers: bool = False

    def __post_init__(self):
        if not self.action_time >= 0:
            raise DomainError("action_time must be non-negative")
        if not self.max_cycles > 0:
            raise DomainError("max_cycles must be positive")
        if not self.start_time >= 0:
            raise DomainError("start_time must be non-negative")


DECAY_MODES = ("constant", "as91", "pa08")
R_MODES = ("constant", "cost-discount")


@dataclass(frozen=True)
class Parameters:
    """Flat parameter record; field names are the model-file keys."""

    # declarative memory
    decay_mode: str = "constant"
    decay: float = 0.5
    decay_d1: float = 0.5
    decay_b: float = 1.0
    decay_c: float = 0.25
    decay_alpha: float = 0.3
    base_B: float = 0.0
    retrieval_F: float = 1.0
    retrieval_C: float = 0.05
    recall_threshold: float = 0.0
    recall_noise: float = 0.4
    # associative learning (Laplace pseudo-counts)
    assoc_prior_a: float = 1.0
    assoc_prior_b: float = 1.0
    # production strength and match latency
    strength_decay: float = 0.5
    strength_B: float = 0.0
    initial_strength: Optional[float] = 0.0
    latency_B: float = 0.05
    latency_b: float = 1.0
    # conflict resolution
    goal_value: float = 20.0
    waiting_cost: float = 0.5
    # utility learning
    q_alpha: float = 1.0
    q_beta: float = 1.0
    cost_prior: float = 0.05
    r_mode: str = "constant"
    r_value: float = 1.0
    r_budget: float = 10.0
    # engine
    action_time: float = 0.05
    max_cycles: int = 1000
    start_time: float = 0.05
    strengthen_losers: bool = False

    def __post_init__(self):
        if self.decay_mode not in DECAY_MODES:
            raise DomainError(f"decay_mode must be one of {DECAY_MODES}, got {self.decay_mode!r}")
        if self.r_mode not in R_MODES:
            raise DomainError(f"r_mode must be one of {R_MODES}, got {self.r_mode!r}")
        if not (self.q_alpha > 0 and self.q_beta > 0):
            raise DomainError("q_alpha and q_beta must be positive")
        if not (self.assoc_prior_a > 0 and self.assoc_prior_b > 0):
            raise DomainError("associative pseudo-counts must be positive")
        # build every view once so bad values fail at construction
        self.declarative()
        self.latency()
        self.conflict()
        self.engine()

    def decay_rule(self) -> DecayMode:
        if self.decay_mode == "as91":
            return SpacingDecayAS91(self.decay_d1, self.decay_b)
        if self.decay_mode == "pa08":
            return SpacingDecayPA08(self.decay_c, self.decay_alpha)
        return ConstantDecay(self.decay)

    def declarative(self) -> DeclarativeParams:
        return DeclarativeParams(self.decay_rule(), self.base_B, self.retrieval_F,
                                 self.retrieval_C, self.recall_threshold, self.recall_noise)

    def latency(self) -> LatencyParams:
        return LatencyParams(self.latency_B, self.latency_b)

    def strength(self) -> StrengthParams:
        return StrengthParams(self.strength_decay, self.strength_B, self.initial_strength)

    def conflict(self) -> ConflictParams:
        return ConflictParams(self.goal_value, self.waiting_cost)

    def engine(self) -> EngineParams:
        return EngineParams(self.action_time, self.max_cycles, self.start_time,
                            self.strengthen_losers)

    def with_values(self, **changes) -> "Parameters":
        return replace(self, **changes)

    def with_text_values(self, pairs) -> "Parameters":
        """Apply ``(key, text)`` overrides in order; the last one for a key wins."""
        changes = {}
        for key, text in pairs:
            changes[key] = coerce_parameter(key, text)
        return replace(self, **changes)


PARAMETER_NAMES = tuple(f.name for f in fields(Parameters))
_DEFAULTS = Parameters()


def coerce_parameter(key: str, text: str):
    """Convert the text of a ``key = value`` line to the field's type."""
    if key not in PARAMETER_NAMES:
        raise KeyError(key)
    default = getattr(_DEFAULTS, key)
    text = text.strip()
    if key == "initial_strength":
        if text.lower() == "none":
            return None
        return float(text)
    if isinstance(default, bool):
        low = text.lower()
        if low in ("true", "yes", "on", "1"):
            return True
        if low in ("false", "no", "off", "0"):
            return False
        raise ValueError(f"expected a boolean for {key}, got {text!r}")
    if isinstance(default, int):
        return int(text)
    if isinstance(default, float):
        value = float(text)
        if math.isnan(value):
            raise ValueError(f"{key} may not be NaN")
        return value
    return text


def format_parameter(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
