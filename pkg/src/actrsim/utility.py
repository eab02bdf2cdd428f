"""Learned production utility: success probability q, goal probability r, cost C."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .errors import DomainError


class GoalProbability(Protocol):
    def estimate(self, spent_cost: float) -> float: ...


@dataclass(frozen=True)
class ConstantR:
    r0: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.r0 <= 1.0:
            raise DomainError(f"r0 must be a probability, got {self.r0}")

    def estimate(self, spent_cost: float) -> float:
        return self.r0


@dataclass(frozen=True)
class CostDiscountR:
    """The more already spent on the goal, the less likely it is reached."""

    budget: float = 10.0

    def __post_init__(self):
        if not self.budget > 0:
            raise DomainError(f"budget must be positive, got {self.budget}")

    def estimate(self, spent_cost: float) -> float:
        return max(0.0, 1.0 - spent_cost / self.budget)


@dataclass
class UtilityStats:
    """Beta counts for q plus a running mean of observed costs."""

    q_alpha: float = 1.0
    q_beta: float = 1.0
    cost_sum: float = 0.0
    cost_n: int = 0
    r_mode: GoalProbability = field(default_factory=ConstantR)
    cost_prior: float = 0.05

    def __post_init__(self):
        if not (self.q_alpha > 0 and self.q_beta > 0):
            raise DomainError("Beta pseudo-counts must be positive")

    @property
    def q(self) -> float:
        return self.q_alpha / (self.q_alpha + self.q_beta)

    def update_q(self, success: bool) -> "UtilityStats":
        if success:
            self.q_alpha += 1
        else:
            self.q_beta += 1
        return self

    def estimate_r(self, spent_cost: float = 0.0) -> float:
        if spent_cost < 0:
            raise DomainError("spent cost must be non-negative")
        return self.r_mode.estimate(spent_cost)

    def update_cost(self, observed: float) -> "UtilityStats":
        if observed < 0:
            raise DomainError("observed cost must be non-negative")
        self.cost_sum += observed
        self.cost_n += 1
        return self

    def estimate_C(self) -> float:
        if self.cost_n == 0:
            return self.cost_prior
        return self.cost_sum / self.cost_n

    def p(self, spent_cost: float = 0.0) -> float:
        return self.q * self.estimate_r(spent_cost)


def stats_from_parameters(params) -> UtilityStats:
    r = ConstantR(params.r_value) if params.r_mode == "constant" else CostDiscountR(params.r_budget)
    return UtilityStats(params.q_alpha, params.q_beta, r_mode=r, cost_prior=params.cost_prior)
