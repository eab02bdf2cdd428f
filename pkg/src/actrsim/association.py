"""Context construction and learned associative strengths ``s_ij``."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError


@dataclass(frozen=True)
class Context:
    """Context elements ``j`` with salience weights ``w_j``."""

    elements: tuple = ()

    def __post_init__(self):
        ids = [cid for cid, _ in self.elements]
        if len(set(ids)) != len(ids):
            raise DomainError("context contains duplicate chunk ids")
        for cid, w in self.elements:
            if not 0.0 <= w <= 1.0:
                raise DomainError(f"weight of {cid!r} is {w}, outside [0, 1]")

    @property
    def ids(self) -> tuple:
        return tuple(cid for cid, _ in self.elements)

    def __len__(self):
        return len(self.elements)


EMPTY_CONTEXT = Context()


def build_context(memory, goal: str, perceptual: Iterable[str] = ()) -> Context:
    """Chunks referenced by the goal's slots plus perceptual chunks, weighted ``1/n``."""
    ids = list(memory[goal].references)
    for cid in sorted(perceptual):
        if cid not in ids:
            ids.append(cid)
    if not ids:
        return EMPTY_CONTEXT
    w = 1.0 / len(ids)
    return Context(tuple((cid, w) for cid in ids))


class AssociationStats:
    """Co-occurrence counts between fired-production matches and context elements.

    ``strength(i, j)`` estimates ``ln p(N_i | C_j) / p(N_i)`` where ``N_i`` is
    "chunk i matched the production that fired" and ``C_j`` is "j was in the
    context", each probability smoothed with pseudo-counts ``a`` and ``b``.
    """

    def __init__(self, prior_a: float = 1.0, prior_b: float = 1.0):
        if not (prior_a > 0 and prior_b > 0):
            raise DomainError("pseudo-counts must be positive")
        self.prior_a = prior_a
        self.prior_b = prior_b
        self.count_firings = 0
        self.count_fire_total = Counter()
        self.count_context = Counter()
        self.count_fire_with = Counter()

    def observe_firing(self, matched_chunks: Iterable[str], context) -> None:
        matched = set(matched_chunks)
        ctx = context.ids if context is not None else ()
        self.count_firings += 1
        for j in ctx:
            self.count_context[j] += 1
        for i in matched:
            self.count_fire_total[i] += 1
            for j in ctx:
                self.count_fire_with[i, j] += 1

    def strength(self, i: str, j: str) -> float:
        a, b = self.prior_a, self.prior_b
        conditional = (self.count_fire_with[i, j] + a) / (self.count_context[j] + a + b)
        marginal = (self.count_fire_total[i] + a) / (self.count_firings + a + b)
        return math.log(conditional) - math.log(marginal)

    __call__ = strength
