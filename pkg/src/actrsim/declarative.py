"""Declarative memory: chunks, usage histories and activation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import count
from typing import Callable, Iterable, Mapping, Optional

from scipy.special import expit

from .errors import DanglingReferenceError, DomainError, OrderingError
from .params import (ConstantDecay, DeclarativeParams, SpacingDecayAS91,
                     SpacingDecayPA08)
from .values import Ref

NEG_INF = float("-inf")


@dataclass(frozen=True)
class UsageEvent:
    time: float
    decay: float


@dataclass
class Chunk:
    id: str
    kind: str
    slots: dict
    creation_time: float
    events: list = field(default_factory=list)

    @property
    def references(self) -> list:
        """Ids of chunks named by this chunk's slots, in slot order, without repeats."""
        seen = []
        for value in self.slots.values():
            if isinstance(value, Ref) and value.id not in seen:
                seen.append(value.id)
        return seen


def base_level(times: Iterable[float], decays: Iterable[float], now: float,
               constant: float = 0.0) -> float:
    """``ln sum_k (now - t_k)**-d_k + constant``.

    Events of age zero (or in the future) are left out of the sum; an empty
    sum gives ``-inf``.
    """
    # summed in log space: spacing-sensitive decays can be large enough that
    # age**-d overflows while its logarithm is unremarkable
    logs = [-d * math.log(now - t) for t, d in zip(times, decays) if now - t > 0]
    if not logs:
        return NEG_INF
    top = max(logs)
    return top + math.log(math.fsum(math.exp(x - top) for x in logs)) + constant


def recall_probability_from(activation: float, tau: float, s: float) -> float:
    if activation == NEG_INF:
        return 0.0
    return float(expit((activation - tau) / s))


def retrieval_latency_from(activation: float, F: float, C: float) -> float:
    if activation == NEG_INF:
        return math.inf
    try:
        return F * math.exp(-activation) + C
    except OverflowError:
        return math.inf


class DeclarativeMemory:
    """Chunk store with power-law decaying usage traces.

    Chunk ids are strings. Chunks created without an explicit id get
    ``<kind>-<n>`` with ``n`` drawn from a per-memory counter.
    """

    def __init__(self, params: Optional[DeclarativeParams] = None):
        self.params = params or DeclarativeParams()
        self.chunks: dict[str, Chunk] = {}
        self._serial = count(1)

    def __contains__(self, chunk_id):
        return chunk_id in self.chunks

    def __len__(self):
        return len(self.chunks)

    def __getitem__(self, chunk_id) -> Chunk:
        return self.chunks[chunk_id]

    def _fresh_id(self, kind):
        while True:
            cid = f"{kind}-{next(self._serial)}"
            if cid not in self.chunks:
                return cid

    def _check_refs(self, slots: Mapping, pending=()):
        for name, value in slots.items():
            if isinstance(value, Ref) and value.id not in self.chunks and value.id not in pending:
                raise DanglingReferenceError(f"slot {name!r} refers to unknown chunk {value.id!r}")

    def add_chunk(self, kind: str, slots: Mapping, now: float, chunk_id: Optional[str] = None) -> str:
        """Store a new chunk; its creation is recorded as its first usage event."""
        if now < 0:
            raise DomainError(f"time must be non-negative, got {now}")
        self._check_refs(slots)
        if chunk_id is None:
            chunk_id = self._fresh_id(kind)
        elif chunk_id in self.chunks:
            raise ValueError(f"duplicate chunk id {chunk_id!r}")
        chunk = Chunk(chunk_id, kind, dict(slots), now)
        self.chunks[chunk_id] = chunk
        chunk.events.append(UsageEvent(now, self._decay_for(chunk, now)))
        return chunk_id

    def load(self, definitions: Iterable, now: float = 0.0):
        """Add ``(id, kind, slots)`` triples at once, allowing forward references."""
        definitions = list(definitions)
        pending = {cid for cid, _, _ in definitions}
        for cid, _, slots in definitions:
            self._check_refs(slots, pending)
        for cid, kind, slots in definitions:
            chunk = Chunk(cid, kind, dict(slots), now)
            self.chunks[cid] = chunk
            chunk.events.append(UsageEvent(now, self._decay_for(chunk, now)))

    def set_slots(self, chunk_id: str, values: Mapping):
        """Overwrite slot values in place. Modification is not a usage event."""
        self._check_refs(values)
        self.chunks[chunk_id].slots.update(values)

    def find(self, kind: str, key: Mapping) -> list:
        return [c.id for c in self.chunks.values()
                if c.kind == kind and all(k in c.slots and c.slots[k] == v for k, v in key.items())]

    def _decay_for(self, chunk: Chunk, now: float) -> float:
        mode = self.params.decay_mode
        if isinstance(mode, ConstantDecay):
            return mode.d
        if isinstance(mode, SpacingDecayAS91):
            if not chunk.events:
                return mode.d1
            gap = now - chunk.events[-1].time
            return max(mode.d1, mode.b * gap ** -mode.d1)
        if isinstance(mode, SpacingDecayPA08):
            m = self.base_activation(chunk.id, now) if chunk.events else NEG_INF
            if m == NEG_INF:
                return mode.alpha
            return mode.c * math.exp(min(m, 700.0)) + mode.alpha
        raise TypeError(f"unknown decay mode {mode!r}")

    def record_use(self, chunk_id: str, now: float) -> UsageEvent:
        chunk = self.chunks[chunk_id]
        if chunk.events and now <= chunk.events[-1].time:
            raise OrderingError(
                f"use of {chunk_id!r} at {now} is not after its last event at {chunk.events[-1].time}")
        event = UsageEvent(now, self._decay_for(chunk, now))
        chunk.events.append(event)
        return event

    def base_activation(self, chunk_id: str, now: float) -> float:
        chunk = self.chunks[chunk_id]
        return base_level((e.time for e in chunk.events), (e.decay for e in chunk.events),
                          now, self.params.base_B)

    def activation(self, chunk_id: str, context=None, now: float = 0.0,
                   strength: Optional[Callable[[str, str], float]] = None) -> float:
        """Base activation plus ``sum_j w_j * s_ij`` over the context.

        ``strength(i, j)`` supplies ``s_ij``; without it the associative sum is 0.
        """
        base = self.base_activation(chunk_id, now)
        if base == NEG_INF or context is None or strength is None:
            return base
        return base + math.fsum(w * strength(chunk_id, j) for j, w in context.elements)

    def recall_probability(self, chunk_id: str, context=None, now: float = 0.0, strength=None) -> float:
        a = self.activation(chunk_id, context, now, strength)
        return recall_probability_from(a, self.params.recall_threshold_tau, self.params.recall_noise_s)

    def retrieval_latency(self, chunk_id: str, context=None, now: float = 0.0, strength=None) -> float:
        a = self.activation(chunk_id, context, now, strength)
        return retrieval_latency_from(a, self.params.retrieval_F, self.params.retrieval_C)

    def snapshot(self) -> dict:
        """Plain ``{id: (kind, slots)}`` view for comparing end states."""
        return {cid: (c.kind, dict(c.slots)) for cid, c in self.chunks.items()}
