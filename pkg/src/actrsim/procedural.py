"""Production rules: patterns, guards, actions, matching, strength and latency."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .declarative import NEG_INF, UsageEvent, base_level
from .errors import OrderingError
from .expr import Const, Var, evaluate, variables
from .params import LatencyParams, StrengthParams
from .utility import UtilityStats
from .values import Ref, sort_key


@dataclass
class Pattern:
    """Condition on one chunk: its kind and slot constraints.

    Slot terms are :class:`Const`, :class:`Var` or :data:`WILDCARD`
    (slot present, any value). ``chunk_var`` binds the matched chunk itself
    as a :class:`Ref`. A negated pattern holds when no chunk matches it.
    """

    kind: str
    slots: dict = field(default_factory=dict)
    chunk_var: Optional[str] = None
    negated: bool = False

    def bound_variables(self) -> set:
        out = {t.name for t in self.slots.values() if isinstance(t, Var)}
        if self.chunk_var:
            out.add(self.chunk_var)
        return out


@dataclass
class Guard:
    """Predicate over bindings, or a binding ``?target = expr`` when ``target`` is set."""

    expr: object
    target: Optional[str] = None


@dataclass
class PushGoal:
    kind: str
    slots: dict


@dataclass
class PopGoal:
    pass


@dataclass
class WriteChunk:
    kind: str
    slots: dict


@dataclass
class Lookup:
    """Locate a chunk by kind and key slots; ``defaults`` fill it in if absent."""

    kind: str
    key: dict
    defaults: dict = field(default_factory=dict)


@dataclass
class SetSlot:
    target: Union[str, Lookup]  # variable name bound to a chunk, or a lookup
    slots: dict


@dataclass
class EmitExternal:
    kind: str
    slots: dict


Action = Union[PushGoal, PopGoal, WriteChunk, SetSlot, EmitExternal]


def action_variables(action) -> set:
    out = set()
    if isinstance(action, SetSlot):
        if isinstance(action.target, str):
            out.add(action.target)
        else:
            for e in list(action.target.key.values()) + list(action.target.defaults.values()):
                out |= variables(e)
    for e in getattr(action, "slots", {}).values():
        out |= variables(e)
    return out


@dataclass
class Production:
    name: str
    patterns: list
    guards: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    fire_events: list = field(default_factory=list, compare=False, repr=False)
    utility: UtilityStats = field(default_factory=UtilityStats, compare=False, repr=False)

    @property
    def conditions(self) -> list:
        return [p for p in self.patterns if not p.negated]

    @property
    def exclusions(self) -> list:
        return [p for p in self.patterns if p.negated]

    def pops_goal(self) -> bool:
        return any(isinstance(a, PopGoal) for a in self.actions)


@dataclass
class Instantiation:
    production: str
    bindings: dict
    matched: tuple  # chunk ids, one per positive pattern, in pattern order
    available_time: float
    match_time: float

    @property
    def matched_chunks(self) -> frozenset:
        return frozenset(self.matched)

    def sort_key(self):
        return (tuple((k, sort_key(v)) for k, v in sorted(self.bindings.items())), self.matched)


def _same(a, b) -> bool:
    if isinstance(a, bool) or isinstance(b, bool):
        return type(a) is type(b) and a == b
    return a == b


def unify(pattern: Pattern, chunk, bindings: dict) -> Optional[dict]:
    """Extend ``bindings`` so that ``pattern`` matches ``chunk``, or return None."""
    if chunk.kind != pattern.kind:
        return None
    out = dict(bindings)
    if pattern.chunk_var is not None:
        ref = Ref(chunk.id)
        if pattern.chunk_var in out:
            if out[pattern.chunk_var] != ref:
                return None
        else:
            out[pattern.chunk_var] = ref
    for slot, term in pattern.slots.items():
        if slot not in chunk.slots:
            return None
        value = chunk.slots[slot]
        if isinstance(term, Const):
            if not _same(value, term.value):
                return None
        elif isinstance(term, Var):
            if term.name in out:
                if not _same(out[term.name], value):
                    return None
            else:
                out[term.name] = value
    return out


def apply_guards(guards, bindings: dict) -> Optional[dict]:
    """Evaluate guards in order; binding guards extend a copy of ``bindings``.

    A guard that cannot be evaluated (type mismatch, division by zero) fails.
    """
    out = dict(bindings)
    for guard in guards:
        try:
            value = evaluate(guard.expr, out)
        except (TypeError, ArithmeticError, ValueError, KeyError):
            return None
        if guard.target is None:
            if not value:
                return None
        elif guard.target in out:
            if not _same(out[guard.target], value):
                return None
        else:
            out[guard.target] = value
    return out


def _excluded(pattern: Pattern, chunks, bindings) -> bool:
    return any(unify(pattern, c, bindings) is not None for c in chunks)


def match(goal: str, memory, productions, now: float,
          latency: Optional[Callable[[Instantiation], float]] = None) -> list:
    """All instantiations of ``productions`` against the goal and memory.

    The first pattern of a production must match the goal chunk; the
    remaining positive patterns range over every chunk in memory. Output is
    sorted by production name, then bindings, then matched chunks. With
    ``latency`` given, ``match_time = now + latency(inst)``.
    """
    goal_chunk = memory[goal]
    chunks = list(memory.chunks.values())
    found = []
    for prod in sorted(productions, key=lambda p: p.name):
        positives = prod.conditions
        if not positives:
            continue
        start = unify(positives[0], goal_chunk, {})
        if start is None:
            continue

        def extend(index, bindings, matched):
            if index == len(positives):
                final = apply_guards(prod.guards, bindings)
                if final is None:
                    return
                if any(_excluded(p, chunks, final) for p in prod.exclusions):
                    return
                found.append(Instantiation(prod.name, final, tuple(matched), now, now))
                return
            for chunk in chunks:
                b = unify(positives[index], chunk, bindings)
                if b is not None:
                    extend(index + 1, b, matched + [chunk.id])

        extend(1, start, [goal_chunk.id])
    found.sort(key=lambda i: (i.production, i.sort_key()))
    if latency is not None:
        for inst in found:
            inst.match_time = now + latency(inst)
    return found


def production_strength(prod: Production, now: float, params: Optional[StrengthParams] = None) -> float:
    """``ln sum_k (now - t_k)**-d + B`` over the production's fire events."""
    params = params or StrengthParams()
    if not prod.fire_events:
        return NEG_INF if params.initial_strength is None else params.initial_strength
    return base_level((e.time for e in prod.fire_events), (e.decay for e in prod.fire_events),
                      now, params.strength_B)


def record_fire(prod: Production, now: float, params: Optional[StrengthParams] = None) -> UsageEvent:
    params = params or StrengthParams()
    if prod.fire_events and now <= prod.fire_events[-1].time:
        raise OrderingError(f"{prod.name} fired at {now}, not after {prod.fire_events[-1].time}")
    event = UsageEvent(now, params.decay)
    prod.fire_events.append(event)
    return event


def latency_from(activations, strength: float, params: Optional[LatencyParams] = None) -> float:
    """``sum_i B * exp(-b * (A_i + S))``; infinite when any term is ``-inf``."""
    params = params or LatencyParams()
    total = 0.0
    for a in activations:
        x = a + strength
        if x == NEG_INF:
            return math.inf
        try:
            total += params.latency_B * math.exp(-params.latency_b * x)
        except OverflowError:
            return math.inf
    return total


def match_latency(inst: Instantiation, prod: Production, memory, context=None, now: float = 0.0,
                  latency_params: Optional[LatencyParams] = None,
                  strength_params: Optional[StrengthParams] = None,
                  association=None) -> float:
    S = production_strength(prod, now, strength_params)
    acts = [memory.activation(cid, context, now, association) for cid in sorted(inst.matched_chunks)]
    return latency_from(acts, S, latency_params)
