"""The match-resolve-fire-learn interpreter."""
from __future__ import annotations

import copy
import math
from typing import Iterable, Optional

from .association import AssociationStats, build_context
from .conflict import ValuedMatch, expected_value, resolve
from .declarative import DeclarativeMemory
from .errors import ActionError, ActrError, GoalStackError
from .expr import evaluate
from .model import Model
from .params import Parameters
from .procedural import (EmitExternal, Lookup, PopGoal, PushGoal, SetSlot,
                         WriteChunk, match, match_latency, record_fire)
from .trace import Trace, TraceEvent
from .utility import stats_from_parameters
from .values import Ref


def _prefixed(prefix, mapping):
    return {prefix + k: v for k, v in mapping.items()}


class Engine:
    """Owns the goal stack, clock, memories and trace of one simulation.

    Model chunks are encoded at time 0 and the first cycle starts at
    ``start_time``; chunks and productions from the model are copied, so one
    :class:`Model` can seed any number of independent engines.
    """

    def __init__(self, model: Model, params: Optional[Parameters] = None,
                 perceptual: Iterable[str] = ()):
        self.model = model
        self.params = params or model.parameters
        p = self.params
        self._decl_params = p.declarative()
        self._latency_params = p.latency()
        self._strength_params = p.strength()
        self._conflict_params = p.conflict()
        self._engine_params = p.engine()
        self.memory = DeclarativeMemory(self._decl_params)
        self.memory.load(((c.id, c.kind, c.slots) for c in model.chunks), now=0.0)
        self.productions = {}
        for prod in model.productions:
            fresh = copy.deepcopy(prod)
            fresh.fire_events = []
            fresh.utility = stats_from_parameters(p)
            self.productions[prod.name] = fresh
        self.association = AssociationStats(p.assoc_prior_a, p.assoc_prior_b)
        self.perceptual = tuple(perceptual)
        self.goal_stack = [model.goal] if model.goal else []
        self.now = self._engine_params.start_time
        self.run_start = self.now
        self.environment = []
        self.trace = Trace()
        self.cycles = 0
        self.halt_reason = None
        if self.goal_stack:
            goal = self.memory[model.goal]
            self._emit(self.now, "GoalPushed", {"goal": goal.id, "kind": goal.kind,
                                                **_prefixed("slot.", goal.slots)})

    # -- trace -------------------------------------------------------------
    def _emit(self, time, kind, payload):
        event = TraceEvent(time, kind, payload)
        self.trace.append(event)
        return event

    def _halt(self, reason):
        self.halt_reason = reason
        self._emit(self.now, "Halted", {"reason": reason})

    # -- cycle -------------------------------------------------------------
    def context(self):
        return build_context(self.memory, self.goal_stack[-1], self.perceptual)

    def instantiations(self, context=None, with_latency=True) -> list:
        """Current matches against the top goal, timed by their match latencies."""
        goal = self.goal_stack[-1]
        context = self.context() if context is None else context
        now = self.now

        def latency(inst):
            return match_latency(inst, self.productions[inst.production], self.memory,
                                 context, now, self._latency_params,
                                 self._strength_params, self.association)
        return match(goal, self.memory, self.productions.values(), now,
                     latency if with_latency else None)

    def step(self) -> list:
        """Run one full cycle and return the trace events it produced."""
        if not self.goal_stack:
            raise GoalStackError("step needs a non-empty goal stack")
        first = len(self.trace)
        context = self.context()
        live = [i for i in self.instantiations(context) if math.isfinite(i.match_time)]
        if not live:
            self._halt("impasse")
            return self.trace[first:]
        spent = self.now - self.run_start
        valued = [ValuedMatch(i, expected_value(self.productions[i.production].utility,
                                                self._conflict_params, spent))
                  for i in live]
        resolution = resolve(valued, self._conflict_params)
        for vm in resolution.considered:
            inst = vm.instantiation
            self._emit(inst.match_time, "Matched",
                       {"production": inst.production, "value": vm.value,
                        "chunks": list(inst.matched), **_prefixed("var.", inst.bindings)})
        self.fire(resolution.winner, resolution.fire_time, context,
                  [vm.instantiation for vm in resolution.considered])
        return self.trace[first:]

    def fire(self, valued: ValuedMatch, fire_time: float, context, considered=()):
        inst = valued.instantiation
        prod = self.productions[inst.production]
        cycle_start = self.now
        self._emit(fire_time, "Fired", {"production": prod.name, "value": valued.value,
                                        "chunks": list(inst.matched),
                                        **_prefixed("var.", inst.bindings)})
        try:
            for action in prod.actions:
                self._execute(action, inst.bindings, fire_time)
        except ActionError:
            prod.utility.update_q(False)
            self.now = fire_time
            self._halt("action-error")
            raise
        duration = self._engine_params.action_time * len(prod.actions)
        self._learn(prod, inst, fire_time, context, considered, fire_time - cycle_start + duration)
        self.now = fire_time + duration
        self.cycles += 1

    def _learn(self, prod, inst, when, context, considered, observed_cost):
        record_fire(prod, when, self._strength_params)
        used = set(inst.matched_chunks)
        if self._engine_params.strengthen_losers:
            for other in considered:
                used |= other.matched_chunks
        for cid in sorted(used):
            chunk = self.memory[cid]
            if chunk.events[-1].time < when:
                self.memory.record_use(cid, when)
        self.association.observe_firing(inst.matched_chunks, context)
        prod.utility.update_q(True)
        prod.utility.update_cost(observed_cost)

    def _values(self, templates, bindings):
        try:
            return {slot: evaluate(e, bindings) for slot, e in templates.items()}
        except KeyError as exc:
            raise ActionError(f"unbound variable ?{exc.args[0]} in action") from None
        except (TypeError, ArithmeticError, ValueError) as exc:
            raise ActionError(f"cannot evaluate action template: {exc}") from None

    def _execute(self, action, bindings, when):
        if isinstance(action, PushGoal):
            slots = self._values(action.slots, bindings)
            cid = self._create(action.kind, slots, when)
            self.goal_stack.append(cid)
            self._emit(when, "GoalPushed", {"goal": cid, "kind": action.kind,
                                            **_prefixed("slot.", slots)})
        elif isinstance(action, PopGoal):
            if not self.goal_stack:
                raise GoalStackError("pop on an empty goal stack")
            cid = self.goal_stack.pop()
            self._emit(when, "GoalPopped", {"goal": cid})
        elif isinstance(action, WriteChunk):
            slots = self._values(action.slots, bindings)
            cid = self._create(action.kind, slots, when)
            self._emit(when, "ChunkWritten", {"op": "create", "chunk": cid, "kind": action.kind,
                                              **_prefixed("slot.", slots)})
        elif isinstance(action, SetSlot):
            values = self._values(action.slots, bindings)
            if isinstance(action.target, Lookup):
                key = self._values(action.target.key, bindings)
                hits = self.memory.find(action.target.kind, key)
                if len(hits) > 1:
                    raise ActionError(f"lookup of {action.target.kind} {key} is ambiguous: {hits}")
                if not hits:
                    slots = {**key, **self._values(action.target.defaults, bindings), **values}
                    cid = self._create(action.target.kind, slots, when)
                    self._emit(when, "ChunkWritten", {"op": "create", "chunk": cid,
                                                      "kind": action.target.kind,
                                                      **_prefixed("slot.", slots)})
                    return
                cid = hits[0]
            else:
                ref = bindings.get(action.target)
                if not isinstance(ref, Ref) or ref.id not in self.memory:
                    raise ActionError(f"?{action.target} is not bound to a chunk")
                cid = ref.id
            self._modify(cid, values)
            self._emit(when, "ChunkWritten", {"op": "modify", "chunk": cid,
                                              "kind": self.memory[cid].kind,
                                              **_prefixed("slot.", values)})
        elif isinstance(action, EmitExternal):
            slots = self._values(action.slots, bindings)
            self.environment.append((action.kind, slots))
            self._emit(when, "ExternalAction", {"action": action.kind, **_prefixed("slot.", slots)})
        else:
            raise ActionError(f"unknown action {action!r}")

    def _create(self, kind, slots, when):
        try:
            return self.memory.add_chunk(kind, slots, when)
        except ActrError as exc:
            raise ActionError(str(exc)) from None

    def _modify(self, cid, values):
        try:
            self.memory.set_slots(cid, values)
        except ActrError as exc:
            raise ActionError(str(exc)) from None

    # -- driver ------------------------------------------------------------
    def run(self, max_cycles: Optional[int] = None) -> Trace:
        """Cycle until the goal stack empties, an impasse, or the cycle limit."""
        limit = self._engine_params.max_cycles if max_cycles is None else max_cycles
        if not self.goal_stack:
            return self.trace
        while self.halt_reason is None:
            if not self.goal_stack:
                self._halt("done")
            elif self.cycles >= limit:
                self._halt("cycles")
            else:
                self.step()
        return self.trace

    def replay(self, trace: Iterable[TraceEvent]) -> "Engine":
        """Re-execute the firing decisions recorded in ``trace``."""
        for event in trace:
            if event.kind != "Fired":
                continue
            if not self.goal_stack:
                raise ActrError("trace fires a production after the goal stack emptied")
            context = self.context()
            wanted = (event.payload["production"], event.bindings, tuple(event.payload["chunks"]))
            for inst in self.instantiations(context, with_latency=False):
                if (inst.production, inst.bindings, inst.matched) == wanted:
                    break
            else:
                raise ActrError(f"recorded firing of {wanted[0]} at {event.time} does not match")
            inst.match_time = event.time
            self.fire(ValuedMatch(inst, event.payload.get("value", 0.0)), event.time, context)
        return self


def run(model: Model, params: Optional[Parameters] = None, max_cycles: Optional[int] = None) -> Trace:
    return Engine(model, params).run(max_cycles)
