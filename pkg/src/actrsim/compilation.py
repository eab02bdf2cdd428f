"""Production compilation: proceduralization and composition.

Both operations are invoked explicitly; nothing here runs automatically
during a simulation.
"""
from __future__ import annotations

import copy
from typing import Optional

from .errors import CompositionError, EpisodeError
from .expr import Compare, Const, Var, Wildcard, simplify, substitute, variables
from .procedural import (EmitExternal, Guard, Lookup, Pattern, PopGoal, Production,
                         PushGoal, SetSlot, WriteChunk)


def find_episode(trace, goal_pattern: Optional[Pattern] = None):
    """Slice of ``trace`` from a goal's push through its pop.

    Returns ``(push_event, events)``. ``goal_pattern`` (constant slots only)
    selects the goal; by default the first pushed goal is used.
    """
    events = list(trace)
    for i, ev in enumerate(events):
        if ev.kind != "GoalPushed":
            continue
        if goal_pattern is not None:
            if ev.payload.get("kind") != goal_pattern.kind:
                continue
            slots = ev.slots()
            if any(isinstance(t, Const) and slots.get(k) != t.value
                   for k, t in goal_pattern.slots.items()):
                continue
        goal = ev.payload["goal"]
        for j in range(i + 1, len(events)):
            if events[j].kind == "GoalPopped" and events[j].payload.get("goal") == goal:
                return ev, events[i:j + 1]
        raise EpisodeError(f"goal {goal} is pushed but never popped: incomplete episode")
    raise EpisodeError("trace contains no matching goal episode")


def proceduralize(trace, goal_pattern: Optional[Pattern] = None, name: Optional[str] = None) -> Production:
    """Hard-code one goal episode into a single rule.

    The condition is the episode's goal exactly as it was when pushed; the
    actions are the episode's external actions in order, then a pop of the goal.
    """
    push, episode = find_episode(trace, goal_pattern)
    kind = push.payload["kind"]
    slots = push.slots()
    pattern = Pattern(kind, {k: Const(v) for k, v in slots.items()})
    actions = [EmitExternal(ev.payload["action"], {k: Const(v) for k, v in ev.slots().items()})
               for ev in episode if ev.kind == "ExternalAction"]
    actions.append(PopGoal())
    if name is None:
        name = "proc-" + "-".join([kind] + [str(v).replace("/", "_") for v in slots.values()
                                           if not str(v).startswith("@")])
    return Production(name, [pattern], [], actions)


# -------------------------------------------------------------- composition
def _all_variables(prod: Production) -> set:
    out = set()
    for p in prod.patterns:
        out |= p.bound_variables()
    for g in prod.guards:
        out |= variables(g.expr)
        if g.target:
            out.add(g.target)
    for a in prod.actions:
        for mapping in _action_maps(a):
            for e in mapping.values():
                out |= variables(e)
        if isinstance(a, SetSlot) and isinstance(a.target, str):
            out.add(a.target)
    return out


def _action_maps(a):
    if isinstance(a, SetSlot) and isinstance(a.target, Lookup):
        return [a.slots, a.target.key, a.target.defaults]
    return [getattr(a, "slots", {})]


def _rename_production(prod: Production, taken: set) -> Production:
    """Copy of ``prod`` with variables renamed away from ``taken``."""
    mapping = {}
    for v in sorted(_all_variables(prod)):
        new, n = v, 2
        while new in taken:
            new = f"{v}_{n}"
            n += 1
        mapping[v] = new
    sub = {old: Var(new) for old, new in mapping.items()}

    def term(t):
        return t if isinstance(t, Wildcard) else substitute(t, sub)

    def tmap(m):
        return {k: term(v) for k, v in m.items()}

    patterns = [Pattern(p.kind, tmap(p.slots), mapping.get(p.chunk_var) if p.chunk_var else None,
                        p.negated) for p in prod.patterns]
    guards = [Guard(substitute(g.expr, sub), mapping.get(g.target) if g.target else None)
              for g in prod.guards]
    actions = [_map_action(a, tmap, lambda v: mapping.get(v, v)) for a in prod.actions]
    return Production(prod.name, patterns, guards, actions)


def _map_action(a, tmap, rename_var):
    if isinstance(a, PopGoal):
        return PopGoal()
    if isinstance(a, SetSlot):
        if isinstance(a.target, Lookup):
            target = Lookup(a.target.kind, tmap(a.target.key), tmap(a.target.defaults))
        else:
            target = rename_var(a.target)
        return SetSlot(target, tmap(a.slots))
    return type(a)(a.kind, tmap(a.slots))


def _fresh(base: str, taken: set) -> str:
    name, n = base, 2
    while name in taken:
        name = f"{base}{n}"
        n += 1
    taken.add(name)
    return name


def compose(p_a: Production, p_b: Production, name: Optional[str] = None) -> Production:
    """Fold ``p_b`` (firing right after ``p_a``) into a single production.

    ``p_b``'s goal pattern is unified with the goal as ``p_a`` leaves it;
    its other patterns either consume a chunk ``p_a`` writes (the write is
    then dropped) or become extra conditions. Arithmetic over the goal's
    slots is substituted through and simplified.
    """
    if any(isinstance(a, PopGoal) for a in p_a.actions):
        raise CompositionError(f"{p_a.name} pops its goal; the next goal is unknown statically")
    a = copy.deepcopy(p_a)
    b = _rename_production(p_b, _all_variables(a))
    goal_a = a.patterns[0]
    goal_b = b.patterns[0]

    taken = _all_variables(a) | _all_variables(b)
    goal_var = goal_a.chunk_var
    if goal_var is None:
        goal_var = goal_a.chunk_var = _fresh("goal", taken)

    # wildcards become fresh variables so their values can flow into p_b
    for slot, t in list(goal_a.slots.items()):
        if isinstance(t, Wildcard):
            goal_a.slots[slot] = Var(_fresh(f"any_{slot}", taken))

    # state of the goal after p_a fires, as expressions over p_a's variables
    pushes = [x for x in a.actions if isinstance(x, PushGoal)]
    if pushes:
        push = pushes[-1]
        post_kind, post_slots, exact = push.kind, dict(push.slots), True
    else:
        post_kind, exact = goal_a.kind, False
        post_slots = dict(goal_a.slots)
        for x in a.actions:
            if isinstance(x, SetSlot) and x.target == goal_var:
                post_slots.update(x.slots)

    if goal_b.kind != post_kind:
        raise CompositionError(f"{p_b.name} needs a {goal_b.kind} goal but {p_a.name} "
                               f"leaves a {post_kind} goal")

    bind = {}
    extra_guards = []
    extra_goal_slots = {}

    def constrain(term, expr, what):
        if isinstance(term, Wildcard):
            return
        if isinstance(term, Const):
            if isinstance(expr, Const):
                if expr.value != term.value:
                    raise CompositionError(f"{p_b.name} needs {what}={term.value} but "
                                           f"{p_a.name} produces {expr.value}")
            else:
                extra_guards.append(Guard(Compare(expr, ("==",), (term,))))
            return
        if term.name in bind:
            extra_guards.append(Guard(Compare(bind[term.name], ("==",), (expr,))))
        else:
            bind[term.name] = expr

    for slot, term in goal_b.slots.items():
        if slot in post_slots:
            constrain(term, post_slots[slot], slot)
        elif exact:
            raise CompositionError(f"{p_b.name} needs slot {slot!r} the pushed goal lacks")
        elif isinstance(term, (Const, Wildcard)):
            extra_goal_slots[slot] = term
        elif term.name not in bind:
            extra_goal_slots[slot] = term
            bind[term.name] = term
        else:
            fresh = _fresh(term.name, taken)
            extra_goal_slots[slot] = Var(fresh)
            extra_guards.append(Guard(Compare(Var(fresh), ("==",), (bind[term.name],))))
    if goal_b.chunk_var:
        if pushes:
            used = any(isinstance(x, SetSlot) and x.target == goal_b.chunk_var for x in b.actions)
            if used:
                raise CompositionError("cannot compose edits to a goal pushed by the first rule")
        else:
            bind[goal_b.chunk_var] = Var(goal_var)

    written = [x for x in a.actions if isinstance(x, WriteChunk)]
    modified_kinds = {x.target.kind for x in a.actions if isinstance(x, SetSlot)
                      and isinstance(x.target, Lookup)}
    for x in a.actions:
        if isinstance(x, SetSlot) and isinstance(x.target, str) and x.target != goal_var:
            for p in a.patterns:
                if p.chunk_var == x.target:
                    modified_kinds.add(p.kind)
    consumed = set()
    new_patterns = []
    for pat in b.patterns[1:]:
        touched = pat.kind in modified_kinds or any(w.kind == pat.kind for w in written)
        if pat.negated:
            if touched:
                raise CompositionError(f"{p_b.name} tests absence of {pat.kind} chunks "
                                       f"that {p_a.name} writes")
            new_patterns.append(pat)
            continue
        if pat.kind in modified_kinds:
            raise CompositionError(f"{p_b.name} reads {pat.kind} chunks that {p_a.name} modifies")
        source = None
        for idx, w in enumerate(written):
            if idx in consumed or w.kind != pat.kind:
                continue
            if all(k in w.slots for k in pat.slots) and all(
                    not (isinstance(t, Const) and isinstance(w.slots[k], Const)
                         and t.value != w.slots[k].value)
                    for k, t in pat.slots.items()):
                source = idx
                break
        if source is None:
            new_patterns.append(pat)
            continue
        if pat.chunk_var:
            raise CompositionError(f"{p_b.name} needs the identity of a chunk {p_a.name} writes")
        consumed.add(source)
        for slot, term in pat.slots.items():
            constrain(term, written[source].slots[slot], slot)

    def sub(e):
        return simplify(substitute(e, bind))

    def sub_term(t):
        return t if isinstance(t, Wildcard) else sub(t)

    def tmap(m):
        return {k: sub_term(v) for k, v in m.items()}

    composed_goal = Pattern(goal_a.kind, dict(goal_a.slots), goal_a.chunk_var)
    for slot, term in extra_goal_slots.items():
        composed_goal.slots[slot] = term
    patterns = [composed_goal] + a.patterns[1:]
    for pat in new_patterns:
        patterns.append(Pattern(pat.kind, tmap(pat.slots), pat.chunk_var, pat.negated))

    guards = list(a.guards)
    for g in b.guards:
        guards.append(Guard(sub(g.expr), g.target))
    guards += [Guard(sub(g.expr)) for g in extra_guards]

    actions = []
    goal_set = None
    for x in a.actions:
        if isinstance(x, WriteChunk) and written.index(x) in consumed:
            continue
        if isinstance(x, SetSlot) and x.target == goal_var:
            if goal_set is None:
                goal_set = SetSlot(goal_var, {})
                actions.append(goal_set)
            goal_set.slots.update({k: simplify(v) for k, v in x.slots.items()})
            continue
        actions.append(x)
    for x in b.actions:
        mapped = _map_action(x, tmap, lambda v: bind[v].name if isinstance(bind.get(v), Var) else v)
        if isinstance(mapped, SetSlot) and mapped.target == goal_var and not pushes:
            if goal_set is None:
                goal_set = SetSlot(goal_var, {})
                actions.append(goal_set)
            goal_set.slots.update(mapped.slots)
            continue
        actions.append(mapped)

    # drop the goal alias when nothing refers to it
    if p_a.patterns[0].chunk_var is None and not any(
            isinstance(x, SetSlot) and x.target == goal_var for x in actions):
        composed_goal.chunk_var = None
    return Production(name or f"{p_a.name}-then-{p_b.name}", patterns, guards, actions)
