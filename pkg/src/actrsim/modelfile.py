"""Reader and writer for the line-oriented model file format.

::

    # comment
    [parameters]
    decay = 0.5
    [chunks]
    g1 add a=36 b=23 state=start
    [productions]
    rule P1
      if add state=start as ?g
      guard ?x + ?y < 10
      then set ?g state=columns
      then push columns parent=?g
    end
    [goal]
    g1

Pattern terms are ``?var``, ``_`` (any value) or a literal. Action values
are ``?var``, a literal, or a parenthesized expression. Literals are
integers, decimals, fractions (``4/5``), symbols, or chunk references
(``@id``).
"""
from __future__ import annotations

import re
from dataclasses import fields

from .errors import ModelError
from .expr import WILDCARD, Const, ExprSyntaxError, Var, parse_expr, to_source, to_term, variables
from .model import ChunkDef, Model
from .params import PARAMETER_NAMES, Parameters, coerce_parameter, format_parameter
from .procedural import (EmitExternal, Guard, Lookup, Pattern, PopGoal, Production,
                         PushGoal, SetSlot, WriteChunk, action_variables)
from .values import SYMBOL_RE, Ref, format_value, parse_literal

SECTIONS = ("parameters", "chunks", "productions", "goal")
_VAR_TOKEN = re.compile(r"\?([A-Za-z_]\w*)\Z")
_BINDING_GUARD = re.compile(r"\?([A-Za-z_]\w*)\s*=(?!=)\s*(.+)\Z")


def _tokens(text, line, offset):
    """Split on whitespace outside parentheses; yields ``(token, column)``."""
    out, buf, start, depth = [], [], None, 0
    for i, ch in enumerate(text):
        if ch.isspace() and depth == 0:
            if buf:
                out.append(("".join(buf), start))
                buf = []
            continue
        if not buf:
            start = offset + i + 1
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ModelError("unbalanced ')'", line, offset + i + 1)
        buf.append(ch)
    if depth:
        raise ModelError("unbalanced '('", line, start)
    if buf:
        out.append(("".join(buf), start))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.params = []
        self.chunks = []
        self.productions = []
        self.goal = None
        self.goal_seen = False
        self.refs = []  # (chunk id, line, column) to validate at the end
        self._rule = None

    # ----------------------------------------------------------------- entry
    def parse(self) -> Model:
        section = None
        lines = self.text.splitlines()
        for lineno, raw in enumerate(lines, 1):
            content = raw.split("#", 1)[0]
            stripped = content.strip()
            if not stripped:
                continue
            indent = len(content) - len(content.lstrip())
            if stripped.startswith("["):
                if self._rule is not None:
                    raise ModelError(f"rule {self._rule[0].name} is missing 'end'", lineno, indent + 1)
                m = re.fullmatch(r"\[\s*([a-z]+)\s*\]", stripped)
                if not m or m.group(1) not in SECTIONS:
                    raise ModelError(f"unknown section {stripped}", lineno, indent + 1)
                section = m.group(1)
                if section == "goal":
                    self.goal_seen = True
                continue
            if section is None:
                raise ModelError("content before the first section header", lineno, indent + 1)
            getattr(self, "_line_" + section)(stripped, lineno, indent)
        if self._rule is not None:
            raise ModelError(f"rule {self._rule[0].name} is missing 'end'", len(lines) + 1)
        if not self.goal_seen:
            raise ModelError("missing [goal] section", max(len(lines), 1))
        return self._finish()

    def _finish(self) -> Model:
        try:
            params = Parameters().with_values(**{k: v for k, v, _ in self.params})
        except (ValueError, TypeError) as exc:
            # point at the first line that is invalid on its own, if any
            for key, value, line in self.params:
                try:
                    Parameters().with_values(**{key: value})
                except (ValueError, TypeError) as single:
                    raise ModelError(f"bad value for {key}: {single}", line) from None
            raise ModelError(f"invalid parameters: {exc}") from None
        known = {c.id for c in self.chunks}
        for cid, line, col in self.refs:
            if cid not in known:
                raise ModelError(f"dangling reference to undefined chunk {cid!r}", line, col)
        return Model(params, self.chunks, self.productions, self.goal)

    # ------------------------------------------------------------- sections
    def _line_parameters(self, text, line, indent):
        key, sep, value = text.partition("=")
        key = key.strip()
        if not sep:
            raise ModelError("expected 'key = value'", line, indent + 1)
        if key not in PARAMETER_NAMES:
            raise ModelError(f"unknown parameter {key!r}", line, indent + 1)
        try:
            self.params.append((key, coerce_parameter(key, value), line))
        except ValueError as exc:
            raise ModelError(f"bad value for {key}: {exc}", line, indent + len(key) + 2) from None

    def _line_chunks(self, text, line, indent):
        toks = _tokens(text, line, indent)
        if len(toks) < 2:
            raise ModelError("expected 'id kind slot=value ...'", line, indent + 1)
        (cid, c1), (kind, c2) = toks[0], toks[1]
        self._symbol(cid, line, c1, "chunk id")
        self._symbol(kind, line, c2, "chunk kind")
        if any(c.id == cid for c in self.chunks):
            raise ModelError(f"duplicate chunk id {cid!r}", line, c1)
        slots = {}
        for name, value_text, col in self._pairs(toks[2:], line):
            slots[name] = self._literal(value_text, line, col)
        self.chunks.append(ChunkDef(cid, kind, slots))

    def _line_goal(self, text, line, indent):
        toks = _tokens(text, line, indent)
        if self.goal is not None or len(toks) != 1:
            raise ModelError("[goal] holds a single chunk id", line, indent + 1)
        self._symbol(toks[0][0], line, toks[0][1], "goal id")
        self.goal = toks[0][0]
        self.refs.append((self.goal, line, toks[0][1]))

    def _line_productions(self, text, line, indent):
        toks = _tokens(text, line, indent)
        word, col = toks[0]
        if self._rule is None:
            if word != "rule" or len(toks) != 2:
                raise ModelError("expected 'rule NAME'", line, col)
            name = toks[1][0]
            self._symbol(name, line, toks[1][1], "rule name")
            if any(p.name == name for p in self.productions):
                raise ModelError(f"duplicate rule {name!r}", line, toks[1][1])
            self._rule = (Production(name, []), line)
            return
        prod = self._rule[0]
        if word == "end":
            self._close_rule(line, col)
        elif word in ("if", "unless"):
            prod.patterns.append(self._pattern(toks[1:], word == "unless", line, col))
        elif word == "guard":
            rest = text[text.index("guard") + 5:].strip()
            prod.guards.append(self._guard(rest, line, col + 6))
        elif word == "then":
            prod.actions.append(self._action(toks[1:], line, col))
        else:
            raise ModelError(f"unexpected {word!r} inside rule {prod.name}", line, col)

    # ---------------------------------------------------------------- rules
    def _pattern(self, toks, negated, line, col):
        if not toks:
            raise ModelError("pattern needs a chunk kind", line, col)
        chunk_var = None
        if len(toks) >= 2 and toks[-2][0] == "as":
            if negated:
                raise ModelError("'as' is not allowed on 'unless' patterns", line, toks[-2][1])
            chunk_var = self._var(toks[-1][0], line, toks[-1][1])
            toks = toks[:-2]
        kind, kcol = toks[0]
        self._symbol(kind, line, kcol, "chunk kind")
        slots = {}
        for name, value_text, vcol in self._pairs(toks[1:], line):
            if value_text == "_":
                slots[name] = WILDCARD
            elif value_text.startswith("?"):
                slots[name] = Var(self._var(value_text, line, vcol))
            else:
                slots[name] = Const(self._literal(value_text, line, vcol))
        return Pattern(kind, slots, chunk_var, negated)

    def _guard(self, text, line, col):
        if not text:
            raise ModelError("empty guard", line, col)
        m = _BINDING_GUARD.match(text)
        target = None
        if m:
            target, text = m.group(1), m.group(2)
        try:
            return Guard(parse_expr(text), target)
        except ExprSyntaxError as exc:
            raise ModelError(str(exc), line, col) from None

    def _action(self, toks, line, col):
        if not toks:
            raise ModelError("'then' needs an action", line, col)
        verb, vcol = toks[0]
        rest = toks[1:]
        if verb == "pop":
            if rest:
                raise ModelError("'pop' takes no arguments", line, rest[0][1])
            return PopGoal()
        if verb in ("push", "write", "emit"):
            if not rest:
                raise ModelError(f"'{verb}' needs a kind", line, vcol)
            kind = rest[0][0]
            self._symbol(kind, line, rest[0][1], "kind")
            slots = self._templates(rest[1:], line)
            return {"push": PushGoal, "write": WriteChunk, "emit": EmitExternal}[verb](kind, slots)
        if verb == "set":
            if not rest:
                raise ModelError("'set' needs a target", line, vcol)
            target, tcol = rest[0]
            if target.startswith("?"):
                return SetSlot(self._var(target, line, tcol), self._templates(rest[1:], line))
            self._symbol(target, line, tcol, "kind")
            words = [t for t, _ in rest]
            if "where" not in words or "to" not in words:
                raise ModelError("expected 'set KIND where ... to ... [default ...]'", line, tcol)
            iw, it = words.index("where"), words.index("to")
            idf = words.index("default") if "default" in words else len(words)
            if not 1 == iw < it < idf:
                raise ModelError("clauses must appear as 'where ... to ... default ...'", line, tcol)
            key = self._templates(rest[iw + 1:it], line)
            values = self._templates(rest[it + 1:idf], line)
            defaults = self._templates(rest[idf + 1:], line)
            if not key:
                raise ModelError("'where' needs at least one slot", line, rest[iw][1])
            return SetSlot(Lookup(target, key, defaults), values)
        raise ModelError(f"unknown action {verb!r}", line, vcol)

    def _templates(self, toks, line):
        out = {}
        for name, value_text, col in self._pairs(toks, line):
            if value_text.startswith("?"):
                out[name] = Var(self._var(value_text, line, col))
            elif value_text.startswith("("):
                try:
                    out[name] = parse_expr(value_text)
                except ExprSyntaxError as exc:
                    raise ModelError(str(exc), line, col) from None
            else:
                out[name] = Const(self._literal(value_text, line, col))
        return out

    def _close_rule(self, line, col):
        prod, start = self._rule
        self._rule = None
        if not prod.conditions:
            raise ModelError(f"rule {prod.name} has no 'if' pattern", start)
        if prod.patterns[0].negated:
            raise ModelError(f"rule {prod.name} must start with the goal pattern", start)
        bound = set()
        for p in prod.conditions:
            bound |= p.bound_variables()
        for g in prod.guards:
            missing = variables(g.expr) - bound
            if missing:
                raise ModelError(f"guard in rule {prod.name} uses unbound variable "
                                 f"?{sorted(missing)[0]}", start)
            if g.target:
                bound.add(g.target)
        for a in prod.actions:
            missing = action_variables(a) - bound
            if missing:
                raise ModelError(f"action in rule {prod.name} uses unbound variable "
                                 f"?{sorted(missing)[0]}", start)
        self.productions.append(prod)

    # -------------------------------------------------------------- helpers
    def _pairs(self, toks, line):
        for tok, col in toks:
            name, sep, value = tok.partition("=")
            if not sep or not name or not value:
                raise ModelError(f"expected slot=value, got {tok!r}", line, col)
            self._symbol(name, line, col, "slot name")
            yield name, value, col + len(name) + 1

    def _literal(self, text, line, col):
        try:
            value = parse_literal(text)
        except ValueError as exc:
            raise ModelError(str(exc), line, col) from None
        if isinstance(value, Ref):
            self.refs.append((value.id, line, col))
        return value

    def _var(self, text, line, col):
        m = _VAR_TOKEN.match(text)
        if not m:
            raise ModelError(f"bad variable {text!r}", line, col)
        return m.group(1)

    @staticmethod
    def _symbol(text, line, col, what):
        if not SYMBOL_RE.match(text):
            raise ModelError(f"bad {what} {text!r}", line, col)


def parse_model(text: str) -> Model:
    """Parse and validate model text; raises :class:`ModelError` with a position."""
    return _Parser(text).parse()


def load_model(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


# ------------------------------------------------------------------ writer
def _pairs_text(mapping, render):
    return "".join(f" {k}={render(v)}" for k, v in mapping.items())


def format_pattern(p: Pattern) -> str:
    head = "unless" if p.negated else "if"
    text = head + " " + p.kind + _pairs_text(p.slots, to_term)
    if p.chunk_var:
        text += f" as ?{p.chunk_var}"
    return text


def format_guard(g: Guard) -> str:
    src = to_source(g.expr)
    if g.target:
        return f"guard ?{g.target} = {src}"
    return f"guard {src}"


def format_action(a) -> str:
    if isinstance(a, PopGoal):
        return "then pop"
    if isinstance(a, PushGoal):
        return "then push " + a.kind + _pairs_text(a.slots, to_term)
    if isinstance(a, WriteChunk):
        return "then write " + a.kind + _pairs_text(a.slots, to_term)
    if isinstance(a, EmitExternal):
        return "then emit " + a.kind + _pairs_text(a.slots, to_term)
    if isinstance(a, SetSlot):
        if isinstance(a.target, Lookup):
            text = ("then set " + a.target.kind + " where" + _pairs_text(a.target.key, to_term)
                    + " to" + _pairs_text(a.slots, to_term))
            if a.target.defaults:
                text += " default" + _pairs_text(a.target.defaults, to_term)
            return text
        return f"then set ?{a.target}" + _pairs_text(a.slots, to_term)
    raise TypeError(f"unknown action {a!r}")


def format_production(prod: Production) -> str:
    lines = [f"rule {prod.name}"]
    lines += ["  " + format_pattern(p) for p in prod.patterns]
    lines += ["  " + format_guard(g) for g in prod.guards]
    lines += ["  " + format_action(a) for a in prod.actions]
    lines.append("end")
    return "\n".join(lines)


def format_model(model: Model) -> str:
    out = ["[parameters]"]
    for f in fields(Parameters):
        out.append(f"{f.name} = {format_parameter(getattr(model.parameters, f.name))}")
    out += ["", "[chunks]"]
    for c in model.chunks:
        out.append(f"{c.id} {c.kind}" + _pairs_text(c.slots, format_value))
    out += ["", "[productions]"]
    for p in model.productions:
        out.append(format_production(p))
    out += ["", "[goal]"]
    if model.goal:
        out.append(model.goal)
    return "\n".join(out) + "\n"
