"""Arithmetic/relational expressions over production variables.

Expressions are small immutable trees. They appear as guard predicates,
as action templates, and as the material that composition folds together.
Variables are written ``?name``; bare identifiers are symbol constants.
"""
from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .values import Ref, format_value, is_number, normalize


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Wildcard:
    """Pattern term matching any value of a present slot."""


WILDCARD = Wildcard()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class UnaryOp:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Compare:
    left: "Expr"
    ops: tuple
    comparators: tuple


@dataclass(frozen=True)
class BoolOp:
    op: str  # "and" | "or"
    values: tuple


Expr = Union[Const, Var, BinOp, UnaryOp, Compare, BoolOp]

_VAR_PREFIX = "__v_"
_VAR_RE = re.compile(r"\?([A-Za-z_]\w*)")

_BINOPS = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/",
           ast.FloorDiv: "//", ast.Mod: "%", ast.Pow: "**"}
_CMPOPS = {ast.Lt: "<", ast.LtE: "<=", ast.Gt: ">", ast.GtE: ">=",
           ast.Eq: "==", ast.NotEq: "!="}
_CMP_FUNCS = {"<": operator.lt, "<=": operator.le, ">": operator.gt,
              ">=": operator.ge, "==": operator.eq, "!=": operator.ne}


def _div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)) \
            and not isinstance(a, bool) and not isinstance(b, bool):
        return Fraction(a) / Fraction(b)
    return a / b


_ARITH = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": _div,
          "//": operator.floordiv, "%": operator.mod, "**": operator.pow}


class ExprSyntaxError(ValueError):
    pass


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree, folding constant subtrees."""
    source = _VAR_RE.sub(lambda m: _VAR_PREFIX + m.group(1), text.strip())
    if "?" in source:
        raise ExprSyntaxError(f"malformed variable in {text!r}")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ExprSyntaxError(f"cannot parse expression {text!r}: {exc.msg}") from None
    return fold_constants(_convert(tree.body, text))


def _convert(node, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (bool, int, float)):
            return Const(node.value)
        raise ExprSyntaxError(f"unsupported constant {node.value!r} in {text!r}")
    if isinstance(node, ast.Name):
        if node.id.startswith(_VAR_PREFIX):
            return Var(node.id[len(_VAR_PREFIX):])
        return Const(node.id)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return BinOp(_BINOPS[type(node.op)], _convert(node.left, text), _convert(node.right, text))
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return UnaryOp("-", _convert(node.operand, text))
        if isinstance(node.op, ast.UAdd):
            return _convert(node.operand, text)
        if isinstance(node.op, ast.Not):
            return UnaryOp("not", _convert(node.operand, text))
    if isinstance(node, ast.Compare) and all(type(o) in _CMPOPS for o in node.ops):
        return Compare(_convert(node.left, text),
                       tuple(_CMPOPS[type(o)] for o in node.ops),
                       tuple(_convert(c, text) for c in node.comparators))
    if isinstance(node, ast.BoolOp):
        op = "and" if isinstance(node.op, ast.And) else "or"
        return BoolOp(op, tuple(_convert(v, text) for v in node.values))
    raise ExprSyntaxError(f"unsupported syntax in expression {text!r}")


def evaluate(expr: Expr, bindings: Mapping[str, object]):
    """Evaluate ``expr``; raises KeyError for an unbound variable."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        return bindings[expr.name]
    if isinstance(expr, BinOp):
        return normalize(_ARITH[expr.op](evaluate(expr.left, bindings),
                                         evaluate(expr.right, bindings)))
    if isinstance(expr, UnaryOp):
        v = evaluate(expr.operand, bindings)
        return (not v) if expr.op == "not" else normalize(-v)
    if isinstance(expr, Compare):
        left = evaluate(expr.left, bindings)
        for op, comp in zip(expr.ops, expr.comparators):
            right = evaluate(comp, bindings)
            if not _CMP_FUNCS[op](left, right):
                return False
            left = right
        return True
    if isinstance(expr, BoolOp):
        if expr.op == "and":
            return all(evaluate(v, bindings) for v in expr.values)
        return any(evaluate(v, bindings) for v in expr.values)
    raise TypeError(f"not an expression: {expr!r}")


def variables(expr) -> set:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, BinOp):
        return variables(expr.left) | variables(expr.right)
    if isinstance(expr, UnaryOp):
        return variables(expr.operand)
    if isinstance(expr, Compare):
        out = variables(expr.left)
        for c in expr.comparators:
            out |= variables(c)
        return out
    if isinstance(expr, BoolOp):
        return set().union(*(variables(v) for v in expr.values))
    return set()


def substitute(expr, mapping: Mapping[str, Expr]):
    """Replace variables by expressions (variables absent from ``mapping`` stay)."""
    if isinstance(expr, Var):
        return mapping.get(expr.name, expr)
    if isinstance(expr, BinOp):
        return BinOp(expr.op, substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, UnaryOp):
        return UnaryOp(expr.op, substitute(expr.operand, mapping))
    if isinstance(expr, Compare):
        return Compare(substitute(expr.left, mapping), expr.ops,
                       tuple(substitute(c, mapping) for c in expr.comparators))
    if isinstance(expr, BoolOp):
        return BoolOp(expr.op, tuple(substitute(v, mapping) for v in expr.values))
    return expr


def fold_constants(expr):
    """Evaluate every subtree that contains no variables."""
    if isinstance(expr, (Const, Var, Wildcard)):
        return expr
    if isinstance(expr, BinOp):
        expr = BinOp(expr.op, fold_constants(expr.left), fold_constants(expr.right))
    elif isinstance(expr, UnaryOp):
        expr = UnaryOp(expr.op, fold_constants(expr.operand))
    elif isinstance(expr, Compare):
        expr = Compare(fold_constants(expr.left), expr.ops,
                       tuple(fold_constants(c) for c in expr.comparators))
    elif isinstance(expr, BoolOp):
        expr = BoolOp(expr.op, tuple(fold_constants(v) for v in expr.values))
    if not variables(expr):
        try:
            return Const(evaluate(expr, {}))
        except (ArithmeticError, TypeError, ValueError):
            return expr
    return expr


def _is_num_const(e):
    return isinstance(e, Const) and is_number(e.value)


def simplify(expr):
    """Constant folding plus reassociation of numeric factors and offsets.

    ``(?a * 5) / 4`` becomes ``?a * 5/4``; ``(?x + 1) + 2`` becomes ``?x + 3``.
    """
    expr = fold_constants(expr)
    if isinstance(expr, BinOp):
        left, right = simplify(expr.left), simplify(expr.right)
        expr = fold_constants(BinOp(expr.op, left, right))
        if not isinstance(expr, BinOp):
            return expr
        op, left, right = expr.op, expr.left, expr.right
        if op in ("*", "/") and _is_num_const(right):
            factor = right.value if op == "*" else _div(1, right.value)
            if isinstance(left, BinOp) and left.op in ("*", "/") and _is_num_const(left.right):
                inner = left.right.value if left.op == "*" else _div(1, left.right.value)
                return simplify(BinOp("*", left.left, Const(normalize(inner * factor))))
            if factor == 1:
                return left
            return BinOp("*", left, Const(normalize(factor)))
        if op in ("+", "-") and _is_num_const(right):
            offset = right.value if op == "+" else -right.value
            if isinstance(left, BinOp) and left.op in ("+", "-") and _is_num_const(left.right):
                inner = left.right.value if left.op == "+" else -left.right.value
                return simplify(BinOp("+", left.left, Const(normalize(inner + offset))))
            if offset == 0:
                return left
        return expr
    if isinstance(expr, UnaryOp):
        return fold_constants(UnaryOp(expr.op, simplify(expr.operand)))
    if isinstance(expr, Compare):
        return Compare(simplify(expr.left), expr.ops, tuple(simplify(c) for c in expr.comparators))
    if isinstance(expr, BoolOp):
        return BoolOp(expr.op, tuple(simplify(v) for v in expr.values))
    return expr


def _const_source(value):
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"({value.numerator}/{value.denominator})"
    if is_number(value) and value < 0:
        return f"({format_value(value)})"
    if isinstance(value, Ref):
        raise ExprSyntaxError("chunk references cannot appear inside compound expressions")
    return format_value(value)


def to_source(expr) -> str:
    """Render an expression so that ``parse_expr(to_source(e)) == e``."""
    if isinstance(expr, Const):
        return _const_source(expr.value)
    if isinstance(expr, Var):
        return "?" + expr.name
    if isinstance(expr, BinOp):
        return f"({to_source(expr.left)} {expr.op} {to_source(expr.right)})"
    if isinstance(expr, UnaryOp):
        if expr.op == "not":
            return f"(not {to_source(expr.operand)})"
        return f"(-{to_source(expr.operand)})"
    if isinstance(expr, Compare):
        parts = [to_source(expr.left)]
        for op, c in zip(expr.ops, expr.comparators):
            parts += [op, to_source(c)]
        return "(" + " ".join(parts) + ")"
    if isinstance(expr, BoolOp):
        return "(" + f" {expr.op} ".join(to_source(v) for v in expr.values) + ")"
    raise TypeError(f"not an expression: {expr!r}")


def to_term(expr) -> str:
    """Render a slot term: atoms bare, compound expressions parenthesized."""
    if isinstance(expr, Wildcard):
        return "_"
    if isinstance(expr, Var):
        return "?" + expr.name
    if isinstance(expr, Const):
        return format_value(expr.value)
    src = to_source(expr)
    return src if src.startswith("(") else f"({src})"
