"""Small arithmetic expression language for objectives and constraints.

Grammar (precedence high to low): pow, unary minus, mul/div, add/sub, with
left association inside each level, parentheses, and the unary functions
exp(e) and log(e). Literals are plain decimals; identifiers match
[a-zA-Z_][a-zA-Z0-9_]*. The time symbol `t` is always available read-only;
every other identifier must be declared up front. Pow exponents must be
number literals so expressions stay smooth and differentiable.

Syntax errors carry the character position; evaluation turns division by
zero, log of a nonpositive value and overflow into EvaluationError rather
than producing infinities.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import (
    EvaluationError,
    ExpressionSyntaxError,
    UndeclaredVariableError,
)

RESERVED_NAMES = frozenset({"t", "exp", "log"})

FUNCTIONS = ("exp", "log")


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Negate:
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: float


@dataclass(frozen=True)
class Call:
    func: str  # exp | log
    argument: "Node"


Node = Union[Number, Variable, Negate, Binary, Power, Call]


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)|(?P<ident>[a-zA-Z_][a-zA-Z0-9_]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None or m.end() == pos:
            # skip over whitespace-only tail
            rest = source[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ExpressionSyntaxError(f"unexpected character {source[bad]!r}", bad)
        if m.group("number") is not None:
            tokens.append(("number", m.group("number"), m.start("number")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, declared: frozenset[str]):
        self.source = source
        self.declared = declared
        self.tokens = _tokenize(source)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ExpressionSyntaxError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> Node:
        node = self.sum_expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected token {text!r}", pos)
        return node

    def sum_expr(self) -> Node:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in ("+", "-"):
                self.advance()
                node = Binary(text, node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in ("*", "/"):
                self.advance()
                node = Binary(text, node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Negate(self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "^":
                self.advance()
                ekind, etext, epos = self.peek()
                if ekind != "number":
                    raise ExpressionSyntaxError(
                        "pow exponent must be a number literal", epos
                    )
                self.advance()
                node = Power(node, float(etext))
            else:
                return node

    def atom(self) -> Node:
        kind, text, pos = self.advance()
        if kind == "number":
            return Number(float(text))
        if kind == "ident":
            if text in FUNCTIONS:
                nkind, ntext, npos = self.peek()
                if nkind != "op" or ntext != "(":
                    raise ExpressionSyntaxError(f"expected '(' after {text!r}", npos)
                self.advance()
                arg = self.sum_expr()
                self.expect_op(")")
                return Call(text, arg)
            if text == "t" or text in self.declared:
                return Variable(text)
            raise UndeclaredVariableError(text, pos)
        if kind == "op" and text == "(":
            node = self.sum_expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ExpressionSyntaxError("unexpected end of expression", pos)
        raise ExpressionSyntaxError(f"unexpected token {text!r}", pos)


def parse_expression(source: str, declared_variables: frozenset[str] | set[str]) -> Node:
    """Parse source into an AST referencing only declared variables or `t`."""
    if source.strip() == "":
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(source, frozenset(declared_variables)).parse()


def variables_in(node: Node) -> frozenset[str]:
    """All variable names referenced by an expression (including `t`)."""
    match node:
        case Number():
            return frozenset()
        case Variable(name=name):
            return frozenset({name})
        case Negate(operand=op):
            return variables_in(op)
        case Binary(left=left, right=right):
            return variables_in(left) | variables_in(right)
        case Power(base=base):
            return variables_in(base)
        case Call(argument=arg):
            return variables_in(arg)
    raise TypeError(f"not an expression node: {node!r}")


_MAX_EXP_ARG = 709.0  # beyond this exp() overflows a double


def evaluate(node: Node, assignment: Mapping[str, float], t: float = 0.0) -> float:
    """Evaluate an expression under an assignment (plus the time symbol).

    Division by zero, log of a nonpositive value, fractional powers of
    negative bases and overflow all raise EvaluationError.
    """
    match node:
        case Number(value=v):
            return v
        case Variable(name=name):
            if name == "t":
                return float(t)
            try:
                return float(assignment[name])
            except KeyError:
                raise EvaluationError(f"no value bound for variable {name!r}") from None
        case Negate(operand=op):
            return -evaluate(op, assignment, t)
        case Binary(op=op, left=left, right=right):
            a = evaluate(left, assignment, t)
            b = evaluate(right, assignment, t)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                result = a * b
            else:
                if b == 0.0:
                    raise EvaluationError("division by zero")
                result = a / b
            if math.isinf(result) or math.isnan(result):
                raise EvaluationError(f"arithmetic overflow in {op!r}")
            return result
        case Power(base=base, exponent=exponent):
            a = evaluate(base, assignment, t)
            if a < 0.0 and exponent != int(exponent):
                raise EvaluationError(
                    f"fractional power of negative base {a!r}"
                )
            if a == 0.0 and exponent < 0.0:
                raise EvaluationError("zero raised to a negative power")
            try:
                result = math.pow(a, exponent)
            except (OverflowError, ValueError) as exc:
                raise EvaluationError(f"pow failed: {exc}") from None
            if math.isinf(result) or math.isnan(result):
                raise EvaluationError("arithmetic overflow in pow")
            return result
        case Call(func=func, argument=argument):
            a = evaluate(argument, assignment, t)
            if func == "exp":
                if a > _MAX_EXP_ARG:
                    raise EvaluationError(f"exp overflow for argument {a!r}")
                return math.exp(a)
            if a <= 0.0:
                raise EvaluationError(f"log of nonpositive value {a!r}")
            return math.log(a)
    raise TypeError(f"not an expression node: {node!r}")


Compiled = Callable[[Mapping[str, float], float], float]


def compile_expression(node: Node) -> Compiled:
    """Compile an AST into a fast callable with evaluate()'s exact semantics.

    Worth it wherever one expression is evaluated thousands of times (the
    optimizer's penalty loop); one-off callers should just use evaluate().
    The callable takes (assignment, t) and raises the same EvaluationError
    cases; the assignment must cover every referenced variable.
    """
    match node:
        case Number(value=v):
            return lambda a, t, _v=v: _v
        case Variable(name=name):
            if name == "t":
                return lambda a, t: t
            def var(a, t, _n=name):
                try:
                    return a[_n]
                except KeyError:
                    raise EvaluationError(f"no value bound for variable {_n!r}") from None
            return var
        case Negate(operand=op):
            f = compile_expression(op)
            return lambda a, t: -f(a, t)
        case Binary(op=op, left=left, right=right):
            fl, fr = compile_expression(left), compile_expression(right)
            if op == "+":
                return lambda a, t: fl(a, t) + fr(a, t)
            if op == "-":
                return lambda a, t: fl(a, t) - fr(a, t)
            if op == "*":
                def mul(a, t):
                    result = fl(a, t) * fr(a, t)
                    if math.isinf(result) or math.isnan(result):
                        raise EvaluationError("arithmetic overflow in '*'")
                    return result
                return mul
            def div(a, t):
                denominator = fr(a, t)
                if denominator == 0.0:
                    raise EvaluationError("division by zero")
                result = fl(a, t) / denominator
                if math.isinf(result) or math.isnan(result):
                    raise EvaluationError("arithmetic overflow in '/'")
                return result
            return div
        case Power(base=base, exponent=exponent):
            fb = compile_expression(base)
            def power(a, t, _e=exponent):
                x = fb(a, t)
                if x < 0.0 and _e != int(_e):
                    raise EvaluationError(f"fractional power of negative base {x!r}")
                if x == 0.0 and _e < 0.0:
                    raise EvaluationError("zero raised to a negative power")
                try:
                    result = math.pow(x, _e)
                except (OverflowError, ValueError) as exc:
                    raise EvaluationError(f"pow failed: {exc}") from None
                if math.isinf(result) or math.isnan(result):
                    raise EvaluationError("arithmetic overflow in pow")
                return result
            return power
        case Call(func=func, argument=argument):
            fa = compile_expression(argument)
            if func == "exp":
                def call_exp(a, t):
                    x = fa(a, t)
                    if x > _MAX_EXP_ARG:
                        raise EvaluationError(f"exp overflow for argument {x!r}")
                    return math.exp(x)
                return call_exp
            def call_log(a, t):
                x = fa(a, t)
                if x <= 0.0:
                    raise EvaluationError(f"log of nonpositive value {x!r}")
                return math.log(x)
            return call_log
    raise TypeError(f"not an expression node: {node!r}")


def gradient(
    node: Node, assignment: Mapping[str, float], t: float = 0.0
) -> dict[str, float]:
    """Central-difference gradient with h = 1e-6 * max(1, |x_i|) per coordinate.

    Differentiates with respect to every variable in the assignment (never
    `t`); evaluation errors at any probe point propagate.
    """
    grads: dict[str, float] = {}
    probe = dict(assignment)
    for name, x in assignment.items():
        h = 1e-6 * max(1.0, abs(float(x)))
        probe[name] = x + h
        f_plus = evaluate(node, probe, t)
        probe[name] = x - h
        f_minus = evaluate(node, probe, t)
        probe[name] = x
        grads[name] = (f_plus - f_minus) / (2.0 * h)
    return grads
