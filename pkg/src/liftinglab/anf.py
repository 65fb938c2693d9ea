"""Parsing and printing of algebraic normal form expressions.

Grammar (whitespace insignificant)::

    expr   := term (XOR term)*          XOR is one of "⊕", "^", "+"
    term   := factor ((AND)? factor)*   AND is juxtaposition, "*" or "·"
    factor := "x" digits | "0" | "1" | "(" expr ")"

"x_3" is accepted as a spelling of "x3".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .boolfun import MAX_ARITY, BooleanFunction, anf_of
from .errors import InputError, ParseError

XOR_TOKENS = ("⊕", "^", "+")
AND_TOKENS = ("*", "·")


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Xor:
    terms: Tuple["Node", ...]


@dataclass(frozen=True)
class And:
    factors: Tuple["Node", ...]


Node = Union[Var, Const, Xor, And]


@dataclass(frozen=True)
class AnfExpression:
    source: str
    tree: Node

    def max_index(self) -> int:
        return _max_index(self.tree)

    def evaluate(self, x: Sequence[int]) -> int:
        return _eval(self.tree, x)

    def lower(self, arity: Optional[int] = None) -> BooleanFunction:
        top = self.max_index()
        if arity is None:
            arity = max(top, 1)
        if arity > MAX_ARITY:
            raise InputError(f"arity {arity} exceeds the maximum of {MAX_ARITY}")
        if top > arity:
            raise InputError(f"variable x{top} exceeds arity {arity}")
        full = (1 << (1 << arity)) - 1
        return BooleanFunction(arity, _lower(self.tree, arity, full))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.peek() in XOR_TOKENS and self.peek():
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Xor(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            c = self.peek()
            if c and c in AND_TOKENS:
                self.pos += 1
                factors.append(self.factor())
            elif c and (c in "x(01"):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else And(tuple(factors))

    def factor(self) -> Node:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return node
        if c in ("0", "1"):
            self.pos += 1
            return Const(int(c))
        if c == "x":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] == "_":
                self.pos += 1
            end = self.pos
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            if end == self.pos:
                raise ParseError("expected variable index after 'x'", self.pos)
            index = int(self.text[self.pos:end])
            if index < 1:
                raise ParseError("variable indices start at 1", start)
            self.pos = end
            return Var(index)
        if not c:
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected {c!r}", self.pos)


def _max_index(node: Node) -> int:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Const):
        return 0
    children = node.terms if isinstance(node, Xor) else node.factors
    return max(_max_index(c) for c in children)


def _eval(node: Node, x: Sequence[int]) -> int:
    if isinstance(node, Var):
        return int(x[node.index - 1]) & 1
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Xor):
        acc = 0
        for t in node.terms:
            acc ^= _eval(t, x)
        return acc
    return int(all(_eval(f, x) for f in node.factors))


def _lower(node: Node, k: int, full: int) -> int:
    # packed tables: XOR and AND act bitwise, so lowering is exact over F_2
    if isinstance(node, Var):
        return BooleanFunction.variable(k, node.index).table
    if isinstance(node, Const):
        return full if node.value else 0
    if isinstance(node, Xor):
        acc = 0
        for t in node.terms:
            acc ^= _lower(t, k, full)
        return acc
    acc = full
    for f in node.factors:
        acc &= _lower(f, k, full)
    return acc


def parse_expression(text: str) -> AnfExpression:
    return AnfExpression(text, _Parser(text).parse())


def parse_anf(text: str, arity_hint: Optional[int] = None) -> BooleanFunction:
    return parse_expression(text).lower(arity_hint)


def format_anf(f: BooleanFunction) -> str:
    monos = anf_of(f).sorted_monomials()
    if not monos:
        return "0"
    parts = ["1" if not m else "".join(f"x{i}" for i in m) for m in monos]
    return " ⊕ ".join(parts)
