"""Tiny expression grammar shared by scalars, PBW elements and free words.

Grammar (standard precedence, juxtaposition is multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (['*' | '/'] unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    atom   := INT | NAME | '(' expr ')'

Exponents are (optionally signed) integers, possibly parenthesised.
Multiplication is kept in written order, so the same tree can be
evaluated in a noncommutative ring.
"""

from __future__ import annotations

import re
from typing import Any, Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    """Malformed expression; ``pos`` is the 0-based column of the problem."""

    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            if op == "*" and text.startswith("**", start):
                # accept python-style power
                toks.append(("op", "^", start))
                pos = start + 2
                continue
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", text, start)
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", self.text, pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.text, 0)
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", self.text, pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                node = ("add" if val == "+" else "sub", node, rhs)
            else:
                return node

    def _starts_factor(self):
        kind, val, _ = self.peek()
        return kind in ("int", "name") or (kind == "op" and val == "(")

    def term(self):
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                node = ("mul" if val == "*" else "div", node, rhs)
            elif self._starts_factor():
                node = ("mul", node, self.power())
            else:
                return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return ("neg", self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self):
        kind, val, pos = self.take()
        if kind == "op" and val == "(":
            n = self.exponent()
            self.expect(")")
            return n
        if kind == "op" and val == "-":
            return -self.exponent()
        if kind == "op" and val == "+":
            return self.exponent()
        if kind == "int":
            return val
        raise ParseError("expected integer exponent", self.text, pos)

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return ("num", val)
        if kind == "name":
            return ("sym", val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError("expected a number, symbol or '('", self.text, pos)


def parse(text: str):
    """Parse ``text`` into a nested-tuple syntax tree."""
    return _Parser(text).parse()


def evaluate(tree, lookup: Callable[[str], Any], divide: Callable[[Any, Any], Any] | None = None,
             const: Callable[[int], Any] | None = None):
    """Evaluate a tree; ``lookup`` resolves symbol names.

    ``divide(a, b)`` defaults to ``a / b``; rings that only allow division
    by scalars should raise from there.  ``const`` converts integer literals.
    """
    tag = tree[0]
    if tag == "num":
        return const(tree[1]) if const else tree[1]
    if tag == "sym":
        return lookup(tree[1])
    if tag == "neg":
        return -evaluate(tree[1], lookup, divide, const)
    if tag == "pow":
        return evaluate(tree[1], lookup, divide, const) ** tree[2]
    a = evaluate(tree[1], lookup, divide, const)
    b = evaluate(tree[2], lookup, divide, const)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        return divide(a, b) if divide else a / b
    raise AssertionError(tag)


def symbols(tree) -> set[str]:
    """All symbol names occurring in a tree."""
    tag = tree[0]
    if tag == "sym":
        return {tree[1]}
    if tag == "num":
        return set()
    if tag in ("neg", "pow"):
        return symbols(tree[1])
    return symbols(tree[1]) | symbols(tree[2])
