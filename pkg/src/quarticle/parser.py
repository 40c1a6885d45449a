"""Recursive-descent parser for state expressions.

Grammar (whitespace-insensitive)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := [scalar ['*']] factor
    scalar  := number ['i'] | [number] 'exp(i' number ')'
    factor  := 'S(' slots ')' factor | 'A(' slots ')' factor | ket
    slots   := item (',' item)*        item := int | int '..' int
    ket     := '|' int (',' int)* '>'

Basis labels inside kets are 0-based, slots in S/A are 1-based. Operators
apply right to left, so ``S(2,3)A(1,2)|0,1,2>`` antisymmetrizes first.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass

from .errors import DegenerateStateError, DomainError, ParseError
from .permutations import antisymmetrize, symmetrize
from .tensor import MultiKet, add_scaled, normalize, product_ket

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


@dataclass(frozen=True)
class Ket:
    labels: tuple
    position: int


@dataclass(frozen=True)
class Apply:
    op: str  # "S" or "A"
    slots: tuple
    child: object
    position: int


@dataclass(frozen=True)
class Term:
    coefficient: complex
    factor: object


@dataclass(frozen=True)
class StateExpression:
    source: str
    terms: tuple

    def evaluate(self, d=None) -> MultiKet:
        return evaluate(self, d)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal):
        self.skip()
        return self.text.startswith(literal, self.pos)

    def accept(self, literal):
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.accept(literal):
            found = self.text[self.pos:self.pos + 8] or "end of input"
            self.error(f"expected {literal!r}, found {found!r}")

    def match(self, pattern):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group()

    def integer(self):
        tok = self.match(_INT)
        if tok is None:
            self.error("expected an integer")
        return int(tok)

    def sign(self):
        if self.accept("-"):
            return -1.0
        self.accept("+")
        return 1.0

    def signed_number(self):
        sign = self.sign()
        tok = self.match(_NUMBER)
        if tok is None:
            self.error("expected a number")
        return sign * float(tok)

    def parse(self):
        terms = []
        terms.append(self.term(self.sign()))
        while True:
            if self.accept("+"):
                terms.append(self.term(1.0))
            elif self.accept("-"):
                terms.append(self.term(-1.0))
            else:
                break
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return StateExpression(self.text, tuple(terms))

    def term(self, sign):
        coef = complex(sign)
        tok = self.match(_NUMBER)
        if tok is not None:
            coef *= float(tok)
            if self.accept("i"):
                coef *= 1j
        if self.accept("exp"):
            self.expect("(")
            self.expect("i")
            self.accept("*")
            coef *= cmath.exp(1j * self.signed_number())
            self.expect(")")
        self.accept("*")
        return Term(coef, self.factor())

    def factor(self):
        self.skip()
        start = self.pos
        for op in ("S", "A"):
            if self.accept(op):
                self.expect("(")
                slots = self.slots()
                self.expect(")")
                return Apply(op, slots, self.factor(), start)
        if self.peek("|"):
            return self.ket()
        self.error("expected 'S(', 'A(' or a ket '|...>'")

    def slots(self):
        out = []
        while True:
            a = self.integer()
            if self.accept(".."):
                b = self.integer()
                if b < a:
                    self.error(f"empty slot range {a}..{b}")
                out.extend(range(a, b + 1))
            else:
                out.append(a)
            if not self.accept(","):
                break
        if len(set(out)) < 2:
            self.error("S/A need at least two distinct slots")
        if len(set(out)) != len(out):
            self.error("repeated slot in S/A")
        return tuple(out)

    def ket(self):
        start = self.pos
        self.expect("|")
        labels = [self.integer()]
        while self.accept(","):
            labels.append(self.integer())
        self.expect(">")
        return Ket(tuple(labels), start)


def parse_state(text: str) -> StateExpression:
    if not text or not text.strip():
        raise ParseError("empty state expression", 0)
    return _Parser(text).parse()


def _kets(node):
    if isinstance(node, Ket):
        yield node
    else:
        yield from _kets(node.child)


def _eval_factor(node, d, n):
    if isinstance(node, Ket):
        return product_ket(node.labels, d)
    child = _eval_factor(node.child, d, n)
    for s in node.slots:
        if not 1 <= s <= n:
            raise DomainError(f"slot {s} outside 1..{n} in {node.op}(...) at position {node.position}")
    fn = symmetrize if node.op == "S" else antisymmetrize
    return fn(child, node.slots)


def evaluate(expr: StateExpression, d=None) -> MultiKet:
    """Evaluate to a normalized ket; ``d`` defaults to max(2, largest label + 1)."""
    kets = [k for t in expr.terms for k in _kets(t.factor)]
    n = len(kets[0].labels)
    for k in kets:
        if len(k.labels) != n:
            raise DomainError(f"ket at position {k.position} has {len(k.labels)} slots, expected {n}")
    top = max(x for k in kets for x in k.labels)
    if d is None:
        d = max(2, top + 1)
    elif top >= d:
        raise DomainError(f"label {top} outside [0, {d})")
    total = MultiKet(d, n)
    for t in expr.terms:
        total = add_scaled(total, t.coefficient, _eval_factor(t.factor, d, n))
    try:
        return normalize(total)
    except DegenerateStateError:
        raise DegenerateStateError(f"expression {expr.source!r} evaluates to the zero ket") from None


def evaluate_text(text, d=None) -> MultiKet:
    return evaluate(parse_state(text), d)
