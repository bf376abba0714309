"""Text syntax for semifield values and monoid element expressions.

Values::

    3/2                      positive rational
    t^2*(1+t)/(1+2*t)        rational function in t
    trop:-5                  tropical integer
    unit                     the element of the trivial semifield

Element expressions are left-to-right products of atoms ``E<i>(v)``,
``F<i>(v)``, ``T<i>(v)`` standing for ``i^v``, ``(-i)^v`` and the torus
generator of node ``i`` with exponent ``v``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .semifield import (
    RATFUNC,
    RATIONAL,
    TRIVIAL,
    TROPICAL,
    NotPositive,
    PosRational,
    PosRatFunc,
    Semifield,
    T_RING,
    TrivialOne,
    TropicalInt,
)

__all__ = ["ParseError", "parse_value", "parse_expression", "parse_chart", "SEMIFIELDS"]

SEMIFIELDS = {
    "rational": RATIONAL,
    "ratfunc": RATFUNC,
    "tropical": TROPICAL,
    "trivial": TRIVIAL,
}


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        caret = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {caret}")


_TOKEN = re.compile(r"\d+|t|[-+*/^()]")


class _RatFuncParser:
    """Recursive descent over + - * / ^ ( ) integers and t; yields (num, den) in Q[t]."""

    def __init__(self, text: str, offset: int = 0, full_text: str | None = None):
        self.text = text
        self.offset = offset
        self.full = full_text if full_text is not None else text
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                self.fail("unexpected character", pos)
            self.tokens.append((m.group(0), pos))
            pos = m.end()
        self.i = 0

    def fail(self, message, pos):
        raise ParseError(message, self.full, self.offset + pos)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def where(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok[0]

    def parse(self):
        if not self.tokens:
            self.fail("empty value", 0)
        value = self.expr()
        if self.i != len(self.tokens):
            self.fail(f"unexpected {self.peek()!r}", self.where())
        return value

    def expr(self):
        num, den = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            num, den = num * d2 + n2 * den, den * d2
        return num, den

    def term(self):
        num, den = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            pos = self.where()
            n2, d2 = self.unary()
            if op == "*":
                num, den = num * n2, den * d2
            else:
                if not n2:
                    self.fail("division by zero", pos)
                num, den = num * d2, den * n2
        return num, den

    def unary(self):
        if self.peek() == "-":
            self.take()
            num, den = self.unary()
            return -num, den
        return self.power()

    def power(self):
        num, den = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            pos = self.where()
            tok = self.peek()
            if tok is None or not tok.isdigit():
                self.fail("expected an integer exponent", pos)
            n = int(self.take())
            num, den = num**n, den**n
            if neg:
                if not num:
                    self.fail("zero to a negative power", pos)
                num, den = den, num
        return num, den

    def atom(self):
        pos = self.where()
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of value", pos)
        if tok.isdigit():
            self.take()
            return T_RING(int(tok)), T_RING.one
        if tok == "t":
            self.take()
            return T_RING.gens[0], T_RING.one
        if tok == "(":
            self.take()
            value = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'", self.where())
            self.take()
            return value
        self.fail(f"unexpected {tok!r}", pos)


_RATIONAL = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")
_TROP = re.compile(r"\s*trop:\s*(-?\d+)\s*$")


def parse_value(text: str, semifield: Semifield, *, offset: int = 0, full_text: str | None = None):
    """Parse a value literal in ``semifield``; errors carry the character position."""
    full = full_text if full_text is not None else text
    lead = len(text) - len(text.lstrip())
    if semifield is TRIVIAL:
        if text.strip() != "unit":
            raise ParseError("expected 'unit'", full, offset + lead)
        return TrivialOne()
    if semifield is TROPICAL:
        m = _TROP.match(text)
        if not m:
            raise ParseError("expected 'trop:<integer>'", full, offset + lead)
        return TropicalInt(int(m.group(1)))
    if semifield is RATIONAL:
        m = _RATIONAL.match(text)
        if not m:
            raise ParseError("expected a rational 'p/q'", full, offset + lead)
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator", full, offset + lead)
        try:
            return PosRational(Fraction(int(m.group(1)), den))
        except NotPositive:
            raise ParseError("value must be positive", full, offset + lead) from None
    if semifield is RATFUNC:
        num, den = _RatFuncParser(text, offset, full).parse()
        if not num:
            raise ParseError("value must be nonzero", full, offset + lead)
        try:
            return PosRatFunc(0, num, den)
        except NotPositive:
            raise ParseError("not of the form t^e*f0/f1 with positive constant terms", full, offset + lead) from None
    raise ValueError(f"no text syntax for {semifield!r}")


_ATOM_HEAD = re.compile(r"\s*([EFT])([A-Za-z0-9_]+)\(")
_KIND = {"E": 1, "F": -1, "T": 0}


def parse_expression(text: str, semifield: Semifield, nodes=None):
    """Parse ``E1(a) F2(b) T1(c) ...`` into a list of ``(sign, node, value)``.

    ``sign`` is +1 for E, -1 for F and 0 for T. Node names are returned as
    strings unless ``nodes`` is given, in which case each name is matched
    against ``str(node)`` and the original node object is returned.
    """
    lookup = None if nodes is None else {str(n): n for n in nodes}
    atoms = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _ATOM_HEAD.match(text, pos)
        if not m:
            raise ParseError("expected an atom E<i>(...), F<i>(...) or T<i>(...)", text, pos)
        name = m.group(2)
        if lookup is not None and name not in lookup:
            raise ParseError(f"unknown node {name!r}", text, m.start(2))
        node = name if lookup is None else lookup[name]
        start = m.end()
        depth = 1
        k = start
        while k < len(text) and depth:
            if text[k] == "(":
                depth += 1
            elif text[k] == ")":
                depth -= 1
            k += 1
        if depth:
            raise ParseError("unbalanced parenthesis", text, m.end() - 1)
        value = parse_value(text[start : k - 1], semifield, offset=start, full_text=text)
        atoms.append((_KIND[m.group(1)], node, value))
        pos = k
    if not atoms:
        raise ParseError("empty expression", text, 0)
    return atoms


_LETTER = re.compile(r"([EFT]?)([A-Za-z0-9_]+)$")


def parse_chart(text: str, nodes=None):
    """Parse a chart such as ``"F1 T1 E1"`` or a plain word ``"1 2 1"``.

    Returns a list of ``(sign, node)``; plain node names get sign +1.
    """
    lookup = None if nodes is None else {str(n): n for n in nodes}
    letters = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        m = _LETTER.match(tok)
        if not m:
            raise ParseError("bad chart letter", text, pos)
        kind, name = m.groups()
        if kind and lookup is not None and name not in lookup and tok in lookup:
            kind, name = "", tok
        if lookup is not None and name not in lookup:
            raise ParseError(f"unknown node {name!r}", text, pos)
        node = name if lookup is None else lookup[name]
        letters.append((_KIND.get(kind, 1), node))
        pos += len(tok)
    return letters
