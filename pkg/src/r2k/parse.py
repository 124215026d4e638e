"""Recursive-descent parser for scalar and element expressions.

One grammar covers both: sums of products of factors, where a factor is an
integer, an indeterminate ``u<k>``, a parenthesized expression, or a basis
symbol ``L(i)``, ``H(i)``, ``G+(i)``, ``G-(i)``, ``C``. Values are Scalars or
Elements; an Element may be scaled by a Scalar but never multiplied by
another Element. Canonical rendered text is always accepted.
"""

from __future__ import annotations

import re

from .errors import DivisionByZero, ParseError, RankMismatch, ZeroDenominator
from .field import ONE, Scalar

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym>G[+-](?=\s*\()|L(?=\s*\()|H(?=\s*\()|C\b)
  | (?P<var>u(?P<k>[0-9]+))
  | (?P<int>[0-9]+)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup if m.lastgroup != "k" else "var"
        if kind != "ws":
            out.append((kind, m.group(kind), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, rank=None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind not in ("op",):
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos, self.text)

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        return ParseError(msg, pos, self.text)

    def parse(self):
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise self.error(f"unexpected {val!r}", pos)
        return v

    def expr(self):
        kind, v, pos = self.peek()
        neg = False
        if kind == "op" and v in "+-":
            self.take()
            neg = v == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.term()
                acc = self._combine(acc, rhs if v == "+" else -rhs, pos)
            else:
                return acc

    def _combine(self, a, b, pos):
        from .algebra import Element
        if isinstance(a, Element) != isinstance(b, Element):
            zero_scalar = (b if isinstance(a, Element) else a)
            if zero_scalar:
                raise self.error("cannot add a scalar to an element", pos)
            return a if isinstance(a, Element) else b
        return a + b

    def term(self):
        from .algebra import Element
        acc = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "*/":
                self.take()
                rhs = self.unary()
                if v == "*":
                    if isinstance(acc, Element) and isinstance(rhs, Element):
                        raise self.error("cannot multiply two elements", pos)
                    acc = acc.scale(rhs) if isinstance(acc, Element) else (
                        rhs.scale(acc) if isinstance(rhs, Element) else acc * rhs)
                else:
                    if isinstance(rhs, Element):
                        raise self.error("cannot divide by an element", pos)
                    if not rhs:
                        raise ZeroDenominator(f"division by zero at position {pos}")
                    acc = acc / rhs
            else:
                return acc

    def unary(self):
        kind, v, pos = self.peek()
        if kind == "op" and v in "+-":
            self.take()
            x = self.unary()
            return -x if v == "-" else x
        return self.power()

    def power(self):
        from .algebra import Element
        base = self.atom()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            k, e, epos = self.take()
            if k != "int":
                raise self.error("expected integer exponent", epos)
            if isinstance(base, Element):
                raise self.error("cannot raise an element to a power", pos)
            try:
                return base ** (sign * int(e))
            except DivisionByZero:
                raise ZeroDenominator(f"zero to a negative power at position {pos}") from None
        return base

    def atom(self):
        kind, v, pos = self.take()
        if kind == "int":
            return Scalar(int(v))
        if kind == "var":
            k = int(v[1:])
            if k < 1:
                raise self.error("indeterminates are numbered from u1", pos)
            return Scalar.var(k)
        if kind == "op" and v == "(":
            x = self.expr()
            self.expect(")")
            return x
        if kind == "sym":
            return self.symbol(v, pos)
        raise self.error(f"unexpected {v or 'end of input'!r}", pos)

    def symbol(self, name, pos):
        from .algebra import C, GM, GP, H, L, Element, Sym
        if name == "C":
            if self.rank is None:
                raise self.error("basis symbol in a scalar expression", pos)
            return Element.basis(Sym(C, (0,) * self.rank))
        kind = {"L": L, "H": H, "G+": GP, "G-": GM}[name]
        if self.rank is None:
            raise self.error("basis symbol in a scalar expression", pos)
        self.expect("(")
        idx = [self.signed_int()]
        while self.peek()[1] == ",":
            self.take()
            idx.append(self.signed_int())
        self.expect(")")
        if len(idx) != self.rank:
            raise RankMismatch(f"index of rank {len(idx)} at position {pos}, expected {self.rank}")
        return Element.basis(Sym(kind, tuple(idx)), ONE)

    def signed_int(self):
        sign = 1
        while self.peek()[1] in ("-", "+") and self.peek()[0] == "op":
            if self.take()[1] == "-":
                sign = -sign
        kind, v, pos = self.take()
        if kind != "int":
            raise self.error("expected integer index", pos)
        return sign * int(v)


def parse_scalar(text):
    from .algebra import Element
    v = _Parser(text).parse()
    if isinstance(v, Element):
        raise ParseError("expected a scalar", 0, text)
    return v


def parse_element(text, rank=1):
    """Parse element text; indices must have the given rank."""
    from .algebra import Element
    v = _Parser(text, rank).parse()
    if not isinstance(v, Element):
        if v:
            raise ParseError("expected an element, found a nonzero scalar", 0, text)
        return Element()
    return v


def parse_index(text, rank=None):
    """Index text "3", "-2", "(1,-2)" or "1,-2" to an integer tuple."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        idx = tuple(int(p) for p in body.split(","))
    except ValueError:
        raise ParseError(f"malformed index {text!r}", 0, text) from None
    if rank is not None and len(idx) != rank:
        raise RankMismatch(f"index {text!r} has rank {len(idx)}, expected {rank}")
    return idx
