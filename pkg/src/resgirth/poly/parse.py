"""Recursive-descent parser for matrix entry expressions.

Grammar (whitespace insignificant)::

    entry    := poly ( "/" poly )?
    poly     := "(" sum ")" | sum
    sum      := term ( ("+"|"-") term )*
    term     := integer ( "*" mono )? | mono
    mono     := var ( "^" uint )? ( "*" var ( "^" uint )? )*
    var      := "t" uint
    integer  := ("-")? uint

A leading ``-`` directly before a monomial (``-t1``) is also accepted and
read as ``-1*t1``. In characteristic p integer literals are reduced mod p.
"""

from __future__ import annotations

from ..errors import EntrySyntaxError, VariableIndexOutOfRange, ZeroDenominator
from ..galois import make_prime_field
from .multi import ZZ, MultiPoly
from .rational import RationalEntry


def coefficient_ring(characteristic: int):
    return ZZ if characteristic == 0 else make_prime_field(characteristic)


class _Parser:
    def __init__(self, text: str, k: int, ring):
        self.text = text
        self.k = k
        self.ring = ring
        self.pos = 0

    def error(self, msg):
        raise EntrySyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def entry(self) -> RationalEntry:
        num = self.poly()
        den = None
        if self.peek() == "/":
            self.pos += 1
            den_pos = self.pos
            den = self.poly()
            if den.is_zero():
                raise ZeroDenominator(f"zero denominator at position {den_pos}: {self.text!r}")
        if self.peek():
            self.error("unexpected trailing input")
        return RationalEntry(num, den)

    def poly(self) -> MultiPoly:
        if self.peek() == "(":
            self.pos += 1
            out = self.sum()
            self.expect(")")
            return out
        return self.sum()

    def sum(self) -> MultiPoly:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            nxt = self.peek()
            if nxt.isdigit():
                coeff = -self.uint()
            elif nxt == "t":
                return -self.mono()
            else:
                self.error("expected a number or variable after '-'")
        elif ch.isdigit():
            coeff = self.uint()
        elif ch == "t":
            return self.mono()
        else:
            self.error("expected a term")
        if self.peek() == "*":
            self.pos += 1
            return self.mono().scale(coeff)
        return MultiPoly.constant(self.ring, self.k, coeff)

    def var(self) -> int:
        self.expect("t")
        start = self.pos
        idx = self.uint()
        if not 1 <= idx <= self.k:
            raise VariableIndexOutOfRange(
                f"variable t{idx} at position {start} outside t1..t{self.k}"
            )
        return idx - 1

    def mono(self) -> MultiPoly:
        exps = [0] * self.k
        while True:
            i = self.var()
            e = 1
            if self.peek() == "^":
                self.pos += 1
                e = self.uint()
            exps[i] += e
            if self.peek() == "*":
                save = self.pos
                self.pos += 1
                if self.peek() != "t":
                    self.pos = save
                    self.error("expected a variable after '*'")
                continue
            break
        return MultiPoly.monomial(self.ring, self.k, exps)


def parse_entry(text: str, k: int, characteristic: int = 0) -> RationalEntry:
    """Parse an entry string into a rational function in ``t1..tk``."""
    if not isinstance(text, str):
        text = str(text)
    return _Parser(text, k, coefficient_ring(characteristic)).entry()


def parse_poly(text: str, k: int, characteristic: int = 0) -> MultiPoly:
    """Parse a polynomial (an entry with no denominator)."""
    e = parse_entry(text, k, characteristic)
    if not e.is_polynomial():
        raise EntrySyntaxError("expected a polynomial, got a quotient", text, 0)
    return e.num
