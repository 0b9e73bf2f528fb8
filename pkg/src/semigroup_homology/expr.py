"""Constructor expressions such as ``W(M(2), I(RB(2,2)))``.

Grammar (whitespace is ignored)::

    expr  := NAME '(' arg (',' arg)* ')'
    arg   := INT | expr
    NAME  := RB | C | S | M | J | W | I | Z | P
"""
from __future__ import annotations

from .constructions import (
    cyclic_group,
    moore_semigroup,
    rectangular_band,
    suspension_monoid,
    wedge_monoid,
)
from .semigroup import FiniteSemigroup, adjoin_identity, adjoin_zero, direct_product


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} at position {position}{pointer}")


# name -> (argument kinds, builder)
_CONSTRUCTORS = {
    "RB": (("int", "int"), rectangular_band),
    "C": (("int",), cyclic_group),
    "S": (("int",), lambda n: moore_semigroup(n)[0]),
    "M": (("int",), lambda n: moore_semigroup(n)[1]),
    "J": (("expr",), suspension_monoid),
    "W": (("expr", "expr"), wedge_monoid),
    "I": (("expr",), adjoin_identity),
    "Z": (("expr",), adjoin_zero),
    "P": (("expr", "expr"), direct_product),
}

_MINIMUM = {"RB": 1, "C": 1, "S": 2, "M": 2}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def name(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        word = self.text[start:self.pos]
        if not word:
            raise self.error("expected a constructor name", start)
        if word not in _CONSTRUCTORS:
            raise self.error(f"unknown constructor {word!r}", start)
        return word, start

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer", start)
        return int(self.text[start:self.pos]), start

    def expr(self):
        word, start = self.name()
        kinds, build = _CONSTRUCTORS[word]
        self.expect("(")
        args = []
        for k, kind in enumerate(kinds):
            if k:
                self.expect(",")
            if kind == "int":
                value, at = self.integer()
                if value < _MINIMUM[word]:
                    raise self.error(f"{word} needs arguments >= {_MINIMUM[word]}", at)
                args.append(value)
            else:
                args.append(self.expr())
        self.expect(")")
        try:
            return build(*args)
        except ValueError as exc:
            raise self.error(f"{word}: {exc}", start) from exc

    def parse(self):
        value = self.expr()
        if self.peek():
            raise self.error("trailing input")
        return value


def parse(text: str) -> FiniteSemigroup:
    return _Parser(text).parse()
