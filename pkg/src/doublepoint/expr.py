"""Recursive descent parser for the expression language.

Grammar (whitespace insensitive):
    class    := term ('+' term)*
    term     := factor ('*' factor)*
    factor   := 'e' '[' int (',' int)* ']' | 'Q' '^' int '(' class ')'
              | '(' class ')'
    steenrod := composite ('+' composite)*   with composite := ('Sq' '^' int)+
    wmon     := 'w' int ('^' int)? ('*' 'w' int ('^' int)?)*
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .errors import ExprSyntaxError
from .mo import EMonomial
from .qmo import QClass, QMonomial, q_apply
from .steenrod import SqElement


class _Scanner:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.src) or self.src[self.pos] != ch:
            raise ExprSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def try_char(self, ch: str) -> bool:
        self.skip_ws()
        if self.pos < len(self.src) and self.src[self.pos] == ch:
            self.pos += 1
            return True
        return False

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isalpha():
            self.pos += 1
        return self.src[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ExprSyntaxError("expected an integer", self.pos)
        return int(self.src[start:self.pos])

    def done(self):
        self.skip_ws()
        if self.pos < len(self.src):
            raise ExprSyntaxError(f"unexpected {self.src[self.pos]!r}", self.pos)


class _ClassParser:
    def __init__(self, scanner: _Scanner, expected_k: Optional[int]):
        self.s = scanner
        self.k = expected_k

    def _check_k(self, k: int, pos: int):
        if self.k is None:
            self.k = k
        elif self.k != k:
            raise ExprSyntaxError(
                f"inconsistent number of indices: saw {k}, expected {self.k}", pos
            )

    def parse_class(self) -> QClass:
        total = self.parse_term()
        while self.s.try_char("+"):
            nxt = self.parse_term()
            if nxt.dim != total.dim:
                raise ExprSyntaxError("mixed dimensions in a sum", self.s.pos)
            total = total + nxt
        return total

    def parse_term(self) -> QClass:
        prod = self.parse_factor()
        while self.s.try_char("*"):
            prod = prod.product(self.parse_factor())
        return prod

    def parse_factor(self) -> QClass:
        self.s.skip_ws()
        pos = self.s.pos
        if self.s.try_char("("):
            inner = self.parse_class()
            self.s.expect(")")
            return inner
        name = self.s.word()
        if name == "e":
            self.s.expect("[")
            indices = [self.s.integer()]
            while self.s.try_char(","):
                indices.append(self.s.integer())
            self.s.expect("]")
            if any(i < 1 for i in indices):
                raise ExprSyntaxError("monomial indices must be >= 1", pos)
            self._check_k(len(indices), pos)
            return QClass.single(
                self.k, QMonomial.from_emonomial(EMonomial(tuple(indices)))
            )
        if name == "Q":
            self.s.expect("^")
            n = self.s.integer()
            self.s.expect("(")
            inner = self.parse_class()
            self.s.expect(")")
            return q_apply(n, inner)
        raise ExprSyntaxError("expected 'e[...]', 'Q^n(...)' or '('", pos)


def parse_qclass(src: str, expected_k: Optional[int] = None) -> QClass:
    """Parse an expression into a homology class of QMO(k).

    The number of letters k is inferred from the monomial literals and must
    be consistent; expected_k (from a CLI flag) is checked against it.
    """
    scanner = _Scanner(src)
    parser = _ClassParser(scanner, expected_k)
    cls = parser.parse_class()
    scanner.done()
    return cls


def parse_sq(src: str) -> SqElement:
    """Parse a sum of Steenrod composites such as 'Sq^2 Sq^4 + Sq^6'."""
    scanner = _Scanner(src)
    words: List[Tuple[int, ...]] = []
    while True:
        exponents = []
        while True:
            scanner.skip_ws()
            pos = scanner.pos
            name = scanner.word()
            if name != "Sq":
                raise ExprSyntaxError("expected 'Sq'", pos)
            scanner.expect("^")
            a = scanner.integer()
            if a < 1:
                raise ExprSyntaxError("Sq exponents must be >= 1", pos)
            exponents.append(a)
            nxt = scanner.peek()
            if nxt != "S":
                break
        words.append(tuple(exponents))
        if not scanner.try_char("+"):
            break
    scanner.done()
    return SqElement.from_words(words)


def parse_wmonomial(src: str) -> Tuple[Tuple[int, int], ...]:
    """Parse a w-monomial such as 'w1^2*w3' into ((1, 2), (3, 1))."""
    scanner = _Scanner(src)
    powers = []
    while True:
        scanner.skip_ws()
        pos = scanner.pos
        name = scanner.word()
        if name != "w":
            raise ExprSyntaxError("expected 'w'", pos)
        index = scanner.integer()
        if index < 1:
            raise ExprSyntaxError("w indices must be >= 1", pos)
        exp = 1
        if scanner.try_char("^"):
            exp = scanner.integer()
        powers.append((index, exp))
        if not scanner.try_char("*"):
            break
    scanner.done()
    merged = {}
    for i, e in powers:
        merged[i] = merged.get(i, 0) + e
    return tuple(sorted(merged.items()))
