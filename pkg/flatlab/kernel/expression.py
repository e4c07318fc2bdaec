"""
Parser for polynomial expressions over a PolynomialRing.

Grammar (precedence from low to high):
    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := "-" unary | power
    power := atom ("^" INTEGER)?
    atom  := INTEGER ("/" INTEGER)? | NAME | "(" expr ")"

Integer literals appear as coefficients or exponents; rational coefficients
are written a/b.
"""

import re
from typing import List, NamedTuple

from flatlab.kernel.errors import KernelError


class ExpressionError(KernelError):
    """Malformed polynomial text; `column` is the 1-based position of the problem."""

    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.message = message
        self.column = column


class Token(NamedTuple):
    kind: str
    text: str
    column: int


TOKEN_REGEX = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^/()]))"
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = TOKEN_REGEX.match(text, position)
        if match is None or match.end() == position:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            raise ExpressionError(f"Unexpected character '{text[column - 1]}'", column)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind) + 1))
        position = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class PolynomialParser:
    """Parses polynomial text into elements of a PolynomialRing."""

    def __init__(self, ring):
        self.ring = ring
        self._tokens: List[Token] = []
        self._index = 0

    def parse(self, text: str):
        self._tokens = tokenize(text)
        self._index = 0
        if self._peek().kind == "end":
            raise ExpressionError("Empty polynomial", self._peek().column)
        result = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise ExpressionError(f"Unexpected '{token.text}'", token.column)
        return result

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _next(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _accept(self, text) -> bool:
        if self._peek().kind == "op" and self._peek().text == text:
            self._index += 1
            return True
        return False

    def _expect_number(self) -> Token:
        token = self._next()
        if token.kind != "number":
            raise ExpressionError(f"Expected an integer, got '{token.text}'", token.column)
        return token

    def _expr(self):
        result = self._term()
        while True:
            if self._accept("+"):
                result = result + self._term()
            elif self._accept("-"):
                result = result - self._term()
            else:
                return result

    def _term(self):
        result = self._unary()
        while self._accept("*"):
            result = result * self._unary()
        return result

    def _unary(self):
        if self._accept("-"):
            return -self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self._accept("^"):
            exponent = self._expect_number()
            return base ** int(exponent.text)
        return base

    def _atom(self):
        token = self._next()
        if token.kind == "number":
            numerator = int(token.text)
            if self._accept("/"):
                denominator = self._expect_number()
                if int(denominator.text) == 0:
                    raise ExpressionError("Division by zero", denominator.column)
                value = self.ring.field.rational(numerator, int(denominator.text))
            else:
                value = self.ring.field.rational(numerator)
            return self.ring.sympy_ring.ground_new(value)
        if token.kind == "name":
            if token.text not in self.ring.variables:
                raise ExpressionError(f"Unknown variable '{token.text}'", token.column)
            return self.ring.gen(token.text)
        if token.kind == "op" and token.text == "(":
            result = self._expr()
            if not self._accept(")"):
                raise ExpressionError("Missing ')'", self._peek().column)
            return result
        if token.kind == "end":
            raise ExpressionError("Unexpected end of expression", token.column)
        raise ExpressionError(f"Unexpected '{token.text}'", token.column)


def parse_polynomial(ring, text: str):
    return PolynomialParser(ring).parse(text)
