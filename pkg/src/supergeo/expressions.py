"""Expression strings for rational functions.

Grammar accepted by :func:`parse`::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*        # left associative
    unary  := '-' unary | power
    power  := atom ('^' nonnegative-integer)?
    atom   := integer | x<k> | '(' expr ')'

Precedence is ``^`` above unary minus above ``*``/``/`` above binary
``+``/``-``.  Variables are ``x1`` .. ``xn`` (1-based in the text, 0-based
in the library).  Whitespace is ignored.

:func:`render` produces the canonical text of a rational function: terms in
descending graded-lex order, integer coefficients, a single leading sign.
Rendered text always parses back to an equal value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExpressionError, NegativeExponent, UnknownVariable
from .scalars import Polynomial, RationalFunction, _grlex

_TOKEN_KINDS = ("int", "var", "op", "lparen", "rparen", "end")


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("var", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ch, i))
            i += 1
            continue
        raise ExpressionError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.nvars = nvars

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> RationalFunction:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionError(f"unexpected token {tok.value!r}", tok.pos)
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.advance().value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            op = self.advance()
            rhs = self.unary()
            if op.value == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise ExpressionError("division by zero", op.pos)
                value = value / rhs
        return value

    def unary(self) -> RationalFunction:
        if self.peek().kind == "op" and self.peek().value == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.advance()
            tok = self.peek()
            if tok.kind == "op" and tok.value == "-":
                raise NegativeExponent("exponent must be nonnegative", tok.pos)
            if tok.kind != "int":
                raise ExpressionError("expected integer exponent", tok.pos)
            self.advance()
            return base ** tok.value
        return base

    def atom(self) -> RationalFunction:
        tok = self.advance()
        if tok.kind == "int":
            return RationalFunction.constant(self.nvars, tok.value)
        if tok.kind == "var":
            name = tok.value
            if not (name.startswith("x") and name[1:].isdigit()):
                raise ExpressionError(f"unknown symbol {name!r}", tok.pos)
            index = int(name[1:])
            if not 1 <= index <= self.nvars:
                raise UnknownVariable(
                    f"variable {name} out of range for {self.nvars} coordinates", tok.pos
                )
            return RationalFunction.variable(self.nvars, index - 1)
        if tok.kind == "lparen":
            value = self.expr()
            closing = self.advance()
            if closing.kind != "rparen":
                raise ExpressionError("expected ')'", closing.pos)
            return value
        raise ExpressionError("expected integer, variable or '('", tok.pos)


def parse(text: str, nvars: int) -> RationalFunction:
    """Parse an expression string into an exact rational function."""
    return _Parser(text, nvars).parse()


# ---------------------------------------------------------------------------
# canonical rendering
# ---------------------------------------------------------------------------


def _render_monomial(exp, coeff: Fraction) -> str:
    # canonical rational functions carry integer coefficients
    parts = []
    for i, e in enumerate(exp):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    mag = abs(coeff)
    if not parts:
        return str(mag)
    if mag != 1:
        parts.insert(0, str(mag))
    return "*".join(parts)


def render_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for exp in sorted(p.terms, key=_grlex, reverse=True):
        coeff = p.terms[exp]
        text = _render_monomial(exp, coeff)
        if not pieces:
            pieces.append(f"-{text}" if coeff < 0 else text)
        else:
            pieces.append(f"- {text}" if coeff < 0 else f"+ {text}")
    return " ".join(pieces)


def _needs_parens(p: Polynomial) -> bool:
    if len(p.terms) != 1:
        return True
    exp, coeff = p.leading()
    if coeff < 0:
        return True
    # a bare power x_i^k or a bare integer is safe next to '/'
    nontrivial = [e for e in exp if e > 0]
    if not nontrivial:
        return False
    return not (len(nontrivial) == 1 and coeff == 1)


def render(rf: RationalFunction) -> str:
    """Canonical text of a rational function; round-trips through parse."""
    num = render_polynomial(rf.num)
    if rf.den == Polynomial.one(rf.nvars):
        return num
    den = render_polynomial(rf.den)
    if _needs_parens(rf.num):
        num = f"({num})"
    if _needs_parens(rf.den):
        den = f"({den})"
    return f"{num}/{den}"
