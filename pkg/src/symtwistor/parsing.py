"""Small expression language for building WeylOperators.

Grammar (tightest first):
    power   := primary ["^" INT]
    unary   := "-" unary | power
    term    := unary ("*" unary)*        # noncommutative, left to right
    expr    := term (("+" | "-") term)*
    primary := INT ["/" INT] | IDENT | "(" expr ")"

Identifiers: x y q dx dy dq (xy basis), z zbar dz dzbar (zzbar basis),
i (imaginary unit). "/" is only the rational-literal separator, never an
operator. Juxtaposition is not multiplication: "2q" is a syntax error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import GaussianRational
from .weyl import BasisTag, WeylOperator


class OperatorSyntaxError(ValueError):
    """Malformed expression; .position is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(OperatorSyntaxError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown symbol {name!r}", position)
        self.name = name


_XY_ONLY = {"x", "y", "dx", "dy"}
_ZZ_ONLY = {"z", "zbar", "dz", "dzbar"}
_NEUTRAL = {"q", "dq"}

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()/]))")


@dataclass
class _Token:
    kind: str  # "int", "ident", or the operator character itself
    text: str
    position: int


def tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise OperatorSyntaxError(f"unexpected character {text[bad_at]!r}", bad_at)
        number, ident, op = match.groups()
        start = match.end() - len(match.group().lstrip())
        if number is not None:
            tokens.append(_Token("int", number, start))
        elif ident is not None:
            tokens.append(_Token("ident", ident, start))
        else:
            tokens.append(_Token(op, op, start))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.seen_xy = False
        self.seen_zz = False

    def peek(self) -> _Token | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def advance(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise OperatorSyntaxError("unexpected end of expression", len(self.text))
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            at = tok.position if tok else len(self.text)
            got = f"{tok.text!r}" if tok else "end of expression"
            raise OperatorSyntaxError(f"expected {kind!r}, got {got}", at)
        return self.advance()

    # operands are built in both bases until a basis-specific generator
    # fixes the interpretation; _Pending carries the pair along.

    def parse(self) -> "_Pending":
        result = self.parse_expr()
        tok = self.peek()
        if tok is not None:
            raise OperatorSyntaxError(f"unexpected {tok.text!r}", tok.position)
        return result

    def parse_expr(self) -> "_Pending":
        acc = self.parse_term()
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("+", "-"):
                return acc
            self.advance()
            rhs = self.parse_term()
            acc = acc.combine(rhs, tok.kind, self)

    def parse_term(self) -> "_Pending":
        acc = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "*":
                return acc
            self.advance()
            rhs = self.parse_unary()
            acc = acc.combine(rhs, "*", self)

    def parse_unary(self) -> "_Pending":
        tok = self.peek()
        if tok is not None and tok.kind == "-":
            self.advance()
            return self.parse_unary().negate()
        return self.parse_power()

    def parse_power(self) -> "_Pending":
        base = self.parse_primary()
        tok = self.peek()
        if tok is not None and tok.kind == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok is None or exp_tok.kind != "int":
                at = exp_tok.position if exp_tok else len(self.text)
                raise OperatorSyntaxError("exponent must be a nonnegative integer", at)
            self.advance()
            return base.power(int(exp_tok.text))
        return base

    def parse_primary(self) -> "_Pending":
        tok = self.peek()
        if tok is None:
            raise OperatorSyntaxError("unexpected end of expression", len(self.text))
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.text))
            nxt = self.peek()
            if nxt is not None and nxt.kind == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok is None or den_tok.kind != "int":
                    at = den_tok.position if den_tok else len(self.text)
                    raise OperatorSyntaxError(
                        "'/' is only allowed between integer literals", at
                    )
                self.advance()
                if int(den_tok.text) == 0:
                    raise OperatorSyntaxError("zero denominator", den_tok.position)
                value = Fraction(int(tok.text), int(den_tok.text))
            return _Pending.scalar(GaussianRational(value))
        if tok.kind == "ident":
            self.advance()
            return self.ident_operand(tok)
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            closing = self.peek()
            if closing is None or closing.kind != ")":
                at = closing.position if closing else len(self.text)
                raise OperatorSyntaxError("expected ')'", at)
            self.advance()
            return inner
        raise OperatorSyntaxError(f"unexpected {tok.text!r}", tok.position)

    def ident_operand(self, tok: _Token) -> "_Pending":
        name = tok.text
        if name == "i":
            return _Pending.scalar(GaussianRational(0, 1))
        if name in _NEUTRAL:
            return _Pending(
                WeylOperator.generator(BasisTag.XY, name),
                WeylOperator.generator(BasisTag.ZZBAR, name),
            )
        if name in _XY_ONLY:
            if self.seen_zz:
                raise OperatorSyntaxError(
                    f"{name!r} mixes xy generators into a zzbar expression", tok.position
                )
            self.seen_xy = True
            return _Pending(WeylOperator.generator(BasisTag.XY, name), None)
        if name in _ZZ_ONLY:
            if self.seen_xy:
                raise OperatorSyntaxError(
                    f"{name!r} mixes zzbar generators into an xy expression", tok.position
                )
            self.seen_zz = True
            return _Pending(None, WeylOperator.generator(BasisTag.ZZBAR, name))
        raise UnknownSymbolError(name, tok.position)


class _Pending:
    """Operator tracked in whichever bases are still possible."""

    __slots__ = ("xy", "zz")

    def __init__(self, xy: WeylOperator | None, zz: WeylOperator | None):
        self.xy = xy
        self.zz = zz

    @staticmethod
    def scalar(value: GaussianRational) -> "_Pending":
        return _Pending(
            WeylOperator.scalar(BasisTag.XY, value),
            WeylOperator.scalar(BasisTag.ZZBAR, value),
        )

    def combine(self, other: "_Pending", op: str, parser: _Parser) -> "_Pending":
        def merge(a, b):
            if a is None or b is None:
                return None
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            return a.compose(b)

        return _Pending(merge(self.xy, other.xy), merge(self.zz, other.zz))

    def negate(self) -> "_Pending":
        return _Pending(
            -self.xy if self.xy is not None else None,
            -self.zz if self.zz is not None else None,
        )

    def power(self, exponent: int) -> "_Pending":
        return _Pending(
            self.xy**exponent if self.xy is not None else None,
            self.zz**exponent if self.zz is not None else None,
        )


def parse_operator(text: str, basis: BasisTag | None = None) -> WeylOperator:
    """Parse text into a WeylOperator.

    The basis is inferred from the generators used (default xy when only
    q, dq, i, and numbers appear); a mixed expression is a syntax error.
    When `basis` is given, the parsed operator is converted to it.
    """
    parser = _Parser(text)
    pending = parser.parse()
    if parser.seen_xy:
        result = pending.xy
    elif parser.seen_zz:
        result = pending.zz
    else:
        result = pending.xy  # neutral expressions default to the xy tag
    if basis is not None:
        result = result.change_basis(basis)
    return result
