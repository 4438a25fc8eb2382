"""Text front-end: parsing and canonical printing of rational functions.

Grammar (EBNF):
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor | '/' factor)*
    factor := ['-'] base ('^' ['-'] integer)?
    base   := variable | integer | 't' | '(' expr ')'

Implicit multiplication between adjacent factors is accepted ("x0x1"),
negative powers are routed into the denominator, and 't' denotes the
extension-field generator (only valid when s > 1).
"""

from __future__ import annotations

from .errors import IndexOutOfRange, ParseError, UnknownVariable
from .ffield import ff_make
from .poly import MPoly, PFormCtx, RatFunc

_INT, _VAR, _T, _OP, _END = "int", "var", "t", "op", "end"


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_INT, int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable 'x' needs an index", i)
            tokens.append((_VAR, int(text[i + 1 : j]), i))
            i = j
            continue
        if ch == "t":
            tokens.append((_T, None, i))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((_OP, ch, i))
            i += 1
            continue
        if ch.isalpha():
            raise UnknownVariable(f"unknown symbol {ch!r}", i)
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append((_END, None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: PFormCtx):
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.take()
        if kind != _OP or val != ch:
            raise ParseError(f"expected {ch!r}", pos)

    def parse(self) -> RatFunc:
        out = self.expr()
        kind, _, pos = self.peek()
        if kind != _END:
            raise ParseError("trailing input", pos)
        return out

    def expr(self) -> RatFunc:
        kind, val, _ = self.peek()
        negate = False
        if kind == _OP and val in "+-":
            self.take()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == _OP and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> RatFunc:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _OP and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == _OP and val == "/":
                self.take()
                acc = acc / self.factor()
            elif kind in (_INT, _VAR, _T) or (kind == _OP and val == "("):
                acc = acc * self.factor()  # implicit multiplication
            else:
                return acc

    def factor(self) -> RatFunc:
        kind, val, _ = self.peek()
        if kind == _OP and val == "-":
            self.take()
            return -self.factor()
        base = self.base()
        kind, val, _ = self.peek()
        if kind == _OP and val == "^":
            self.take()
            base = base ** self.exponent()
        return base

    def exponent(self) -> int:
        kind, val, pos = self.take()
        sign = 1
        if kind == _OP and val == "-":
            sign = -1
            kind, val, pos = self.take()
        if kind != _INT:
            raise ParseError("expected an integer exponent", pos)
        return sign * val

    def base(self) -> RatFunc:
        kind, val, pos = self.take()
        if kind == _INT:
            return self.ctx.const(val)
        if kind == _VAR:
            if val >= self.ctx.n:
                raise IndexOutOfRange(
                    f"x{val} out of range for {self.ctx.n} variables", pos
                )
            return self.ctx.var(val)
        if kind == _T:
            if self.ctx.field.s == 1:
                raise UnknownVariable("'t' needs an extension field (s > 1)", pos)
            return self.ctx.const(self.ctx.field.elem_from_code(self.ctx.field.p))
        if kind == _OP and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a value", pos)


def parse(text: str, ctx: PFormCtx) -> RatFunc:
    """Parse an expression into an exact rational function."""
    return _Parser(text, ctx).parse()


def parse_modulus(text: str, p: int):
    """Parse a monic modulus written in t over F_p into a coefficient tuple."""
    ctx = PFormCtx(ff_make(p), 1)
    f = _Parser(text.replace("t", "x0"), ctx).parse()
    if len(f.den.terms) != 1 or f.den.grlex_leading()[0] != (0,):
        raise ParseError("modulus must be a polynomial", 0)
    f = f.content_reduce()
    deg = max(e for (e,) in f.num.terms)
    coeffs = [0] * (deg + 1)
    for (e,), c in f.num.terms.items():
        coeffs[e] = c
    return tuple(coeffs)


# --- canonical printing -------------------------------------------------------


def _grlex_desc(terms):
    return sorted(terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)


def _coeff_str(ctx: PFormCtx, code: int) -> str:
    return ctx.field.str_of(code)


def _term_str(ctx: PFormCtx, exps, code) -> str:
    vars_part = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        vars_part.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    if not vars_part:
        return _coeff_str(ctx, code)
    parts = []
    if code != 1:
        cs = _coeff_str(ctx, code)
        parts.append(f"({cs})" if "+" in cs else cs)
    parts.extend(vars_part)
    return "*".join(parts)


def poly_string(poly: MPoly) -> str:
    if poly.is_zero():
        return "0"
    ctx = poly.ctx
    return "+".join(_term_str(ctx, e, c) for e, c in _grlex_desc(poly.terms))


def _is_plain_power(poly: MPoly) -> bool:
    # one term, coefficient 1, exactly one variable: safe unparenthesised
    if len(poly.terms) != 1:
        return False
    (exps, code), = poly.terms.items()
    return code == 1 and sum(1 for e in exps if e) == 1


def ratfunc_string(f: RatFunc) -> str:
    """Canonical form: terms in graded-lex order, denominator monic under
    that order, '/' omitted for denominator 1."""
    num, den = f.num, f.den
    if num.is_zero():
        return "0"
    lead = den.grlex_leading()[1]
    if lead != 1:
        inv = f.ctx.field.inv(lead)
        num, den = num.scale(inv), den.scale(inv)
    num_str = poly_string(num)
    if den == f.ctx.poly_one():
        return num_str
    den_str = poly_string(den)
    # a bare multi-part constant ("1+t") also binds looser than '/'
    if len(num.terms) > 1 or (num.is_constant() and "+" in num_str):
        num_str = f"({num_str})"
    if not _is_plain_power(den):
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"
