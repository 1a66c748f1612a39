"""Infix expression parser.

Grammar (fixed, text-level contract of the package):

* identifiers ``[A-Za-z][A-Za-z0-9_]*``;
* binary ``+ - * / ^`` with the usual precedence, ``^`` right
  associative and requiring an exponent that normalizes to an integer
  constant;
* function calls ``f(expr)`` for f in exp, log, sin, cos;
* rational literals ``3``, ``1/2``: a ``/`` squeezed between two integer
  literals with no spaces is a rational constant, any other ``/`` is
  division;
* unary minus.
"""

from fractions import Fraction

from .errors import NonIntegerExponentError, ParseError, UnknownFunctionError
from .expr import Add, Const, Expr, Func, FUNCTIONS, Mul, Pow, Var, normalize

_NEG_ONE = Const(-1)


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    last = text.rfind("\n", 0, pos)
    return line, pos - last


def _err(text, pos, message, cls=ParseError):
    line, col = _line_col(text, pos)
    raise cls(message, line, col)


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            # "a/b" with no interior spaces is a rational literal
            if i + 1 < n and text[i] == "/" and text[i + 1].isdigit():
                i += 1
                dstart = i
                while i < n and text[i].isdigit():
                    i += 1
                den = int(text[dstart:i])
                if den == 0:
                    _err(text, dstart, "rational literal with zero denominator")
                tokens.append(_Token("number", Fraction(num, den), start))
            else:
                tokens.append(_Token("number", Fraction(num), start))
            continue
        if ch.isalpha():
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("name", text[start:i], start))
            continue
        if ch in "+-*/^(),":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        _err(text, i, f"unexpected character {ch!r}")
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.take()
        if t.kind != kind:
            _err(self.text, t.pos, f"expected {kind!r}, found {t.value!r}")
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            _err(self.text, t.pos, f"unexpected trailing input {t.value!r}")
        return e

    def expr(self):
        terms = [self.term()]
        while self.peek().kind in ("+", "-"):
            op = self.take()
            t = self.term()
            terms.append(t if op.kind == "+" else Mul((_NEG_ONE, t)))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self):
        factors = [self.unary()]
        while self.peek().kind in ("*", "/"):
            op = self.take()
            f = self.unary()
            factors.append(f if op.kind == "*" else Pow(f, -1))
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def unary(self):
        if self.peek().kind == "-":
            self.take()
            return Mul((_NEG_ONE, self.unary()))
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind != "^":
            return base
        caret = self.take()
        exponent = self.unary()
        k = normalize(exponent)
        if k.__class__ is not Const or k.value.denominator != 1:
            _err(self.text, caret.pos, "exponent must be an integer constant",
                 cls=_NonIntExp)
        return Pow(base, int(k.value))

    def atom(self):
        t = self.take()
        if t.kind == "number":
            return Const(t.value)
        if t.kind == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            if self.peek().kind == "(":
                if t.value not in FUNCTIONS:
                    _err(self.text, t.pos, f"unknown function {t.value!r}",
                         cls=UnknownFunctionError)
                self.take()
                arg = self.expr()
                self.expect(")")
                return Func(t.value, arg)
            return Var(t.value)
        _err(self.text, t.pos, f"unexpected token {t.value!r}")


class _NonIntExp(ParseError, NonIntegerExponentError):
    pass


def parse(text: str) -> Expr:
    """Parse ``text`` and return its canonical form."""
    return normalize(_Parser(text).parse())


def parse_raw(text: str) -> Expr:
    """Parse without normalizing (used by tests of the grammar itself)."""
    return _Parser(text).parse()
