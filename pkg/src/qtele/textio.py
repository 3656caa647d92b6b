"""Canonical text for polynomials and rational functions in q, x, y.

Printing expands everything: terms are sorted by decreasing exponent of y,
then x, then q; coefficients are integers; powers use ``^`` and products an
explicit ``*``.  A rational function prints as ``(num)/(den)`` with the
leading term of the denominator positive, or as ``num`` when the denominator
is 1.  :func:`parse_ratfun` accepts any well-formed expression in these
symbols, with parentheses, products, quotients and integer powers, and
``to_text(parse_ratfun(s)) == s`` holds for canonical ``s``.
"""

from __future__ import annotations

import re

from .algebra import FF, PR, frac
from .errors import TermSyntaxError

DEFAULT_NAMES = ("q", "x", "y")
TERM_NAMES = ("q", "qn", "qk")


def _order_key(mon):
    return (mon[2], mon[1], mon[0])


def _monomial(mon, names):
    parts = []
    for e, name in zip(mon, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_text(p, names=DEFAULT_NAMES):
    if not p:
        return "0"
    out = []
    for mon, c in sorted(p.iterterms(), key=lambda t: _order_key(t[0]), reverse=True):
        c = int(c)
        m = _monomial(mon, names)
        mag = abs(c)
        body = m if (mag == 1 and m) else (f"{mag}*{m}" if m else str(mag))
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("-" if c < 0 else "+") + body)
    return "".join(out)


def _leading(p):
    return max(p.iterterms(), key=lambda t: _order_key(t[0]))[1]


def canonical_pair(f):
    """Numerator and denominator with a positive leading denominator term."""
    f = frac(f)
    n, d = f.numer, f.denom
    if _leading(d) < 0:
        n, d = -n, -d
    return n, d


def to_text(f, names=DEFAULT_NAMES):
    """Canonical text of a polynomial or rational function."""
    n, d = canonical_pair(f)
    if d == 1:
        return poly_to_text(n, names)
    return f"({poly_to_text(n, names)})/({poly_to_text(d, names)})"


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


def tokenize(text):
    toks = []
    for m in _TOKEN.finditer(text):
        num, name, op = m.groups()
        if num:
            toks.append(("int", int(num), m.start()))
        elif name:
            toks.append(("name", name, m.start()))
        else:
            toks.append(("op", op, m.start()))
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        gens = {"q": FF(PR.gens[0]), "x": FF(PR.gens[1]), "y": FF(PR.gens[2])}
        self.symbols = {name: gens[v] for name, v in zip(names, DEFAULT_NAMES)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise TermSyntaxError(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected '{op}'", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.sum()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return v

    def sum(self):
        v = self.product()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.product()
            v = v + w if op == "+" else v - w
        return v

    def product(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            w = self.unary()
            if op[1] == "/":
                if not w:
                    self.error("division by zero", op)
                v = v / w
            else:
                v = v * w
        return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                self.error("expected an integer exponent", t)
            e = sign * t[1]
            if e < 0 and not base:
                self.error("zero to a negative power", t)
            return base**e
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return FF(t[1])
        if t[0] == "name":
            if t[1] not in self.symbols:
                self.error(f"unknown symbol '{t[1]}'", t)
            return self.symbols[t[1]]
        if t[0] == "op" and t[1] == "(":
            v = self.sum()
            self.expect(")")
            return v
        self.error("unexpected token", t)


def parse_ratfun(text, names=DEFAULT_NAMES):
    """Parse a rational function in ``names`` (default ``q, x, y``)."""
    return _Parser(text, names).parse()


def parse_poly(text, names=DEFAULT_NAMES):
    f = parse_ratfun(text, names)
    if f.denom != 1:
        if f.denom == -1:
            return -f.numer
        raise TermSyntaxError(f"not a polynomial: {text}")
    return f.numer
