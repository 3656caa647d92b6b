"""A small language for bivariate q-hypergeometric terms T(n, k).

Grammar (whitespace is ignored)::

    expr    := product (('+' | '-') product)*      -- only between rational parts
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] int)?
    atom    := int | 'q' | 'qn' | 'qk' | '(' expr ')'
             | 'qpow(' lin ')' | 'qfac(' lin ')' | 'qpoch(' expr ';' lin ')'
    lin     := integer-linear expression in n and k

``qn`` and ``qk`` stand for q^n and q^k; ``qpow(L)`` is q^L;
``qpoch(c; L)`` is ``prod_{j=0}^{L-1} (1 - c*q^j)`` for a monomial constant
``c = c0*q^m`` (for negative L the reciprocal of ``prod_{j=L}^{-1}``), and
``qfac(L)`` abbreviates ``qpoch(q; L)``.  Any subexpression built only from
numbers, ``q``, ``qn`` and ``qk`` is folded into a single rational node.

In rational functions the symbols x and y stand for q^n and q^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import FF, Q, X, Y, eval_at_qpower, evaluate, frac, free_of
from .errors import BadQValue, DivisionByZero, NonIntegerExponent, PoleAtPoint, TermSyntaxError
from .qshift import qshift
from .textio import TERM_NAMES, to_text as ratfun_text, tokenize

# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class LinForm:
    """``a*n + b*k + c``."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __add__(self, o):
        return LinForm(self.a + o.a, self.b + o.b, self.c + o.c)

    def scale(self, m):
        return LinForm(m * self.a, m * self.b, m * self.c)

    def is_const(self):
        return self.a == 0 and self.b == 0

    def at(self, n, k):
        return self.a * n + self.b * k + self.c

    def step(self, direction):
        return self.a if direction == "n" else self.b

    def __str__(self):
        out = ""
        for coef, name in ((self.a, "n"), (self.b, "k")):
            if not coef:
                continue
            sign = "-" if coef < 0 else ("+" if out else "")
            mag = abs(coef)
            out += sign + (name if mag == 1 else f"{mag}*{name}")
        if self.c or not out:
            out += str(self.c) if (self.c < 0 or not out) else f"+{self.c}"
        return out


@dataclass(frozen=True)
class Const:
    value: object  # element of Q(q)


@dataclass(frozen=True)
class RatPoly:
    value: object  # P(x, y)/Q(x, y) with x = q^n, y = q^k


@dataclass(frozen=True)
class QPow:
    L: LinForm


@dataclass(frozen=True)
class QPoch:
    c0: Fraction
    m: int
    L: LinForm

    @property
    def base(self):
        return FF(self.c0.numerator) / self.c0.denominator * Q**self.m


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class IntPow:
    base: object
    e: int


_RATIONAL = (Const, RatPoly)


def rational(value):
    """Rational leaf for ``value``: ``Const`` when free of x and y."""
    value = frac(value)
    return Const(value) if free_of(value, ("x", "y")) else RatPoly(value)


def qpoch(c, L):
    """``QPoch`` node for a monomial constant ``c = c0 * q^m``."""
    c = frac(c)
    if not c or not free_of(c, ("x", "y")):
        raise TermSyntaxError("qpoch base must be a nonzero constant c0*q^m")
    n, d = c.numer, c.denom
    if len(n) != 1 or len(d) != 1:
        raise TermSyntaxError(f"qpoch base {c} is not of the form c0*q^m")
    m = n.LM[0] - d.LM[0]
    return QPoch(Fraction(int(n.LC), int(d.LC)), m, L)


# --------------------------------------------------------------------------
# parsing


class _TermParser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def at_op(self, ops):
        t = self.peek()
        return t[0] == "op" and t[1] in ops

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None, cls=TermSyntaxError):
        tok = tok or self.peek()
        raise cls(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected '{op}'", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty term")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return node

    def expr(self):
        start = self.peek()
        node = self.product()
        while self.at_op("+-"):
            op = self.take()
            rhs = self.product()
            if not (isinstance(node, _RATIONAL) and isinstance(rhs, _RATIONAL)):
                self.error("'+' and '-' only combine rational subterms", op if isinstance(node, _RATIONAL) else start)
            v = node.value + rhs.value if op[1] == "+" else node.value - rhs.value
            node = rational(v)
        return node

    def product(self):
        node = self.unary()
        while self.at_op("*/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                node = _mul(node, rhs)
            else:
                if isinstance(rhs, _RATIONAL) and not rhs.value:
                    self.error("division by zero", op)
                node = _div(node, rhs)
        return node

    def unary(self):
        if self.at_op("-"):
            self.take()
            node = self.unary()
            if isinstance(node, _RATIONAL):
                return rational(-node.value)
            return Mul(Const(-FF.one), node)
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.at_op("^"):
            return base
        self.take()
        sign = 1
        if self.at_op("-"):
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "int":
            self.error("exponent must be an integer", t, NonIntegerExponent)
        if self.at_op("."):
            self.error("exponent must be an integer", self.peek(), NonIntegerExponent)
        e = sign * t[1]
        if isinstance(base, _RATIONAL):
            if e < 0 and not base.value:
                self.error("zero to a negative power", t)
            return rational(base.value**e)
        return IntPow(base, e)

    def atom(self):
        t = self.take()
        kind, val = t[0], t[1]
        if kind == "int":
            return Const(FF(val))
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind != "name":
            self.error("unexpected token", t)
        if val == "q":
            return Const(Q)
        if val == "qn":
            return RatPoly(X)
        if val == "qk":
            return RatPoly(Y)
        if val in ("qpow", "qfac"):
            self.expect("(")
            L = self.lin()
            self.expect(")")
            return QPow(L) if val == "qpow" else qpoch(Q, L)
        if val == "qpoch":
            self.expect("(")
            c = self.expr()
            if not isinstance(c, Const):
                self.error("qpoch base must be a constant", t)
            self.expect(";")
            L = self.lin()
            self.expect(")")
            try:
                return qpoch(c.value, L)
            except TermSyntaxError as exc:
                self.error(str(exc), t)
        self.error(f"unknown name '{val}'", t)

    # linear forms in n, k

    def lin(self):
        v = self.lin_product()
        while self.at_op("+-"):
            op = self.take()[1]
            w = self.lin_product()
            v = v + (w if op == "+" else w.scale(-1))
        return v

    def lin_product(self):
        if self.at_op("-"):
            self.take()
            return self.lin_product().scale(-1)
        if self.at_op("+"):
            self.take()
            return self.lin_product()
        v = self.lin_atom()
        while self.at_op("*"):
            op = self.take()
            w = self.lin_atom()
            if v.is_const():
                v = w.scale(v.c)
            elif w.is_const():
                v = v.scale(w.c)
            else:
                self.error("exponent is not linear in n and k", op)
        return v

    def lin_atom(self):
        t = self.take()
        if t[0] == "int":
            return LinForm(0, 0, t[1])
        if t[0] == "name" and t[1] == "n":
            return LinForm(1, 0, 0)
        if t[0] == "name" and t[1] == "k":
            return LinForm(0, 1, 0)
        if t[0] == "op" and t[1] == "(":
            v = self.lin()
            self.expect(")")
            return v
        if t[0] == "op" and t[1] == "-":
            return self.lin_atom().scale(-1)
        self.error("expected an integer-linear expression in n and k", t)


def _mul(a, b):
    if isinstance(a, _RATIONAL) and isinstance(b, _RATIONAL):
        return rational(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if isinstance(a, _RATIONAL) and isinstance(b, _RATIONAL):
        return rational(a.value / b.value)
    return Div(a, b)


def parse(text):
    """Parse a term; raises :class:`TermSyntaxError` with the offending position."""
    return _TermParser(text).parse()


# --------------------------------------------------------------------------
# printing


def _const_text(v):
    n, d = v.numer, v.denom
    if d == 1 and (not n or (len(n) == 1 and n.LC == 1) or (n.is_ground and n.LC > 0)):
        # a single token or a power of q
        return ratfun_text(v, TERM_NAMES)
    return f"({ratfun_text(v, TERM_NAMES)})"


def to_text(t):
    """Text that parses back to the same tree."""
    if isinstance(t, Const):
        return _const_text(t.value)
    if isinstance(t, RatPoly):
        return f"({ratfun_text(t.value, TERM_NAMES)})"
    if isinstance(t, QPow):
        return f"qpow({t.L})"
    if isinstance(t, QPoch):
        return f"qpoch({_const_text(t.base)};{t.L})"
    if isinstance(t, IntPow):
        inner = to_text(t.base)
        if isinstance(t.base, (Mul, Div, IntPow)):
            inner = f"({inner})"
        return f"{inner}^{t.e}"
    if isinstance(t, (Mul, Div)):
        rhs = to_text(t.right)
        if isinstance(t.right, (Mul, Div)):
            rhs = f"({rhs})"
        return f"{to_text(t.left)}{'*' if isinstance(t, Mul) else '/'}{rhs}"
    raise TypeError(f"not a term node: {t!r}")


# --------------------------------------------------------------------------
# shift quotients


@dataclass(frozen=True)
class ShiftQuotients:
    R1: object
    R2: object


def _poch_step(node, direction):
    """Factors ``[(frac, exponent)]`` of QPoch(L + step)/QPoch(L)."""
    beta = node.L.step(direction)
    if beta == 0:
        return []
    # q^L = q^c x^a y^b
    mono = Q**node.L.c * X**node.L.a * Y**node.L.b
    c = node.base
    rng, e = (range(beta), 1) if beta > 0 else (range(beta, 0), -1)
    return [(1 - c * Q**i * mono, e) for i in rng]


def quotient_factors(t, direction):
    """``T(shifted)/T`` as a list of ``(rational function, integer exponent)``."""
    if isinstance(t, Const):
        return []
    if isinstance(t, RatPoly):
        var = "x" if direction == "n" else "y"
        f = t.value
        return [(frac(qshift(f.numer, var, 1)), 1), (frac(f.numer), -1),
                (frac(f.denom), 1), (frac(qshift(f.denom, var, 1)), -1)]
    if isinstance(t, QPow):
        return [(Q ** t.L.step(direction), 1)]
    if isinstance(t, QPoch):
        return _poch_step(t, direction)
    if isinstance(t, Mul):
        return quotient_factors(t.left, direction) + quotient_factors(t.right, direction)
    if isinstance(t, Div):
        return quotient_factors(t.left, direction) + [
            (f, -e) for f, e in quotient_factors(t.right, direction)]
    if isinstance(t, IntPow):
        return [(f, e * t.e) for f, e in quotient_factors(t.base, direction)]
    raise TypeError(f"not a term node: {t!r}")


def _product(factors):
    out = FF.one
    for f, e in factors:
        out *= f**e
    return out


def shift_quotient(t, direction):
    """``T(n+1, k)/T(n, k)`` (direction ``"n"``) or ``T(n, k+1)/T(n, k)`` (``"k"``)."""
    if direction not in ("n", "k"):
        raise ValueError("direction must be 'n' or 'k'")
    return _product(quotient_factors(t, direction))


def shift_quotients(t):
    return ShiftQuotients(shift_quotient(t, "n"), shift_quotient(t, "k"))


# --------------------------------------------------------------------------
# evaluation


def _eval(t, n, k, qv):
    """Value at (n, k); ``qv`` is a Fraction or the symbol ``Q`` (then exact in Q(q))."""
    symbolic = not isinstance(qv, Fraction)
    if isinstance(t, Const):
        return t.value if symbolic else evaluate(t.value, {"q": qv})
    if isinstance(t, RatPoly):
        if symbolic:
            return frac(eval_at_qpower(eval_at_qpower(t.value, "x", n), "y", k))
        return evaluate(t.value, {"q": qv, "x": qv**n, "y": qv**k})
    if isinstance(t, QPow):
        return qv ** t.L.at(n, k)
    if isinstance(t, QPoch):
        L = t.L.at(n, k)
        c = t.base if symbolic else evaluate(t.base, {"q": qv})
        if L >= 0:
            val = qv**0
            for j in range(L):
                val *= 1 - c * qv**j
            return val
        den = qv**0
        for j in range(L, 0):
            den *= 1 - c * qv**j
        if not den:
            raise PoleAtPoint(f"q-Pochhammer with negative length has a pole at n={n}, k={k}")
        return 1 / den
    if isinstance(t, Mul):
        return _eval(t.left, n, k, qv) * _eval(t.right, n, k, qv)
    if isinstance(t, Div):
        den = _eval(t.right, n, k, qv)
        if not den:
            raise PoleAtPoint(f"division by zero at n={n}, k={k}")
        return _eval(t.left, n, k, qv) / den
    if isinstance(t, IntPow):
        b = _eval(t.base, n, k, qv)
        if t.e < 0 and not b:
            raise PoleAtPoint(f"zero to a negative power at n={n}, k={k}")
        return b**t.e
    raise TypeError(f"not a term node: {t!r}")


def eval_term(t, n, k, q_value):
    """Exact rational value of ``T(n, k)`` at a rational ``q``."""
    qv = Fraction(q_value)
    if qv in (0, 1, -1):
        raise BadQValue(f"q = {qv} is not allowed")
    try:
        return _eval(t, n, k, qv)
    except DivisionByZero as exc:
        raise PoleAtPoint(str(exc)) from None


def eval_symbolic(t, n, k):
    """``T(n, k)`` as an exact element of Q(q)."""
    try:
        return _eval(t, n, k, Q)
    except DivisionByZero as exc:
        raise PoleAtPoint(str(exc)) from None


# --------------------------------------------------------------------------
# domain validation

SAMPLE_RANGE = 13


def _solve_nonneg(alpha, beta, t):
    """Some ``(n, k)`` with ``n, k >= 0`` and ``alpha*n + beta*k == t``, or None."""
    if alpha == 0 and beta == 0:
        return (0, 0) if t == 0 else None
    if beta == 0:
        return (t // alpha, 0) if t % alpha == 0 and t // alpha >= 0 else None
    if alpha == 0:
        return (0, t // beta) if t % beta == 0 and t // beta >= 0 else None
    if alpha < 0:
        alpha, beta, t = -alpha, -beta, -t
    if beta > 0:
        for n in range(0, t // alpha + 1) if t >= 0 else ():
            if (t - alpha * n) % beta == 0:
                return n, (t - alpha * n) // beta
        return None
    # alpha > 0 > beta: any integer solution can be moved into the positive quadrant
    g = gcd(alpha, -beta)
    if t % g:
        return None
    for n in range(0, max(0, t // alpha + 1) + (-beta) // g + 1):
        if (t - alpha * n) % beta == 0:
            k = (t - alpha * n) // beta
            if k >= 0:
                return n, k
    raise AssertionError("unreachable")


def _binomial_zero(p):
    """Exact answer for two-term polynomials; ``(True, point)``, ``(False, None)`` or None."""
    terms = list(p.iterterms())
    if len(terms) != 2:
        return None
    (m1, c1), (m2, c2) = terms
    if c1 != -c2:
        return False, None
    pt = _solve_nonneg(m1[1] - m2[1], m1[2] - m2[2], m2[0] - m1[0])
    return (pt is not None), pt


def _sampled_zero(p):
    for n in range(SAMPLE_RANGE):
        pn = eval_at_qpower(p, "x", n)
        for k in range(SAMPLE_RANGE):
            if not frac(eval_at_qpower(pn, "y", k)):
                return n, k
    return None


def _candidate_factors(factors, R):
    """Pieces of the reduced numerator and denominator of ``R`` cut out by the structural factors."""
    R = frac(R)
    seen = []
    for f, _ in factors:
        f = frac(f)
        for p in (f.numer, f.denom):
            if len(p) <= 1:
                continue
            for whole in (R.numer, R.denom):
                g = p.gcd(whole)
                if len(g) <= 1:
                    continue
                g = g if g.LC > 0 else -g
                if g not in seen:
                    seen.append(g)
    return seen


def validate_domain(t):
    """Warnings about zeros or poles of the shift quotients at points (q^n, q^k), n, k >= 0.

    Two-term factors are decided exactly; other factors are checked exactly at
    every n, k in [0, 12].  A nonempty list means the term violates the
    standing assumptions.
    """
    warnings = []
    try:
        v0 = eval_symbolic(t, 0, 0)
        if not v0:
            warnings.append("term vanishes at n=0, k=0")
    except PoleAtPoint:
        warnings.append("term has a pole at n=0, k=0")
    for direction, label in (("n", "R1"), ("k", "R2")):
        factors = quotient_factors(t, direction)
        for p in _candidate_factors(factors, _product(factors)):
            exact = _binomial_zero(p)
            if exact is not None:
                hit, pt = exact
                how = "exactly"
            else:
                pt = _sampled_zero(p)
                hit, how = pt is not None, "by sampling"
            if hit:
                text = ratfun_text(frac(p), ("q", "x", "y"))
                warnings.append(
                    f"factor {text} of {label} vanishes at n={pt[0]}, k={pt[1]} (found {how})")
    return warnings


__all__ = [
    "Const", "Div", "IntPow", "LinForm", "Mul", "QPoch", "QPow", "RatPoly",
    "ShiftQuotients", "eval_symbolic", "eval_term", "parse", "qpoch", "quotient_factors",
    "rational", "shift_quotient", "shift_quotients", "to_text", "validate_domain",
]
