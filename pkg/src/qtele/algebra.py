"""Exact arithmetic in the tower Q < Q(q) < Q(q)(x) and in Q(q)(x)[y].

Every value lives in one sparse polynomial ring ``ZZ[q, x, y]`` (``PR``) or its
fraction field (``FF``), both provided by sympy.  The tower levels are views on
these objects rather than separate types:

* a ``Q(q)`` element is a fraction free of ``x`` and ``y``;
* a polynomial in a *main variable* ``var`` over the ground field generated by
  the other symbols is a fraction whose denominator is free of ``var``;
* a rational function is any fraction.

Polynomials over a ground field are only defined up to units of that field.
Helpers that work "up to units" return a canonical representative: the
primitive part over ``ZZ[other symbols]`` with a positive leading coefficient
(see :func:`normal`).  Exact identities are always checked on fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from sympy import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, ring
from sympy.polys.fields import FracElement

from .errors import (
    DenominatorMismatch,
    DivisionByZero,
    NotCoprime,
    NotDivisible,
    ZeroInput,
)

PR, q, x, y = ring("q,x,y", ZZ)
FF = PR.to_field()

VARS = ("q", "x", "y")
_INDEX = {name: i for i, name in enumerate(VARS)}

Q = FF(q)
X = FF(x)
Y = FF(y)


def var_index(var):
    try:
        return _INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}") from None


def _main_indices(var):
    if isinstance(var, str):
        return (var_index(var),)
    return tuple(var_index(v) for v in var)


# --------------------------------------------------------------------------
# coercion


def frac(f):
    """Coerce an int, Fraction, polynomial or fraction to an element of ``FF``."""
    if isinstance(f, FracElement):
        return f
    if isinstance(f, PolyElement):
        return FF.new(f)
    if hasattr(f, "numerator") and hasattr(f, "denominator"):
        return FF.new(PR(int(f.numerator)), PR(int(f.denominator)))
    return FF(f)


def numer(f):
    return frac(f).numer


def denom(f):
    return frac(f).denom


def as_poly(f):
    """Return ``f`` as a ring element; fails unless it has integer coefficients."""
    if isinstance(f, PolyElement):
        return f
    f = frac(f)
    if f.denom == 1:
        return f.numer
    if f.denom == -1:
        return -f.numer
    raise DenominatorMismatch(f"{f} is not a polynomial with integer coefficients")


def free_of(f, var):
    """True iff ``f`` does not involve any of the variables ``var``."""
    idx = _main_indices(var)
    f = frac(f)
    return all(
        all(m[i] == 0 for i in idx) for p in (f.numer, f.denom) for m in p.itermonoms()
    )


def is_poly_in(f, var):
    """True iff ``f`` is a polynomial in ``var`` over the ground field."""
    return free_of(denom(f), var)


# --------------------------------------------------------------------------
# degrees and coefficients


def degree(f, var):
    """Degree in ``var``; ``-inf`` for the zero polynomial."""
    f = numer(f) if isinstance(f, FracElement) else f
    if not f:
        return -math.inf
    i = var_index(var)
    return max(m[i] for m in f.itermonoms())


def low_degree(f, var):
    f = numer(f) if isinstance(f, FracElement) else f
    if not f:
        return math.inf
    i = var_index(var)
    return min(m[i] for m in f.itermonoms())


def coeffs_in(f, var):
    """Split a ring element by powers of ``var``: ``{j: coefficient polynomial}``."""
    i = var_index(var)
    out = {}
    for m, c in f.iterterms():
        j = m[i]
        m2 = m[:i] + (0,) + m[i + 1:]
        out.setdefault(j, {})[m2] = c
    return {j: PR.from_dict(d) for j, d in out.items()}


def frac_coeffs_in(f, var):
    """Coefficients of a polynomial-in-``var`` fraction, as ground-field fractions."""
    f = frac(f)
    if not is_poly_in(f, var):
        raise DenominatorMismatch(f"{f} is not a polynomial in {var}")
    d = f.denom
    return {j: FF.new(c, d) for j, c in coeffs_in(f.numer, var).items()}


def content(f, var):
    """Gcd of the coefficients of ``f`` viewed as a polynomial in ``var``.

    ``var`` may be a single name or a tuple of names (multivariate content).
    """
    idx = _main_indices(var)
    groups = {}
    for m, c in f.iterterms():
        key = tuple(m[i] for i in idx)
        m2 = tuple(0 if i in idx else e for i, e in enumerate(m))
        groups.setdefault(key, {})[m2] = c
    polys = [PR.from_dict(d) for d in groups.values()]
    if not polys:
        return PR.zero
    return reduce(lambda a, b: a.gcd(b), polys)


def normal(f, var):
    """Canonical associate of ``f`` in K[var], K the field of the other symbols.

    The primitive part over ``ZZ[other symbols]``, sign fixed so that the
    leading coefficient in the ring order is positive.  Accepts fractions whose
    denominator is free of ``var``.
    """
    if isinstance(f, FracElement):
        if not is_poly_in(f, var):
            raise DenominatorMismatch(f"{f} is not a polynomial in {var}")
        f = f.numer
    if not f:
        return PR.zero
    c = content(f, var)
    g = f.exquo(c) if c != 1 else f
    if g.LC < 0:
        g = -g
    return g


def is_unit(f, var):
    """True iff ``f`` is a nonzero constant of the ground field (degree 0 in var)."""
    return bool(numer(f)) and free_of(f, var)


def strip_var_power(f, var):
    """Return ``(k, g)`` with ``f = var**k * g`` and ``var`` not dividing ``g``."""
    if isinstance(f, FracElement):
        f = f.numer
    if not f:
        raise ZeroInput("cannot strip variable powers from zero")
    i = var_index(var)
    k = min(m[i] for m in f.itermonoms())
    if k == 0:
        return 0, f
    mono = tuple(k if j == i else 0 for j in range(3))
    return k, f.quo_term((mono, ZZ.one))


# --------------------------------------------------------------------------
# field arithmetic on tower elements


def field_arith(op, e1, e2=None):
    """Exact field operation on tower elements; results are canonical fractions."""
    a = frac(e1)
    b = frac(e2) if e2 is not None else None
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


def qpower_of(e):
    """Return ``m`` if ``e == q**m`` exactly, otherwise ``None``."""
    e = frac(e)
    if not e:
        raise ZeroInput("qpower_of(0)")
    if not free_of(e, ("x", "y")):
        raise ValueError(f"{e} is not an element of Q(q)")
    n, d = e.numer, e.denom
    if not (n.is_monomial and d.is_monomial and n.LC == d.LC):
        return None
    return n.LM[0] - d.LM[0]


def qdegree(p):
    """Highest power of q in a ring element (``-inf`` for zero)."""
    if not p:
        return -math.inf
    return max(m[0] for m in p.itermonoms())


def qvaluation(p):
    if not p:
        return math.inf
    return min(m[0] for m in p.itermonoms())


# --------------------------------------------------------------------------
# substitutions


def dilate(f, shifts):
    """Substitute ``v -> q**h * v`` for each ``v: h`` in ``shifts`` on a ring element.

    Returns ``(g, m)`` with ``f(q^h v) == g * q**(-m)``, ``g`` a ring element
    and ``m >= 0`` minimal.
    """
    idx = [(var_index(v), h) for v, h in shifts.items() if h]
    if not idx or not f:
        return f, 0
    terms = []
    for mon, c in f.iterterms():
        e = mon[0] + sum(h * mon[i] for i, h in idx)
        terms.append((e, mon, c))
    m = max(0, -min(t[0] for t in terms))
    return PR.from_dict({(e + m,) + mon[1:]: c for e, mon, c in terms}), m


def qsubs(f, shifts):
    """Exact ``f(q^h v)``; a ring element stays one whenever the result allows it."""
    if isinstance(f, FracElement):
        n, mn = dilate(f.numer, shifts)
        d, md = dilate(f.denom, shifts)
        if mn > md:
            d = d * q ** (mn - md)
        elif md > mn:
            n = n * q ** (md - mn)
        return FF.new(n, d)
    if not isinstance(f, PolyElement):
        return f
    g, m = dilate(f, shifts)
    if m == 0:
        return g
    return FF.new(g, q**m)


def eval_at_qpower(f, var, n):
    """Exact value of ``f`` at ``var = q**n``."""
    if isinstance(f, FracElement):
        num = eval_at_qpower(f.numer, var, n)
        den = eval_at_qpower(f.denom, var, n)
        if not den:
            raise DivisionByZero(f"denominator vanishes at {var} = q^{n}")
        return frac(num) / frac(den)
    i = var_index(var)
    terms = {}
    for mon, c in f.iterterms():
        e = mon[0] + n * mon[i]
        key = (e,) + tuple(0 if j == i else mon[j] for j in (1, 2))
        terms[key] = terms.get(key, 0) + c
    low = min((k[0] for k in terms), default=0)
    shift = max(0, -low)
    g = PR.from_dict({(k[0] + shift,) + k[1:]: c for k, c in terms.items() if c})
    if shift == 0:
        return g
    return FF.new(g, q**shift)


def _eval_ring(p, vals):
    total = Fraction(0)
    for mon, c in p.iterterms():
        t = Fraction(int(c))
        for e, v in zip(mon, vals):
            if e:
                t *= v**e
        total += t
    return total


def evaluate(f, values):
    """Numeric value of ``f`` at ``{name: rational}``; every occurring symbol needs a value."""
    vals = []
    for name in VARS:
        v = values.get(name)
        vals.append(None if v is None else Fraction(v))
    f = frac(f)
    for p in (f.numer, f.denom):
        for mon in p.itermonoms():
            if any(e and v is None for e, v in zip(mon, vals)):
                raise ValueError(f"no value given for a symbol of {f}")
    den = _eval_ring(f.denom, vals)
    if not den:
        raise DivisionByZero(f"denominator of {f} vanishes at {values}")
    return _eval_ring(f.numer, vals) / den


# --------------------------------------------------------------------------
# gcd, division, resultant


def poly_gcd(f, g, var):
    """Canonical gcd in K[var]: ``poly_gcd(f, 0) = normal(f)``; ``gcd(0, 0) = 0``."""
    f = numer(f) if isinstance(f, FracElement) else f
    g = numer(g) if isinstance(g, FracElement) else g
    if not f and not g:
        return PR.zero
    return normal(f.gcd(g), var)


def exquo(f, g):
    """Exact quotient of ring elements; raises :class:`NotDivisible`."""
    if not g:
        raise DivisionByZero("exact division by zero")
    try:
        return f.exquo(g)
    except ExactQuotientFailed:
        raise NotDivisible(f"{g} does not divide {f}") from None


def divides(g, f):
    try:
        exquo(f, g)
        return True
    except NotDivisible:
        return False


def poly_quo(f, g, var):
    """Quotient in K[var] of normalized representatives, up to a unit."""
    return normal(exquo(normal(f, var), normal(g, var)), var)


_RES_RINGS = {}


def _reordered_ring(var, extra=()):
    key = (var, extra)
    if key not in _RES_RINGS:
        names = (var,) + tuple(extra) + tuple(v for v in VARS if v != var)
        _RES_RINGS[key] = ring(",".join(names), ZZ)[0]
    return _RES_RINGS[key]


def poly_resultant(f, g, var):
    """Resultant with respect to ``var`` (Sylvester determinant, rows of ``f`` first)."""
    f = numer(f) if isinstance(f, FracElement) else f
    g = numer(g) if isinstance(g, FracElement) else g
    if not f or not g:
        raise ZeroInput("resultant of a zero polynomial")
    R = _reordered_ring(var)
    res = R.dmp_resultant(f.set_ring(R), g.set_ring(R))
    return res.set_ring(PR)


def scaled_resultant_coeffs(u, v, var):
    """Coefficients ``{i: n_i}`` of ``N(z) = Res_var(u(var), v(z*var))``.

    Each ``n_i`` is a ring element free of ``var``.
    """
    R = _reordered_ring(var, ("z",))
    gv, gz = R.gens[0], R.gens[1]
    N = R.dmp_resultant(u.set_ring(R), v.set_ring(R).compose(gv, gz * gv))
    names = [str(s) for s in N.ring.symbols]
    iz = names.index("z")
    pos = [names.index(v) if v in names else None for v in VARS]
    out = {}
    for mon, c in N.iterterms():
        key = tuple(0 if p is None else mon[p] for p in pos)
        out.setdefault(mon[iz], {})[key] = c
    return {i: PR.from_dict(d) for i, d in out.items()}


# --------------------------------------------------------------------------
# univariate view over the ground field, for extended Euclid


_UNI = {}


def _uni_ring(var):
    if var not in _UNI:
        others = [v for v in VARS if v != var]
        K = ZZ.frac_field(*[PR.symbols[var_index(v)] for v in others])
        Ku, _ = ring(var, K)
        _UNI[var] = (K, Ku, others)
    return _UNI[var]


def to_univariate(f, var):
    K, Ku, others = _uni_ring(var)
    f = frac(f)
    if not is_poly_in(f, var):
        raise DenominatorMismatch(f"{f} is not a polynomial in {var}")
    kf = K.field
    kr = kf.ring
    oi = [var_index(v) for v in others]
    den = kr.from_dict({tuple(m[i] for i in oi): c for m, c in f.denom.iterterms()})
    out = {}
    for j, c in coeffs_in(f.numer, var).items():
        num = kr.from_dict({tuple(m[i] for i in oi): cc for m, cc in c.iterterms()})
        out[(j,)] = kf.new(num, den)
    return Ku.from_dict(out)


def from_univariate(g, var):
    K, Ku, others = _uni_ring(var)
    i = var_index(var)
    oi = [var_index(v) for v in others]
    result = FF.zero
    for (j,), c in g.iterterms():
        def lift(p):
            d = {}
            for m, cc in p.iterterms():
                mon = [0, 0, 0]
                for pos, e in zip(oi, m):
                    mon[pos] = e
                mon[i] = 0
                d[tuple(mon)] = cc
            return PR.from_dict(d)

        mono = [0, 0, 0]
        mono[i] = j
        result += FF.new(lift(c.numer) * PR({tuple(mono): 1}), lift(c.denom))
    return result


def partial_split(U, s_t, u_t, var):
    """Write ``U = a/u_t + b/s_t`` with ``a, b`` in K[var] and ``deg b < deg s_t``.

    Any polynomial part of ``U`` is absorbed by the ``a/u_t`` summand.
    Returns ``(a, b)`` as fractions (polynomials in ``var`` over K).
    """
    U = frac(U)
    if not U:
        return FF.zero, FF.zero
    if degree(poly_gcd(s_t, u_t, var), var) > 0:
        raise NotCoprime("s_t and u_t share a factor")
    P = U * frac(s_t) * frac(u_t)
    if not is_poly_in(P, var):
        raise DenominatorMismatch("denominator of U does not divide s_t * u_t")
    Pu = to_univariate(P, var)
    Su = to_univariate(s_t, var)
    Uu = to_univariate(u_t, var)
    sig, tau, g = Su.gcdex(Uu)
    # g is a ground-field unit; normalize to 1
    lc = g.LC
    tau = tau.quo_ground(lc)
    b = (Pu * tau).rem(Su)
    a = (Pu - b * Uu).exquo(Su)
    a, b = from_univariate(a, var), from_univariate(b, var)
    if a / frac(u_t) + b / frac(s_t) != U:
        raise DenominatorMismatch("partial fraction recombination failed")
    return a, b
