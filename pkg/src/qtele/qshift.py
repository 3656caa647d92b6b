"""q-shift operators, q-dispersion and the epsilon-reduced / epsilon-free predicates.

All functions take the main variable as a parameter; the remaining symbols
form the ground field.  With ``var="y"`` the ground field is Q(q)(x), which is
the setting of the bivariate pipeline; polynomials that do not mention ``x``
are then simply polynomials over Q(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    PR,
    VARS,
    coeffs_in,
    degree,
    free_of,
    var_index,
    numer,
    poly_gcd,
    qdegree,
    qsubs,
    qvaluation,
    scaled_resultant_coeffs,
    strip_var_power,
    normal,
)
from .errors import ZeroInput


@dataclass(frozen=True)
class ShiftSpec:
    """The substitution ``var -> q**h * var``."""

    var: str
    h: int


def qshift(f, var, h=1):
    """Return ``f(q**h * var)``.

    Rational functions are shifted exactly.  A polynomial is shifted exactly
    whenever the result is again a polynomial (always the case for ``h >= 0``);
    otherwise the exact result is returned as a fraction.
    """
    if isinstance(var, ShiftSpec):
        var, h = var.var, var.h
    return qsubs(f, {var: h})


def _core(f, var):
    """Normalized polynomial with all powers of ``var`` removed."""
    f = numer(f)
    if not f:
        raise ZeroInput("q-dispersion of the zero polynomial")
    return normal(strip_var_power(f, var)[1], var)


def _balanced(values, pick):
    """Integers h for which ``pick_i(values[i] + h*i)`` is attained at least twice.

    ``pick`` is ``max`` or ``min``.
    """
    items = sorted(values.items())
    hs = set()
    for a in range(len(items)):
        i, di = items[a]
        for j, dj in items[a + 1:]:
            if (di - dj) % (j - i) == 0:
                hs.add((di - dj) // (j - i))
    out = set()
    for h in hs:
        vals = [d + h * i for i, d in items]
        if vals.count(pick(vals)) >= 2:
            out.add(h)
    return out


def _specialize_ground(u, v, var):
    """Replace the non-q ground symbol by an integer that keeps the shape in ``var``.

    Leading and trailing coefficients in ``var`` must stay nonzero, so the
    specialized resultant is the specialization of the generic one.
    """
    other = next(w for w in VARS if w not in ("q", var))
    if free_of(u, other) and free_of(v, other):
        return u, v
    gen = PR.gens[var_index(other)]
    for w0 in (3, 5, 7, 11, 13, 17, 19, 23):
        us, vs = u.subs(gen, w0), v.subs(gen, w0)
        if all(_ends(a, var) == _ends(b, var) for a, b in ((u, us), (v, vs))):
            return us, vs
    return u, v


def _ends(f, var):
    c = coeffs_in(f, var)
    return (max(c), min(c)) if c else None


def _root_valuations(f, var, at_infinity=False):
    """Valuations of the roots of ``f`` in ``var`` at ``q = 0`` (or ``q = oo``).

    They are the slopes of the lower Newton polygon of the points
    ``(i, ord_q c_i)``, where ``ord_q`` is the lowest power of q in the
    coefficient ``c_i`` (or minus the highest power, at infinity).
    """
    pts = sorted(
        (i, -qdegree(c) if at_infinity else qvaluation(c)) for i, c in coeffs_in(f, var).items()
    )
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return {Fraction(-(b[1] - a[1]), b[0] - a[0]) for a, b in zip(hull, hull[1:])}


def _integer_gaps(left, right):
    return {int(d) for d in (b - a for a in left for b in right) if d.denominator == 1}


def qdis_candidates(u, v, var):
    """A finite superset of the integers h with ``gcd(u, v(q^h var))`` nontrivial.

    A common root ``alpha`` of ``u`` and ``v(q^h var)`` makes ``q^h alpha`` a
    root of ``v``, so h is the difference of a root valuation of ``v`` and one
    of ``u``, both at ``q = 0`` and (with opposite sign) at ``q = oo``.
    Powers of ``var`` are removed first.
    """
    u, v = _core(u, var), _core(v, var)
    if degree(u, var) <= 0 or degree(v, var) <= 0:
        return set()
    at_zero = _integer_gaps(_root_valuations(u, var), _root_valuations(v, var))
    at_inf = _integer_gaps(_root_valuations(v, var, True), _root_valuations(u, var, True))
    return at_zero & at_inf


def qdis_candidates_resultant(u, v, var):
    """Same contract as :func:`qdis_candidates`, read off a resultant instead.

    Works on ``N(z) = Res_var(u(var), v(z*var))``: if ``N(q^h)`` vanishes,
    both the highest and the lowest power of q in ``sum_i n_i q^(h*i)`` must
    cancel, so h balances the q-degrees of at least two coefficients at the
    top and at the bottom.  The remaining ground symbol is specialized to an
    integer when that is safe.  Much slower; kept as an independent check.
    """
    u, v = _core(u, var), _core(v, var)
    if degree(u, var) <= 0 or degree(v, var) <= 0:
        return set()
    coeffs = None
    us, vs = _specialize_ground(u, v, var)
    if (us, vs) != (u, v):
        coeffs = {i: n for i, n in scaled_resultant_coeffs(us, vs, var).items() if n}
        if len(coeffs) < 2:
            coeffs = None
    if coeffs is None:
        coeffs = {i: n for i, n in scaled_resultant_coeffs(u, v, var).items() if n}
    if len(coeffs) < 2:
        return set()
    top = _balanced({i: qdegree(n) for i, n in coeffs.items()}, max)
    bottom = _balanced({i: qvaluation(n) for i, n in coeffs.items()}, min)
    return top & bottom


def qdis(u, v, var):
    """Largest ``h >= 0`` such that ``u`` and ``v(q^h var)`` share a factor other than ``var``.

    Returns -1 when there is none.
    """
    uc, vc = _core(u, var), _core(v, var)
    for h in sorted((h for h in qdis_candidates(uc, vc, var) if h >= 0), reverse=True):
        if degree(poly_gcd(uc, qshift(vc, var, h), var), var) > 0:
            return h
    return -1


def shift_matches(u, v, var):
    """All ``h`` in Z (not only h >= 0) with ``gcd(u, v(q^h var))`` nontrivial."""
    uc, vc = _core(u, var), _core(v, var)
    return sorted(
        h
        for h in qdis_candidates(uc, vc, var)
        if degree(poly_gcd(uc, qshift(vc, var, h), var), var) > 0
    )


def _var_divides(f, var):
    return strip_var_power(numer(f), var)[0] > 0


def is_eps_reduced(r, s, var):
    """True iff ``r`` is coprime to every q-shift ``s(q^h var)``, h in Z."""
    if not numer(r) or not numer(s):
        raise ZeroInput("is_eps_reduced needs nonzero polynomials")
    if _var_divides(r, var) and _var_divides(s, var):
        return False
    return qdis(r, s, var) == -1 and qdis(s, r, var) == -1


def is_eps_free(v, var):
    """True iff no positive q-shift of ``v`` shares a factor (other than ``var``) with ``v``."""
    return qdis(v, v, var) <= 0
