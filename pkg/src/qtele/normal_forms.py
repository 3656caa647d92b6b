"""q-Gosper forms and q-rational normal forms of rational functions.

A q-Gosper form of ``R`` is ``R = z * a/b * c(q var)/c(var)`` with

* ``gcd(a(var), b(q^n var)) = 1`` for every ``n >= 0``,
* ``gcd(a, c) = gcd(b, c(q var)) = 1`` and ``c(0) != 0``.

A q-rational normal form is ``R = unit * r/s * E(u/v)/(u/v)`` where ``E`` is the
q-shift, ``r/s`` is epsilon-reduced, ``gcd(u, v) = 1`` and neither ``u`` nor
``v`` is divisible by ``var``.  Polynomials are stored as canonical associates
(:func:`qtele.algebra.normal`); the ground-field factor lives in ``z`` resp.
``unit`` so that the defining identities hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    FF,
    PR,
    degree,
    exquo,
    frac,
    free_of,
    normal,
    poly_gcd,
    strip_var_power,
)
from .errors import InternalCheckFailure, ZeroInput
from .qshift import is_eps_reduced, qdis_candidates, qshift


@dataclass(frozen=True)
class QGosperForm:
    z: object
    a: object
    b: object
    c: object
    var: str = "y"

    def ratio(self):
        c = frac(self.c)
        return self.z * frac(self.a) / frac(self.b) * frac(qshift(c, self.var, 1)) / c


@dataclass(frozen=True)
class QRNF:
    r: object
    s: object
    u: object
    v: object
    unit: object
    var: str = "y"

    def ratio(self):
        if not self.r:
            return FF.zero
        uv = frac(self.u) / frac(self.v)
        return self.unit * frac(self.r) / frac(self.s) * qshift(uv, self.var, 1) / uv

    def as_tuple(self):
        return self.r, self.s, self.u, self.v


def _nontrivial(g, var):
    return degree(g, var) > 0


def _shift_norm(f, var, h):
    return normal(qshift(f, var, h), var)


def qgosper_form(R, var="y", check=True):
    """Compute a q-Gosper form of a nonzero rational function ``R``.

    Shift matches ``h >= 0`` between the numerator and the denominator are
    removed in increasing order of ``h``; each common factor ``g`` migrates
    into ``c`` as ``g(q^-1 var) ... g(q^-h var)``.  Taking small shifts first
    is what keeps ``c`` coprime to ``a`` and ``c(q var)`` coprime to ``b``.
    """
    R = frac(R)
    if not R:
        raise ZeroInput("q-Gosper form of zero")
    a = normal(R.numer, var)
    b = normal(R.denom, var)
    c = PR.one
    while True:
        progressed = False
        for h in sorted(h for h in qdis_candidates(a, b, var) if h >= 0):
            g = poly_gcd(a, qshift(b, var, h), var)
            if not _nontrivial(g, var):
                continue
            a = exquo(a, g)
            b = exquo(b, _shift_norm(g, var, -h))
            for j in range(1, h + 1):
                c = c * _shift_norm(g, var, -j)
            progressed = True
        if not progressed or degree(a, var) <= 0 or degree(b, var) <= 0:
            break
    c = normal(c, var)
    cf = frac(c)
    z = R / (frac(a) / frac(b) * frac(qshift(cf, var, 1)) / cf)
    form = QGosperForm(z, a, b, c, var)
    if check:
        check_qgosper_form(R, form)
    return form


def check_qgosper_form(R, form, extra_shifts=range(11)):
    """Raise :class:`InternalCheckFailure` unless every q-Gosper condition holds."""
    var = form.var
    a, b, c = form.a, form.b, form.c
    if not free_of(form.z, var) or not form.z:
        raise InternalCheckFailure(f"z = {form.z} is not a nonzero constant")
    if form.ratio() != frac(R):
        raise InternalCheckFailure("q-Gosper form does not reproduce R")
    shifts = {h for h in qdis_candidates(a, b, var) if h >= 0} | set(extra_shifts)
    for n in sorted(shifts):
        if _nontrivial(poly_gcd(a, qshift(b, var, n), var), var):
            raise InternalCheckFailure(f"gcd(a, b(q^{n} {var})) is nontrivial")
    if _nontrivial(poly_gcd(a, c, var), var):
        raise InternalCheckFailure("gcd(a, c) is nontrivial")
    if _nontrivial(poly_gcd(b, qshift(c, var, 1), var), var):
        raise InternalCheckFailure("gcd(b, c(q var)) is nontrivial")
    if _var_factor(c, var):
        raise InternalCheckFailure("c(0) = 0")


def qrnf(R, var="y", check=True):
    """Compute a q-rational normal form of ``R``; ``R = 0`` gives ``(0, 1, 1, 1)``.

    Runs the q-Gosper construction on ``R`` and again on ``b/a``; the constant
    ``z`` of the first form is kept (as ``unit``) so that the identity holds.
    """
    R = frac(R)
    if not R:
        return QRNF(PR.zero, PR.one, PR.one, PR.one, FF.one, var)
    gf = qgosper_form(R, var, check=check)
    gf2 = qgosper_form(frac(gf.b) / frac(gf.a), var, check=check)
    g = poly_gcd(gf.c, gf2.c, var)
    u = exquo(gf.c, g)
    v = exquo(gf2.c, g)
    # R = (z/z2) * (s2/r2) * E(c/d)/(c/d)
    form = QRNF(gf2.b, gf2.a, normal(u, var), normal(v, var), FF.one, var)
    unit = R / form.ratio()
    form = QRNF(form.r, form.s, form.u, form.v, unit, var)
    if check:
        check_qrnf(R, form)
    return form


def check_qrnf(R, form):
    var = form.var
    if form.ratio() != frac(R):
        raise InternalCheckFailure("q-RNF does not reproduce R")
    if not free_of(form.unit, var):
        raise InternalCheckFailure("q-RNF unit depends on the main variable")
    if not form.r:
        return
    if not is_eps_reduced(form.r, form.s, var):
        raise InternalCheckFailure("r/s is not epsilon-reduced")
    if _nontrivial(poly_gcd(form.u, form.v, var), var):
        raise InternalCheckFailure("gcd(u, v) is nontrivial")
    for p in (form.u, form.v):
        if _var_factor(p, var):
            raise InternalCheckFailure(f"{var} divides {p}")


def _var_factor(p, var):
    return strip_var_power(p, var)[0] > 0
