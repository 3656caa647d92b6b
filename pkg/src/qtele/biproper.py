"""Bivariate polynomials over Q(q): Newton polygons and the q-proper polynomial test.

A polynomial ``f(x, y)`` is q-proper when every irreducible factor ``p`` divides
``p(q^a x, q^b y)`` for some ``(a, b) != (0, 0)``.  Such a factor has its
support on a line, so the test never factors ``f``: it reads the candidate
directions off the Newton polygon and extracts, per direction, the largest
divisor invariant under the matching q-dilation by iterated gcds.

Bivariate polynomials are elements of ``ZZ[q, x, y]`` taken up to units of
Q(q); the canonical associate is the primitive part over ``ZZ[q]`` with a
positive leading coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .algebra import PR, content, degree, exquo, frac, normal, numer, qsubs
from .errors import InternalCheckFailure, ZeroInput
from .normal_forms import QRNF, qrnf

XY = ("x", "y")


def bi_normal(f):
    """Canonical associate of ``f`` over Q(q)."""
    return normal(numer(f), XY)


def sigma_shift(f, a, b):
    """``f(q^a x, q^b y)``; a fraction when negative powers of q appear."""
    return qsubs(f, {"x": a, "y": b})


def _sigma_poly(f, a, b):
    return bi_normal(frac(sigma_shift(f, a, b)))


# --------------------------------------------------------------------------
# Newton polygon


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Counterclockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def normalize_direction(a, b):
    """Primitive representative with ``b > 0``, or ``(1, 0)``."""
    if a == 0 and b == 0:
        raise ValueError("zero direction")
    g = gcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return a, b


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    edge_directions: tuple


def support(f):
    """Exponent pairs (i, j) of x^i y^j occurring in ``f``."""
    return {(m[1], m[2]) for m in numer(f).itermonoms()}


def newton_polygon(f):
    f = numer(f)
    if not f:
        raise ZeroInput("Newton polygon of zero")
    verts = convex_hull(support(f))
    if len(verts) < 2:
        return NewtonPolygon(tuple(verts), ())
    edges = zip(verts, verts[1:] + verts[:1]) if len(verts) > 2 else [tuple(verts)]
    dirs = {normalize_direction(b[0] - a[0], b[1] - a[1]) for a, b in edges}
    return NewtonPolygon(tuple(verts), tuple(sorted(dirs)))


# --------------------------------------------------------------------------
# invariant parts and the q-proper test


def invariant_part(f, a, b, with_steps=False):
    """Largest divisor of ``f`` whose factors all have support along direction ``(a, b)``.

    Iterates ``g <- gcd(g, g(q^b x, q^-a y))`` from ``g = f`` until stable.
    """
    f = numer(f)
    if not f:
        raise ZeroInput("invariant part of zero")
    if gcd(a, b) != 1:
        raise ValueError(f"direction ({a}, {b}) is not primitive")
    g = bi_normal(f)
    steps = 0
    while True:
        steps += 1
        g2 = bi_normal(g.gcd(_sigma_poly(g, b, -a)))
        if g2 == g:
            break
        g = g2
    return (g, steps) if with_steps else g


@dataclass(frozen=True)
class ProperStrip:
    """``f = unit * x^i * y^j * xpart(x) * core``."""

    i: int
    j: int
    xpart: object
    core: object


def strip_trivial(f):
    f = numer(f)
    if not f:
        raise ZeroInput("q-properness of zero")
    i = min(m[1] for m in f.itermonoms())
    j = min(m[2] for m in f.itermonoms())
    core = f.quo_term(((0, i, j), 1)) if i or j else f
    xpart = bi_normal(content(core, "y"))
    return ProperStrip(i, j, xpart, bi_normal(normal(core, "y")))


@dataclass(frozen=True)
class QProperResult:
    is_proper: bool
    witness: object
    directions: tuple = field(default_factory=tuple)
    stripped: ProperStrip | None = None

    def __bool__(self):
        return self.is_proper


def is_qproper_poly(f):
    """Decide q-properness of ``f``; on failure ``witness`` collects the offending factors."""
    st = strip_trivial(f)
    core = st.core
    if degree(core, "x") <= 0 and degree(core, "y") <= 0:
        return QProperResult(True, None, (), st)
    parts = []
    prod = PR.one
    for a, b in newton_polygon(core).edge_directions:
        g = invariant_part(core, a, b)
        parts.append((a, b, g))
        prod = prod * g
    rest = exquo(core, prod) if prod != 1 else core
    # invariant parts for distinct directions are coprime, so prod | core
    if not (degree(rest, "x") <= 0 and degree(rest, "y") <= 0):
        return QProperResult(False, bi_normal(rest), tuple(parts), st)
    if bi_normal(prod) != core:
        raise InternalCheckFailure("invariant parts do not reproduce the polynomial")
    return QProperResult(True, None, tuple(parts), st)


# --------------------------------------------------------------------------
# q-normal representation with respect to y


QNRBivariate = QRNF


def qnr_bivariate(R, check=True):
    """q-normal representation of ``R(x, y)`` with respect to the dilation of y.

    Entries are polynomials in ``ZZ[q, x, y]``, primitive over ``ZZ[q, x]``; the
    remaining factor from ``Q(q)(x)`` is kept in ``unit``.
    """
    R = frac(R)
    if not R:
        raise ZeroInput("q-normal representation of zero")
    return qrnf(R, "y", check=check)
