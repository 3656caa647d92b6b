"""qZ-pairs: verification of the telescoping identity and a bounded search.

A qZ-pair for T(n, k) is an operator ``L = sum_i a_i(q^n) N^i`` with a term
``G = C * T`` such that ``L T = G(n, k+1) - G(n, k)``.  Dividing by T::

    sum_i a_i(x) * rho_i(x, y) = C(x, q*y) * R2(x, y) - C(x, y)

with ``rho_i = T(n+i, k)/T(n, k)``.  Verification checks this identity in
Q(q)(x, y).  The search fixes the order I, writes ``rho_i = N_i/Dn`` over a
common denominator, and looks for a Laurent polynomial X(y) and constants
``a_i`` in Q(q)(x) with::

    z*A(y)*X(q*y) - B(y/q)*X(y) = c(y) * sum_i a_i N_i(y)

where ``(z, A, B, c)`` is a q-Gosper form of ``R2 * Dn(y)/Dn(q*y)``.  The
certificate is then ``C = B(y/q) X(y) / (c(y) Dn(y))``.  The search is sound
(everything it returns is verified) but not complete.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import reduce

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .algebra import FF, PR, Q, Y, frac, frac_coeffs_in, normal, numer, qsubs
from .errors import BudgetExceeded, InternalCheckFailure
from .normal_forms import qgosper_form
from .qshift import qshift
from .textio import parse_ratfun, to_text


@dataclass(frozen=True)
class QZPair:
    coeffs: tuple  # a_0, ..., a_I in Q(q)[x]
    cert: object  # C with G = C*T

    @property
    def order(self):
        return len(self.coeffs) - 1

    def to_dict(self):
        return {"coeffs": [to_text(a) for a in self.coeffs], "cert": to_text(self.cert)}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(parse_ratfun(a) for a in d["coeffs"]), parse_ratfun(d["cert"]))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _quotients(t_or_R):
    """Accept a term, its DSL text, or a ``(R1, R2)`` pair."""
    if isinstance(t_or_R, tuple):
        return frac(t_or_R[0]), frac(t_or_R[1])
    from .dsl import parse, shift_quotients

    if isinstance(t_or_R, str):
        t_or_R = parse(t_or_R)
    sq = shift_quotients(t_or_R)
    return sq.R1, sq.R2


def rho(R1, i):
    """``T(n+i, k)/T(n, k) = prod_{l<i} R1(q^l x, y)``."""
    R1 = frac(R1)
    out = FF.one
    for l in range(i):
        out *= qsubs(R1, {"x": l})
    return out


def pair_residual(R1, R2, pair):
    lhs = FF.zero
    for i, a in enumerate(pair.coeffs):
        if a:
            lhs += frac(a) * rho(R1, i)
    C = frac(pair.cert)
    return lhs - (qshift(C, "y", 1) * R2 - C)


def verify_qzpair(t, pair):
    """True iff ``sum a_i rho_i == C(x, q y) R2 - C`` exactly (and some a_i is nonzero)."""
    if not any(frac(a) for a in pair.coeffs):
        return False
    R1, R2 = _quotients(t)
    return not pair_residual(R1, R2, pair)


# --------------------------------------------------------------------------
# search


@dataclass
class _Budget:
    limit: int | None
    used: int = 0

    def spend(self, n=1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} steps")


_PRIME = 2**31 - 1


class _ModularImage:
    """Evaluation of Q(q)(x) elements at fixed residues of q and x modulo a prime."""

    def __init__(self, seed=0):
        rnd = random.Random(seed)
        self.q0 = rnd.randrange(2, _PRIME - 1)
        self.x0 = rnd.randrange(2, _PRIME - 1)
        self.field = GF(_PRIME)

    def poly(self, p):
        total = 0
        for (eq, ex, ey), c in p.iterterms():
            total += int(c) * pow(self.q0, eq, _PRIME) * pow(self.x0, ex, _PRIME)
        return total % _PRIME

    def __call__(self, f):
        d = self.poly(f.denom)
        if d == 0:
            raise ZeroDivisionError
        return self.poly(f.numer) * pow(d, -1, _PRIME) % _PRIME


def _may_have_solution(rows, ncols, n_unknown_a, image):
    """Whether the system modulo p has a solution with some ``a_i != 0``.

    A generic solution with nonzero a-part specializes to one modulo p unless
    its a-part vanishes at the evaluation point, so a "no" only costs
    completeness, never soundness.
    """
    try:
        vals = [[image(e) for e in row] for row in rows]
    except ZeroDivisionError:
        return True
    F = image.field
    M = DomainMatrix([[F(v) for v in row] for row in vals], (len(rows), ncols), F)
    for vec in M.nullspace().to_list():
        if any(vec[ncols - n_unknown_a:]):
            return True
    return False


def _lcm(a, b):
    return normal((a * b).exquo(a.gcd(b)), "y")


def _system(eq_cols, rhs_cols):
    """Rows of the linear system: coefficients of each power of y across all columns."""
    cols = [frac_coeffs_in(c, "y") for c in eq_cols + rhs_cols]
    powers = sorted(set().union(*[c.keys() for c in cols]))
    return [[c.get(m, FF.zero) for c in cols] for m in powers]


def _clear_pair(avals, C):
    """Scale ``a_i`` to primitive polynomials in x over ZZ[q]; ``C`` follows."""
    den = reduce(lambda u, v: (u * v).exquo(u.gcd(v)), [frac(a).denom for a in avals if a], PR.one)
    polys = [numer(frac(a) * den) for a in avals]
    cont = reduce(lambda u, v: u.gcd(v), [p for p in polys if p])
    scale = frac(den) / frac(cont)
    lead = next(p for p in reversed(polys) if p)
    if lead.LC < 0:
        scale = -scale
    return tuple(frac(a) * scale for a in avals), frac(C) * scale


def search_qzpair(t, max_order=2, degree_cap=8, max_steps=None, modular=True):
    """First verified qZ-pair by (order, ansatz degree), or None.

    ``max_steps`` bounds the number of linear systems examined; exceeding it
    raises :class:`BudgetExceeded`.
    """
    R1, R2 = _quotients(t)
    budget = _Budget(max_steps)
    image = _ModularImage()
    dom = FF.to_domain()
    for order in range(max_order + 1):
        rhos = [rho(R1, i) for i in range(order + 1)]
        Dn = reduce(_lcm, [normal(r.denom, "y") for r in rhos], PR.one)
        Ns = [r * frac(Dn) for r in rhos]
        Rp = R2 * frac(Dn) / frac(qshift(Dn, "y", 1))
        gf = qgosper_form(Rp, "y")
        zA = gf.z * frac(gf.a)
        Bq = frac(qshift(gf.b, "y", -1))
        cf = frac(gf.c)
        for d in range(degree_cap + 1):
            budget.spend()
            yd = Y**d
            eq_cols = [zA * Q ** (j - d) * Y**j - Bq * Y**j for j in range(2 * d + 1)]
            rhs_cols = [-yd * cf * N for N in Ns]
            rows = _system(eq_cols, rhs_cols)
            ncols = len(eq_cols) + len(rhs_cols)
            if modular and not _may_have_solution(rows, ncols, len(rhs_cols), image):
                continue
            M = DomainMatrix([[dom.convert(e) for e in row] for row in rows], (len(rows), ncols), dom)
            for vec in M.nullspace().to_list():
                xs, avals = vec[: len(eq_cols)], vec[len(eq_cols):]
                if not any(avals):
                    continue
                X = sum((x * Y ** (j - d) for j, x in enumerate(xs)), FF.zero)
                C = Bq * X / (cf * frac(Dn))
                coeffs, C = _clear_pair(avals, C)
                pair = QZPair(coeffs, C)
                if pair_residual(R1, R2, pair):
                    raise InternalCheckFailure("search produced a pair that does not verify")
                return pair
    return None
