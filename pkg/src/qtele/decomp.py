"""Additive decomposition of q-hypergeometric terms into a q-difference plus an epsilon-free part.

A term is given by a q-multiplicative representation ``(D, U, n0)``::

    T(n) = U(q^n) * prod_{j=n0}^{n-1} D(q^j)

:func:`qdecomp` returns ``U1, F, V`` with ``T = Delta T1 + T2`` where ``T1`` has
representation ``(D, U1, n0)`` and ``T2`` has ``(F, V, n0)``, and the
denominator of ``V`` is epsilon-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    FF,
    degree,
    eval_at_qpower,
    evaluate,
    exquo,
    frac,
    normal,
    partial_split,
    poly_gcd,
)
from .errors import EvaluationFailure, InternalCheckFailure, InvalidQMR, NotDivisible
from .qshift import is_eps_free, is_eps_reduced, qdis, qshift


@dataclass(frozen=True)
class QMR:
    D: object
    U: object
    n0: int = 0
    var: str = "y"

    def __post_init__(self):
        if not frac(self.D):
            raise InvalidQMR("D must be nonzero")
        if self.n0 < 0:
            raise InvalidQMR("n0 must be nonnegative")


@dataclass(frozen=True)
class DecompResult:
    """Output of :func:`qdecomp`.

    ``U2`` is the cofactor of ``T2`` with respect to the original ratio ``D``
    (``T2 = U2(q^n) prod D``) and ``w`` the factor moved from ``U2`` into ``F``;
    ``V = U2 * w / w(q^n0)``.
    """

    U1: object
    F: object
    V: object
    U2: object
    w: object
    passes: int


def qmr_transform(D, U, U1, var="y"):
    """Cofactor of ``T - Delta T1`` when ``T ~ (D, U)`` and ``T1 ~ (D, U1)``."""
    D, U, U1 = frac(D), frac(U), frac(U1)
    return U - D * qshift(U1, var, 1) + U1


def pump(f, g, var="y"):
    """Split ``g`` as ``f~ * g~`` where ``f~`` collects every factor of ``g`` shared with ``f``.

    Requires ``f | g``.  Returns canonical associates.
    """
    f, g = normal(f, var), normal(g, var)
    if not f:
        raise NotDivisible("pump needs f != 0")
    ft = f
    gt = exquo(g, f)
    while True:
        d = poly_gcd(ft, gt, var)
        ft = ft * d
        gt = exquo(gt, d)
        if degree(d, var) <= 0:
            break
    return normal(ft, var), normal(gt, var)


def qdecomp(mr, check=True):
    """Epsilon-free additive decomposition of the term with representation ``mr``."""
    var = mr.var
    D, U = frac(mr.D), frac(mr.U)
    d1, d2 = D.numer, D.denom
    U1 = FF.zero
    U2 = U
    u2 = normal(U2.denom, var)
    N = qdis(u2, u2, var) if degree(u2, var) > 0 else -1
    passes = 0
    for h in range(N, 0, -1):
        passes += 1
        v2 = exquo(u2, poly_gcd(u2, d2, var))
        s = poly_gcd(v2, qshift(v2, var, -h), var)
        if degree(s, var) <= 0:
            continue
        s_t, u_t = pump(s, u2, var)
        _, b = partial_split(U2, s_t, u_t, var)
        U1p = -b / frac(s_t)
        U1 = U1 + U1p
        U2 = U2 - D * qshift(U1p, var, 1) + U1p
        u2 = normal(U2.denom, var)
    v2 = normal(U2.denom, var)
    w = poly_gcd(d2, v2, var)
    w_at = eval_at_qpower(w, var, mr.n0)
    if not w_at:
        raise EvaluationFailure(f"w = {w} vanishes at {var} = q^{mr.n0}")
    F = frac(d1) / (frac(qshift(w, var, 1)) * frac(d2) / frac(w))
    V = U2 * frac(w) / frac(w_at)
    result = DecompResult(U1, F, V, U2, w, passes)
    if check:
        check_decomp(mr, result)
    return result


def check_decomp(mr, res):
    var = mr.var
    if qmr_transform(mr.D, mr.U, res.U1, var) != res.U2:
        raise InternalCheckFailure("transform identity U2 = U - D E(U1) + U1 fails")
    if res.V and not is_eps_free(res.V.denom, var):
        raise InternalCheckFailure("denominator of V is not epsilon-free")
    D = frac(mr.D)
    if is_eps_reduced(D.numer, D.denom, var):
        F = frac(res.F)
        if not is_eps_reduced(F.numer, F.denom, var):
            raise InternalCheckFailure("F is not epsilon-reduced although D is")


# --------------------------------------------------------------------------
# pointwise evaluation, used for sanity checks


def qmr_value(D, U, n0, n, q_value, var="y", extra=None):
    """``U(q^n) * prod_{j=n0}^{n-1} D(q^j)`` at a rational value of q.

    ``extra`` assigns values to the remaining symbols of the ground field.
    """
    q_value = Fraction(q_value)
    point = {"q": q_value, **(extra or {})}
    val = evaluate(U, {**point, var: q_value**n})
    for j in range(n0, n):
        val *= evaluate(D, {**point, var: q_value**j})
    return val
