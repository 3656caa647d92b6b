"""Decide whether a bivariate q-hypergeometric term has a qZ-pair.

Pipeline: shift quotient ``R2 = T(n, k+1)/T(n, k)``; q-normal representation
``R2 = unit * r/s * E(u/v)/(u/v)`` with respect to y; additive decomposition of
the univariate term with representation ``(unit*r/s, u/v)`` over Q(q)(x);
finally the q-properness of the denominator ``v2`` of ``V``.

The decomposition ``T = Delta_k T1 + T2`` is returned as two rational
multiples of T, ``T1 = C1*T`` and ``T2 = C2*T``, which satisfy::

    1 = C1(x, q*y) * R2 - C1 + C2.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import evaluate, frac
from .biproper import is_qproper_poly, qnr_bivariate
from .decomp import QMR, qdecomp
from .dsl import eval_term, parse, shift_quotient, validate_domain
from .errors import InternalCheckFailure, PoleAtPoint, RejectedInput, ResidualIdentityFailure
from .qshift import qshift
from .textio import canonical_pair, parse_ratfun, to_text

HAS = "HasQZPair"
HAS_NOT = "NoQZPair"
REJECTED = "Rejected"


def _txt(f):
    return None if f is None else to_text(f)


def _par(s):
    return None if s is None else parse_ratfun(s)


@dataclass
class DecisionReport:
    verdict: str
    qnr: dict | None = None  # r, s, u, v, unit
    decomp: dict | None = None  # U1, F, V
    v2: object = None
    properness: dict | None = None  # is_proper, witness, directions
    certificate: dict | None = None  # C1, C2
    warnings: list = field(default_factory=list)
    timing_ms: float = 0.0
    checks: dict = field(default_factory=dict)

    def to_dict(self):
        d = {
            "verdict": self.verdict,
            "qnr": None if self.qnr is None else {k: _txt(v) for k, v in self.qnr.items()},
            "decomp": None if self.decomp is None else {k: _txt(v) for k, v in self.decomp.items()},
            "v2": _txt(self.v2),
            "properness": None,
            "certificate": None if self.certificate is None
            else {k: _txt(v) for k, v in self.certificate.items()},
            "warnings": list(self.warnings),
            "timing_ms": self.timing_ms,
            "checks": dict(self.checks),
        }
        if self.properness is not None:
            p = self.properness
            d["properness"] = {
                "is_proper": p["is_proper"],
                "witness": _txt(p["witness"]),
                "directions": [
                    {"a": a, "b": b, "invariant_part": _txt(g)} for a, b, g in p["directions"]
                ],
            }
        return d

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d):
        prop = d.get("properness")
        if prop is not None:
            prop = {
                "is_proper": prop["is_proper"],
                "witness": _par(prop["witness"]),
                "directions": [(e["a"], e["b"], _par(e["invariant_part"])) for e in prop["directions"]],
            }

        def block(key):
            b = d.get(key)
            return None if b is None else {k: _par(v) for k, v in b.items()}

        return cls(
            verdict=d["verdict"],
            qnr=block("qnr"),
            decomp=block("decomp"),
            v2=_par(d.get("v2")),
            properness=prop,
            certificate=block("certificate"),
            warnings=list(d.get("warnings", [])),
            timing_ms=d.get("timing_ms", 0.0),
            checks=dict(d.get("checks", {})),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @property
    def witness(self):
        return None if self.properness is None else self.properness["witness"]


def residual(R2, C1, C2):
    """``C1(x, q y) R2 - C1 + C2 - 1``; zero for a valid decomposition."""
    C1 = frac(C1)
    return qshift(C1, "y", 1) * R2 - C1 + frac(C2) - 1


def build_certificate(R2, qnr, dec):
    """Cofactors ``C1 = U1 * v/u`` and ``C2 = U2 * v/u`` of the decomposition."""
    vu = frac(qnr.v) / frac(qnr.u)
    C1 = frac(dec.U1) * vu
    C2 = frac(dec.U2) * vu
    if residual(R2, C1, C2):
        raise ResidualIdentityFailure("1 != C1(x,qy) R2 - C1 + C2")
    return C1, C2


def pointwise_check(t, C1, C2, size=6, q_value=2):
    """Check ``T = T1(n,k+1) - T1(n,k) + T2`` on the grid ``[0,size)^2``; returns points checked.

    Points where T or a cofactor has a pole are skipped.
    """
    qv = Fraction(q_value)
    checked = 0
    for n in range(size):
        for k in range(size):
            try:
                T0 = eval_term(t, n, k, qv)
                T1k = eval_term(t, n, k + 1, qv)
                pt0 = {"q": qv, "x": qv**n, "y": qv**k}
                pt1 = {"q": qv, "x": qv**n, "y": qv ** (k + 1)}
                lhs = evaluate(C1, pt1) * T1k - evaluate(C1, pt0) * T0 + evaluate(C2, pt0) * T0
            except (PoleAtPoint, ZeroDivisionError):
                continue
            if lhs != T0:
                raise InternalCheckFailure(f"pointwise decomposition fails at n={n}, k={k}")
            checked += 1
    return checked


def decide_qzpair(t, check_points=6, q_check=2, cross_check=False, max_order=2, degree_cap=8,
                  strict=False):
    """Run the decision pipeline on a parsed term (or DSL text).

    With ``strict=True`` a domain violation raises :class:`RejectedInput`;
    otherwise a report with verdict ``Rejected`` is returned.
    """
    start = time.perf_counter()
    if isinstance(t, str):
        t = parse(t)
    warnings = validate_domain(t)
    if warnings:
        if strict:
            raise RejectedInput("term violates the zero/pole-freeness assumption", warnings)
        return DecisionReport(REJECTED, warnings=warnings,
                              timing_ms=round((time.perf_counter() - start) * 1000, 3))
    R2 = shift_quotient(t, "k")
    qnr = qnr_bivariate(R2)
    D = qnr.unit * frac(qnr.r) / frac(qnr.s)
    dec = qdecomp(QMR(D, frac(qnr.u) / frac(qnr.v), 0, "y"))
    v2 = canonical_pair(dec.V)[1]
    prop = is_qproper_poly(v2)
    C1, C2 = build_certificate(R2, qnr, dec)
    checks = {"residual_identity": True}
    if check_points:
        checks["pointwise_points"] = pointwise_check(t, C1, C2, check_points, q_check)
    verdict = HAS if prop.is_proper else HAS_NOT
    if cross_check:
        from .telescope import search_qzpair, verify_qzpair

        pair = search_qzpair(t, max_order=max_order, degree_cap=degree_cap)
        if pair is not None:
            if not verify_qzpair(t, pair):
                raise InternalCheckFailure("search returned an unverified pair")
            if verdict == HAS_NOT:
                raise InternalCheckFailure("verified qZ-pair found for a term decided NoQZPair")
        checks["search_found_pair"] = pair is not None
    report = DecisionReport(
        verdict=verdict,
        qnr={"r": qnr.r, "s": qnr.s, "u": qnr.u, "v": qnr.v, "unit": qnr.unit},
        decomp={"U1": dec.U1, "F": dec.F, "V": dec.V},
        v2=v2,
        properness={
            "is_proper": prop.is_proper,
            "witness": prop.witness,
            "directions": list(prop.directions),
        },
        certificate={"C1": C1, "C2": C2},
        warnings=[],
        timing_ms=0.0,
        checks=checks,
    )
    if verdict == HAS_NOT and prop.witness is None:
        raise InternalCheckFailure("NoQZPair without a witness")
    report.timing_ms = round((time.perf_counter() - start) * 1000, 3)
    return report


__all__ = ["DecisionReport", "HAS", "HAS_NOT", "REJECTED", "build_certificate",
           "decide_qzpair", "pointwise_check", "residual"]
