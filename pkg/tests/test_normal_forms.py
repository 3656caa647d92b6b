import pytest

from qtele.algebra import FF, PR, Q, X, Y, frac, normal
from qtele.biproper import bi_normal
from qtele.errors import InternalCheckFailure, ZeroInput
from qtele.normal_forms import QGosperForm, check_qgosper_form, qgosper_form, qrnf
from qtele.qshift import is_eps_reduced, qshift

import oracles as o

q, x, y = PR.gens

EX1_R2 = Q * (1 + Q * X + Q**3 * Y) * (X + Y + 1) / (
    (X + Q**2 * Y + 1) * (1 + Q * X + Q**2 * Y) * (1 - Q**2 * Y))
EX2_R2 = Q * (1 + Q * X + Q**3 * Y) * (X + Y + 1) / (
    (X + Q**2 * Y + 1) * (1 + Q * X + Q**2 * Y) * (1 - Q * Y))


def same(a, b):
    return bi_normal(frac(a).numer) == bi_normal(frac(b).numer)


def test_gosper_constant():
    gf = qgosper_form(5 * Q)
    assert (gf.z, gf.a, gf.b, gf.c) == (5 * Q, 1, 1, 1)


def test_gosper_var():
    gf = qgosper_form(Y)
    assert gf.z == 1 and gf.a == y and gf.b == 1 and gf.c == 1


def test_gosper_migrates_shift_into_c():
    gf = qgosper_form((1 - Q**3 * Y) / (1 - Q * Y))
    assert gf.a == 1 and gf.b == 1
    # (y - q^-1)(y - q^-2) up to the normalization
    assert normal(gf.c, "y") == normal((q * y - 1) * (q**2 * y - 1), "y")
    assert gf.ratio() == (1 - Q**3 * Y) / (1 - Q * Y)


def test_gosper_small_shifts_first():
    # with the larger shift first, a factor of a would also land in c
    p = lambda h: 1 + q**h * x**2 * y
    R = frac((q * y - 1) * p(1) * p(3) * p(5)) / frac((q**3 * x * y - 1) * p(2) * p(4) * p(6))
    gf = qgosper_form(R)
    assert normal(gf.c, "y") == normal(p(2) * p(4), "y")


def test_gosper_zero():
    with pytest.raises(ZeroInput):
        qgosper_form(FF.zero)


def test_gosper_check_rejects_bad_form():
    bad = QGosperForm(FF.one, y - 1, y - q, PR.one)
    with pytest.raises(InternalCheckFailure):
        check_qgosper_form(frac(y - 1) / frac(y - q), bad)


def test_gosper_idempotent_on_reduced_input():
    rnd = o.seeded(3)
    for _ in range(20):
        gf = qgosper_form(o.to_pkg(o.rand_rational(rnd)))
        again = qgosper_form(gf.z * frac(gf.a) / frac(gf.b))
        assert again.c == 1


def test_qrnf_zero():
    f = qrnf(FF.zero)
    assert f.as_tuple() == (0, 1, 1, 1)


def test_qrnf_example_1():
    f = qrnf(EX1_R2)
    assert same(f.r, Q) and same(f.s, 1 - Q**2 * Y)
    assert same(f.u, 1 + Q * X + Q**2 * Y)
    assert same(f.v, (X + Y + 1) * (X + Q * Y + 1))
    assert f.ratio() == EX1_R2


def test_qrnf_example_2():
    f = qrnf(EX2_R2)
    assert same(f.r, 1) and same(f.s, 1 - Q * Y)
    assert same(f.u, 1 + Q * X + Q**2 * Y)
    assert same(f.v, (X + Y + 1) * (X + Q * Y + 1))


def test_qrnf_reconstruction_and_reducedness():
    rnd = o.seeded(4)
    for _ in range(40):
        R = o.to_pkg(o.rand_rational(rnd))
        f = qrnf(R)
        uv = frac(f.u) / frac(f.v)
        assert R * uv * f.s == f.unit * f.r * qshift(uv, "y", 1)
        assert is_eps_reduced(f.r, f.s, "y")
