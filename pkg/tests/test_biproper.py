import pytest
import sympy as sp

from qtele.algebra import PR, Q, X, Y, frac
from qtele.biproper import (
    bi_normal, invariant_part, is_qproper_poly, newton_polygon, normalize_direction,
    qnr_bivariate, sigma_shift,
)
from qtele.errors import ZeroInput

import oracles as o

q, x, y = PR.gens


def test_sigma_shift_examples():
    assert sigma_shift(x + y + 1, 0, 1) == x + q * y + 1
    f = x**2 + q * x * y + 3
    assert sigma_shift(f, 0, 0) == f
    assert sigma_shift(x * y, 1, -1) == x * y


def test_sigma_shift_multiplicative():
    f, g = x + q * y + 1, 1 - x * y**2
    for a, b in [(1, 2), (-1, 3), (2, -2)]:
        assert frac(sigma_shift(f * g, a, b)) == frac(sigma_shift(f, a, b)) * frac(sigma_shift(g, a, b))


def test_newton_polygon_examples():
    npg = newton_polygon(x + q * y + 1)
    assert set(npg.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert set(npg.edge_directions) == {(1, 0), (0, 1), normalize_direction(1, -1)}
    assert newton_polygon(x**3 * y**2).edge_directions == ()
    assert newton_polygon(1 - x * y).edge_directions == ((1, 1),)
    with pytest.raises(ZeroInput):
        newton_polygon(PR.zero)


def test_hull_contains_support():
    f = 1 + x**3 + x * y + y**2 * x**2 + 2 * x**2 * y + y**3
    npg = newton_polygon(f)
    hull = sp.Polygon(*[sp.Point(*v) for v in npg.vertices])
    for m in f.itermonoms():
        assert hull.encloses_point(sp.Point(m[1], m[2])) or any(
            s.contains(sp.Point(m[1], m[2])) for s in hull.sides)


def test_normalize_direction():
    assert normalize_direction(2, -4) == (-1, 2)
    assert normalize_direction(-3, 0) == (1, 0)
    assert normalize_direction(0, -5) == (0, 1)


def test_invariant_part_examples():
    assert invariant_part((1 - x * y) * (x + y + 1), 1, 1) == bi_normal(1 - x * y)
    for a, b in [(1, 0), (0, 1), (1, 1), (-1, 1)]:
        assert invariant_part(x + q * y + 1, a, b).is_ground
    assert invariant_part(x + 1, 1, 0) == x + 1
    assert invariant_part(x + 1, 0, 1).is_ground


def test_invariant_part_stabilizes_quickly():
    f = (1 - x * y) ** 3 * (1 - q * x * y) * (x + y + 1)
    g, steps = invariant_part(f, 1, 1, with_steps=True)
    assert g == bi_normal((1 - x * y) ** 3 * (1 - q * x * y))
    deg = max(m[1] + m[2] for m in f.itermonoms())
    assert steps <= deg + 1


@pytest.mark.parametrize("f, proper", [
    (x + 1, True),
    ((q**2 - 1) * (x + 1), True),
    (x + q * y + 1, False),
    ((x + y + 1) * (x + q * y + 1), False),
    ((1 - x * y) * (1 - q * x * y) * x**3, True),
    (PR(7), True),
    (x**2 * y**5, True),
])
def test_qproper_examples(f, proper):
    res = is_qproper_poly(f)
    assert res.is_proper is proper
    assert o.brute_qproper(o.expr(f)) is proper
    if not proper:
        assert res.witness is not None and not res.witness.is_ground


def test_qproper_witness_for_example_2():
    res = is_qproper_poly(x + q * y + 1)
    assert res.witness == bi_normal(x + q * y + 1)


def test_qproper_zero():
    with pytest.raises(ZeroInput):
        is_qproper_poly(PR.zero)


def test_qnr_bivariate():
    R = Q * (1 + Q * X + Q**3 * Y) * (X + Y + 1) / (
        (X + Q**2 * Y + 1) * (1 + Q * X + Q**2 * Y) * (1 - Q**2 * Y))
    f = qnr_bivariate(R)
    assert f.ratio() == R
    assert bi_normal(f.v) == bi_normal((x + y + 1) * (x + q * y + 1))
    one = qnr_bivariate(frac(1))
    assert one.as_tuple() == (1, 1, 1, 1)
    with pytest.raises(ZeroInput):
        qnr_bivariate(frac(0))
