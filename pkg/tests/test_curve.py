"""Curve points, the automorphism action (closure, composition law,
faithfulness) and fixed-point data."""

import random

import pytest

from roquette import curve as C
from roquette import ff
from roquette.ff import make_field
from roquette.group import get_group


def brute_force_count(p, k):
    """Independent counting oracle: tally y^2 = f(x) solutions directly."""
    field = make_field(p, k)
    squares = {}
    for y in field.elements():
        squares[(y * y).coeffs] = squares.get((y * y).coeffs, 0) + 1
    total = 0
    for x in field.elements():
        total += squares.get(C.curve_value(x).coeffs, 0)
    return total + 1  # one point at infinity


@pytest.mark.parametrize("p,k,expected", [
    (5, 1, 6), (7, 1, 8), (11, 1, 12), (13, 1, 14),
    (5, 2, 6), (7, 2, 92), (11, 2, 232), (13, 2, 14),
])
def test_point_counts(p, k, expected):
    assert C.point_count(p, k) == expected
    assert brute_force_count(p, k) == expected
    if k == 2:
        assert expected == C.expected_quadratic_count(p)


def test_points_are_on_curve_and_distinct():
    pts = C.curve_points(5, 4)
    assert len(pts) == len({(p.x.coeffs, p.y.coeffs) if p is not C.INFINITY else ()
                            for p in pts})
    for P in pts:
        assert C.on_curve(P)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_hasse_weil_sharpness(p):
    hw = C.hasse_weil_sharpness(p)
    assert hw.sharp
    assert hw.gap == p * (p - 1)
    assert hw.epsilon == (1 if p % 4 == 1 else -1)


def test_act_identity_and_named_elements(group5):
    G = group5
    f4 = make_field(5, 4)
    pts = C.curve_points(5, 4)
    for P in pts:
        assert C.act(G, G.identity, P, field=f4) == P
        Q = C.act(G, G.involution, P, field=f4)
        if P is C.INFINITY:
            assert Q is C.INFINITY
        else:
            assert Q.x == P.x and Q.y == -P.y
        R = C.act(G, G.unipotent(), P, field=f4)
        if P is not C.INFINITY:
            assert R.x == P.x + 1 and R.y == P.y


def test_act_rejects_off_curve_points(group5):
    f4 = make_field(5, 4)
    bogus = C.Point(f4.element(2), f4.element(1))
    assert not C.on_curve(bogus)
    with pytest.raises(ValueError):
        C.act(group5, group5.involution, bogus)


def test_act_closure_full_product(group5):
    # every group element maps every rational point to a curve point
    G = group5
    f2 = make_field(5, 2)
    pts = C.curve_points(5, 2)
    assert len(pts) == 6
    for g in G.elements:
        for P in pts:
            assert C.on_curve(C.act(G, g, P, field=f2, check=False))


def test_action_law_exhaustive_pairs(group5):
    """act(g*h, P) == act(g, act(h, P)) for all group pairs.

    Checked on witness points covering the three position types (generic,
    ramification, infinity); the composition is fixed as a left action.
    """
    G = group5
    f4 = make_field(5, 4)
    pts = C.curve_points(5, 4)
    generic = next(P for P in pts
                   if P is not C.INFINITY and not P.y.is_zero())
    witnesses = [generic, C.Point(f4.element(2), f4.zero()), C.INFINITY]

    def key(P):
        return P if P is C.INFINITY else (P.x.coeffs, P.y.coeffs)

    els = G.elements
    table = {}
    for h in els:
        for P in witnesses:
            table[(h, key(P))] = C.act(G, h, P, field=f4, check=False)
    for g in els:
        for h in els:
            gh = G.mul(g, h)
            for P in witnesses:
                mid = table[(h, key(P))]
                lhs = table[(gh, key(P))]
                rhs = C.act(G, g, mid, field=f4, check=False)
                assert key(lhs) == key(rhs), (g, h)


def test_action_law_full_point_set_sampled_pairs(group5):
    G = group5
    f4 = make_field(5, 4)
    pts = C.curve_points(5, 4)
    rng = random.Random(99)
    els = G.elements
    for _ in range(60):
        g, h = rng.choice(els), rng.choice(els)
        gh = G.mul(g, h)
        for P in pts:
            lhs = C.act(G, gh, P, field=f4, check=False)
            rhs = C.act(G, g, C.act(G, h, P, field=f4, check=False),
                        field=f4, check=False)
            assert lhs == rhs


def test_right_action_convention_fails(group5):
    # regression pin: the opposite composition order is wrong for some pair
    G = group5
    f4 = make_field(5, 4)
    pts = C.curve_points(5, 4)
    generic = next(P for P in pts if P is not C.INFINITY and not P.y.is_zero())
    rng = random.Random(3)
    els = G.elements
    violated = False
    for _ in range(200):
        g, h = rng.choice(els), rng.choice(els)
        gh = G.mul(g, h)
        lhs = C.act(G, gh, generic, field=f4, check=False)
        wrong = C.act(G, h, C.act(G, g, generic, field=f4, check=False),
                      field=f4, check=False)
        if lhs != wrong:
            violated = True
            break
    assert violated


def test_point_action_is_faithful(group5):
    G = group5
    f4 = make_field(5, 4)
    pts = C.curve_points(5, 4)
    for g in G.elements:
        if g == G.identity:
            assert all(C.act(G, g, P, field=f4, check=False) == P for P in pts)
        else:
            assert any(C.act(G, g, P, field=f4, check=False) != P for P in pts)


def test_fixed_points_involution(group5):
    G = group5
    fps = C.fixed_points(G, G.involution)
    assert len(fps) == 6  # p + 1 ramification points
    assert all(m == 1 for _, m in fps)
    xs = {P.x.coeffs[0] for P, _ in fps if P is not C.INFINITY}
    assert xs == {0, 1, 2, 3, 4}
    assert any(P is C.INFINITY for P, _ in fps)


def test_fixed_points_wild(group5):
    G = group5
    u = G.unipotent()
    fps = C.fixed_points(G, u)
    assert fps == [(C.INFINITY, 3)]
    fps2 = C.fixed_points(G, G.mul(u, G.involution))
    assert fps2 == [(C.INFINITY, 1)]


def test_fixed_points_rejects_identity(group5):
    with pytest.raises(ValueError):
        C.fixed_points(group5, group5.identity)


def test_fixed_points_really_are_fixed(group5):
    G = group5
    f4 = make_field(5, 4)
    rng = random.Random(8)
    for _ in range(60):
        g = rng.choice(G.elements)
        if g == G.identity:
            continue
        for P, mult in C.fixed_points(G, g):
            assert mult >= 1
            assert C.act(G, g, P, field=f4, check=False) == P


@pytest.mark.parametrize("p", [5, 7])
def test_fixed_degree_is_class_function(p):
    G = get_group(p)
    for cls in G.conjugacy_classes:
        if cls.rep == G.identity:
            continue
        degrees = {C.fixed_scheme_degree(G, m) for m in cls.members}
        assert len(degrees) == 1


def test_fixed_degree_named_values(group5):
    G = group5
    assert C.fixed_scheme_degree(G, G.involution) == 6
    assert C.fixed_scheme_degree(G, G.unipotent()) == 3
    assert C.fixed_scheme_degree(G, G.mul(G.unipotent(), G.involution)) == 1


def test_lambda_route_consistency(group5):
    # the lambda realization must commute with the canonical tower arrows
    G = group5
    f4, f8 = make_field(5, 4), make_field(5, 8)
    up = ff.embedding(f4, f8)
    for g in (G.involution, G.unipotent(), G.elements[100], G.elements[201]):
        l4 = C.lambda_in(G, g, f4)
        l8 = C.lambda_in(G, g, f8)
        assert up.apply(l4) == l8
