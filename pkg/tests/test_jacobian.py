"""Jacobian arithmetic, torsion bases, representation matrices, and the
trace congruences that realize independence-of-ell at finite level."""

import random

import pytest

from roquette import character as CH
from roquette import curve as C
from roquette import jacobian as J
from roquette.ff import make_field
from roquette.group import get_group
from roquette.poly import Poly


@pytest.fixture(scope="module")
def jac25():
    return J.CurveJacobian(make_field(5, 2), 5)


@pytest.fixture(scope="module")
def jac54():
    return J.CurveJacobian(make_field(5, 4), 5)


def test_epsilon_and_order_formula():
    assert J.epsilon(5) == 1 and J.epsilon(13) == 1
    assert J.epsilon(7) == -1 and J.epsilon(11) == -1
    assert J.jacobian_order(5, 1) == 256          # (1 - 5)^4
    assert J.jacobian_order(5, 2) == 331776       # (1 - 25)^4
    assert J.jacobian_order(7, 1) == (1 + 7) ** 6


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_order_formula_consistent_with_curve_count(p):
    # #C(F_{p^2}) = p^2 + 1 - (p-1) * eps * p reproduces the enumeration
    assert C.point_count(p, 2) == p * p + 1 - (p - 1) * J.epsilon(p) * p


def test_cantor_group_laws(jac25, jac54):
    for jac, seed in ((jac25, 1), (jac54, 2)):
        rng = random.Random(seed)
        for _ in range(25):
            D1 = jac.random_divisor(rng)
            D2 = jac.random_divisor(rng)
            D3 = jac.random_divisor(rng)
            assert jac.add(D1, D2) == jac.add(D2, D1)
            assert jac.add(jac.add(D1, D2), D3) == jac.add(D1, jac.add(D2, D3))
            assert jac.add(D1, jac.neg(D1)).is_zero()
            assert jac.add(D1, jac.zero()) == D1
            assert jac.is_valid(jac.add(D1, D2))


def test_point_plus_involute_cancels(jac25):
    field = jac25.field
    rng = random.Random(3)
    for _ in range(20):
        x = field.random_element(rng)
        val = jac25.f.evaluate(x)
        from roquette import ff
        y = ff.sqrt(val)
        if y is None:
            continue
        P = jac25.from_point(C.Point(x, y))
        Q = jac25.from_point(C.Point(x, -y))
        assert jac25.add(P, Q).is_zero()


def test_exhaustive_jacobian_order(jac25):
    divisors = jac25.enumerate_reduced()
    assert len(divisors) == 256
    assert len({D.key() for D in divisors}) == 256
    for D in divisors[:50]:
        assert jac25.is_valid(D)


def test_lagrange_over_f25(jac25):
    rng = random.Random(4)
    for _ in range(20):
        D = jac25.random_divisor(rng)
        assert jac25.scalar_mul(256, D).is_zero()


def test_scalar_mul_seeded_random_f54(jac54):
    # 100 seeded classes over the degree-4 field all die at the group order
    rng = random.Random(2024)
    n = J.jacobian_order(5, 2)
    for _ in range(100):
        D = jac54.random_divisor(rng)
        assert jac54.scalar_mul(n, D).is_zero()


def test_act_on_class_identity_and_involution(group5, jac54):
    rng = random.Random(5)
    for _ in range(8):
        D = jac54.random_divisor(rng)
        assert J.act_on_class(group5, group5.identity, D) == D
        assert J.act_on_class(group5, group5.involution, D) == jac54.neg(D)


def test_act_on_class_additive(group5, jac54):
    rng = random.Random(6)
    for _ in range(8):
        D1 = jac54.random_divisor(rng)
        D2 = jac54.random_divisor(rng)
        g = rng.choice(group5.elements)
        lhs = J.act_on_class(group5, g, jac54.add(D1, D2))
        rhs = jac54.add(J.act_on_class(group5, g, D1),
                        J.act_on_class(group5, g, D2))
        assert lhs == rhs


def test_torsion_basis_ell3(group5, torsion3):
    tb = torsion3
    assert tb.ell == 3 and tb.m == 2
    assert tb.field == make_field(5, 4)
    assert tb.jacobian_order == 331776
    assert len(tb.basis) == 4
    assert len(tb.span) == 81
    jac = J.CurveJacobian(tb.field, 5)
    for D in tb.basis:
        assert not D.is_zero()
        assert jac.scalar_mul(3, D).is_zero()


def test_torsion_basis_ell7(group5, torsion7):
    tb = torsion7
    assert tb.ell == 7 and tb.m == 6
    assert tb.field == make_field(5, 12)
    assert len(tb.basis) == 4
    assert len(tb.span) == 2401
    jac = J.CurveJacobian(tb.field, 5)
    for D in tb.basis:
        assert jac.scalar_mul(7, D).is_zero() and not D.is_zero()


def test_torsion_rejects_bad_ell(group5):
    with pytest.raises(ValueError):
        J.torsion_basis(group5, 5)       # ell = p
    with pytest.raises(ValueError):
        J.torsion_basis(group5, 9)       # not prime
    with pytest.raises(ValueError):
        J.torsion_basis(group5, 11)      # 11^4 over the default bound


def test_rep_matrix_involution(group5, torsion3, torsion7):
    for tb in (torsion3, torsion7):
        M = J.rep_matrix(group5, group5.involution, tb)
        n = len(M)
        assert M == tuple(tuple((tb.ell - 1) if i == j else 0 for j in range(n))
                          for i in range(n))
        assert J.mat_trace(M, tb.ell) == (-4) % tb.ell


def test_rep_matrices_invertible_with_dividing_order(group5, torsion3):
    G = group5
    rng = random.Random(7)
    ell = torsion3.ell
    ident = J.identity_matrix(4)
    for _ in range(12):
        g = rng.choice(G.elements)
        M = J.rep_matrix(G, g, torsion3)
        assert J.mat_det(M, ell) != 0
        n = G.element_order(g)
        acc = ident
        for _ in range(n):
            acc = J.mat_mul(acc, M, ell)
        assert acc == ident


def test_rep_is_homomorphism_full_p5_ell3(group5, torsion3):
    """g -> M(g) respects every product: all matrices, all pairs, mod 3."""
    G = group5
    ell = torsion3.ell
    mats = {g: J.rep_matrix(G, g, torsion3) for g in G.elements}
    for g in G.elements:
        Mg = mats[g]
        for h in G.elements:
            assert mats[G.mul(g, h)] == J.mat_mul(Mg, mats[h], ell)


def test_traces_congruent_to_character(group5, traces3, traces7):
    chi = CH.lefschetz_character(group5)
    for traces in (traces3, traces7):
        ell = 3 if traces is traces3 else 7
        for cv, tv in zip(chi.values, traces.values):
            assert (cv - tv) % ell == 0


def test_traces_of_inverse_agree(group5, torsion3):
    # real-valued character: trace(M(g)) = trace(M(g^-1)) mod ell
    G = group5
    rng = random.Random(8)
    for _ in range(10):
        g = rng.choice(G.elements)
        t1 = J.mat_trace(J.rep_matrix(G, g, torsion3), 3)
        t2 = J.mat_trace(J.rep_matrix(G, G.inv(g), torsion3), 3)
        assert t1 == t2


def test_crt_reconstruction_equals_character(group5, traces3, traces7):
    chi = CH.lefschetz_character(group5)
    rec = J.crt_reconstruct(5, {3: traces3, 7: traces7})
    assert rec.values == chi.values


def test_crt_arithmetic_literal():
    # -4 = 2 mod 3 and = 3 mod 7 recombine to -4
    one_class_3 = CH.ClassFunction(p=5, values=(2,))
    one_class_7 = CH.ClassFunction(p=5, values=(3,))
    rec = J.crt_reconstruct(5, {3: one_class_3, 7: one_class_7})
    assert rec.values == (-4,)


def test_crt_bound_checks(group5, traces3):
    with pytest.raises(ValueError):
        J.crt_reconstruct(5, {3: traces3})  # 3 < 2(p-1) = 8
    bad3 = CH.ClassFunction(p=5, values=(1,))
    bad7 = CH.ClassFunction(p=5, values=(6,))
    with pytest.raises(ValueError):
        # 1 mod 3 and 6 mod 7 recombine to 13 > p - 1: inconsistent
        J.crt_reconstruct(5, {3: bad3, 7: bad7})


def test_torsion_witness_p7_ell3():
    # genus 3: degree-3 Mumford polynomials and cubic splitting fields
    G = get_group(7)
    tb = J.torsion_basis(G, 3, seed=0)
    assert tb.m == 2 and tb.field == make_field(7, 4)
    assert len(tb.basis) == 6
    assert len(tb.span) == 729
    chi = CH.lefschetz_character(G)
    traces = J.rho_ell_traces(G, tb)
    for cv, tv in zip(chi.values, traces.values):
        assert (cv - tv) % 3 == 0


def test_mumford_validation(jac25):
    field = jac25.field
    # (1, v) with nonzero v is not a reduced divisor
    bogus = J.MumfordDivisor(field, Poly.one(field), Poly.const(field, 3))
    assert not jac25.is_valid(bogus)
    # v^2 = f mod u must hold
    u = Poly.from_ints(field, [0, 1])  # x
    v = Poly.const(field, 1)
    assert not jac25.is_valid(J.MumfordDivisor(field, u, v))
