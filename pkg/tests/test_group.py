"""Group structure: enumeration, normal form, conjugacy, distinguished
subgroups, and the projective quotient."""

import random

import pytest

from roquette.group import RoquetteGroup, get_group


def matrix_power_naive(mat, n, p):
    """Plain 2x2 matrix power mod p; the oracle for element orders."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(n):
        a, b, c, d = ((a * mat[0] + b * mat[2]) % p, (a * mat[1] + b * mat[3]) % p,
                      (c * mat[0] + d * mat[2]) % p, (c * mat[1] + d * mat[3]) % p)
    return a, b, c, d


def gl2_order(p):
    return (p * p - 1) * (p * p - p)


@pytest.mark.parametrize("p,expected", [(5, 240), (7, 672), (11, 2640), (13, 4368)])
def test_group_order_by_enumeration(p, expected):
    G = get_group(p)
    els = G.elements
    assert len(els) == expected
    assert len(set(els)) == expected


def test_cover_is_p_minus_1_to_1():
    # |pairs (A, lam)| = 2 |GL_2|, and the quotient map collapses p-1 pairs
    p = 5
    G = get_group(p)
    assert 2 * gl2_order(p) == 960
    assert 2 * gl2_order(p) // (p - 1) == len(G.elements)


def test_invalid_inputs_rejected():
    with pytest.raises(ValueError):
        RoquetteGroup(4)
    with pytest.raises(ValueError):
        RoquetteGroup(3)
    G = get_group(5)
    with pytest.raises(ValueError):
        G.element((1, 0, 0, 1), 2)  # 2^2 = 4 != det = 1
    with pytest.raises(ValueError):
        G.element((1, 2, 2, 4), 1)  # singular matrix


@pytest.mark.parametrize("p", [5, 7])
def test_group_axioms_random(p):
    G = get_group(p)
    els = G.elements
    rng = random.Random(p)
    for _ in range(300):
        g, h, k = (rng.choice(els) for _ in range(3))
        assert G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))
        assert G.mul(g, G.identity) == g
        assert G.mul(G.identity, g) == g
        assert G.mul(g, G.inv(g)) == G.identity
        assert G.mul(G.inv(g), g) == G.identity


def test_canonical_form_idempotent_and_respected():
    G = get_group(5)
    rng = random.Random(2)
    els = G.elements
    for _ in range(200):
        g = rng.choice(els)
        assert G.canonicalize(*g) == g
        # scaling by any kernel representative lands on the same class
        mu = rng.randrange(1, 5)
        scaled = (g[0] * mu % 5, g[1] * mu % 5, g[2] * mu % 5, g[3] * mu % 5,
                  g[4] * G._leg[mu] * mu % 5, g[5] * G._leg[mu] * mu % 5)
        assert G.canonicalize(*scaled) == g
    for g in els:
        lead = next(x for x in g[:4] if x)
        assert lead == 1


def test_lambda_squares_to_det_and_is_frobenius_fixed():
    for p in (5, 7):
        G = get_group(p)
        for g in G.elements:
            lam = G.lam_element(g)
            sq = lam * lam
            assert sq == G.fp2.element(G.det(g))
            assert sq.frobenius() == sq


def test_element_orders():
    G = get_group(5)
    assert G.element_order(G.involution) == 2
    assert G.element_order(G.unipotent()) == 5
    # oracle: [[1,1],[0,1]] has matrix order 5 and no smaller
    for n in range(1, 5):
        assert matrix_power_naive((1, 1, 0, 1), n, 5) != (1, 0, 0, 1)
    assert matrix_power_naive((1, 1, 0, 1), 5, 5) == (1, 0, 0, 1)


@pytest.mark.parametrize("p", [5, 7])
def test_orders_divide_group_order(p):
    G = get_group(p)
    rng = random.Random(41)
    for _ in range(150):
        g = rng.choice(G.elements)
        assert len(G.elements) % G.element_order(g) == 0


@pytest.mark.parametrize("p", [5, 7])
def test_sqrt_group(p):
    G = get_group(p)
    roots = G.sqrt_group_elements()
    assert len(roots) == 2 * (p - 1)
    # closed under multiplication and cyclic: some element has full order
    key = {r.coeffs for r in roots}
    for r in roots:
        for s in roots:
            assert (r * s).coeffs in key
    orders = []
    for r in roots:
        n, cur = 1, r
        while cur != G.fp2.one():
            cur = cur * r
            n += 1
        orders.append(n)
    assert max(orders) == 2 * (p - 1)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_conjugacy_partition(p):
    G = get_group(p)
    classes = G.conjugacy_classes
    assert sum(c.size for c in classes) == len(G.elements)
    # identity class is a singleton and sizes divide the group order
    id_cls = classes[G.class_of(G.identity)]
    assert id_cls.size == 1
    for c in classes:
        assert len(G.elements) % c.size == 0


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_order_p_elements_single_class(p):
    G = get_group(p)
    stats = G.order_statistics()
    assert stats[p] == p * p - 1
    wild_classes = [c for c in G.conjugacy_classes
                    if G.element_order(c.rep) == p]
    assert len(wild_classes) == 1
    assert wild_classes[0].size == p * p - 1


def test_class_members_consistent():
    G = get_group(5)
    for ci, c in enumerate(G.conjugacy_classes):
        for m in c.members:
            assert G.class_of(m) == ci
        assert c.rep in c.members


@pytest.mark.parametrize("p", [5, 7])
def test_sylow_subgroup(p):
    G = get_group(p)
    N = G.sylow_p_subgroup()
    assert len(N) == p
    assert set(N) == {G.power(G.unipotent(), i) for i in range(p)}
    # every order-p element is conjugate into N
    cls = next(c for c in G.conjugacy_classes if G.element_order(c.rep) == p)
    assert any(m in set(N) for m in cls.members)


def test_sylow_intersection_trivial_or_all():
    # conjugates of N meet N in the identity or everything (prime order)
    G = get_group(5)
    N = set(G.sylow_p_subgroup())
    for w in G.elements:
        wi = G.inv(w)
        conj = {G.mul(G.mul(w, n), wi) for n in N}
        inter = conj & N
        assert inter == {G.identity} or inter == N


@pytest.mark.parametrize("p", [5, 7])
def test_pgl_projection(p):
    G = get_group(p)
    img = G.pgl_image()
    assert len(img) == p * (p * p - 1)
    ker = G.kernel_of_projection()
    assert ker == {G.identity, G.involution}
    assert G.proj_to_pgl(G.involution) == (1, 0, 0, 1)
    # homomorphism property on the canonical scaling
    rng = random.Random(6)
    for _ in range(200):
        g, h = rng.choice(G.elements), rng.choice(G.elements)
        assert G.proj_to_pgl(G.mul(g, h)) == G.mul(g, h)[:4]


def test_involution_is_central():
    for p in (5, 7):
        G = get_group(p)
        iota = G.involution
        for g in G.elements:
            assert G.mul(g, iota) == G.mul(iota, g)


def test_wild_normal_form_all_wild_elements():
    G = get_group(5)
    for g in G.elements:
        if not G.is_wild(g):
            continue
        u, sign = G.wild_normal_form(g)
        assert 1 <= u <= 4
        rep = (1, u, 0, 1, 1 if sign == 1 else 4, 0)
        # the normal form is conjugate to g, hence shares its class
        assert G.class_of(rep) == G.class_of(g)
        assert G.element_order(g) == (5 if sign == 1 else 10)


def test_wild_rejects_tame():
    G = get_group(5)
    with pytest.raises(ValueError):
        G.wild_normal_form(G.involution)
