"""Divisor-class arithmetic on the Jacobian of y^2 = x^p - x and the
finite-level realization of the group action on ell-torsion.

Divisor classes are reduced Mumford pairs (u, v): u monic of degree at
most the genus, v of smaller degree, with v^2 = x^p - x mod u.  The group
law is Cantor composition and reduction; the identity is (1, 0).

Over F_{p^(2m)} the Frobenius acts on the Jacobian as the scalar
eps * p^m with eps = +1 iff p = 1 mod 4, which gives the closed order
formula #J = (1 - (eps*p)^m)^(2g) and pins down which extension contains
the full ell-torsion: m is the multiplicative order of eps*p mod ell.

The action of a curve automorphism on a class is computed pointwise: the
support of u is split in an extension field, each point is moved by the
curve action, the base point contribution deg(u) * (g(inf) - inf) is
subtracted, and the reduced result is projected back down to the base
field (it is Galois-stable by construction).  The working extension
always has degree divisible by 4 so the lambda realization stays
consistent with the character computations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import curve, ff
from .character import ClassFunction
from .ff import FieldDescriptor, make_field
from .group import RoquetteGroup
from .poly import Poly, roots_with_multiplicity


def epsilon(p: int) -> int:
    """Sign of the Frobenius scalar over F_{p^2}: +1 iff p = 1 mod 4."""
    return 1 if p % 4 == 1 else -1


def jacobian_order(p: int, m: int) -> int:
    """#J(F_{p^(2m)}) = (1 - (eps*p)^m)^(2g)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    g2 = p - 1  # 2g
    return (1 - (epsilon(p) * p) ** m) ** g2


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    k, cur = 1, a
    while cur != 1:
        cur = (cur * a) % n
        k += 1
    return k


class MumfordDivisor:
    """A reduced divisor class (u, v) over a fixed field."""

    __slots__ = ("field", "u", "v", "_key")

    def __init__(self, field: FieldDescriptor, u: Poly, v: Poly):
        self.field = field
        self.u = u
        self.v = v
        self._key = (tuple(c.coeffs for c in u.coeffs),
                     tuple(c.coeffs for c in v.coeffs))

    def key(self):
        return self._key

    def degree(self) -> int:
        return self.u.degree()

    def is_zero(self) -> bool:
        return self.u.degree() == 0

    def __eq__(self, other):
        return (isinstance(other, MumfordDivisor)
                and self.field == other.field and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"D(u={self.u!r}, v={self.v!r})"


class CurveJacobian:
    """Cantor arithmetic on the Jacobian over one coefficient field."""

    def __init__(self, field: FieldDescriptor, p: int):
        if field.p != p:
            raise ValueError("field characteristic does not match p")
        self.field = field
        self.p = p
        self.genus = (p - 1) // 2
        coeffs = [0] * (p + 1)
        coeffs[1] = -1
        coeffs[p] = 1
        self.f = Poly.from_ints(field, coeffs)  # x^p - x

    def zero(self) -> MumfordDivisor:
        return MumfordDivisor(self.field, Poly.one(self.field), Poly.zero(self.field))

    def from_point(self, P) -> MumfordDivisor:
        if P is curve.INFINITY:
            return self.zero()
        if P.x.field != self.field:
            raise ValueError("point lies over a different field")
        if P.y * P.y != self.f.evaluate(P.x):
            raise ValueError("point is not on the curve")
        u = Poly(self.field, (-P.x, self.field.one()))
        v = Poly(self.field, (P.y,))
        return MumfordDivisor(self.field, u, v)

    def is_valid(self, D: MumfordDivisor) -> bool:
        du = D.u.degree()
        if du < 0 or du > self.genus:
            return False
        if D.u.leading() != self.field.one():
            return False
        if du == 0:
            return D.v.is_zero()
        if D.v.degree() >= du:
            return False
        return ((D.v * D.v - self.f) % D.u).is_zero()

    def neg(self, D: MumfordDivisor) -> MumfordDivisor:
        return MumfordDivisor(self.field, D.u, (-D.v) % D.u)

    def add(self, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
        if D1.field != self.field or D2.field != self.field:
            raise ValueError("divisors live over a different field")
        u1, v1 = D1.u, D1.v
        u2, v2 = D2.u, D2.v
        # composition
        d1, e1, e2 = u1.xgcd(u2)
        d, c1, c2 = d1.xgcd(v1 + v2)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2).exact_div(d * d)
        num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + self.f)
        v = num.exact_div(d) % u
        # reduction
        while u.degree() > self.genus:
            u = (self.f - v * v).exact_div(u)
            u = u.monic()
            v = (-v) % u
        return MumfordDivisor(self.field, u.monic(), v % u.monic())

    def scalar_mul(self, n: int, D: MumfordDivisor) -> MumfordDivisor:
        if n < 0:
            return self.scalar_mul(-n, self.neg(D))
        acc = self.zero()
        base = D
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def random_divisor(self, rng: random.Random) -> MumfordDivisor:
        """Sum of genus random points, assembled from random x-coordinates."""
        acc = self.zero()
        picked = 0
        while picked < self.genus:
            x = self.field.random_element(rng)
            val = self.f.evaluate(x)
            if val.is_zero():
                y = self.field.zero()
            else:
                y = ff.sqrt(val)
                if y is None:
                    continue
                if rng.randrange(2):
                    y = -y
            acc = self.add(acc, self.from_point(curve.Point(x, y)))
            picked += 1
        return acc

    def enumerate_reduced(self, cap: int = 500_000) -> list:
        """Every reduced divisor class; the brute-force order oracle.

        Only practical for tiny fields and genus <= 2 (the cap guards the
        degree-2 double loop).
        """
        if self.genus > 2:
            raise ValueError("exhaustive enumeration supported up to genus 2")
        q = self.field.order
        if q * q > cap:
            raise ValueError(f"enumeration of ~{q * q} pairs exceeds cap {cap}")
        field = self.field
        out = [self.zero()]
        # degree 1: points (a, b) with b^2 = f(a)
        for a in field.elements():
            val = self.f.evaluate(a)
            if val.is_zero():
                out.append(self.from_point(curve.Point(a, field.zero())))
            else:
                b = ff.sqrt(val)
                if b is not None:
                    out.append(self.from_point(curve.Point(a, b)))
                    out.append(self.from_point(curve.Point(a, -b)))
        if self.genus < 2:
            return out
        # degree 2: u = x^2 + u1 x + u0, v = v1 x + v0 with v^2 = f mod u
        mul = field._mul_coeffs
        two = field.element(2).coeffs
        for u1e in field.elements():
            u1 = u1e.coeffs
            for u0e in field.elements():
                u0 = u0e.coeffs
                u = Poly(field, (u0e, u1e, field.one()))
                fr = self.f % u
                fr0, fr1 = fr[0].coeffs, fr[1].coeffs
                for v1e in field.elements():
                    v1 = v1e.coeffs
                    v1sq = mul(v1, v1)
                    # v^2 mod u = (2 v1 v0 - v1^2 u1) x + (v0^2 - v1^2 u0)
                    t1 = mul(v1sq, u1)
                    t0 = mul(v1sq, u0)
                    for v0e in field.elements():
                        v0 = v0e.coeffs
                        c1 = tuple((a - b) % field.p
                                   for a, b in zip(mul(two, mul(v1, v0)), t1))
                        if c1 != fr1:
                            continue
                        c0 = tuple((a - b) % field.p
                                   for a, b in zip(mul(v0, v0), t0))
                        if c0 == fr0:
                            out.append(MumfordDivisor(field, u, Poly(field, (v0e, v1e))))
        return out


# ---------------------------------------------------------------------------
# Acting on divisor classes
# ---------------------------------------------------------------------------

def _splitting_lcm(jac: CurveJacobian, u: Poly) -> int:
    """lcm of the degrees of the irreducible factors of u (distinct-degree)."""
    if u.degree() <= 0:
        return 1
    sf = u.exact_div(u.gcd(u.derivative())) if u.degree() > 1 else u
    L = 1
    h = Poly.x(jac.field)
    cur = sf
    d = 0
    while cur.degree() > 0:
        d += 1
        h = h.pow_mod(jac.field.order, cur)
        g = h - Poly.x(jac.field)
        com = cur.gcd(g)
        if com.degree() > 0:
            L = L * d // math.gcd(L, d)
            cur = cur.exact_div(com)
        if d > sf.degree():
            raise RuntimeError("distinct-degree factorization ran away")
    return L


def act_on_class(group: RoquetteGroup, g, D: MumfordDivisor) -> MumfordDivisor:
    """Image of the divisor class D under the automorphism g.

    Splits the support in an extension whose degree is divisible by 4,
    moves each point with the curve action, subtracts deg(u) copies of the
    image of the base point, and projects the reduced result back to D's
    field.
    """
    p = group.p
    base_field = D.field
    if base_field.k % 2:
        raise ValueError("divisor field must contain the quadratic extension")
    jac_base = CurveJacobian(base_field, p)
    if D.is_zero():
        return D
    L = _splitting_lcm(jac_base, D.u)
    wk = base_field.k * L
    wk = (wk * 4) // math.gcd(wk, 4)  # lcm with 4 for the lambda route
    if wk > 24:
        raise ValueError(
            f"splitting the support needs a degree-{wk} extension, "
            "beyond the degree-24 cap")
    work = make_field(p, wk)
    emb = ff.embedding(base_field, work)
    jac = CurveJacobian(work, p)

    u_w = Poly(work, tuple(emb.apply(c) for c in D.u.coeffs))
    v_w = Poly(work, tuple(emb.apply(c) for c in D.v.coeffs))
    acc = jac.zero()
    deg = D.degree()
    for root, mult in roots_with_multiplicity(u_w):
        P = curve.Point(root, v_w.evaluate(root))
        Q = curve.act(group, g, P, check=False)
        if Q is curve.INFINITY:
            continue
        cls = jac.from_point(Q)
        for _ in range(mult):
            acc = jac.add(acc, cls)
    # subtract deg * (g(inf) - inf)
    c = g[2] % p
    if c:
        a = g[0] % p
        base_image = jac.from_point(
            curve.Point(work.element((a * pow(c, p - 2, p)) % p), work.zero()))
        acc = jac.add(acc, jac.scalar_mul(-deg, base_image))
    # project back to the base field
    try:
        u_b = Poly(base_field, tuple(emb.section(cc) for cc in acc.u.coeffs))
        v_b = Poly(base_field, tuple(emb.section(cc) for cc in acc.v.coeffs))
    except ValueError as exc:
        raise RuntimeError("image class is not Galois-stable; "
                           "this indicates an internal inconsistency") from exc
    out = MumfordDivisor(base_field, u_b, v_b)
    if not jac_base.is_valid(out):
        raise RuntimeError("projected image is not a valid reduced divisor")
    return out


# ---------------------------------------------------------------------------
# ell-torsion bases and representation matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionBasis:
    ell: int
    m: int
    field: FieldDescriptor
    jacobian_order: int
    basis: tuple
    span: dict  # divisor key -> coordinate tuple mod ell
    seed: int


def torsion_basis(group: RoquetteGroup, ell: int, seed: int = 0,
                  bound: int = 10_000) -> TorsionBasis:
    """A basis of the full ell-torsion, found by seeded random sampling.

    Random classes over F_{p^(2m)} are multiplied by the prime-to-ell part
    of the Jacobian order, stripped to exact order ell, and kept when they
    extend the span; the span (all ell^(2g) combinations) is enumerated
    exhaustively, which doubles as the discrete-log table for expressing
    images in the basis.
    """
    p = group.p
    if not ff.is_prime(ell):
        raise ValueError(f"ell must be prime, got {ell}")
    if ell == p:
        raise ValueError("ell must differ from p")
    g2 = p - 1  # 2g
    if ell ** g2 > bound:
        raise ValueError(
            f"ell^(2g) = {ell ** g2} exceeds the brute-force bound {bound}")
    m = multiplicative_order(epsilon(p) * p, ell)
    field = make_field(p, 2 * m)
    n_jac = jacobian_order(p, m)
    # cross-check the Frobenius sign against the curve count over F_{p^2}
    if curve.point_count(p, 2) != p * p + 1 - (p - 1) * epsilon(p) * p:
        raise RuntimeError("Frobenius sign contradicts the curve count; aborting")
    v = 0
    rest = n_jac
    while rest % ell == 0:
        rest //= ell
        v += 1
    if v < g2:
        raise RuntimeError("ell-part of the Jacobian order is too small")
    cofactor = n_jac // ell ** v
    jac = CurveJacobian(field, p)
    rng = random.Random(seed * 1_000_003 + ell)
    zero = jac.zero()
    span = {zero.key(): (0,) * g2}
    span_divisors = {zero.key(): zero}
    basis: list = []
    attempts = 0
    while len(basis) < g2:
        attempts += 1
        if attempts > 500:
            raise RuntimeError("torsion basis search did not converge")
        D = jac.random_divisor(rng)
        E = jac.scalar_mul(cofactor, D)
        if E.is_zero():
            continue
        # strip to exact order ell
        while True:
            F_next = jac.scalar_mul(ell, E)
            if F_next.is_zero():
                break
            E = F_next
        if E.key() in span:
            continue
        # extend the span by the new generator
        idx = len(basis)
        basis.append(E)
        new_span = dict(span)
        new_divs = dict(span_divisors)
        cur = {k: (span_divisors[k], span[k]) for k in span}
        for c in range(1, ell):
            nxt = {}
            for _, (Dv, vec) in cur.items():
                S = jac.add(Dv, E)
                nv = vec[:idx] + (c,) + vec[idx + 1:]
                nxt[S.key()] = (S, nv)
            for key, (S, nv) in nxt.items():
                new_span[key] = nv
                new_divs[key] = S
            cur = nxt
        span = new_span
        span_divisors = new_divs
    if len(span) != ell ** g2:
        raise RuntimeError(
            f"span has {len(span)} classes, expected {ell ** g2}")
    return TorsionBasis(ell=ell, m=m, field=field, jacobian_order=n_jac,
                        basis=tuple(basis), span=span, seed=seed)


def rep_matrix(group: RoquetteGroup, g, basis: TorsionBasis) -> tuple:
    """Matrix (rows) of g on the ell-torsion in the given basis."""
    ell = basis.ell
    g2 = len(basis.basis)
    cols = []
    for D in basis.basis:
        E = act_on_class(group, g, D)
        vec = basis.span.get(E.key())
        if vec is None:
            raise RuntimeError("image of a torsion class left the span; "
                               "the torsion module is not stable as computed")
        cols.append(vec)
    return tuple(tuple(cols[j][i] % ell for j in range(g2)) for i in range(g2))


def mat_mul(A, B, ell: int):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % ell
                       for j in range(n)) for i in range(n))


def mat_det(A, ell: int) -> int:
    n = len(A)
    M = [list(row) for row in A]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] % ell), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = (det * M[col][col]) % ell
        inv = pow(M[col][col], ell - 2, ell)
        for r in range(col + 1, n):
            f = (M[r][col] * inv) % ell
            if f:
                M[r] = [(x - f * y) % ell for x, y in zip(M[r], M[col])]
    return det % ell


def mat_trace(A, ell: int) -> int:
    return sum(A[i][i] for i in range(len(A))) % ell


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def rho_ell_traces(group: RoquetteGroup, basis: TorsionBasis) -> ClassFunction:
    """Per-class traces mod ell of the torsion representation."""
    vals = []
    for cls in group.conjugacy_classes:
        M = rep_matrix(group, cls.rep, basis)
        vals.append(mat_trace(M, basis.ell))
    return ClassFunction(p=group.p, values=tuple(vals))


def crt_reconstruct(p: int, traces: dict) -> ClassFunction:
    """Recombine per-ell traces into the unique small integer class function.

    The moduli product must exceed 2(p-1) so that values bounded by the
    character degree are determined; reconstructed values outside that
    bound mean the congruences were inconsistent.
    """
    ells = sorted(traces)
    if not ells:
        raise ValueError("no trace data supplied")
    modulus = 1
    for ell in ells:
        modulus *= ell
    if modulus <= 2 * (p - 1):
        raise ValueError(
            f"moduli product {modulus} is too small for values up to {p - 1}")
    n_classes = len(traces[ells[0]])
    for ell in ells:
        if len(traces[ell]) != n_classes:
            raise ValueError("trace class functions have mismatched class lists")
    out = []
    for i in range(n_classes):
        x = 0
        for ell in ells:
            r = traces[ell].values[i] % ell
            step = modulus // ell
            x += r * step * pow(step, -1, ell)
        x %= modulus
        if x > modulus // 2:
            x -= modulus
        if abs(x) > p - 1:
            raise ValueError(
                f"reconstructed value {x} exceeds the degree bound {p - 1}; "
                "the congruences are inconsistent")
        out.append(x)
    return ClassFunction(p=p, values=tuple(out))
