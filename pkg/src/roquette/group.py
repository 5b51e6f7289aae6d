"""The automorphism group of y^2 = x^p - x as a fibre product.

Elements are pairs (A, lam) with A in GL_2(F_p) and lam a square root of
det(A) living in F_{p^2}; the group of interest is the quotient by the
central subgroup {(c*I, (c|p)*c) : c in F_p^x}.  A coset has exactly one
representative whose matrix part has first nonzero entry (row-major) equal
to 1, and that normal form is what we store: a plain 6-tuple

    (a, b, c, d, l0, l1)

of integers mod p -- the matrix entries and the two coordinates of lam in
the fixed polynomial basis of F_{p^2}.  Tuples keep equality, hashing and
enumeration cheap; all structure lives on the RoquetteGroup context.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import ff
from .ff import make_field

GroupElement = tuple  # (a, b, c, d, l0, l1), ints mod p


@dataclass(frozen=True)
class ConjClass:
    rep: GroupElement
    members: tuple
    size: int


class RoquetteGroup:
    """Group context for one prime p >= 5; construct via get_group(p)."""

    def __init__(self, p: int):
        if not ff.is_prime(p) or p < 5:
            raise ValueError(f"p must be a prime >= 5, got {p}")
        self.p = p
        self.order = 2 * p * (p * p - 1)
        self.genus = (p - 1) // 2
        self.fp = make_field(p, 1)
        self.fp2 = make_field(p, 2)
        # z^2 = -m1*z - m0 in F_{p^2}
        m0, m1, _ = self.fp2.modulus
        self._m0 = m0
        self._m1 = m1
        self._inv = [0] + [pow(i, p - 2, p) for i in range(1, p)]
        self._leg = [0] + [1 if pow(i, (p - 1) // 2, p) == 1 else p - 1
                           for i in range(1, p)]
        self._det_roots = self._build_det_roots()
        self._elements = None
        self._classes = None
        self._class_index = None
        self._inverse_list = None

    # -- F_{p^2} scalar helpers on coefficient pairs -------------------------------

    def _lam_mul(self, x0, x1, y0, y1):
        p, m0, m1 = self.p, self._m0, self._m1
        t = x1 * y1
        return (x0 * y0 - t * m0) % p, (x0 * y1 + x1 * y0 - t * m1) % p

    def _lam_square_in_fp(self, l0, l1):
        """lam^2 when it lies in F_p (guaranteed for group members)."""
        s0, s1 = self._lam_mul(l0, l1, l0, l1)
        if s1 != 0:
            raise ValueError("lambda^2 is not in the prime field")
        return s0

    def _build_det_roots(self):
        # for each nonzero det value, its two square roots in F_{p^2},
        # ordered lexicographically
        roots = {}
        for v in range(1, self.p):
            r = ff.sqrt(self.fp2.element(v))
            c = r.coeffs
            nc = ((-c[0]) % self.p, (-c[1]) % self.p)
            roots[v] = (min(c, nc), max(c, nc))
        return roots

    # -- normal form and the group law -----------------------------------------------

    def canonicalize(self, a, b, c, d, l0, l1) -> GroupElement:
        p = self.p
        lead = a if a else (b if b else (c if c else d))
        mu = self._inv[lead]
        sc = (self._leg[mu] * mu) % p
        return ((a * mu) % p, (b * mu) % p, (c * mu) % p, (d * mu) % p,
                (l0 * sc) % p, (l1 * sc) % p)

    def element(self, matrix, lam) -> GroupElement:
        """Canonical class of (matrix, lam); validates the defining relation."""
        a, b, c, d = (x % self.p for x in matrix)
        if (a * d - b * c) % self.p == 0:
            raise ValueError("matrix is singular")
        if isinstance(lam, int):
            l0, l1 = lam % self.p, 0
        else:
            le = self.fp2.element(lam)
            l0, l1 = le.coeffs
        if self._lam_square_in_fp(l0, l1) != (a * d - b * c) % self.p:
            raise ValueError("lambda^2 != det(matrix)")
        return self.canonicalize(a, b, c, d, l0, l1)

    @property
    def identity(self) -> GroupElement:
        return (1, 0, 0, 1, 1, 0)

    @property
    def involution(self) -> GroupElement:
        """The central element acting as (x, y) -> (x, -y)."""
        return (1, 0, 0, 1, self.p - 1, 0)

    def unipotent(self, u: int = 1) -> GroupElement:
        """Order-p element: matrix [[1, u], [0, 1]] with lam = 1."""
        if u % self.p == 0:
            raise ValueError("unipotent parameter must be nonzero mod p")
        return (1, u % self.p, 0, 1, 1, 0)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        p = self.p
        a, b, c, d, l0, l1 = g
        e, f_, i, j, k0, k1 = h
        n0, n1 = self._lam_mul(l0, l1, k0, k1)
        return self.canonicalize((a * e + b * i) % p, (a * f_ + b * j) % p,
                                 (c * e + d * i) % p, (c * f_ + d * j) % p,
                                 n0, n1)

    def inv(self, g: GroupElement) -> GroupElement:
        p = self.p
        a, b, c, d, l0, l1 = g
        det = (a * d - b * c) % p
        di = self._inv[det]
        # lam^(-1) = lam / lam^2 = lam * det^(-1)
        return self.canonicalize((d * di) % p, (-b * di) % p,
                                 (-c * di) % p, (a * di) % p,
                                 (l0 * di) % p, (l1 * di) % p)

    def power(self, g: GroupElement, n: int) -> GroupElement:
        if n < 0:
            return self.power(self.inv(g), -n)
        acc = self.identity
        base = g
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def element_order(self, g: GroupElement) -> int:
        acc = g
        n = 1
        while acc != self.identity:
            acc = self.mul(acc, g)
            n += 1
            if n > self.order:
                raise RuntimeError("order exceeds group order; broken element")
        return n

    def det(self, g: GroupElement) -> int:
        a, b, c, d = g[:4]
        return (a * d - b * c) % self.p

    def lam_element(self, g: GroupElement) -> ff.FieldElement:
        return self.fp2.element((g[4], g[5]))

    # -- enumeration -------------------------------------------------------------------

    @property
    def elements(self) -> tuple:
        """All 2p(p^2-1) canonical elements, in a fixed deterministic order."""
        if self._elements is None:
            p = self.p
            out = []
            for mat in self._canonical_matrices():
                a, b, c, d = mat
                det = (a * d - b * c) % p
                for lam in self._det_roots[det]:
                    out.append((a, b, c, d, lam[0], lam[1]))
            self._elements = tuple(out)
        return self._elements

    def _canonical_matrices(self):
        # matrices with first nonzero entry 1 and det != 0: one per PGL_2 class;
        # a = b = 0 would force det = 0, so only two leading shapes occur
        p = self.p
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (d - b * c) % p:
                        yield (1, b, c, d)
        for c in range(1, p):
            for d in range(p):
                yield (0, 1, c, d)

    def sqrt_group_elements(self) -> list:
        """All lam in F_{p^2} with lam^2 in F_p^x; there are 2(p-1) of them."""
        out = []
        for e in self.fp2.elements():
            if e.is_zero():
                continue
            sq = e * e
            if sq.coeffs[1] == 0 and sq.coeffs[0] != 0:
                out.append(e)
        return out

    # -- conjugacy ----------------------------------------------------------------------

    @property
    def conjugacy_classes(self) -> tuple:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    @property
    def class_index(self) -> dict:
        """Map element -> index into conjugacy_classes."""
        if self._class_index is None:
            self._compute_classes()
        return self._class_index

    def _compute_classes(self):
        elements = self.elements
        if self._inverse_list is None:
            self._inverse_list = [self.inv(g) for g in elements]
        pairs = list(zip(elements, self._inverse_list))
        index: dict = {}
        classes = []
        mul = self.mul
        for h in elements:
            if h in index:
                continue
            members_seen = set()
            members = []
            for g, gi in pairs:
                m = mul(mul(g, h), gi)
                if m not in members_seen:
                    members_seen.add(m)
                    members.append(m)
            ci = len(classes)
            for m in members:
                index[m] = ci
            # members kept in discovery order; size is what matters downstream
            classes.append(ConjClass(rep=h, members=tuple(members), size=len(members)))
        self._classes = tuple(classes)
        self._class_index = index

    def class_of(self, g: GroupElement) -> int:
        return self.class_index[g]

    # -- distinguished subgroups and the projection ---------------------------------------

    def sylow_p_subgroup(self) -> tuple:
        """The cyclic group of order p generated by the unipotent element."""
        u = self.unipotent()
        out = [self.identity]
        cur = u
        while cur != self.identity:
            out.append(cur)
            cur = self.mul(cur, u)
        if len(out) != self.p:
            raise RuntimeError("unipotent subgroup has wrong order")
        return tuple(out)

    def proj_to_pgl(self, g: GroupElement) -> tuple:
        """Image in PGL_2(F_p): the canonically scaled matrix part."""
        return g[:4]

    def pgl_image(self) -> set:
        return {g[:4] for g in self.elements}

    def kernel_of_projection(self) -> set:
        return {g for g in self.elements if g[:4] == (1, 0, 0, 1)}

    # -- wild elements ------------------------------------------------------------------------

    def is_wild(self, g: GroupElement) -> bool:
        """True when p divides the order of g (unipotent, non-identity image)."""
        a, b, c, d = g[:4]
        p = self.p
        if b % p == 0 and c % p == 0 and a == d:
            return False  # scalar image: identity or the involution
        tr, det = (a + d) % p, (a * d - b * c) % p
        return (tr * tr - 4 * det) % p == 0

    def wild_normal_form(self, g: GroupElement) -> tuple[int, int]:
        """Conjugate a wild element to ([[1, u], [0, 1]], sign); return (u, sign).

        The matrix part has a unique eigenvalue t = tr/2; rebasing along the
        rank-one nilpotent A - t*I gives the unipotent shape, and any square
        root of the conjugator's determinant lifts the conjugation into the
        group.  sign = +1 corresponds to order p, sign = -1 to order 2p.
        """
        if not self.is_wild(g):
            raise ValueError("element is not wild")
        p = self.p
        a, b, c, d = g[:4]
        t = ((a + d) * self._inv[2]) % p
        n = ((a - t) % p, b % p, c % p, (d - t) % p)
        # column e with n*e != 0
        if n[0] or n[2]:
            e = (1, 0)
        else:
            e = (0, 1)
        ne = ((n[0] * e[0] + n[1] * e[1]) % p, (n[2] * e[0] + n[3] * e[1]) % p)
        # basis change matrix w with columns (ne, e); conjugating by w^{-1}
        w = (ne[0], e[0], ne[1], e[1])
        detw = (w[0] * w[3] - w[1] * w[2]) % p
        if detw == 0:
            raise RuntimeError("degenerate basis in wild normalization")
        lam_w = self._det_roots[detw][0]
        wg = self.element((w[0], w[1], w[2], w[3]), self.fp2.element(lam_w))
        rep = self.mul(self.mul(self.inv(wg), g), wg)
        ra, rb, rc, rd, rl0, rl1 = rep
        if not (ra == 1 and rd == 1 and rc == 0 and rb % p and rl1 == 0):
            raise RuntimeError(f"wild normalization failed: {rep}")
        if rl0 not in (1, p - 1):
            raise RuntimeError("wild normal form has non-unit lambda")
        return rb, (1 if rl0 == 1 else -1)

    # -- statistics ------------------------------------------------------------------------------

    def order_statistics(self) -> dict:
        counts: dict[int, int] = {}
        for cls in self.conjugacy_classes:
            n = self.element_order(cls.rep)
            counts[n] = counts.get(n, 0) + cls.size
        return counts


@functools.lru_cache(maxsize=None)
def get_group(p: int) -> RoquetteGroup:
    """Shared, cached group context (class data is expensive at p = 13)."""
    return RoquetteGroup(p)
