"""Arithmetic in prime fields F_p and extensions F_{p^k}.

An extension field is described by a monic irreducible modulus of degree k
over F_p; elements are coefficient vectors of length k (constant term
first).  Every extension is built directly over F_p -- never as a relative
tower -- and embeddings between compatible extensions are computed on
demand by sending the source generator to a root of the source modulus in
the target field.

All choices are deterministic so that repeated runs are bit-for-bit
reproducible:

* the modulus of F_{p^k} is the first irreducible monic polynomial of
  degree k in lexicographic order of the coefficient vector (constant
  term most significant); for k = 1 the modulus is x;
* the canonical square root of an element is the one whose coefficient
  vector is lexicographically smaller of the two;
* an embedding uses the root of the source modulus that comes first in
  the lexicographic enumeration of target elements.
"""

from __future__ import annotations

import functools
import itertools
import random

# Fields up to this order get a cached table of canonical square roots;
# larger fields use Tonelli-Shanks exponentiation.
SQRT_TABLE_LIMIT = 100_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Small integer-coefficient polynomial helpers over F_p (low degree first).
# These back the modulus search and element arithmetic; they work on plain
# lists of ints to keep the inner loops fast.
# ---------------------------------------------------------------------------

def _zp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _zp_trim([c % p for c in out])


def _zp_divmod(a: list[int], m: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by m over F_p (m nonzero)."""
    rem = [c % p for c in a]
    _zp_trim(rem)
    dm = len(m) - 1
    q = [0] * max(0, len(rem) - dm)
    inv_lead = pow(m[-1], p - 2, p)
    while rem and len(rem) - 1 >= dm:
        shift = len(rem) - 1 - dm
        factor = (rem[-1] * inv_lead) % p
        q[shift] = factor
        for i, mi in enumerate(m):
            rem[shift + i] = (rem[shift + i] - factor * mi) % p
        _zp_trim(rem)
    return _zp_trim(q), rem


def _zp_rem(a: list[int], m: list[int], p: int) -> list[int]:
    return _zp_divmod(a, m, p)[1]


def _zp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _zp_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _zp_pow_mod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _zp_rem(base, m, p)
    while e:
        if e & 1:
            result = _zp_rem(_zp_mul(result, base, p), m, p)
        base = _zp_rem(_zp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _zp_is_irreducible(f: list[int], p: int) -> bool:
    """Irreducibility test for monic f of degree k >= 1 over F_p.

    f is irreducible iff x^(p^k) = x mod f and gcd(x^(p^(k/q)) - x, f) = 1
    for every prime q dividing k.
    """
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False  # divisible by x
    x = [0, 1]
    xq = _zp_pow_mod(x, p ** k, f, p)
    if xq != [0, 1]:
        return False
    for q in _prime_factors(k):
        d = k // q
        g = _zp_pow_mod(x, p ** d, f, p)
        g = [(gi - xi) % p for gi, xi in itertools.zip_longest(g, x, fillvalue=0)]
        _zp_trim(g)
        if len(_zp_gcd(g, f, p)) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over F_p in the deterministic
    enumeration order (coefficient vectors compared constant term first).

    The whole block with constant term 0 is divisible by x, hence reducible,
    and is skipped wholesale.
    """
    if k == 1:
        return (0, 1)
    for c0 in range(1, p):
        for upper in itertools.product(range(p), repeat=k - 1):
            f = [c0] + list(upper) + [1]
            # quick rejection: a root in F_p makes f reducible
            if any(sum(c * pow(a, i, p) for i, c in enumerate(f)) % p == 0
                   for a in range(p)):
                continue
            if _zp_is_irreducible(f, p):
                return tuple(f)
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# Field descriptors and elements
# ---------------------------------------------------------------------------

class FieldDescriptor:
    """The field F_{p^k} with a fixed monic irreducible modulus of degree k.

    Descriptors compare by (p, k, modulus).  Use :func:`make_field` so that
    equal descriptors are the same object and per-field caches are shared.
    """

    __slots__ = ("p", "k", "modulus", "order", "_hash", "_red_rows",
                 "_sqrt_table", "_nonresidue")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p ** k
        self._hash = hash((p, k, modulus))
        self._red_rows = None
        self._sqrt_table = None
        self._nonresidue = None

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FieldDescriptor)
                and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.k == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.k})"

    # -- element constructors ------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Build an element from an int (a prime-field constant) or from a
        coefficient sequence of length <= k (constant term first)."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElement(self, coeffs)
        seq = tuple(int(c) % self.p for c in value)
        if len(seq) > self.k:
            raise ValueError("coefficient vector longer than extension degree")
        return FieldElement(self, seq + (0,) * (self.k - len(seq)))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        """The class of x in F_p[x]/(modulus); equals 0 when k = 1."""
        if self.k == 1:
            return self.zero()
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        """All elements in lexicographic order of the coefficient vector."""
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, coeffs)

    def random_element(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    # -- internal arithmetic support ------------------------------------------

    def _reduction_rows(self):
        # row i holds the coefficients of x^(k+i) mod modulus, i = 0..k-2
        if self._red_rows is None:
            p, k = self.p, self.k
            rows = []
            cur = [-c % p for c in self.modulus[:-1]]  # x^k mod m
            rows.append(tuple(cur))
            for _ in range(k - 2):
                nxt = [0] + cur[:-1]
                lead = cur[-1]
                if lead:
                    for j in range(k):
                        nxt[j] = (nxt[j] - lead * self.modulus[j]) % p
                else:
                    nxt = [c % p for c in nxt]
                cur = nxt
                rows.append(tuple(cur))
            self._red_rows = rows
        return self._red_rows

    def _mul_coeffs(self, a: tuple, b: tuple) -> tuple:
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        rows = self._reduction_rows()
        for i in range(k - 1):
            c = prod[k + i] % p
            if c:
                row = rows[i]
                for j in range(k):
                    out[j] = (out[j] + c * row[j]) % p
        return tuple(out)

    def _sqrt_lookup(self):
        # canonical-root table, built once, for fields small enough
        if self._sqrt_table is None:
            table: dict[tuple, tuple] = {}
            for coeffs in itertools.product(range(self.p), repeat=self.k):
                sq = self._mul_coeffs(coeffs, coeffs)
                if sq not in table:
                    table[sq] = coeffs  # lex enumeration => first hit is canonical
            self._sqrt_table = table
        return self._sqrt_table


class FieldElement:
    """An element of F_{p^k}: an immutable coefficient vector tied to its field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- helpers ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(
                    f"field mismatch: {self.field} vs {other.field}; embed explicitly")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field,
                            tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field,
                            tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul_coeffs(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = self.field.p
        if self.field.k == 1:
            return FieldElement(self.field, (pow(self.coeffs[0], p - 2, p),))
        # extended Euclid on (poly, modulus)
        a = _zp_trim(list(self.coeffs))
        m = list(self.field.modulus)
        r0, r1 = m, a
        s0, s1 = [], [1]
        while r1:
            q, rem = _zp_divmod(r0, r1, p)
            r0, r1 = r1, rem
            qs1 = _zp_mul(q, s1, p)
            news = [(x - y) % p for x, y in itertools.zip_longest(s0, qs1, fillvalue=0)]
            _zp_trim(news)
            s0, s1 = s1, news
        # r0 = gcd: a nonzero constant, since the modulus is irreducible
        c_inv = pow(r0[0], p - 2, p)
        inv = [(c * c_inv) % p for c in s0]
        inv += [0] * (self.field.k - len(inv))
        return FieldElement(self.field, tuple(inv[:self.field.k]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, i: int = 1) -> "FieldElement":
        """The i-fold Frobenius a -> a^(p^i)."""
        return self ** (self.field.p ** (i % self.field.k))

    # -- comparisons -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.element(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field._hash, self.coeffs))

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        return f"{list(self.coeffs)}/{self.field!r}"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldDescriptor:
    """Descriptor of F_{p^k} with the deterministic first-irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        raise ValueError("p >= 5 required")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    return FieldDescriptor(p, k, first_irreducible(p, k))


# ---------------------------------------------------------------------------
# Quadratic residues and square roots
# ---------------------------------------------------------------------------

def legendre(a, p: int | None = None) -> int:
    """Legendre symbol on the prime field: 0, +1 or -1.

    Accepts a prime-field FieldElement, or an int together with p.
    """
    if isinstance(a, FieldElement):
        if a.field.k != 1:
            raise ValueError("legendre symbol is defined on the prime field only")
        p = a.field.p
        a = a.coeffs[0]
    elif p is None:
        raise ValueError("p required for integer input")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def _nonresidue(field: FieldDescriptor) -> FieldElement:
    if field._nonresidue is None:
        e = (field.order - 1) // 2
        for cand in field.elements():
            if cand.is_zero():
                continue
            if (cand ** e).coeffs != field.one().coeffs:
                field._nonresidue = cand
                break
    return field._nonresidue


def sqrt(a: FieldElement):
    """Canonical square root of a in its own field, or None.

    Canonical means the root whose coefficient vector is lexicographically
    smaller of the pair {r, -r}.  Small fields answer from a cached table;
    larger ones run Tonelli-Shanks.
    """
    field = a.field
    if a.is_zero():
        return field.zero()
    if field.order <= SQRT_TABLE_LIMIT:
        hit = field._sqrt_lookup().get(a.coeffs)
        return FieldElement(field, hit) if hit is not None else None
    q = field.order
    if (a ** ((q - 1) // 2)) != field.one():
        return None
    # Tonelli-Shanks
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = _nonresidue(field)
    c = z ** t
    r = a ** ((t + 1) // 2)
    w = a ** t
    m = s
    one = field.one()
    while w != one:
        i, probe = 0, w
        while probe != one:
            probe = probe * probe
            i += 1
        b = c ** (1 << (m - i - 1))
        r = r * b
        c = b * b
        w = w * c
        m = i
    return min(r, -r, key=lambda e: e.coeffs)


def sqrt_exhaustive(a: FieldElement, limit: int = 10 ** 6):
    """Brute-force canonical square root; the independent oracle for sqrt.

    Refuses to run above `limit` elements.
    """
    field = a.field
    if field.order > limit:
        raise ValueError(f"field of order {field.order} exceeds exhaustive limit {limit}")
    for r in field.elements():
        if r * r == a:
            return min(r, -r, key=lambda e: e.coeffs)
    return None


# ---------------------------------------------------------------------------
# Embeddings between extensions
# ---------------------------------------------------------------------------

class Embedding:
    """Ring homomorphism F_{p^s} -> F_{p^t} (s | t) fixing F_p.

    Realized by mapping the source generator to the root of the source
    modulus in the target that is first in the lexicographic enumeration
    of target elements.  `section` inverts the map on its image.
    """

    __slots__ = ("source", "target", "root", "_powers", "_solver")

    def __init__(self, source: FieldDescriptor, target: FieldDescriptor):
        if source.p != target.p:
            raise ValueError("characteristic mismatch")
        if target.k % source.k != 0:
            raise ValueError(
                f"degree {source.k} does not divide {target.k}; no embedding")
        self.source = source
        self.target = target
        if source == target:
            self.root = target.gen()
        elif source.k == 1:
            self.root = target.zero()  # modulus x has root 0
        else:
            self.root = _lex_min_root(source.modulus, target)
        powers = [target.one()]
        for _ in range(source.k - 1):
            powers.append(powers[-1] * self.root)
        self._powers = powers
        self._solver = None

    def apply(self, a: FieldElement) -> FieldElement:
        if a.field != self.source:
            raise ValueError("element not in the embedding's source field")
        out = self.target.zero()
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                out = out + pw * c
        return out

    def section(self, b: FieldElement) -> FieldElement:
        """Preimage of b under the embedding; raises if b is not in the image."""
        if b.field != self.target:
            raise ValueError("element not in the embedding's target field")
        p = self.source.p
        s, t = self.source.k, self.target.k
        # solve M c = b over F_p where column j of M is root^j
        rows = [[self._powers[j].coeffs[i] for j in range(s)] + [b.coeffs[i]]
                for i in range(t)]
        piv_col = 0
        pivots = []
        for col in range(s):
            sel = None
            for r in range(piv_col, t):
                if rows[r][col]:
                    sel = r
                    break
            if sel is None:
                continue
            rows[piv_col], rows[sel] = rows[sel], rows[piv_col]
            inv = pow(rows[piv_col][col], p - 2, p)
            rows[piv_col] = [(x * inv) % p for x in rows[piv_col]]
            for r in range(t):
                if r != piv_col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[piv_col])]
            pivots.append(col)
            piv_col += 1
        coeffs = [0] * s
        for idx, col in enumerate(pivots):
            coeffs[col] = rows[idx][s]
        for r in range(piv_col, t):
            if rows[r][s]:
                raise ValueError("element is not in the image of the embedding")
        cand = FieldElement(self.source, tuple(coeffs))
        if self.apply(cand) != b:
            raise ValueError("element is not in the image of the embedding")
        return cand


def _lex_min_root(modulus: tuple[int, ...], target: FieldDescriptor) -> FieldElement:
    """Lexicographically smallest root of an F_p-irreducible modulus in target.

    One root is found by equal-degree splitting; the full root set is its
    Frobenius orbit, so the lex-minimum is independent of the randomness.
    """
    from .poly import Poly

    s = len(modulus) - 1
    f = Poly(target, tuple(target.element(c) for c in modulus))
    rng = random.Random(target.order * s + target.k)
    root = _split_to_root(f, rng)
    orbit = [root]
    cur = root
    for _ in range(s - 1):
        cur = cur ** target.p
        orbit.append(cur)
    return min(orbit, key=lambda e: e.coeffs)


def _split_to_root(f, rng: random.Random):
    """One root of a squarefree polynomial that splits into linear factors."""
    from .poly import Poly

    field = f.field
    while f.degree() > 1:
        shift = field.random_element(rng)
        x_plus = Poly(field, (shift, field.one()))
        probe = x_plus.pow_mod((field.order - 1) // 2, f) - Poly.one(field)
        d = probe.gcd(f)
        if 0 < d.degree() < f.degree():
            f = d if d.degree() <= f.degree() - d.degree() else f.exact_div(d)
    c0, c1 = f.coeffs
    return -(c0 / c1)


@functools.lru_cache(maxsize=None)
def embedding(source: FieldDescriptor, target: FieldDescriptor) -> Embedding:
    return Embedding(source, target)


def embed(a: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Image of a under the canonical embedding of its field into target."""
    return embedding(a.field, target).apply(a)
