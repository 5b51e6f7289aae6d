"""The character of the automorphism group on the first cohomology of
the curve, with the checks that certify its arithmetic nature.

The character is assembled from fixed-point data: the value at a
nonidentity class is 2 minus the total multiplicity of the fixed-point
scheme of any representative, and the value at the identity is 2g = p-1.
All downstream arithmetic (inner products, restriction multiplicities,
the Frobenius-Schur indicator) is done in exact rationals.

The certifying chain for the final verdict: an irreducible character with
integer values and Frobenius-Schur indicator -1 belongs to a quaternionic
representation, so its Schur index over Q is 2, and a multiplicity-one
integer character of Schur index 2 cannot come from a representation
defined over Q.  Combined with the specialization theory of fundamental
groups, that obstructs lifting the associated quotient variety to
characteristic 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import curve
from .group import RoquetteGroup


@dataclass(frozen=True)
class ClassFunction:
    """Values (one per conjugacy class, in class order) on a fixed group."""

    p: int
    values: tuple

    def value_on_class(self, i: int):
        return self.values[i]

    def value_on(self, group: RoquetteGroup, g):
        return self.values[group.class_of(g)]

    def __len__(self):
        return len(self.values)


def lefschetz_character(group: RoquetteGroup,
                        precision: int | None = None) -> ClassFunction:
    """The H^1 character: chi(1) = p-1 and chi(g) = 2 - L(g) otherwise."""
    vals = []
    for cls in group.conjugacy_classes:
        if cls.rep == group.identity:
            vals.append(group.p - 1)
        else:
            vals.append(2 - curve.fixed_scheme_degree(group, cls.rep, precision))
    return ClassFunction(p=group.p, values=tuple(vals))


def trivial_character(group: RoquetteGroup) -> ClassFunction:
    return ClassFunction(p=group.p, values=(1,) * len(group.conjugacy_classes))


def regular_character(group: RoquetteGroup) -> ClassFunction:
    vals = tuple(group.order if cls.rep == group.identity else 0
                 for cls in group.conjugacy_classes)
    return ClassFunction(p=group.p, values=vals)


def inner_product(group: RoquetteGroup, f1: ClassFunction,
                  f2: ClassFunction) -> Fraction:
    """(1/|G|) sum over classes of size * f1 * f2 (real-valued characters)."""
    if len(f1) != len(f2) or f1.p != f2.p:
        raise ValueError("class functions live on different class lists")
    total = 0
    for cls, v1, v2 in zip(group.conjugacy_classes, f1.values, f2.values):
        total += cls.size * v1 * v2
    return Fraction(total, group.order)


def order_p_value(group: RoquetteGroup, chi: ClassFunction):
    """chi on the single class of order-p elements."""
    u = group.unipotent()
    return chi.values[group.class_of(u)]


def sylow_restriction(group: RoquetteGroup,
                      chi: ClassFunction) -> tuple[Fraction, Fraction]:
    """Multiplicities (trivial, each nontrivial) of the restriction to the
    order-p subgroup.

    All nontrivial characters of the cyclic group of order p occur equally
    often because the order-p elements form a single conjugacy class, so
    the multiplicities reduce to the closed forms
        trivial    = (chi(1) + (p-1) * n) / p
        nontrivial = (chi(1) - n) / p
    with n the chi-value on the order-p class.  Both must be non-negative
    integers for a true character.
    """
    p = group.p
    chi1 = chi.values[group.class_of(group.identity)]
    n = order_p_value(group, chi)
    return (Fraction(chi1 + (p - 1) * n, p), Fraction(chi1 - n, p))


def fs_indicator(group: RoquetteGroup, chi: ClassFunction) -> Fraction:
    """Frobenius-Schur indicator (1/|G|) sum of chi(g^2) over the group."""
    index = group.class_index
    counts = [0] * len(chi)
    for g in group.elements:
        counts[index[group.mul(g, g)]] += 1
    total = sum(c * v for c, v in zip(counts, chi.values))
    return Fraction(total, group.order)


def kernel_of_character(group: RoquetteGroup, chi: ClassFunction) -> set:
    """Elements with chi(g) = chi(1); trivial exactly when faithful."""
    chi1 = chi.values[group.class_of(group.identity)]
    kernel_classes = {i for i, v in enumerate(chi.values) if v == chi1}
    return {g for g in group.elements if group.class_of(g) in kernel_classes}


@dataclass(frozen=True)
class ObstructionVerdict:
    integer_valued: bool
    irreducible: bool
    fs_indicator: int | Fraction
    schur_index_witness: int | None  # 2, or None when not witnessed
    rationality_class_nontrivial: bool
    lifts: str  # "obstructed" | "not determined"

    def as_dict(self) -> dict:
        nu = self.fs_indicator
        return {
            "integer_valued": self.integer_valued,
            "irreducible": self.irreducible,
            "fs_indicator": int(nu) if isinstance(nu, Fraction) and nu.denominator == 1
            else (nu if isinstance(nu, int) else [nu.numerator, nu.denominator]),
            "schur_index_witness": self.schur_index_witness,
            "rationality_class_nontrivial": self.rationality_class_nontrivial,
            "lifts": self.lifts,
        }


def schur_obstruction_verdict(group: RoquetteGroup,
                              chi: ClassFunction) -> ObstructionVerdict:
    """Combine integrality, irreducibility and the indicator into a verdict.

    schur_index_witness is set to 2 exactly when the character is integer
    valued, irreducible and quaternionic (indicator -1): the underlying
    division algebra is then a quaternion algebra, the index is 2, and a
    multiplicity-one character is not divisible by it, so the obstruction
    class is nontrivial and the lift is blocked.
    """
    integer_valued = all(
        isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
        for v in chi.values)
    irreducible = inner_product(group, chi, chi) == 1
    nu = fs_indicator(group, chi)
    if nu.denominator == 1:
        nu_out: int | Fraction = int(nu)
    else:
        nu_out = nu
    witnessed = integer_valued and irreducible and nu_out == -1
    return ObstructionVerdict(
        integer_valued=integer_valued,
        irreducible=irreducible,
        fs_indicator=nu_out,
        schur_index_witness=2 if witnessed else None,
        rationality_class_nontrivial=witnessed,
        lifts="obstructed" if witnessed else "not determined",
    )
