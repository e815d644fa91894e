"""Volume polynomials of polygon spaces, one per chamber.

For a generic length vector r the moduli space of closed n-gons with those
side lengths carries a symplectic volume that is polynomial in r on each
chamber.  This module builds that polynomial exactly from the chamber
signature, evaluates it, differentiates it (the constants of top-order
derivatives are intersection numbers of the first Chern classes), and
computes the jump between the polynomials of two adjacent chambers.

All volumes are reported without the transcendental prefactor: the true
symplectic volume is (2π)^(n−3) times the rational value computed here.
Every polynomial is stored in the homogeneous convention (all n variables);
presentation conventions are applied at operation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from polygonspace.chambers import ChamberSignature, IndexSet, LengthVector, signature
from polygonspace.ratpoly import MultiIndex, MultiPoly

SCALE_NOTE = "(2pi)^(n-3)"


class AffineIndexUsed(ValueError):
    """A multi-index touches the variable eliminated by an affine convention."""


class WrongTotalDegree(ValueError):
    """A multi-index or class has the wrong total degree for the operation."""


class NotAdjacent(ValueError):
    """Two signatures do not differ in exactly one complementary pair."""


@dataclass(frozen=True)
class Convention:
    """Presentation convention for chamber polynomials.

    The homogeneous convention keeps all n length variables.  AFFINE(j)
    restricts to the unit-perimeter slice by substituting
    r_j = 1 − Σ_{i≠j} r_i and dropping variable j, so its polynomials live
    in the n−1 variables r_i, i ≠ j, in increasing order.
    """

    affine_index: int | None = None

    def __post_init__(self) -> None:
        j = self.affine_index
        if j is not None and j < 1:
            raise ValueError(f"affine index must be 1-based, got {j}")

    @classmethod
    def homogeneous(cls) -> Convention:
        return cls(None)

    @classmethod
    def affine(cls, j: int) -> Convention:
        return cls(j)

    @classmethod
    def parse(cls, text: str) -> Convention:
        """Accepts "homogeneous" or "affine:j" (j a 1-based variable index)."""
        if text == "homogeneous":
            return cls(None)
        if text.startswith("affine:"):
            return cls(int(text.split(":", 1)[1]))
        raise ValueError(f"unknown convention {text!r}")

    @property
    def is_homogeneous(self) -> bool:
        return self.affine_index is None

    def __str__(self) -> str:
        if self.affine_index is None:
            return "homogeneous"
        return f"affine:{self.affine_index}"

    def _check_n(self, n: int) -> None:
        j = self.affine_index
        if j is not None and j > n:
            raise ValueError(f"affine index {j} exceeds n = {n}")

    def apply(self, poly: MultiPoly) -> MultiPoly:
        """Present a homogeneous n-variable polynomial in this convention."""
        j = self.affine_index
        if j is None:
            return poly
        self._check_n(poly.nvars)
        replacement = 1 - MultiPoly.linear_form([1] * (poly.nvars - 1))
        return poly.eliminate_variable(j - 1, replacement)

    def reduce_multiindex(self, alpha: MultiIndex, n: int) -> MultiIndex:
        """Drop the eliminated position from alpha; reject if it is used."""
        if len(alpha) != n:
            raise ValueError(f"multi-index has length {len(alpha)}, expected {n}")
        j = self.affine_index
        if j is None:
            return alpha
        self._check_n(n)
        if alpha.exponents[j - 1] != 0:
            raise AffineIndexUsed(
                f"derivative in r_{j} is not available under {self}"
            )
        return MultiIndex(alpha.exponents[: j - 1] + alpha.exponents[j:])


@dataclass(frozen=True)
class VolumePolynomial:
    """The chamber's volume polynomial, homogeneous of degree n−3 in r₁..rₙ.

    The true volume is (2π)^(n−3) times v; identically zero on empty
    chambers.
    """

    chamber: ChamberSignature
    v: MultiPoly
    scale_note: str = SCALE_NOTE


@lru_cache(maxsize=None)
def volume_polynomial(sig: ChamberSignature) -> VolumePolynomial:
    """Expand the signed sum of ε_I^{n−3} over long sets, full set included.

    v = −1/(2(n−3)!) · Σ_{I long} (−1)^{n−|I|} ε_I^{n−3}, where ε_I is the
    linear form Σ_{i∈I} rᵢ − Σ_{i∉I} rᵢ and the full set contributes with
    ε = perimeter and sign +1.  Empty chambers cancel to the zero
    polynomial.
    """
    n = sig.n
    deg = n - 3
    total = MultiPoly.linear_form([1] * n) ** deg  # full-set term, sign +1
    for index_set in sig.long_sets():
        form = MultiPoly.linear_form(
            [1 if index_set.mask >> i & 1 else -1 for i in range(n)]
        )
        term = form**deg
        if (n - index_set.p) % 2:
            total = total - term
        else:
            total = total + term
    v = total * Fraction(-1, 2 * math.factorial(deg))
    return VolumePolynomial(sig, v)


def volume_value(r: LengthVector) -> Fraction:
    """vol(M(r)) / (2π)^{n−3} at a generic r; zero iff the space is empty."""
    return volume_polynomial(signature(r)).v.evaluate(tuple(r))


def derivative_polynomial(
    vp: VolumePolynomial, alpha: MultiIndex, conv: Convention
) -> MultiPoly:
    """∂^α of the chamber polynomial presented in the given convention."""
    reduced = conv.reduce_multiindex(alpha, vp.chamber.n)
    return conv.apply(vp.v).differentiate(reduced)


def intersection_number(
    sig: ChamberSignature, alpha: MultiIndex, conv: Convention
) -> Fraction:
    """∫ c₁^{α₁}⋯cₙ^{αₙ} over M(r) for r in the chamber, |α| = n−3.

    The top-order derivative of the volume polynomial is a constant; its
    value is the intersection number in the chosen convention.
    """
    if alpha.total != sig.n - 3:
        raise WrongTotalDegree(
            f"|alpha| = {alpha.total}, expected n-3 = {sig.n - 3}"
        )
    return derivative_polynomial(volume_polynomial(sig), alpha, conv).constant_value()


def wall_jump(
    sig0: ChamberSignature, sig1: ChamberSignature
) -> tuple[IndexSet, MultiPoly]:
    """(I_p, v₁ − v₀) for adjacent chambers; I_p is long in sig0, short in sig1.

    The difference is computed from the two expanded polynomials, not from
    a closed form, so it can serve as one side of an identity check.
    """
    flipped = sig0.adjacent_pair_with(sig1)
    if flipped is None:
        raise NotAdjacent(
            "signatures must differ in exactly one complementary pair"
        )
    jump = volume_polynomial(sig1).v - volume_polynomial(sig0).v
    return flipped, jump
