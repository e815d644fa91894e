"""Cohomology of a polygon space through apolarity of its volume polynomial.

The rational cohomology ring of M(r) is ℚ[x₁..xₙ]/Ann(v): a polynomial Q in
the degree-2 generators is zero exactly when Q(∂₁..∂ₙ) kills the chamber's
volume polynomial v.  Everything here reduces to exact rank and kernel
computations on catalecticant matrices (degree-d monomials acting on v by
differentiation), so Betti numbers, annihilator generators, the Poincaré
pairing, and the distinguished submanifold classes all come out exact.

Degrees are polynomial degrees throughout: a degree-d class lives in
cohomological degree 2d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from polygonspace.chambers import ChamberSignature, IndexSet
from polygonspace.ratpoly import (
    MultiPoly,
    monomial_exponents,
    rank_and_kernel,
)
from polygonspace.volume import (
    Convention,
    VolumePolynomial,
    WrongTotalDegree,
    volume_polynomial,
)


class DegreeOutOfRange(ValueError):
    """Degree outside 0..n−3 where a catalecticant is meaningful."""


class EmptyChamber(ValueError):
    """The chamber's polygon space is empty; it has no cohomology ring."""


class BaseNotInSet(ValueError):
    """The base index of a submanifold class must belong to the index set."""


@dataclass(frozen=True)
class CohomologyClass:
    """A homogeneous polynomial in the degree-2 generators x₁..xₙ.

    Represents an element of H^{2d} where d is the polynomial degree; the
    generator xᵢ is the first Chern class attached to the i-th side.
    """

    poly: MultiPoly

    def __post_init__(self) -> None:
        if not self.poly.is_homogeneous():
            raise ValueError("a cohomology class must be homogeneous")

    @property
    def degree(self) -> int:
        return self.poly.degree()

    @property
    def nvars(self) -> int:
        return self.poly.nvars


@dataclass(frozen=True)
class ApolarPresentation:
    """Betti numbers plus minimal annihilator generators for one chamber."""

    chamber: ChamberSignature
    convention: Convention
    betti: tuple[int, ...]
    ann_generators: tuple[tuple[int, tuple[MultiPoly, ...]], ...]


def _presented(vp: VolumePolynomial, conv: Convention) -> MultiPoly:
    return conv.apply(vp.v)


def _apolarity_matrix(
    poly: MultiPoly, d: int
) -> tuple[list[tuple[int, ...]], list[list[Fraction]]]:
    """Matrix of Q ↦ Q(∂)poly restricted to degree-d monomials Q.

    Columns are the degree-d monomials in graded-lex order, rows the
    monomials of the image space (a single graded piece when poly is
    homogeneous, every lower degree otherwise), so the right kernel is the
    degree-d annihilator in graded-lex coordinates.
    """
    nvars = poly.nvars
    domain = monomial_exponents(nvars, d)
    images = [poly.differentiate(alpha) for alpha in domain]
    top = max(poly.degree() - d, 0)
    degrees = [top] if poly.is_homogeneous() and not poly.is_zero else range(top + 1)
    image_exps = [e for k in degrees for e in monomial_exponents(nvars, k)]
    index = {e: i for i, e in enumerate(image_exps)}
    mat = [[Fraction(0)] * len(domain) for _ in image_exps]
    for col, img in enumerate(images):
        for e, c in img.terms():
            mat[index[e]][col] = c
    return domain, mat


def catalecticant_rank(vp: VolumePolynomial, d: int, conv: Convention) -> int:
    """Rank of degree-d differentiation against the chamber polynomial.

    Equals the Betti number b_{2d} of M(r) for nonempty chambers.
    """
    n = vp.chamber.n
    if not 0 <= d <= n - 3:
        raise DegreeOutOfRange(f"degree {d} outside 0..{n - 3}")
    poly = _presented(vp, conv)
    if poly.is_zero:
        return 0
    domain, mat = _apolarity_matrix(poly, d)
    rank, _ = rank_and_kernel(mat, ncols=len(domain))
    return rank


def betti_numbers(sig: ChamberSignature, conv: Convention) -> tuple[int, ...]:
    """(b₀, b₂, …, b_{2(n−3)}); odd-degree cohomology vanishes.

    The homogeneous convention is authoritative.  An affine convention
    presents the subalgebra generated by the difference classes xᵢ − x_j,
    which is the whole ring iff the degree-1 annihilator contains a form
    with nonzero coefficient sum; for chambers with no linear relation at
    all (b₂ = n) every affine presentation loses one degree-1 generator.
    """
    if sig.is_empty():
        raise EmptyChamber(f"no cohomology: {sig} has a long singleton")
    vp = volume_polynomial(sig)
    return tuple(catalecticant_rank(vp, d, conv) for d in range(sig.n - 2))


def _kernel_polys(poly: MultiPoly, nvars: int, d: int) -> list[MultiPoly]:
    """Canonical basis of {Q homogeneous of degree d : Q(∂)poly = 0}."""
    domain, mat = _apolarity_matrix(poly, d)
    _, kernel = rank_and_kernel(mat, ncols=len(domain))
    return [
        MultiPoly(nvars, {e: c for e, c in zip(domain, vec) if c})
        for vec in kernel
    ]


def annihilator_generators(
    sig: ChamberSignature, conv: Convention
) -> tuple[tuple[int, tuple[MultiPoly, ...]], ...]:
    """Minimal generators of Ann(v) per degree d = 1..n−2.

    In each degree the full kernel K_d is reduced modulo the span of
    xᵢ·K_{d−1} (products of lower-degree annihilators), keeping only new
    generators; in degree n−2 every monomial annihilates, so the reduction
    is against the whole of x·K_{n−3}.  Output is deterministic: kernels are
    canonical reduced echelon bases in graded-lex coordinates.
    """
    if sig.is_empty():
        raise EmptyChamber(f"no cohomology: {sig} has a long singleton")
    n = sig.n
    poly = _presented(volume_polynomial(sig), conv)
    nvars = poly.nvars
    out: list[tuple[int, tuple[MultiPoly, ...]]] = []
    prev_kernel: list[MultiPoly] = []
    for d in range(1, n - 1):
        kernel = _kernel_polys(poly, nvars, d)
        old_span = [
            MultiPoly.variable(nvars, i) * g
            for g in prev_kernel
            for i in range(nvars)
        ]
        fresh = _reduce_modulo(kernel, old_span, nvars, d)
        out.append((d, tuple(fresh)))
        prev_kernel = kernel
    return tuple(out)


def _reduce_modulo(
    kernel: list[MultiPoly], old_span: list[MultiPoly], nvars: int, d: int
) -> list[MultiPoly]:
    """Members of `kernel` that extend the span of `old_span`, canonically.

    Runs one echelon pass over old_span followed by the kernel basis; a
    kernel vector is a new generator exactly when it enlarges the span.
    """
    cols = monomial_exponents(nvars, d)
    col_index = {e: k for k, e in enumerate(cols)}

    def as_row(p: MultiPoly) -> list[Fraction]:
        row = [Fraction(0)] * len(cols)
        for e, c in p.terms():
            row[col_index[e]] = c
        return row

    echelon: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    def insert(row: list[Fraction]) -> bool:
        for piv, base in echelon:
            if row[piv]:
                f = row[piv] / base[piv]
                for k in range(piv, len(row)):
                    row[k] -= f * base[k]
        lead = next((k for k, v in enumerate(row) if v), None)
        if lead is None:
            return False
        echelon.append((lead, row))
        echelon.sort(key=lambda t: t[0])
        return True

    for p in old_span:
        insert(as_row(p))
    return [g for g in kernel if insert(as_row(g))]


def is_zero_class(
    c: CohomologyClass, sig: ChamberSignature, conv: Convention
) -> bool:
    """True iff the class annihilates the chamber polynomial (is zero in H*)."""
    poly = _presented(volume_polynomial(sig), conv)
    if c.nvars != poly.nvars:
        raise ValueError(
            f"class has {c.nvars} variables, convention expects {poly.nvars}"
        )
    return c.poly.apply_operator(poly).is_zero


def poincare_pairing(
    a: CohomologyClass,
    b: CohomologyClass,
    sig: ChamberSignature,
    conv: Convention,
) -> Fraction:
    """⟨a·b, [M(r)]⟩ for complementary degrees (deg a + deg b = n−3)."""
    if a.degree + b.degree != sig.n - 3:
        raise WrongTotalDegree(
            f"degrees {a.degree}+{b.degree} != n-3 = {sig.n - 3}"
        )
    poly = _presented(volume_polynomial(sig), conv)
    if a.nvars != poly.nvars or b.nvars != poly.nvars:
        raise ValueError("class variable count does not match the convention")
    return (a.poly * b.poly).apply_operator(poly).constant_value()


def pd_class(I: IndexSet, base: int) -> CohomologyClass:
    """Poincaré dual of the sub-polygon-space where the sides of I align.

    For |I| = p the class is (−1)^{p−1}·∏_{j∈I, j≠base}(x_j + x_base),
    of degree p−1; `base` is 1-based and must lie in I.
    """
    if not I.contains(base):
        raise BaseNotInSet(f"base {base} not in {I}")
    n = I.n
    out = MultiPoly.constant(n, -1 if I.p % 2 == 0 else 1)
    xb = MultiPoly.variable(n, base - 1)
    for j in I.indices:
        if j != base:
            out = out * (MultiPoly.variable(n, j - 1) + xb)
    return CohomologyClass(out)


def normal_bundle_chern(I: IndexSet, base: int) -> CohomologyClass:
    """First Chern class of the normal bundle of that sub-polygon-space.

    −2·Σ_{j∈I, j≠base} x_j, degree 1; `base` is 1-based and must lie in I.
    """
    if not I.contains(base):
        raise BaseNotInSet(f"base {base} not in {I}")
    n = I.n
    out = MultiPoly.zero(n)
    for j in I.indices:
        if j != base:
            out = out - 2 * MultiPoly.variable(n, j - 1)
    return CohomologyClass(out)


def pd_bases_agree(
    I: IndexSet, sig: ChamberSignature, conv: Convention
) -> bool:
    """Whether pd_class(I, base) mod Ann is the same for every base in I.

    Reported rather than assumed; compares each base choice against the
    smallest element of I by testing the difference for membership in the
    annihilator.
    """
    indices = I.indices
    ref = pd_class(I, indices[0])
    for base in indices[1:]:
        diff = pd_class(I, base).poly - ref.poly
        if diff.is_zero:
            continue
        if not is_zero_class(CohomologyClass(diff), sig, conv):
            return False
    return True


def presentation(sig: ChamberSignature, conv: Convention) -> ApolarPresentation:
    """Betti numbers together with minimal annihilator generators."""
    return ApolarPresentation(
        chamber=sig,
        convention=conv,
        betti=betti_numbers(sig, conv),
        ann_generators=annihilator_generators(sig, conv),
    )
