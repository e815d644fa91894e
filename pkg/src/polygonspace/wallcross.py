"""Wall-crossing analysis: how a polygon space changes across a chamber wall.

Crossing the wall of a long set I_p (|I_p| = p, complement size q = n − p)
replaces the sub-polygon-space M_{I_pᶜ} ≅ CP^{p−2} by M_{I_p} ≅ CP^{q−2};
cohomology gains one generator in each even degree 2d with p−1 ≤ d ≤ q−2
(and loses them in the mirrored range when p > q).  This module produces
per-crossing reports with the distinguished classes of the newly born
submanifold, computes Betti numbers by walking from an external chamber,
and cross-validates that walk against the apolarity route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from polygonspace.apolar import (
    CohomologyClass,
    EmptyChamber,
    betti_numbers,
    is_zero_class,
    normal_bundle_chern,
    pd_class,
)
from polygonspace.chambers import (
    ChamberSignature,
    IndexSet,
    LengthVector,
    NonGenericSegment,
    Wall,
    external_representative,
    nudge_within_chamber,
    representative,
    segment_crossings,
    signature,
)
from polygonspace.ratpoly import MultiPoly
from polygonspace.volume import Convention, NotAdjacent, wall_jump

_MAX_NUDGES = 200


class BadPartition(ValueError):
    """p + q must equal n with both parts at least 1."""


class EmptyTarget(ValueError):
    """The target length vector has an empty polygon space."""


def betti_delta(p: int, q: int, n: int) -> tuple[int, ...]:
    """Betti-number change across a wall with |I_p| = p, indexed by d = k/2.

    +1 in each even cohomological degree k ∈ [2p−2, 2q−4] when q ≥ p, −1 in
    k ∈ [2q−2, 2p−4] when p ≥ q; the two ranges are empty for p = q.  The
    vector has one entry per even degree 0, 2, …, 2(n−3).
    """
    if p < 1 or q < 1 or p + q != n:
        raise BadPartition(f"need p + q = n with p, q >= 1, got p={p} q={q} n={n}")
    delta = [0] * (n - 2)
    if q > p:
        for d in range(p - 1, q - 1):
            delta[d] = 1
    elif p > q:
        for d in range(q - 1, p - 1):
            delta[d] = -1
    return tuple(delta)


@dataclass(frozen=True)
class DecompositionClass:
    """One summand pd·(normal chern)^power, tagged with its vanishing status
    in the chamber after the crossing."""

    power: int
    cls: CohomologyClass
    is_zero: bool


@dataclass(frozen=True)
class WallCrossingReport:
    """Everything that changes when one wall is crossed, long side first."""

    wall: Wall
    dies: str
    born: str
    betti_delta: tuple[int, ...]
    pd_born: CohomologyClass | None
    normal_chern: CohomologyClass | None
    decomposition_classes: tuple[DecompositionClass, ...]

    @property
    def p(self) -> int:
        return self.wall.p

    @property
    def q(self) -> int:
        return self.wall.q


def _projective_space(dim: int) -> str:
    return "CP^%d" % dim if dim >= 0 else "empty"


def crossing_report(
    sig0: ChamberSignature, sig1: ChamberSignature
) -> WallCrossingReport:
    """Report for the single crossing sig0 → sig1 (one pair flips).

    The distinguished classes live in the after-chamber sig1: the Poincaré
    dual of the born submanifold M_{I_p}, the first Chern class of its
    normal bundle, and the products pd·chern^a for a = 0..q−p, each tagged
    by is_zero_class in sig1.  For p = 1 the dual-class formula degenerates
    (empty product), so those fields are omitted.
    """
    flipped = sig0.adjacent_pair_with(sig1)
    if flipped is None:
        raise NotAdjacent("signatures must differ in exactly one complementary pair")
    n = sig0.n
    p, q = flipped.p, flipped.q
    delta = betti_delta(p, q, n)
    dies = (
        f"M_{flipped.complement} = {_projective_space(p - 2)}"
        " (present before, absent after)"
    )
    born = (
        f"M_{flipped} = {_projective_space(q - 2)}"
        " (absent before, present after)"
    )
    pd_born: CohomologyClass | None = None
    chern: CohomologyClass | None = None
    decomposition: tuple[DecompositionClass, ...] = ()
    if p >= 2:
        base = flipped.indices[0]
        pd_born = pd_class(flipped, base)
        chern = normal_bundle_chern(flipped, base)
        hom = Convention.homogeneous()
        classes = []
        for a in range(q - p + 1):
            product = CohomologyClass(pd_born.poly * chern.poly**a)
            classes.append(
                DecompositionClass(a, product, is_zero_class(product, sig1, hom))
            )
        decomposition = tuple(classes)
    return WallCrossingReport(
        wall=Wall(flipped),
        dies=dies,
        born=born,
        betti_delta=delta,
        pd_born=pd_born,
        normal_chern=chern,
        decomposition_classes=decomposition,
    )


def _generic_segment(
    anchor: LengthVector, target: LengthVector
) -> list[tuple[Fraction, Wall]]:
    """Crossings of anchor → target, nudging the target inside its chamber
    until every crossing is single."""
    last: NonGenericSegment | None = None
    candidate = target
    k = 1
    while k <= _MAX_NUDGES:
        try:
            return segment_crossings(anchor, candidate)
        except NonGenericSegment as exc:
            last = exc
        candidate = None
        while candidate is None and k <= _MAX_NUDGES:
            candidate = nudge_within_chamber(target, k)
            k += 1
    raise last if last is not None else NonGenericSegment("no generic segment found")


def betti_via_path(r: LengthVector, anchor_index: int | None = None) -> tuple[int, ...]:
    """Betti numbers of M(r) by wall-crossing from an external chamber.

    Starts at the all-ones vector of CP^{n−3} on an external anchor (largest
    side just below half the perimeter by default), walks the straight
    segment to r, and applies the Betti delta of every wall crossed.  This
    route never touches the volume polynomial, so it can cross-validate the
    apolarity computation.
    """
    sig = signature(r)
    if sig.is_empty():
        raise EmptyTarget(f"polygon space is empty for r = {r}")
    n = r.n
    if anchor_index is None:
        largest = max(r.lengths)
        anchor_index = min(i for i, x in enumerate(r.lengths, start=1) if x == largest)
    anchor = external_representative(n, anchor_index, perimeter=r.perimeter)
    betti = [1] * (n - 2)
    if signature(anchor) == sig:
        return tuple(betti)
    for _, wall in _generic_segment(anchor, r):
        delta = betti_delta(wall.p, wall.q, n)
        betti = [b + d for b, d in zip(betti, delta)]
    return tuple(betti)


@dataclass(frozen=True)
class ChamberValidation:
    """Cross-validation outcome for one chamber; passed is the conjunction."""

    signature: ChamberSignature
    betti_apolar: tuple[int, ...]
    betti_path: tuple[int, ...]
    betti_agree: bool
    jump_checks: tuple[tuple[IndexSet, bool], ...]
    passed: bool


def validate_chamber(
    sig: ChamberSignature, rep: LengthVector | None = None
) -> ChamberValidation:
    """Pit the two Betti routes against each other and check every wall jump.

    The apolarity route (catalecticant ranks of the volume polynomial) and
    the wall-crossing route (path from an external chamber) must agree; the
    jump of the volume polynomial across each bounding wall must equal
    (−1)^q/(n−3)!·ε_{I_p}^{n−3}.  Failures are recorded, not raised.
    """
    if sig.is_empty():
        raise EmptyChamber(f"cannot validate the empty space: {sig}")
    if rep is None:
        rep = representative(sig)
    n = sig.n
    betti_a = betti_numbers(sig, Convention.homogeneous())
    betti_p = betti_via_path(rep)
    checks: list[tuple[IndexSet, bool]] = []
    for short in sig.maximal_shorts:
        exit_set = short.complement
        _, jump = wall_jump(sig, sig.flip(exit_set))
        form = MultiPoly.linear_form(
            [1 if exit_set.mask >> i & 1 else -1 for i in range(n)]
        )
        expected = form ** (n - 3) * Fraction((-1) ** exit_set.q, factorial(n - 3))
        checks.append((exit_set, jump == expected))
    agree = betti_a == betti_p
    return ChamberValidation(
        signature=sig,
        betti_apolar=betti_a,
        betti_path=betti_p,
        betti_agree=agree,
        jump_checks=tuple(checks),
        passed=agree and all(ok for _, ok in checks),
    )
