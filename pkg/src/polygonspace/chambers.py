"""Chamber combinatorics of the wall arrangement ε_I(r) = 0.

For a side-length vector r ∈ ℚⁿ₊ and a proper nonempty index set
I ⊆ {1,…,n}, define ε_I(r) = Σ_{i∈I} rᵢ − Σ_{i∉I} rᵢ.  I is "short" when
ε_I < 0 and "long" when ε_I > 0; r is "generic" when no ε_I vanishes.  The
hyperplanes ε_I = 0 cut the positive cone into chambers; a chamber is
uniquely encoded by its family of short sets, equivalently by the
inclusion-maximal ones.

This module classifies points, builds chamber signatures, walks across walls
exactly (adjacent representatives, segment crossings), and enumerates the
whole chamber graph for small n.  Everything is exact rational arithmetic;
index sets are bitmasks internally and sorted 1-based integer lists
externally.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from polygonspace import exactlp
from polygonspace.ratpoly import Scalar, format_rational, parse_rational

__all__ = [
    "BudgetExceeded",
    "ChamberGraph",
    "ChamberNode",
    "ChamberSignature",
    "DegenerateWall",
    "IndexSet",
    "LengthVector",
    "NonGenericSegment",
    "NotAFacet",
    "SingularLength",
    "Wall",
    "adjacent_representative",
    "canonical_form",
    "enumerate_chambers",
    "epsilon",
    "external_representative",
    "is_empty",
    "is_external",
    "is_generic",
    "long_sets",
    "nudge_within_chamber",
    "segment_crossings",
    "signature",
]


class SingularLength(ValueError):
    """Some ε_I(r) = 0: r lies on a wall and has no chamber."""

    def __init__(self, r: "LengthVector", index_set: "IndexSet") -> None:
        self.r = r
        self.index_set = index_set
        super().__init__(f"epsilon vanishes for I = {index_set}: r = {r} is not generic")


class NotAFacet(ValueError):
    """The requested wall does not bound the chamber of r."""


class DegenerateWall(RuntimeError):
    """No interior wall point with the required perimeter was found."""


class NonGenericSegment(ValueError):
    """Two walls are crossed at the same parameter, or an ε vanishes at an endpoint."""

    def __init__(self, message: str, t: Fraction | None = None) -> None:
        self.t = t
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """Chamber enumeration hit its node budget."""


@dataclass(frozen=True)
class LengthVector:
    """A vector of n ≥ 3 strictly positive rational side lengths."""

    lengths: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(Fraction(x) for x in self.lengths))
        if len(self.lengths) < 3:
            raise ValueError(f"need at least 3 side lengths, got {len(self.lengths)}")
        if any(x <= 0 for x in self.lengths):
            raise ValueError(f"side lengths must be strictly positive: {self.lengths}")

    @classmethod
    def from_values(cls, values: Sequence[Scalar]) -> LengthVector:
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> LengthVector:
        """Parse comma-separated lengths, each an integer, "p/q", or exact decimal."""
        return cls(tuple(parse_rational(part) for part in text.split(",")))

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def perimeter(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    def __len__(self) -> int:
        return len(self.lengths)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.lengths)

    def __getitem__(self, i: int) -> Fraction:
        return self.lengths[i]

    def to_strings(self) -> list[str]:
        return [format_rational(x) for x in self.lengths]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class IndexSet:
    """A proper nonempty subset of {1,…,n}, stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if not 0 < self.mask < (1 << self.n) - 1:
            raise ValueError(f"index set must be nonempty and proper (n={self.n}, mask={self.mask:b})")

    @classmethod
    def from_indices(cls, n: int, indices: Sequence[int]) -> IndexSet:
        """Build from 1-based indices."""
        mask = 0
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"index {i} out of range 1..{n}")
            if mask >> (i - 1) & 1:
                raise ValueError(f"repeated index {i}")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @property
    def p(self) -> int:
        return self.mask.bit_count()

    @property
    def q(self) -> int:
        return self.n - self.p

    @property
    def complement(self) -> IndexSet:
        return IndexSet(self.n, ((1 << self.n) - 1) ^ self.mask)

    @property
    def indices(self) -> tuple[int, ...]:
        """Sorted 1-based member indices."""
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical order: by cardinality, then lexicographically."""
        return (self.p, self.indices)

    def contains(self, index: int) -> bool:
        """Membership of a 1-based index."""
        return bool(self.mask >> (index - 1) & 1)

    def is_subset_of(self, other: IndexSet) -> bool:
        return self.mask & ~other.mask == 0

    def permute(self, perm: Sequence[int]) -> IndexSet:
        """Relabel members: 0-based position i maps to perm[i]."""
        mask = 0
        for i in range(self.n):
            if self.mask >> i & 1:
                mask |= 1 << perm[i]
        return IndexSet(self.n, mask)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"


@dataclass(frozen=True)
class Wall:
    """A wall crossing, oriented: index_set is long before and short after.

    The undirected wall is the hyperplane ε = 0 of the complementary pair
    {index_set, index_setᶜ}.
    """

    index_set: IndexSet

    @property
    def p(self) -> int:
        return self.index_set.p

    @property
    def q(self) -> int:
        return self.index_set.q

    @property
    def pair(self) -> tuple[IndexSet, IndexSet]:
        """Both members of the complementary pair, canonically ordered."""
        members = sorted((self.index_set, self.index_set.complement), key=lambda s: s.sort_key)
        return (members[0], members[1])

    @property
    def reversed(self) -> Wall:
        return Wall(self.index_set.complement)

    def __str__(self) -> str:
        return f"wall {self.index_set} (long -> short)"


def _prefix_sums(r: LengthVector) -> list[Fraction]:
    """sums[mask] = Σ_{i in mask} r_i for all masks."""
    sums = [Fraction(0)] * (1 << r.n)
    for mask in range(1, 1 << r.n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + r[low.bit_length() - 1]
    return sums


def _pair_masks(n: int) -> Iterator[int]:
    """One canonical mask per complementary pair: the member containing index 1."""
    full = (1 << n) - 1
    for mask in range(1, full):
        if mask & 1:
            yield mask


def epsilon(r: LengthVector, I: IndexSet) -> Fraction:
    """ε_I(r) = Σ_{i∈I} rᵢ − Σ_{i∉I} rᵢ."""
    if I.n != r.n:
        raise ValueError(f"index set over {I.n} indices applied to {r.n} lengths")
    inside = sum((x for i, x in enumerate(r) if I.mask >> i & 1), Fraction(0))
    return 2 * inside - r.perimeter

def _first_vanishing(r: LengthVector, sums: list[Fraction]) -> IndexSet | None:
    """The canonically-first proper nonempty I with ε_I(r) = 0, if any."""
    perimeter = sums[(1 << r.n) - 1]
    zeros = [
        mask
        for mask in range(1, (1 << r.n) - 1)
        if 2 * sums[mask] == perimeter
    ]
    if not zeros:
        return None
    sets = [IndexSet(r.n, mask) for mask in zeros]
    return min(sets, key=lambda s: s.sort_key)


def is_generic(r: LengthVector) -> bool:
    """True iff no ε_I(r) vanishes over the 2^(n-1)-1 complementary pairs."""
    sums = _prefix_sums(r)
    perimeter = sums[(1 << r.n) - 1]
    return all(2 * sums[mask] != perimeter for mask in _pair_masks(r.n))


def long_sets(r: LengthVector) -> list[IndexSet]:
    """All proper nonempty long sets of a generic r, canonically sorted."""
    sums = _prefix_sums(r)
    bad = _first_vanishing(r, sums)
    if bad is not None:
        raise SingularLength(r, bad)
    perimeter = sums[(1 << r.n) - 1]
    longs = [
        IndexSet(r.n, mask)
        for mask in range(1, (1 << r.n) - 1)
        if 2 * sums[mask] > perimeter
    ]
    return sorted(longs, key=lambda s: s.sort_key)


def is_empty(r: LengthVector) -> bool:
    """True iff the polygon space is empty: some single side is long."""
    sums = _prefix_sums(r)
    bad = _first_vanishing(r, sums)
    if bad is not None:
        raise SingularLength(r, bad)
    return 2 * max(r) > r.perimeter


@dataclass(frozen=True)
class ChamberSignature:
    """A chamber, encoded by its inclusion-maximal short sets."""

    n: int
    maximal_shorts: tuple[IndexSet, ...]

    def __post_init__(self) -> None:
        sets = tuple(sorted(self.maximal_shorts, key=lambda s: s.sort_key))
        object.__setattr__(self, "maximal_shorts", sets)
        if not sets:
            raise ValueError("a chamber has at least one maximal short set")
        if any(s.n != self.n for s in sets):
            raise ValueError("maximal short sets must live on the same n indices")
        if len({s.mask for s in sets}) != len(sets):
            raise ValueError("duplicate maximal short sets")
        for a in sets:
            for b in sets:
                if a is not b and a.is_subset_of(b):
                    raise ValueError(f"{a} is contained in {b}; sets must be inclusion-maximal")
        # Down-closure must classify every complementary pair exactly once.
        for mask in _pair_masks(self.n):
            comp = ((1 << self.n) - 1) ^ mask
            if self._is_short_mask(mask) == self._is_short_mask(comp):
                pair = IndexSet(self.n, mask)
                raise ValueError(f"maximal shorts do not classify the pair {pair}/{pair.complement}")

    def _is_short_mask(self, mask: int) -> bool:
        return any(mask & ~s.mask == 0 for s in self.maximal_shorts)

    def is_short(self, I: IndexSet) -> bool:
        return self._is_short_mask(I.mask)

    def is_long(self, I: IndexSet) -> bool:
        return not self._is_short_mask(I.mask)

    def short_sets(self) -> list[IndexSet]:
        """All proper nonempty short sets (down-closure), canonically sorted."""
        out = [
            IndexSet(self.n, mask)
            for mask in range(1, (1 << self.n) - 1)
            if self._is_short_mask(mask)
        ]
        return sorted(out, key=lambda s: s.sort_key)

    def long_sets(self) -> list[IndexSet]:
        """All proper nonempty long sets, canonically sorted."""
        out = [
            IndexSet(self.n, mask)
            for mask in range(1, (1 << self.n) - 1)
            if not self._is_short_mask(mask)
        ]
        return sorted(out, key=lambda s: s.sort_key)

    def is_empty(self) -> bool:
        """True iff some singleton is long (polygon space empty)."""
        return any(not self._is_short_mask(1 << i) for i in range(self.n))

    def is_external(self) -> bool:
        """True iff some singleton is itself a maximal short set."""
        return any(s.p == 1 for s in self.maximal_shorts)

    def flip(self, I: IndexSet) -> ChamberSignature:
        """The signature across the facet wall of the long set I."""
        if self.is_short(I):
            raise NotAFacet(f"{I} is short here; only long sets name exit walls")
        comp_mask = I.complement.mask
        if all(s.mask != comp_mask for s in self.maximal_shorts):
            raise NotAFacet(f"{I.complement} is not a maximal short set; {I} does not bound this chamber")
        shorts = {mask for mask in range(1, (1 << self.n) - 1) if self._is_short_mask(mask)}
        shorts.discard(comp_mask)
        shorts.add(I.mask)
        return _signature_from_short_masks(self.n, shorts)

    def adjacent_pair_with(self, other: ChamberSignature) -> IndexSet | None:
        """The set long here and short in `other`, if the two signatures differ
        in exactly that complementary pair; otherwise None."""
        if self.n != other.n or self == other:
            return None
        flip = None
        for mask in _pair_masks(self.n):
            if self._is_short_mask(mask) != other._is_short_mask(mask):
                if flip is not None:
                    return None
                flip = mask
        if flip is None:
            return None
        long_here = flip if not self._is_short_mask(flip) else ((1 << self.n) - 1) ^ flip
        return IndexSet(self.n, long_here)

    def permute(self, perm: Sequence[int]) -> ChamberSignature:
        """Relabel indices: 0-based position i maps to perm[i]."""
        return ChamberSignature(self.n, tuple(s.permute(perm) for s in self.maximal_shorts))

    def sort_key(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        return tuple(s.sort_key for s in self.maximal_shorts)

    def to_lists(self) -> list[list[int]]:
        return [list(s.indices) for s in self.maximal_shorts]

    @classmethod
    def from_lists(cls, n: int, lists: Sequence[Sequence[int]]) -> ChamberSignature:
        return cls(n, tuple(IndexSet.from_indices(n, ix) for ix in lists))

    def __str__(self) -> str:
        return "[" + ", ".join(str(s) for s in self.maximal_shorts) + "]"


def _signature_from_short_masks(n: int, shorts: set[int]) -> ChamberSignature:
    maximal = [
        mask for mask in shorts
        if not any(other != mask and mask & ~other == 0 for other in shorts)
    ]
    return ChamberSignature(n, tuple(IndexSet(n, mask) for mask in maximal))


def signature(r: LengthVector) -> ChamberSignature:
    """The chamber signature of a generic r."""
    sums = _prefix_sums(r)
    bad = _first_vanishing(r, sums)
    if bad is not None:
        raise SingularLength(r, bad)
    perimeter = sums[(1 << r.n) - 1]
    shorts = {
        mask
        for mask in range(1, (1 << r.n) - 1)
        if 2 * sums[mask] < perimeter
    }
    return _signature_from_short_masks(r.n, shorts)


def is_external(sig: ChamberSignature) -> bool:
    """True iff the chamber is external (polygon space is CP^(n-3))."""
    return sig.is_external()


def canonical_form(sig: ChamberSignature) -> ChamberSignature:
    """Smallest relabeling of the signature under the symmetric group.

    Post-processing utility only (cost grows as n!); lets callers identify
    chambers that agree up to permuting the sides.
    """
    from itertools import permutations

    best = None
    for perm in permutations(range(sig.n)):
        cand = sig.permute(perm)
        if best is None or cand.sort_key() < best.sort_key():
            best = cand
    return best


def external_representative(n: int, j: int = 1, perimeter: Scalar = 1) -> LengthVector:
    """A generic external point: side j just below half the perimeter, rest equal.

    r_j = (1/2 - 1/(8n))·P makes {j} a maximal short set, so the chamber is
    external; the construction is generic for every n ≥ 3.
    """
    if not 1 <= j <= n:
        raise ValueError(f"index {j} out of range 1..{n}")
    P = Fraction(perimeter)
    if P <= 0:
        raise ValueError("perimeter must be positive")
    big = (Fraction(1, 2) - Fraction(1, 8 * n)) * P
    rest = (P - big) / (n - 1)
    return LengthVector.from_values([big if i == j - 1 else rest for i in range(n)])


def representative(sig: ChamberSignature, perimeter: Scalar = 1) -> LengthVector:
    """A deep interior point of the chamber, at the given perimeter.

    Maximizes the margin λ subject to x ≥ λ, Σx = P, and every pair keeping
    the signature's sign with slack ≥ λ (exact LP); the optimum is the most
    wall-distant point, so the result is generic and canonical.
    """
    n = sig.n
    P = Fraction(perimeter)
    if P <= 0:
        raise ValueError("perimeter must be positive")
    zero = Fraction(0)
    ge_rows: list[tuple[list[Fraction], Fraction]] = []
    for mask in _pair_masks(n):
        sign = -1 if sig._is_short_mask(mask) else 1
        coeffs = [Fraction(sign if mask >> i & 1 else -sign) for i in range(n)]
        ge_rows.append((coeffs + [Fraction(-1)], zero))
    for i in range(n):
        coeffs = [zero] * (n + 1)
        coeffs[i] = Fraction(1)
        coeffs[n] = Fraction(-1)
        ge_rows.append((coeffs, zero))
    eq_rows = [([Fraction(1)] * n + [zero], P)]
    objective = [zero] * n + [Fraction(1)]
    solved = exactlp.maximize(objective, eq_rows, ge_rows)
    if solved is None or solved[0] <= 0:
        raise ValueError(f"signature {sig} is not realizable by any length vector")
    point = LengthVector.from_values(solved[1][:n])
    if signature(point) != sig:
        raise ValueError(f"interior-point search failed for {sig}")
    return point


def _direction(n: int, I: IndexSet) -> tuple[Fraction, ...]:
    """The perimeter-preserving direction u = -(1/p)·χ_I + (1/q)·χ_{Iᶜ}."""
    down = Fraction(-1, I.p)
    up = Fraction(1, I.q)
    return tuple(down if I.mask >> i & 1 else up for i in range(n))


def _shifted(r: LengthVector, u: Sequence[Fraction], t: Fraction) -> tuple[Fraction, ...]:
    return tuple(x + t * ux for x, ux in zip(r, u))


def _wall_point_ok(values: tuple[Fraction, ...], sig: ChamberSignature, I: IndexSet) -> bool:
    """Strictly positive, ε_I = 0, every other pair keeps its chamber sign."""
    if any(x <= 0 for x in values):
        return False
    n = sig.n
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + values[low.bit_length() - 1]
    perimeter = sums[(1 << n) - 1]
    pair = {I.mask, I.complement.mask}
    for mask in _pair_masks(n):
        e = 2 * sums[mask] - perimeter
        if mask in pair or ((1 << n) - 1) ^ mask in pair:
            if e != 0:
                return False
            continue
        if e == 0:
            return False
        if (e < 0) != sig._is_short_mask(mask):
            return False
    return True


def _wall_point_candidates(
    r: LengthVector, I: IndexSet, u: tuple[Fraction, ...]
) -> Iterator[tuple[Fraction, ...]]:
    """Two cheap wall-point candidates with the right perimeter."""
    e = epsilon(r, I)
    yield _shifted(r, u, e / 2)
    half = r.perimeter / 2
    inside = sum((x for i, x in enumerate(r) if I.mask >> i & 1), Fraction(0))
    scale_in = half / inside
    scale_out = half / (r.perimeter - inside)
    yield tuple(x * (scale_in if I.mask >> i & 1 else scale_out) for i, x in enumerate(r))


def _lp_wall_point(
    sig: ChamberSignature, I: IndexSet, perimeter: Fraction
) -> tuple[Fraction, ...] | None:
    """Max-margin point of the facet on the wall of I, or None if it is empty.

    Solves max λ over {x ≥ λ, Σ_I x = Σ_Iᶜ x = P/2, every non-flipping pair
    keeps its chamber sign with slack ≥ λ}; a positive optimum certifies a
    relative-interior facet point, a nonpositive one certifies emptiness.
    """
    n = sig.n
    half = perimeter / 2
    ge_rows: list[tuple[list[Fraction], Fraction]] = []
    zero = Fraction(0)
    pair = {I.mask, I.complement.mask}
    for mask in _pair_masks(n):
        if mask in pair:
            continue
        sign = -1 if sig._is_short_mask(mask) else 1
        # sign·ε_J(x) − λ ≥ 0
        coeffs = [Fraction(sign if mask >> i & 1 else -sign) for i in range(n)]
        ge_rows.append((coeffs + [Fraction(-1)], zero))
    for i in range(n):
        coeffs = [zero] * (n + 1)
        coeffs[i] = Fraction(1)
        coeffs[n] = Fraction(-1)
        ge_rows.append((coeffs, zero))
    eq_rows = [
        ([Fraction(1 if I.mask >> i & 1 else 0) for i in range(n)] + [zero], half),
        ([Fraction(0 if I.mask >> i & 1 else 1) for i in range(n)] + [zero], half),
    ]
    objective = [zero] * n + [Fraction(1)]
    solved = exactlp.maximize(objective, eq_rows, ge_rows)
    if solved is None or solved[0] <= 0:
        return None
    return solved[1][:n]


def adjacent_representative(
    r: LengthVector, I: IndexSet
) -> tuple[LengthVector, LengthVector]:
    """Cross the facet wall of the long set I: (wall point, point beyond).

    Returns a wall point r_c (ε_I(r_c) = 0, every other ε keeps its sign,
    perimeter preserved) and a generic r_after just beyond it whose signature
    differs from signature(r) exactly in the pair {I, Iᶜ}.  r_after may lie in
    an empty chamber; callers detect that from its signature.
    """
    sig = signature(r)
    if epsilon(r, I) <= 0:
        raise NotAFacet(f"{I} is not long at r = {r}")
    target = sig.flip(I)  # validates that Iᶜ is a maximal short set
    u = _direction(r.n, I)
    chosen = None
    for values in _wall_point_candidates(r, I, u):
        if _wall_point_ok(values, sig, I):
            chosen = values
            break
    if chosen is None:
        chosen = _lp_wall_point(sig, I, r.perimeter)
        if chosen is None or not _wall_point_ok(chosen, sig, I):
            raise DegenerateWall(f"the wall of {I} does not carry a facet of {sig}")
    wall_point = LengthVector(chosen)
    delta = r.perimeter / 4
    for _ in range(200):
        after = _shifted(wall_point, u, delta)
        if all(x > 0 for x in after):
            candidate = LengthVector(after)
            try:
                if signature(candidate) == target:
                    return wall_point, candidate
            except SingularLength:
                pass
        delta /= 2
    raise DegenerateWall(f"no generic point found just beyond the wall of {I} from {sig}")


def segment_crossings(
    r_from: LengthVector, r_to: LengthVector
) -> list[tuple[Fraction, Wall]]:
    """Ordered wall crossings of the straight segment from r_from to r_to.

    Each crossing is (t, wall) with t ∈ (0,1) the parameter where ε vanishes
    and the wall oriented in the direction of travel (its index_set is long
    before the crossing).  Raises NonGenericSegment when two distinct pairs
    vanish at the same t; endpoints must be generic with equal perimeter.
    """
    if r_from.n != r_to.n:
        raise ValueError(f"mismatched lengths: n={r_from.n} vs n={r_to.n}")
    if r_from.perimeter != r_to.perimeter:
        raise ValueError(
            f"perimeter changes along the segment: {r_from.perimeter} vs {r_to.perimeter}"
        )
    sums_from = _prefix_sums(r_from)
    sums_to = _prefix_sums(r_to)
    for r, sums in ((r_from, sums_from), (r_to, sums_to)):
        bad = _first_vanishing(r, sums)
        if bad is not None:
            raise SingularLength(r, bad)
    perimeter = r_from.perimeter
    crossings: dict[Fraction, tuple[Fraction, Wall]] = {}
    for mask in _pair_masks(r_from.n):
        e0 = 2 * sums_from[mask] - perimeter
        e1 = 2 * sums_to[mask] - perimeter
        if (e0 > 0) == (e1 > 0):
            continue
        t = e0 / (e0 - e1)
        long_before = mask if e0 > 0 else ((1 << r_from.n) - 1) ^ mask
        wall = Wall(IndexSet(r_from.n, long_before))
        if t in crossings:
            other = crossings[t][1]
            raise NonGenericSegment(
                f"walls {other.index_set} and {wall.index_set} are crossed at the same t = {t}",
                t=t,
            )
        crossings[t] = (t, wall)
    return [crossings[t] for t in sorted(crossings)]


def nudge_within_chamber(r: LengthVector, k: int) -> LengthVector | None:
    """Deterministic retry-k perturbation of r staying inside its chamber.

    Adds a zero-perimeter direction drawn from a k-seeded generator, so
    every coordinate moves by a different tiny amount; a vector with tied
    coordinates has all its ties broken in one step, and each retry explores
    a fresh direction at a magnitude that shrinks with k.  Returns None when
    the candidate leaves the chamber (caller tries k+1).
    """
    if k < 1:
        raise ValueError("retry counter starts at 1")
    n = r.n
    rng = random.Random(k)
    weights = [rng.randint(-1000, 1000) for _ in range(n)]
    mean = Fraction(sum(weights), n)
    magnitude = r.perimeter / (10**7 * (1 << ((k - 1) // (n - 1))))
    values = [x + magnitude * (w - mean) for x, w in zip(r.lengths, weights)]
    if any(x <= 0 for x in values):
        return None
    candidate = LengthVector(tuple(values))
    try:
        if signature(candidate) == signature(r):
            return candidate
    except SingularLength:
        return None
    return None


@dataclass(frozen=True)
class ChamberNode:
    """One chamber: signature, a generic representative, and status flags."""

    signature: ChamberSignature
    representative: LengthVector
    empty: bool
    external: bool


@dataclass(frozen=True)
class ChamberGraph:
    """All chambers for a given n, with facet adjacency.

    Edges are (source node index, target node index, wall) with the wall
    oriented source → target; one edge per unordered chamber pair.
    """

    n: int
    nodes: tuple[ChamberNode, ...]
    edges: tuple[tuple[int, int, Wall], ...]

    def node_index(self, sig: ChamberSignature) -> int:
        for i, node in enumerate(self.nodes):
            if node.signature == sig:
                return i
        raise KeyError(f"signature {sig} not in graph")


def enumerate_chambers(
    n: int, max_nodes: int | None = None, *, n_limit: int = 9
) -> ChamberGraph:
    """Breadth-first enumeration of every chamber (empty ones included).

    Starts from a constructed external representative and crosses every facet
    wall of every discovered chamber; deterministic node order and adjacency.
    """
    if not 3 <= n <= n_limit:
        raise ValueError(f"n = {n} outside the tractable range 3..{n_limit}")
    start = external_representative(n)
    start_sig = signature(start)
    reps: dict[ChamberSignature, LengthVector] = {start_sig: start}
    discovery: dict[ChamberSignature, int] = {start_sig: 0}
    edge_set: dict[frozenset[int], tuple[ChamberSignature, ChamberSignature, Wall]] = {}
    probed: set[frozenset[ChamberSignature]] = set()
    queue: deque[ChamberSignature] = deque([start_sig])
    while queue:
        sig = queue.popleft()
        rep = reps[sig]
        for short in sig.maximal_shorts:
            exit_set = short.complement
            pair = frozenset((sig, sig.flip(exit_set)))
            if pair in probed:
                # crossed (or proven facet-free) from the other side already
                continue
            probed.add(pair)
            try:
                _, after = adjacent_representative(rep, exit_set)
            except DegenerateWall:
                # combinatorially adjacent pair whose common wall carries no
                # facet; not an edge of the chamber graph
                continue
            neighbor = signature(after)
            if neighbor not in reps:
                if max_nodes is not None and len(reps) >= max_nodes:
                    raise BudgetExceeded(f"more than {max_nodes} chambers at n = {n}")
                reps[neighbor] = after
                discovery[neighbor] = len(discovery)
                queue.append(neighbor)
            key = frozenset((discovery[sig], discovery[neighbor]))
            if key not in edge_set:
                edge_set[key] = (sig, neighbor, Wall(exit_set))
    ordered = sorted(discovery, key=lambda s: s.sort_key())
    index_of = {sig: i for i, sig in enumerate(ordered)}
    nodes = tuple(
        ChamberNode(sig, reps[sig], sig.is_empty(), sig.is_external()) for sig in ordered
    )
    edges = sorted(
        (
            (index_of[a], index_of[b], wall)
            for a, b, wall in edge_set.values()
        ),
        key=lambda e: (e[0], e[1], e[2].index_set.sort_key),
    )
    return ChamberGraph(n, nodes, tuple(edges))
