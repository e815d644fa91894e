"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest

from polygonspace.chambers import (
    ChamberGraph,
    ChamberSignature,
    LengthVector,
    SingularLength,
    enumerate_chambers,
    signature,
)
from polygonspace.ratpoly import MultiPoly, matrix_rank, monomial_exponents

# The two n = 5 reference chambers used throughout: an external one (complex
# projective plane) and its neighbor across the wall of {1,3} (the one-point
# blow-up).  Their side lengths sum to 1.
CP2_R = LengthVector.parse("3/20,3/20,2/5,3/20,3/20")
BLOWUP_R = LengthVector.parse("3/60,11/60,24/60,11/60,11/60")


@pytest.fixture(scope="session")
def cp2_sig() -> ChamberSignature:
    return signature(CP2_R)


@pytest.fixture(scope="session")
def blowup_sig() -> ChamberSignature:
    return signature(BLOWUP_R)


@pytest.fixture(scope="session")
def graph3() -> ChamberGraph:
    return enumerate_chambers(3)


@pytest.fixture(scope="session")
def graph4() -> ChamberGraph:
    return enumerate_chambers(4)


@pytest.fixture(scope="session")
def graph5() -> ChamberGraph:
    return enumerate_chambers(5)


@pytest.fixture(scope="session")
def graph6() -> ChamberGraph:
    return enumerate_chambers(6)


def random_positive(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 120), rng.randint(1, 40))


def random_generic(rng: random.Random, n: int) -> LengthVector:
    """A uniformly messy generic length vector (rejection sampling)."""
    while True:
        r = LengthVector.from_values([random_positive(rng) for _ in range(n)])
        try:
            signature(r)
        except SingularLength:
            continue
        return r


def random_nonempty(rng: random.Random, n: int) -> LengthVector:
    while True:
        r = random_generic(rng, n)
        if not signature(r).is_empty():
            return r


def random_empty(rng: random.Random, n: int) -> LengthVector:
    """Generic vector with one side longer than all the others combined."""
    while True:
        values = [random_positive(rng) for _ in range(n)]
        i = rng.randrange(n)
        values[i] = sum(values) - values[i] + random_positive(rng)
        r = LengthVector.from_values(values)
        try:
            sig = signature(r)
        except SingularLength:
            continue
        if sig.is_empty():
            return r


def direct_volume_value(r: LengthVector) -> Fraction:
    """Independent evaluation of the signed power sum, no polynomial algebra.

    Walks every proper subset of {1..n} plus the full set, raises each
    positive epsilon to the n-3 power, and applies the parity sign and the
    -1/(2(n-3)!) factor numerically.  Oracle for the volume module.
    """
    n = r.n
    deg = n - 3
    values = list(r.lengths)
    acc = sum(values) ** deg
    for mask in range(1, (1 << n) - 1):
        eps = sum(values[i] if mask >> i & 1 else -values[i] for i in range(n))
        if eps > 0:
            sign = -1 if (n - mask.bit_count()) % 2 else 1
            acc += sign * eps**deg
    return Fraction(-1, 2 * factorial(deg)) * acc


def span_rank(polys: list[MultiPoly], nvars: int, degree: int) -> int:
    """Rank of the coefficient matrix of degree-`degree` polynomials."""
    basis = monomial_exponents(nvars, degree)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(basis)
        for e, c in p.terms():
            row[index[e]] = c
        rows.append(row)
    return matrix_rank(rows, ncols=len(basis))


def same_span(a: list[MultiPoly], b: list[MultiPoly], nvars: int, degree: int) -> bool:
    ra = span_rank(a, nvars, degree)
    rb = span_rank(b, nvars, degree)
    return ra == rb == span_rank(a + b, nvars, degree)
