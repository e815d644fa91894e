"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial in ``nvars`` variables is a finite set of terms, each a pair
(exponent tuple, nonzero Fraction coefficient).  Terms are kept in graded
lexicographic order (higher total degree first, then lexicographically larger
exponent tuple first), so two equal polynomials have identical
representations and ``==`` is structural.

Rationals are plain ``fractions.Fraction`` values: always in lowest terms,
positive denominator, exact arithmetic throughout.  No floating point is used
anywhere in this package.

The module also provides exact linear algebra over the rationals: rank and
right-kernel bases via fraction-free (Bareiss) elimination, which bounds
intermediate coefficient growth compared to naive rational elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Exponents = tuple[int, ...]

__all__ = [
    "Exponents",
    "MultiIndex",
    "MultiPoly",
    "Scalar",
    "format_rational",
    "matrix_rank",
    "monomial_exponents",
    "parse_rational",
    "rank_and_kernel",
]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", integer, or exact decimal text into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Scalar) -> str:
    """Format a rational as "p/q" in lowest terms (denominator 1 kept explicit)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class MultiIndex:
    """A differentiation multi-index (α₁,…,αₙ)."""

    exponents: Exponents

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative entry in multi-index {self.exponents}")

    @property
    def total(self) -> int:
        return sum(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self) -> Iterator[int]:
        return iter(self.exponents)


def _as_exponents(alpha: MultiIndex | Sequence[int], nvars: int, what: str) -> Exponents:
    exps = tuple(alpha.exponents if isinstance(alpha, MultiIndex) else (int(e) for e in alpha))
    if len(exps) != nvars:
        raise ValueError(f"{what} has length {len(exps)}, expected {nvars}")
    if any(e < 0 for e in exps):
        raise ValueError(f"{what} has a negative entry: {exps}")
    return exps


def _canonical_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class MultiPoly:
    """An immutable polynomial in a fixed number of variables.

    Construct with a mapping or iterable of (exponent tuple, coefficient)
    pairs; zero coefficients are dropped and duplicate exponent tuples are
    summed.  All arithmetic returns new values; instances are hashable and
    safe to share.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[Exponents, Scalar] | Iterable[tuple[Exponents, Scalar]] = (),
    ) -> None:
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Fraction] = {}
        for exps, coeff in items:
            e = tuple(int(x) for x in exps)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent tuple {e} for nvars={nvars}")
            c = acc.get(e, Fraction(0)) + Fraction(coeff)
            if c:
                acc[e] = c
            else:
                acc.pop(e, None)
        self_terms = tuple(sorted(acc.items(), key=lambda t: _canonical_key(t[0]), reverse=True))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", self_terms)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> MultiPoly:
        """The monomial x_index (0-based position)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Scalar]) -> MultiPoly:
        """Σ coeffs[i]·x_i."""
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[tuple(1 if j == i else 0 for j in range(nvars))] = Fraction(c)
        return cls(nvars, terms)

    # -- structure ---------------------------------------------------------

    def terms(self) -> tuple[tuple[Exponents, Fraction], ...]:
        """Terms in canonical (graded-lex descending) order."""
        return self._terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        e = tuple(int(x) for x in exps)
        for te, tc in self._terms:
            if te == e:
                return tc
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return sum(self._terms[0][0]) if self._terms else -1

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e, _ in self._terms}
        return len(degrees) <= 1

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (errors if degree > 0)."""
        if self.degree() > 0:
            raise ValueError("polynomial is not constant")
        return self._terms[0][1] if self._terms else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, self._terms))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic --------------------------------------------------------

    def _require_same_shape(self, other: MultiPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"mixed variable counts: {self.nvars} vs {other.nvars}")

    def __add__(self, other: MultiPoly | Scalar) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._require_same_shape(other)
        acc = dict(self._terms)
        for e, c in other._terms:
            s = acc.get(e, Fraction(0)) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return MultiPoly(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, [(e, -c) for e, c in self._terms])

    def __sub__(self, other: MultiPoly | Scalar) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other: MultiPoly | Scalar) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars, [(e, c * other) for e, c in self._terms])
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._require_same_shape(other)
        acc: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(e, Fraction(0)) + c1 * c2
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return MultiPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus ----------------------------------------------------------

    def differentiate(self, alpha: MultiIndex | Sequence[int]) -> MultiPoly:
        """Iterated partial derivative ∂^α (exact; zero if |α| exceeds degree)."""
        exps = _as_exponents(alpha, self.nvars, "multi-index")
        out: dict[Exponents, Fraction] = {}
        for e, c in self._terms:
            if any(ei < ai for ei, ai in zip(e, exps)):
                continue
            factor = 1
            for ei, ai in zip(e, exps):
                for k in range(ai):
                    factor *= ei - k
            out[tuple(ei - ai for ei, ai in zip(e, exps))] = c * factor
        return MultiPoly(self.nvars, out)

    def apply_operator(self, target: MultiPoly) -> MultiPoly:
        """Apply self as a constant-coefficient differential operator to target."""
        self._require_same_shape(target)
        out = MultiPoly.zero(self.nvars)
        for e, c in self._terms:
            out = out + c * target.differentiate(e)
        return out

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        xs = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms:
            v = c
            for x, k in zip(xs, e):
                if k:
                    v *= x**k
            total += v
        return total

    # -- variable manipulation ---------------------------------------------

    def eliminate_variable(self, index: int, replacement: MultiPoly) -> MultiPoly:
        """Substitute a polynomial in the remaining variables for x_index.

        ``replacement`` must have nvars-1 variables, ordered as the original
        variables with position ``index`` removed; the result lives in that
        smaller variable set.
        """
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        if replacement.nvars != self.nvars - 1:
            raise ValueError("replacement must have one variable fewer")
        out = MultiPoly.zero(self.nvars - 1)
        powers: dict[int, MultiPoly] = {0: MultiPoly.constant(self.nvars - 1, 1)}
        for e, c in self._terms:
            k = e[index]
            if k not in powers:
                powers[k] = replacement**k
            rest = e[:index] + e[index + 1 :]
            out = out + powers[k] * MultiPoly(self.nvars - 1, {rest: c})
        return out

    def permute(self, perm: Sequence[int]) -> MultiPoly:
        """Relabel variables: variable i becomes variable perm[i]."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError(f"not a permutation of 0..{self.nvars - 1}: {perm}")
        out: dict[Exponents, Fraction] = {}
        for e, c in self._terms:
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return MultiPoly(self.nvars, out)

    # -- serialization -----------------------------------------------------

    def to_records(self) -> list[dict[str, object]]:
        """Canonical list of {"coeff": "p/q", "exps": [...]} records."""
        return [{"coeff": format_rational(c), "exps": list(e)} for e, c in self._terms]

    @classmethod
    def from_records(cls, nvars: int, records: Iterable[Mapping[str, object]]) -> MultiPoly:
        terms = []
        for rec in records:
            coeff = rec["coeff"]
            value = parse_rational(coeff) if isinstance(coeff, str) else Fraction(coeff)
            terms.append((tuple(rec["exps"]), value))
        return cls(nvars, terms)

    def format(self, var: str = "x") -> str:
        """Human-readable form like "1/2*x1^2 - x2*x3" (1-based variable labels)."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in self._terms:
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"{var}{i + 1}")
                elif k > 1:
                    factors.append(f"{var}{i + 1}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {body}")
        first = parts[0]
        head = first[2:] if first.startswith("+ ") else "-" + first[2:]
        return " ".join([head] + parts[1:])

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.format()!r})"


def monomial_exponents(nvars: int, degree: int) -> list[Exponents]:
    """All exponent tuples of the given total degree, lex-descending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


# -- exact linear algebra ----------------------------------------------------


def _integer_rows(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[int]]:
    out = []
    for row in rows:
        if len(row) != ncols:
            raise ValueError("matrix rows differ in length")
        fr = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def _bareiss_echelon(mat: list[list[int]]) -> list[int]:
    """Fraction-free forward elimination in place; returns pivot columns."""
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivot_cols: list[int] = []
    prev = 1
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        pivot_row = next((i for i in range(row, nrows) if mat[i][col]), None)
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        pivot = mat[row][col]
        for i in range(row + 1, nrows):
            head = mat[i][col]
            for j in range(col + 1, ncols):
                mat[i][j] = (mat[i][j] * pivot - head * mat[row][j]) // prev
            mat[i][col] = 0
        prev = pivot
        pivot_cols.append(col)
        row += 1
    return pivot_cols


def rank_and_kernel(
    rows: Sequence[Sequence[Scalar]], ncols: int | None = None
) -> tuple[int, tuple[tuple[Fraction, ...], ...]]:
    """Exact rank and canonical right-kernel basis of a rational matrix.

    The kernel basis comes from the reduced row echelon form: one vector per
    free column, with a 1 in that column, so the output is deterministic.
    An empty matrix needs ``ncols`` to fix the ambient dimension.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(rows[0])
    mat = _integer_rows(rows, ncols)
    pivot_cols = _bareiss_echelon(mat)
    rank = len(pivot_cols)
    reduced = [[Fraction(v) for v in mat[i]] for i in range(rank)]
    for k in reversed(range(rank)):
        col = pivot_cols[k]
        inv = reduced[k][col]
        reduced[k] = [v / inv for v in reduced[k]]
        for i in range(k):
            factor = reduced[i][col]
            if factor:
                reduced[i] = [a - factor * b for a, b in zip(reduced[i], reduced[k])]
    pivot_set = set(pivot_cols)
    basis = []
    for fc in (c for c in range(ncols) if c not in pivot_set):
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for k, col in enumerate(pivot_cols):
            vec[col] = -reduced[k][fc]
        basis.append(tuple(vec))
    return rank, tuple(basis)


def matrix_rank(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> int:
    """Exact rank over the rationals (empty matrix has rank 0)."""
    if not rows:
        return 0
    return rank_and_kernel(rows, ncols)[0]
