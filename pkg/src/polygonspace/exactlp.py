"""Exact rational linear programming for small dense problems.

Two-phase primal simplex over arbitrary-precision integers: every tableau
row is kept as a primitive integer vector (content divided out after each
pivot), so no rational arithmetic happens inside the pivot loop.  The
entering rule is Dantzig's (most negative reduced cost) until a run of
degenerate pivots suggests cycling, after which it permanently switches to
Bland's rule, which guarantees termination.  Intended for the tiny systems
that arise when locating chamber points; no sparsity, no large-scale
ambitions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Row = tuple[Sequence[Fraction | int], Fraction | int]

_STALL_LIMIT = 40


def maximize(
    objective: Sequence[Fraction | int],
    eq_rows: Sequence[Row],
    ge_rows: Sequence[Row],
) -> Optional[tuple[Fraction, tuple[Fraction, ...]]]:
    """Maximize ``objective . x`` subject to ``x >= 0``, equalities and ``>=`` rows.

    ``eq_rows`` and ``ge_rows`` are ``(coefficients, rhs)`` pairs.  Returns
    ``(value, x)`` at an optimal vertex, or ``None`` when the constraints are
    infeasible.  Raises ``ValueError`` if the objective is unbounded above.
    """
    nvars = len(objective)
    nge = len(ge_rows)
    width = nvars + nge  # structural + slack columns; artificials appended later
    rows: list[list[int]] = []
    for coeffs, rhs in list(eq_rows) + list(ge_rows):
        if len(coeffs) != nvars:
            raise ValueError("constraint width does not match the objective")
    for coeffs, rhs in eq_rows:
        rows.append(_integer_row(coeffs, [0] * nge, rhs))
    for k, (coeffs, rhs) in enumerate(ge_rows):
        slack = [0] * nge
        slack[k] = -1
        rows.append(_integer_row(coeffs, slack, rhs))
    for row in rows:
        if row[-1] < 0:
            for j in range(len(row)):
                row[j] = -row[j]

    # Initial basis: a slack column where possible (it is a unit column; a
    # nonpositive coefficient is fixed by flipping the row, legal only when
    # the right side is zero), an artificial column otherwise.
    basis: list[int] = []
    artificial: list[int] = []
    for r, row in enumerate(rows):
        col = next(
            (j for j in range(nvars, width) if row[j] and all(o[j] == 0 for o in rows if o is not row)),
            None,
        )
        if col is not None and (row[col] > 0 or row[-1] == 0):
            if row[col] < 0:
                for j in range(len(row)):
                    row[j] = -row[j]
            basis.append(col)
            continue
        basis.append(-1)
        artificial.append(r)
    total_width = width + len(artificial)
    for row in rows:
        row[-1:-1] = [0] * len(artificial)
    for k, r in enumerate(artificial):
        rows[r][width + k] = 1
        basis[r] = width + k

    if artificial:
        cost = [Fraction(0)] * (total_width + 1)
        for k in range(len(artificial)):
            cost[width + k] = Fraction(1)
        for r, row in enumerate(rows):
            factor = cost[basis[r]]
            if factor:
                d = Fraction(row[basis[r]])
                for j in range(total_width + 1):
                    cost[j] -= factor * row[j] / d
        icost = _integer_cost(cost)
        _pivot_to_optimum(rows, icost, basis)
        if any(row[-1] != 0 for r, row in enumerate(rows) if basis[r] >= width):
            return None
        # Drive leftover artificials out of the basis; an all-zero row is
        # redundant and dropped.
        keep: list[int] = []
        for r in range(len(rows)):
            if basis[r] < width:
                keep.append(r)
                continue
            col = next((j for j in range(width) if rows[r][j] != 0), None)
            if col is None:
                continue
            _pivot(rows, None, basis, r, col)
            keep.append(r)
        rows = [rows[r][:width] + rows[r][-1:] for r in keep]
        basis = [basis[r] for r in keep]

    cost = [Fraction(-c) for c in objective] + [Fraction(0)] * (nge + 1)
    for r, row in enumerate(rows):
        factor = cost[basis[r]]
        if factor:
            d = Fraction(row[basis[r]])
            for j in range(width + 1):
                cost[j] -= factor * row[j] / d
    icost = _integer_cost(cost)
    _pivot_to_optimum(rows, icost, basis)

    point = [Fraction(0)] * nvars
    for r, b in enumerate(basis):
        if b < nvars:
            point[b] = Fraction(rows[r][-1], rows[r][b])
    value = sum((Fraction(c) * x for c, x in zip(objective, point)), Fraction(0))
    return value, tuple(point)


def _integer_row(
    coeffs: Sequence[Fraction | int], slack: Sequence[int], rhs: Fraction | int
) -> list[int]:
    fr = [Fraction(c) for c in coeffs] + [Fraction(s) for s in slack] + [Fraction(rhs)]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in fr]


def _integer_cost(cost: list[Fraction]) -> list[int]:
    den = 1
    for x in cost:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in cost]


def _primitive(row: list[int]) -> None:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return
    if g > 1:
        for j in range(len(row)):
            row[j] //= g


def _pivot_to_optimum(
    rows: list[list[int]], cost: list[int], basis: list[int]
) -> None:
    """Pivot until no reduced cost is negative (minimization form).

    Every row keeps a positive coefficient in its basic column, so the ratio
    test needs only rows with a positive entry in the entering column.
    """
    ncols = len(cost) - 1
    bland = False
    stall = 0
    while True:
        enter = None
        if bland:
            enter = next((j for j in range(ncols) if cost[j] < 0), None)
        else:
            best = 0
            for j in range(ncols):
                if cost[j] < best:
                    best = cost[j]
                    enter = j
        if enter is None:
            return
        leave = None
        best_num = best_den = 0  # running minimum ratio rhs/entry
        for r, row in enumerate(rows):
            entry = row[enter]
            if entry <= 0:
                continue
            num, den = row[-1], entry
            if (
                leave is None
                or num * best_den < best_num * den
                or (num * best_den == best_num * den and basis[r] < basis[leave])
            ):
                best_num, best_den = num, den
                leave = r
        if leave is None:
            raise ValueError("objective is unbounded")
        if best_num == 0:
            stall += 1
            if stall >= _STALL_LIMIT:
                bland = True
        else:
            stall = 0
        _pivot(rows, cost, basis, leave, enter)


def _pivot(
    rows: list[list[int]],
    cost: list[int] | None,
    basis: list[int],
    r: int,
    j: int,
) -> None:
    pivot_row = rows[r]
    piv = pivot_row[j]
    if piv < 0:
        for k in range(len(pivot_row)):
            pivot_row[k] = -pivot_row[k]
        piv = -piv
    for other in rows:
        if other is pivot_row or other[j] == 0:
            continue
        f = other[j]
        for k in range(len(other)):
            other[k] = other[k] * piv - pivot_row[k] * f
        _primitive(other)
    if cost is not None and cost[j] != 0:
        f = cost[j]
        for k in range(len(cost)):
            cost[k] = cost[k] * piv - pivot_row[k] * f
        _primitive(cost)
    _primitive(pivot_row)
    basis[r] = j
