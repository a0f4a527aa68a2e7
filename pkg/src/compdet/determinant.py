"""Exact determinants over the rationals and the polynomial ring.

det_bareiss is the production backend (fraction-free elimination, every
intermediate division exact).  det_laplace is a deliberately independent
cofactor-expansion oracle, hard-capped at order 8 so it stays an oracle
and never becomes a fast path.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

from .compositions import Domain
from .matrices import EntryFamily, SymbolicMatrix, build_numeric_matrix
from .polynomials import Coeff, ExactDivisionError, Polynomial, fused_mul_sub

LAPLACE_MAX_ORDER = 8


class MatrixSizeError(ValueError):
    """Matrix order exceeds the Laplace oracle's hard cap."""


Element = "Polynomial | Coeff"


def _rows_of(m) -> list[list]:
    if isinstance(m, SymbolicMatrix):
        return [list(row) for row in m.entries]
    rows = [list(row) for row in m]
    order = len(rows)
    if order == 0 or any(len(r) != order for r in rows):
        raise ValueError("matrix must be square and non-empty")
    return rows


def det_laplace(m):
    """Cofactor expansion along the first row; exact; order <= 8 only."""
    rows = _rows_of(m)
    if len(rows) > LAPLACE_MAX_ORDER:
        raise MatrixSizeError(
            f"Laplace oracle capped at order {LAPLACE_MAX_ORDER}, got {len(rows)}")
    return _laplace(rows)


def _laplace(rows: list[list]):
    order = len(rows)
    if order == 1:
        return rows[0][0]
    total = None
    sign = 1
    for j in range(order):
        a = rows[0][j]
        if a:
            minor = [[row[c] for c in range(order) if c != j] for row in rows[1:]]
            term = a * _laplace(minor) * sign
            total = term if total is None else total + term
        sign = -sign
    if total is None:
        return rows[0][0] * 0
    return total


def _exact_div(a, b):
    if isinstance(a, Polynomial):
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ExactDivisionError(f"{a} not divisible by {b}")
        return q
    return Fraction(a) / Fraction(b)


def det_bareiss(m):
    """Fraction-free elimination with row-exchange sign tracking.

    For polynomial matrices, rational coefficient denominators are
    cleared column by column up front (compensated exactly at the end),
    so the elimination itself runs over integer coefficients.
    """
    rows = _rows_of(m)
    order = len(rows)
    poly_mode = all(isinstance(e, Polynomial) for row in rows for e in row)
    scale = 1
    if poly_mode:
        for j in range(order):
            lcm = math.lcm(*(rows[i][j].denominator_lcm() for i in range(order)))
            if lcm != 1:
                scale *= lcm
                for i in range(order):
                    rows[i][j] = rows[i][j] * lcm
    sign = 1
    prev = None  # pivot of the previous step; divisions by it are exact
    for r in range(order - 1):
        pivot_row = next((i for i in range(r, order) if rows[i][r]), None)
        if pivot_row is None:
            return rows[0][0] * 0
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            sign = -sign
        pivot = rows[r][r]
        row_r = rows[r]
        for i in range(r + 1, order):
            row_i = rows[i]
            lead = row_i[r]
            for j in range(r + 1, order):
                if poly_mode:
                    num = fused_mul_sub(pivot, row_i[j], lead, row_r[j])
                else:
                    num = pivot * row_i[j] - lead * row_r[j]
                row_i[j] = num if prev is None else _exact_div(num, prev)
        prev = pivot
    det = rows[order - 1][order - 1]
    if scale != 1:
        det = det * Fraction(1, scale)
    return det if sign == 1 else det * -1


def _det_integer_bareiss(rows: list[list[int]]) -> int:
    return det_bareiss(rows)


def det_numeric(family: EntryFamily, domain: Domain, n: int, k: int,
                assignment: Mapping[str, Coeff] | Sequence[Coeff | None]) -> Fraction:
    """Determinant of the numeric matrix, without symbolic expansion.

    Denominators are cleared per row so the elimination runs on plain
    integers; the determinant is rescaled at the end.
    """
    rows = build_numeric_matrix(family, domain, n, k, assignment)
    scale = Fraction(1)
    int_rows: list[list[int]] = []
    for row in rows:
        frs = [Fraction(v) for v in row]
        lcm = math.lcm(*(f.denominator for f in frs)) if frs else 1
        scale *= lcm
        int_rows.append([int(f * lcm) for f in frs])
    return Fraction(_det_integer_bareiss(int_rows)) / scale
