"""Exact linear algebra over fractions.Fraction."""

from __future__ import annotations

from fractions import Fraction


class SingularSystemError(ValueError):
    pass


def solve_linear(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a x = b by Gaussian elimination with exact arithmetic.

    `a` is a dense square matrix (rows of Fractions); `a` and `b` are not
    modified.  Raises SingularSystemError if no unique solution exists.
    """
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularSystemError(f"singular at column {col}")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        prow = m[col]
        inv = Fraction(1) / prow[col]
        for r in range(col + 1, n):
            factor = m[r][col]
            if factor == 0:
                continue
            factor *= inv
            row = m[r]
            for c in range(col, n + 1):
                row[c] -= factor * prow[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n]
        row = m[r]
        for c in range(r + 1, n):
            acc -= row[c] * x[c]
        x[r] = acc / row[r]
    return x
