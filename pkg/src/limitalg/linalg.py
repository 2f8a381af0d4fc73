"""Exact Gaussian elimination over Fraction or Cyc scalars."""
from __future__ import annotations

from fractions import Fraction


def _inv(x):
    if isinstance(x, Fraction):
        return Fraction(1) / x
    return x.inverse()


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = _inv(rows[r][c])
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: list[list]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list], ncols: int, one) -> list[list]:
    """Basis of the right null space of the matrix; `one` is the scalar 1."""
    if not rows:
        return [[one if i == j else one - one for j in range(ncols)]
                for i in range(ncols)]
    red, pivots = rref(rows)
    zero = one - one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(vec)
    return basis


def row_space_contains(rows: list[list], vec: list) -> bool:
    """Whether vec lies in the span of rows (exact)."""
    base = rank(rows)
    return rank(rows + [list(vec)]) == base


def same_span(rows_a: list[list], rows_b: list[list]) -> bool:
    ra, rb = rank(rows_a), rank(rows_b)
    if ra != rb:
        return False
    return rank(rows_a + rows_b) == ra


class Span:
    """A row space with its rref cached, for repeated membership queries."""

    def __init__(self, rows: list[list]):
        red, pivots = rref(rows)
        self.rows = [r for r in red if any(r)]
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, vec: list) -> bool:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)
