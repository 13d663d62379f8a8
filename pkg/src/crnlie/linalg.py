"""Exact linear algebra over the integers and the rationals.

Matrices are plain lists of rows. Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    rows = [list(map(int, row)) for row in matrix]
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev_pivot = 1
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, nrows):
            lead = rows[r][col]
            for c in range(col, ncols):
                # exact division is guaranteed by Sylvester's identity
                rows[r][c] = (pivot * rows[r][c] - lead * rows[rank][c]) // prev_pivot
        prev_pivot = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


class Echelon:
    """Incrementally maintained row-echelon basis of a span of rational vectors.

    ``add`` reduces a vector against the current basis and keeps it only if it
    is independent, so ``rank`` always equals the dimension of the span.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Iterable) -> list[Fraction]:
        vec = [Fraction(v) for v in vector]
        for pivot, row in self._rows:
            if vec[pivot]:
                factor = vec[pivot]
                vec = [a - factor * b for a, b in zip(vec, row)]
        return vec

    def contains(self, vector: Iterable) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Iterable) -> bool:
        vec = self.reduce(vector)
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            return False
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        # keep rows fully reduced so reduce() needs a single pass
        reduced = []
        for p, row in self._rows:
            if row[pivot]:
                f = row[pivot]
                row = [a - f * b for a, b in zip(row, vec)]
            reduced.append((p, row))
        reduced.append((pivot, vec))
        self._rows = reduced
        return True

    def copy(self) -> "Echelon":
        other = Echelon(self.dim)
        other._rows = list(self._rows)
        return other


def rank(vectors: Iterable[Sequence], dim: int | None = None) -> int:
    """Exact rank of a collection of rational vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    ech = Echelon(dim if dim is not None else len(vectors[0]))
    for v in vectors:
        ech.add(v)
    return ech.rank


def columns(matrix: Sequence[Sequence]) -> list[list]:
    if not matrix:
        return []
    return [list(col) for col in zip(*matrix)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = columns(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def in_column_space(vector: Sequence, cols: Iterable[Sequence]) -> bool:
    """True iff ``vector`` is a rational combination of ``cols``."""
    cols = list(cols)
    ech = Echelon(len(vector))
    for c in cols:
        ech.add(c)
    return ech.contains(vector)
