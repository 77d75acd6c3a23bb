"""Exact rational linear algebra on dense lists of :class:`Fraction`."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan over Q)."""
    m = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def sparse_rank(vectors: Sequence[dict]) -> int:
    """Rank of a family of sparse vectors ``{key: Fraction}``."""
    # each stored vector is free of the pivot keys of the vectors stored before it
    basis: list[tuple[object, dict]] = []
    for vec in vectors:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        for key, b in basis:
            f = v.get(key)
            if f:
                for k, x in b.items():
                    y = v.get(k, 0) - f * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        if v:
            key = min(v)
            inv = 1 / v[key]
            basis.append((key, {k: x * inv for k, x in v.items()}))
    return len(basis)


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix; raises ``ZeroDivisionError`` if singular."""
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
