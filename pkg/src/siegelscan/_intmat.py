"""Small exact integer-matrix helpers (tuples of tuples, no numpy)."""

from __future__ import annotations

from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def freeze(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def mat_mul(a, b) -> IntMatrix:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def det(a) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _minor(a, i: int, j: int):
    return [row[:j] + row[j + 1 :] for k, row in enumerate([list(r) for r in a]) if k != i]


def adjugate(a) -> IntMatrix:
    """Adjugate matrix: adj(A) @ A = det(A) * I.  adj of a 1x1 matrix is (1)."""
    n = len(a)
    if n == 1:
        return ((1,),)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[j][i] = (-1) ** (i + j) * det(_minor(a, i, j))
    return freeze(out)
