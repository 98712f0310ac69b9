"""Symmetric half-integral matrices: content, unimodular action, reduction,
and enumeration of the sparse families with a fixed lower-right block.

A half-integral matrix T (integral diagonal, half-integral off-diagonal) is
stored through its doubled matrix 2T, so every operation stays in exact
integer arithmetic and matrices can be used as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _intmat
from ._intmat import IntMatrix


@dataclass(frozen=True)
class HalfIntMatrix:
    """Immutable symmetric half-integral matrix, stored as 2T."""

    doubled: IntMatrix

    def __post_init__(self):
        rows = _intmat.freeze(self.doubled)
        object.__setattr__(self, "doubled", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("doubled matrix must be square and nonempty")
        if not _intmat.is_symmetric(rows):
            raise ValueError("doubled matrix must be symmetric")
        if any(rows[i][i] % 2 for i in range(n)):
            raise ValueError("doubled matrix must have even diagonal")

    @classmethod
    def diagonal(cls, *entries: int) -> "HalfIntMatrix":
        n = len(entries)
        return cls(tuple(tuple(2 * entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def binary(cls, n: int, r: int, m: int) -> "HalfIntMatrix":
        """The 2x2 matrix [[n, r/2], [r/2, m]]."""
        return cls(((2 * n, r), (r, 2 * m)))

    @property
    def size(self) -> int:
        return len(self.doubled)

    def entry(self, i: int, j: int) -> Fraction | int:
        v = Fraction(self.doubled[i][j], 2)
        return int(v) if v.denominator == 1 else v

    def det(self) -> Fraction | int:
        v = Fraction(_intmat.det(self.doubled), 2**self.size)
        return int(v) if v.denominator == 1 else v

    def det4(self) -> int:
        """4 det T, exact; raises if it is not an integer."""
        v = 4 * Fraction(self.det())
        if v.denominator != 1:
            raise ValueError("4 det T is not integral")
        return int(v)

    def is_positive_definite(self) -> bool:
        d = self.doubled
        return all(_intmat.det([row[: k + 1] for row in d[: k + 1]]) > 0 for k in range(self.size))

    def scaled(self, a: int) -> "HalfIntMatrix":
        return HalfIntMatrix(tuple(tuple(a * x for x in row) for row in self.doubled))

    def binary_triple(self) -> tuple[int, int, int]:
        """(n, r, m) for a 2x2 matrix [[n, r/2], [r/2, m]]."""
        if self.size != 2:
            raise ValueError("binary_triple needs a 2x2 matrix")
        d = self.doubled
        return d[0][0] // 2, d[0][1], d[1][1] // 2


def content(t: HalfIntMatrix) -> int:
    """Largest a such that T/a is still half-integral."""
    d = t.doubled
    n = t.size
    g = 0
    for i in range(n):
        g = gcd(g, d[i][i] // 2)
        for j in range(i + 1, n):
            g = gcd(g, d[i][j])
    if g == 0:
        raise ValueError("undefined content: zero matrix")
    return g


def is_primitive(t: HalfIntMatrix) -> bool:
    return content(t) == 1


def act(t: HalfIntMatrix, u) -> HalfIntMatrix:
    """T[U] = U^t T U for unimodular integer U."""
    u = _intmat.freeze(u)
    if len(u) != t.size:
        raise ValueError("size mismatch")
    if abs(_intmat.det(u)) != 1:
        raise ValueError("U must be unimodular (|det U| = 1)")
    return HalfIntMatrix(_intmat.mat_mul(_intmat.mat_mul(_intmat.transpose(u), t.doubled), u))


def reduce(t: HalfIntMatrix) -> tuple[HalfIntMatrix, IntMatrix]:
    """Gauss-reduced representative of a positive definite binary T.

    Returns (T0, U) with T[U] = T0, U in SL_2(Z), and T0 = [[a, b], [b, c]]
    satisfying -a < 2b <= a <= c with 2b >= 0 whenever a = c.  These
    conditions pick a unique representative per SL_2(Z) orbit, so the result
    is a canonical table key.
    """
    if t.size != 2:
        raise ValueError("reduction implemented only for 2x2 matrices")
    if not t.is_positive_definite():
        raise ValueError("reduction needs a positive definite matrix")
    a, b, c = t.binary_triple()  # form a x^2 + b xy + c y^2
    u = _intmat.identity(2)
    while True:
        # translate so that b lands in (-a, a]
        s = (a - b) // (2 * a)
        if s:
            b, c = b + 2 * a * s, c + b * s + a * s * s
            u = _intmat.mat_mul(u, ((1, s), (0, 1)))
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            u = _intmat.mat_mul(u, ((0, -1), (1, 0)))
        else:
            break
    return HalfIntMatrix.binary(a, b, c), u


@dataclass(frozen=True)
class SMmuSpec:
    """Parameters (M, mu) of the sparse family with lower-right block M.

    The cofactor is stored as the adjugate of the doubled matrix 2M, which is
    always integral, reduces to the scalar 1 when M is 1x1, and satisfies the
    exact identity cofactor * (2M) = det(2M) * I.  The adjugate of M itself is
    cofactor / 2^(n-1).
    """

    index_matrix: HalfIntMatrix
    shift: tuple[int, ...]
    cofactor: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "shift", tuple(int(x) for x in self.shift))
        object.__setattr__(self, "cofactor", _intmat.freeze(self.cofactor))
        m = self.index_matrix
        if not m.is_positive_definite():
            raise ValueError("index matrix must be positive definite")
        if len(self.shift) != m.size:
            raise ValueError("shift length must match index matrix size")
        n = m.size
        dd = _intmat.det(m.doubled)
        prod = _intmat.mat_mul(self.cofactor, m.doubled)
        if prod != tuple(tuple(dd if i == j else 0 for j in range(n)) for i in range(n)):
            raise ValueError("cofactor identity cofactor * 2M = det(2M) * I fails")

    @classmethod
    def make(cls, index_matrix: HalfIntMatrix, shift) -> "SMmuSpec":
        return cls(index_matrix, tuple(shift), _intmat.adjugate(index_matrix.doubled))

    @property
    def size(self) -> int:
        return self.index_matrix.size

    def modulus(self) -> int:
        """4 det M."""
        return self.index_matrix.det4()

    def shift_value(self) -> int:
        """M*[mu] with M* the adjugate of M itself; always an integer."""
        v = sum(
            self.shift[i] * self.cofactor[i][j] * self.shift[j]
            for i in range(self.size)
            for j in range(self.size)
        )
        q, rem = divmod(v, 2 ** (self.size - 1))
        if rem:
            raise AssertionError("M*[mu] must be integral")
        return q


def enumerate_smmu(spec: SMmuSpec, m_max: int) -> list[tuple[int, HalfIntMatrix]]:
    """All (m, T) with T in the family, 4 det T = m <= m_max, ascending in m."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    n = spec.size
    modulus = spec.modulus()
    shift_val = spec.shift_value()
    block = spec.index_matrix.doubled
    out = []
    for m in range(1, m_max + 1):
        q, rem = divmod(m + shift_val, modulus)
        if rem or q <= 0:
            continue
        top = (2 * q,) + spec.shift
        rows = [top]
        for i in range(n):
            rows.append((spec.shift[i],) + block[i])
        t = HalfIntMatrix(tuple(rows))
        if not t.is_positive_definite():
            continue
        if t.det4() != m:
            raise AssertionError("enumerated matrix violates 4 det T = m")
        out.append((m, t))
    return out
