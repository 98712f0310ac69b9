"""Constructive quadratic-form algorithms: represent values coprime to N,
represent odd primes by bounded search, and complete primitive vectors to
SL_n(Z) matrices."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, isqrt

from . import _intmat
from ._intmat import IntMatrix
from .arith import crt_pair, ext_gcd, is_prime, prime_factors
from .halfint import HalfIntMatrix


@dataclass(frozen=True)
class QuadForm:
    """Integral quadratic form Q(x) = (1/2) x^t A x.

    A (the Gram matrix) is symmetric with even diagonal, so Q has integer
    coefficients c_ii = a_ii / 2 and c_ij = a_ij (i < j).
    """

    gram: IntMatrix

    def __post_init__(self):
        rows = _intmat.freeze(self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        if not _intmat.is_symmetric(rows):
            raise ValueError("Gram matrix must be symmetric")
        if any(rows[i][i] % 2 for i in range(n)):
            raise ValueError("Gram matrix must have even diagonal")

    @classmethod
    def from_coefficients(cls, n: int, coeffs: dict[tuple[int, int], int]) -> "QuadForm":
        """Build from {(i, j): c_ij} with i <= j, Q = sum c_ij x_i x_j."""
        gram = [[0] * n for _ in range(n)]
        for (i, j), c in coeffs.items():
            if i == j:
                gram[i][i] = 2 * c
            else:
                i, j = min(i, j), max(i, j)
                gram[i][j] = gram[j][i] = c
        return cls(tuple(tuple(row) for row in gram))

    @property
    def n(self) -> int:
        return len(self.gram)

    def value(self, x) -> int:
        acc = 0
        for i, row in enumerate(self.gram):
            acc += x[i] * sum(a * x[j] for j, a in enumerate(row))
        return acc // 2

    def coefficient_gcd(self) -> int:
        g = 0
        for i in range(self.n):
            g = gcd(g, self.gram[i][i] // 2)
            for j in range(i + 1, self.n):
                g = gcd(g, self.gram[i][j])
        return g

    def is_primitive(self) -> bool:
        return self.coefficient_gcd() == 1

    def is_positive_definite(self) -> bool:
        g = self.gram
        return all(_intmat.det([row[: k + 1] for row in g[: k + 1]]) > 0 for k in range(self.n))


def represent_coprime(q: QuadForm, n_modulus: int) -> tuple[int, ...]:
    """A vector x with gcd(Q(x), N) = 1, built prime by prime and glued by CRT."""
    if n_modulus < 1:
        raise ValueError("N must be >= 1")
    if not q.is_primitive():
        raise ValueError("imprimitive form: content > 1 violates the hypothesis")
    dim = q.n
    if n_modulus == 1:
        return (1,) + (0,) * (dim - 1)
    residues: list[tuple[int, tuple[int, ...]]] = []
    for p in prime_factors(n_modulus):
        # Q mod p is a nonzero form, so a nonzero value occurs in {0..p-1}^n;
        # the scan is capped at p^n points as a hard error (unreachable).
        for x in product(range(p), repeat=dim):
            if q.value(x) % p:
                residues.append((p, x))
                break
        else:
            raise AssertionError(f"no value coprime to {p} in the full residue box")
    x_out = [0] * dim
    for j in range(dim):
        r, m = 0, 1
        for p, x in residues:
            r = crt_pair(r, m, x[j], p)
            m *= p
        x_out[j] = r
    result = tuple(x_out)
    if gcd(q.value(result), n_modulus) != 1:
        raise AssertionError("CRT glue failed to produce a coprime value")
    return result


def _search_box(q: QuadForm, bound: int) -> list[int]:
    """Per-coordinate limits B_i with Q(x) <= bound implying |x_i| <= B_i.

    On the ellipsoid x^t A x <= 2*bound the maximum of x_i^2 is
    2*bound*(A^{-1})_ii = 2*bound*adj(A)_ii/det(A).
    """
    d = _intmat.det(q.gram)
    adj = _intmat.adjugate(q.gram)
    return [isqrt(2 * bound * adj[i][i] // d) for i in range(q.n)]


def _normalize_sign(x: tuple[int, ...]) -> tuple[int, ...]:
    for v in x:
        if v > 0:
            return x
        if v < 0:
            return tuple(-w for w in x)
    return x


def _witness_key(x: tuple[int, ...]):
    # smallest absolute entries first, then prefer nonnegative coordinates
    return tuple(abs(v) for v in x), tuple(1 if v < 0 else 0 for v in x)


def represent_prime(q: QuadForm, count: int, search_bound: int) -> list[tuple[int, tuple[int, ...]]]:
    """Up to `count` odd primes p = Q(x) with p <= search_bound, ascending.

    Exhaustive over the box, so no represented odd prime below the bound is
    missed; each prime keeps its lexicographically smallest sign-normalized
    witness.  A short list just means the bound was too small.
    """
    if not q.is_primitive():
        raise ValueError("imprimitive form")
    if not q.is_positive_definite():
        raise ValueError("form must be positive definite")
    box = _search_box(q, search_bound)
    found: dict[int, tuple[int, ...]] = {}
    for x in product(*(range(-b, b + 1) for b in box)):
        v = q.value(x)
        if v < 2 or v > search_bound or v % 2 == 0:
            continue
        if is_prime(v):
            w = _normalize_sign(x)
            if v not in found or _witness_key(w) < _witness_key(found[v]):
                found[v] = w
    return [(p, found[p]) for p in sorted(found)[:count]]


def sl_completion(v) -> IntMatrix:
    """An SL_n(Z) matrix (det exactly +1) whose last column is the primitive v."""
    v = tuple(int(x) for x in v)
    n = len(v)
    if n < 2:
        raise ValueError("need n >= 2")
    from .arith import gcd_all

    if gcd_all(v) != 1:
        raise ValueError("vector not primitive")
    u = _complete(v)
    if _intmat.det(u) == -1:
        u = tuple(tuple(-row[0] if j == 0 else row[j] for j in range(n)) for row in u)
    assert _intmat.det(u) == 1
    return u


def _complete(v: tuple[int, ...]):
    """Unimodular matrix (det +-1) with last column v, by gcd recursion."""
    n = len(v)
    if n == 1:
        return ((v[0],),)
    head, last = v[:-1], v[-1]
    g = 0
    for x in head:
        g = gcd(g, x)
    if g == 0:
        # v = (0, ..., 0, +-1): identity with the corner replaced
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        rows[n - 1][n - 1] = last
        return tuple(tuple(r) for r in rows)
    w = tuple(x // g for x in head)
    sub = _complete(w)  # (n-1) x (n-1), last column w
    _, s, t = ext_gcd(g, last)  # s*g + t*last = 1
    rows = []
    for i in range(n - 1):
        rows.append(tuple(sub[i][: n - 2]) + (t * w[i], g * w[i]))
    rows.append((0,) * (n - 2) + (-s, last))
    return tuple(rows)


def pivot_to_prime(
    a: HalfIntMatrix, count: int, search_bound: int
) -> list[tuple[int, IntMatrix, HalfIntMatrix]]:
    """For odd primes p represented by Q(x) = x^t A x, return (p, A_p, A')
    with A_p in SL_n(Z) and A' = A_p^t A A_p having bottom-right entry p."""
    from .halfint import act, is_primitive

    if not is_primitive(a):
        raise ValueError("imprimitive matrix")
    if not a.is_positive_definite():
        raise ValueError("matrix must be positive definite")
    q = QuadForm(a.doubled)  # x^t A x = (1/2) x^t (2A) x
    out = []
    for p, x in represent_prime(q, count, search_bound):
        u = sl_completion(x)
        a_prime = act(a, u)
        if a_prime.doubled[-1][-1] != 2 * p:
            raise AssertionError("completion did not place p in the corner")
        out.append((p, u, a_prime))
    return out
