"""Degree-2 Siegel cusp form tables built by the Maass lift.

A SiegelTable holds a_F(T) on canonical (Gauss-reduced) representatives
T = [[n, r/2], [r/2, m]]; lookups reduce their argument first, so the table
realizes the GL_2(Z)-invariance of the coefficients (even weight, trivial
character).  fourier_jacobi extracts the index-m Jacobi coefficient table
directly from the Siegel side, independently of the V_m operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .arith import divisors
from .halfint import HalfIntMatrix, SMmuSpec, enumerate_smmu, reduce
from .jacobi import JacobiTable
from .qseries import Rational, _as_exact


@dataclass(frozen=True)
class SiegelTable:
    """a_F(T) keyed by the reduced triple (n, r, m) of T = [[n, r/2], [r/2, m]]."""

    weight: int
    det4_bound: int
    coeffs: dict[tuple[int, int, int], Rational] = field(compare=False)
    source: str = ""

    def __eq__(self, other):
        return (
            isinstance(other, SiegelTable)
            and (self.weight, self.det4_bound, self.source)
            == (other.weight, other.det4_bound, other.source)
            and self.coeffs == other.coeffs
        )

    def lookup(self, t: HalfIntMatrix) -> Rational:
        """a_F(T) for any positive definite 2x2 half-integral T within bound."""
        d4 = t.det4()
        if d4 > self.det4_bound:
            raise ValueError(f"4 det T = {d4} beyond table bound {self.det4_bound}")
        if d4 <= 0:
            raise ValueError("T must be positive definite")
        reduced, _ = reduce(t)
        return self.coeffs.get(reduced.binary_triple(), 0)

    def coeff(self, n: int, r: int, m: int) -> Rational:
        return self.lookup(HalfIntMatrix.binary(n, r, m))

    def __repr__(self):
        return (f"SiegelTable(weight={self.weight}, det4_bound={self.det4_bound}, "
                f"source={self.source!r}, {len(self.coeffs)} nonzero)")


def _reduced_triples(det4_bound: int):
    """Canonical reduced (n, r, m): -n < r <= n <= m, r >= 0 if n = m,
    with 0 < 4nm - r^2 <= det4_bound."""
    for n in range(1, isqrt(det4_bound // 3) + 1):
        for r in range(-n + 1, n + 1):
            m_top = (det4_bound + r * r) // (4 * n)
            for m in range(n, m_top + 1):
                if n == m and r < 0:
                    continue
                yield n, r, m


def maass_lift(phi: JacobiTable, det4_bound: int) -> SiegelTable:
    """Lift an index-1 cusp form: a(n, r, m) = sum_{d | (n,r,m)} d^{k-1} c(nm/d^2, r/d)."""
    if phi.index != 1:
        raise ValueError("Maass lift needs an index-1 seed")
    if not phi.is_cusp():
        raise ValueError("Maass lift needs a cusp form seed")
    if phi.disc_bound < det4_bound:
        raise ValueError(
            f"seed disc_bound {phi.disc_bound} insufficient; need >= {det4_bound}"
        )
    k = phi.weight
    table = phi.coeffs  # (D, r mod 2) -> value, all with D > 0
    out: dict[tuple[int, int, int], Rational] = {}
    for n, r, m in _reduced_triples(det4_bound):
        g = gcd(gcd(n, r), m)
        d_key = 4 * n * m - r * r
        if g == 1:
            v = table.get((d_key, r & 1), 0)
        else:
            v = 0
            for d in divisors(g):
                v += d ** (k - 1) * table.get((d_key // (d * d), (r // d) & 1), 0)
        if v:
            out[(n, r, m)] = _as_exact(v)
    return SiegelTable(k, det4_bound, out, source=f"maass_lift(weight={k})")


def fourier_jacobi(f: SiegelTable, m: int) -> JacobiTable:
    """Index-m Fourier-Jacobi coefficient table: c_m(n, r) = a_F([[n, r/2], [r/2, m]]).

    Computed purely from the Siegel table; for Maass lifts it must agree with
    v_operator(seed, m), which the tests assert as a dual-route check.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    bound = f.det4_bound
    out: dict[tuple[int, int], Rational] = {}
    for r in range(2 * m):
        n = (r * r) // (4 * m) + 1  # least n with T positive definite
        while True:
            d_key = 4 * m * n - r * r
            if d_key > bound:
                break
            v = f.lookup(HalfIntMatrix.binary(n, r, m))
            if v:
                out[(d_key, r)] = v
            n += 1
    return JacobiTable(f.weight, m, bound, out)


def smmu_sequence(f: SiegelTable, spec: SMmuSpec, m_max: int) -> list[tuple[int, Rational]]:
    """The coefficient sequence {a_F(T) : T in S_{M,mu}} ordered by m = 4 det T."""
    if spec.size != 1:
        raise ValueError("sequence extraction instantiated for 1x1 index blocks")
    if m_max > f.det4_bound:
        raise ValueError(f"m_max {m_max} beyond table bound {f.det4_bound}")
    return [(m, f.lookup(t)) for m, t in enumerate_smmu(spec, m_max)]


def diagonal_sequence(f: SiegelTable, p: int, n_max: int) -> list[tuple[int, Rational]]:
    """The diagonal sequence a_F(diag(n, p)) for n = 1..n_max."""
    if 4 * p * n_max > f.det4_bound:
        raise ValueError(
            f"need det4_bound >= {4 * p * n_max}, table has {f.det4_bound}"
        )
    return [(n, f.lookup(HalfIntMatrix.diagonal(n, p))) for n in range(1, n_max + 1)]
