"""Exact rational power series and the classical scalars feeding them.

QSeries is a truncated series with exact rational coefficients; products are
computed by clearing denominators and convolving integer arrays, packing long
arrays into single big integers (Kronecker substitution) so that Python's
native big-int multiplication does the heavy lifting.

The scalar side provides Bernoulli numbers, generalized Bernoulli numbers for
Kronecker characters, Kronecker symbols, and Cohen's H function H(r, N).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt, lcm
from typing import Sequence, Union

from .arith import divisors, factorize, moebius, sigma, spf_sieve, squarefree_part

Rational = Union[int, Fraction]

_SCHOOLBOOK_CUTOFF = 48


def _as_exact(v) -> Rational:
    """Normalize a rational to int when its denominator is 1."""
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else v
    if isinstance(v, int):
        return v
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


def _pack(xs: list[int], width: int) -> int:
    buf = bytearray(width * len(xs))
    for i, x in enumerate(xs):
        buf[i * width : i * width + width] = x.to_bytes(width, "little")
    return int.from_bytes(buf, "little")


def _unpack(v: int, width: int, count: int) -> list[int]:
    buf = v.to_bytes(width * count, "little")
    return [int.from_bytes(buf[i * width : i * width + width], "little") for i in range(count)]


def convolve_int(a: list[int], b: list[int], n_out: int) -> list[int]:
    """First n_out+1 coefficients of the product of integer polynomials a, b.

    Long inputs are multiplied via Kronecker substitution: split each input
    into nonnegative/negative parts, pack into big integers with a per-slot
    width large enough that convolution sums cannot carry, and recombine.
    """
    n_out = min(n_out, len(a) + len(b) - 2)
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * (n_out + 1)
        for i, x in enumerate(a):
            if x == 0 or i > n_out:
                continue
            for j, y in enumerate(b[: n_out + 1 - i]):
                out[i + j] += x * y
        return out
    bits_a = max(abs(x).bit_length() for x in a)
    bits_b = max(abs(x).bit_length() for x in b)
    width = (bits_a + bits_b + min(len(a), len(b)).bit_length() + 8) // 8
    count = len(a) + len(b) - 1
    parts = []
    for xs in (a, b):
        pos = _pack([x if x > 0 else 0 for x in xs], width)
        neg = _pack([-x if x < 0 else 0 for x in xs], width)
        parts.append((pos, neg))
    (ap, an), (bp, bn) = parts
    pp = _unpack(ap * bp, width, count)
    nn = _unpack(an * bn, width, count)
    pn = _unpack(ap * bn, width, count)
    np_ = _unpack(an * bp, width, count)
    return [pp[i] + nn[i] - pn[i] - np_[i] for i in range(n_out + 1)]


def convolve_exact(a: Sequence[Rational], b: Sequence[Rational], n_out: int) -> list[Rational]:
    da = lcm(*(x.denominator for x in a if isinstance(x, Fraction)), 1)
    db = lcm(*(x.denominator for x in b if isinstance(x, Fraction)), 1)
    ia = [int(x * da) for x in a]
    ib = [int(x * db) for x in b]
    den = da * db
    return [_as_exact(Fraction(c, den)) for c in convolve_int(ia, ib, n_out)]


class QSeries:
    """Truncated power series sum_{n<=truncation} c_n q^n with exact rationals."""

    __slots__ = ("truncation", "coeffs")

    def __init__(self, coeffs: Sequence[Rational], truncation: int | None = None):
        vals = [_as_exact(c) for c in coeffs]
        if truncation is None:
            truncation = len(vals) - 1
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        if len(vals) < truncation + 1:
            vals += [0] * (truncation + 1 - len(vals))
        self.truncation = truncation
        self.coeffs = tuple(vals[: truncation + 1])

    def coeff(self, n: int) -> Rational:
        if not 0 <= n <= self.truncation:
            raise IndexError(f"coefficient q^{n} beyond truncation {self.truncation}")
        return self.coeffs[n]

    def __eq__(self, other):
        return (
            isinstance(other, QSeries)
            and self.truncation == other.truncation
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.truncation, self.coeffs))

    def __add__(self, other: "QSeries") -> "QSeries":
        t = min(self.truncation, other.truncation)
        return QSeries([self.coeffs[n] + other.coeffs[n] for n in range(t + 1)], t)

    def __sub__(self, other: "QSeries") -> "QSeries":
        t = min(self.truncation, other.truncation)
        return QSeries([self.coeffs[n] - other.coeffs[n] for n in range(t + 1)], t)

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], self.truncation)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            t = min(self.truncation, other.truncation)
            return QSeries(convolve_exact(self.coeffs, other.coeffs, t), t)
        return QSeries([c * other for c in self.coeffs], self.truncation)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            raise ValueError("negative powers not supported")
        out = QSeries([1], self.truncation)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QSeries([{head}{', ...' if self.truncation > 5 else ''}], truncation={self.truncation})"


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Rational:
    """Bernoulli number B_n (B_1 = -1/2), via sum_j C(m+1, j) B_j = 0."""
    if n < 0:
        raise ValueError("Bernoulli numbers need n >= 0")
    if n == 0:
        return 1
    if n > 1 and n % 2:
        return 0
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * Fraction(bernoulli(j))
    return _as_exact(-acc / (n + 1))


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n) with the standard conventions."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    if d % 2 == 0 and n % 2 == 0:
        return 0
    out = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2:
        out = 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
        if out == 0:
            return 0
    if n < 0:
        n = -n
        if d < 0:
            out = -out
    d %= n
    while d:
        while d % 2 == 0:
            d //= 2
            if n % 8 in (3, 5):
                out = -out
        d, n = n, d
        if d % 4 == 3 and n % 4 == 3:
            out = -out
        d %= n
    return out if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    if d == 0:
        return False
    if d % 4 == 1:
        return squarefree_part(abs(d)) == abs(d)
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and squarefree_part(abs(q)) == abs(q)
    return False


def fundamental_decomposition(d: int) -> tuple[int, int]:
    """Write d = d0 * f**2 with d0 a fundamental discriminant (d = 0, 1 mod 4)."""
    if d == 0 or d % 4 not in (0, 1):
        raise ValueError("need a nonzero discriminant d = 0, 1 (mod 4)")
    s = squarefree_part(abs(d))
    if d < 0:
        s = -s
    d0 = s if s % 4 == 1 else 4 * s
    f2, rem = divmod(d, d0)
    if rem:
        raise AssertionError("fundamental part does not divide discriminant")
    return d0, isqrt(f2)


def _character_power_sums(d0: int, t_max: int) -> list[int]:
    """P_t = sum_{a mod |d0|} chi_{d0}(a) a^t for t = 0..t_max, exactly.

    chi values are filled multiplicatively along a smallest-prime-factor
    table, so the Kronecker symbol is only evaluated at primes.
    """
    m = abs(d0)
    if m == 1:
        return [1] + [0] * t_max
    # round the sieve size up to a power of two so repeated calls share tables
    spf = spf_sieve(1 << (m - 1).bit_length())
    chi = [0] * m
    chi[1] = 1
    sums = [1] * (t_max + 1)  # a = 1 contributes 1 to every P_t
    for a in range(2, m):
        p = spf[a]
        c = kronecker(d0, a) if p == a else chi[p] * chi[a // p]
        chi[a] = c
        if c:
            power = 1
            for t in range(1, t_max + 1):
                power *= a
                if c > 0:
                    sums[t] += power
                else:
                    sums[t] -= power
            if c > 0:
                sums[0] += 1
            else:
                sums[0] -= 1
    return sums


@lru_cache(maxsize=None)
def gen_bernoulli(n: int, d: int) -> Rational:
    """Generalized Bernoulli number B_{n, chi_d} for the Kronecker character mod |d|."""
    if n < 0:
        raise ValueError("need n >= 0")
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    if d == 1:
        # trivial character; matches B_n except the classical n = 1 sign flip
        b = Fraction(bernoulli(n))
        return _as_exact(-b if n == 1 else b)
    m = abs(d)
    sums = _character_power_sums(d, n)
    acc = Fraction(0)
    for j in range(n + 1):
        bj = bernoulli(j)
        if bj:
            acc += comb(n, j) * Fraction(bj) * m**j * sums[n - j]
    return _as_exact(acc / m)


@lru_cache(maxsize=None)
def _lvalue(r: int, d0: int) -> Rational:
    """L(1 - r, chi_{d0}) = -B_{r, chi_{d0}} / r  (zeta for d0 = 1, r >= 2)."""
    if d0 == 1:
        if r < 2:
            raise ValueError("zeta(1-r) branch needs r >= 2")
        return _as_exact(Fraction(-Fraction(bernoulli(r)), r))
    return _as_exact(Fraction(-Fraction(gen_bernoulli(r, d0)), r))


@lru_cache(maxsize=None)
def cohen_h(r: int, n: int) -> Rational:
    """Cohen's function H(r, N).

    H(r, 0) = zeta(1 - 2r); for N > 0 with (-1)^r N = D0 f**2,
    H(r, N) = L(1-r, chi_{D0}) * sum_{d | f} mu(d) chi_{D0}(d) d^{r-1} sigma_{2r-1}(f/d),
    and H(r, N) = 0 when (-1)^r N is not = 0, 1 (mod 4).
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if n < 0:
        raise ValueError("need N >= 0")
    if n == 0:
        return _as_exact(Fraction(-Fraction(bernoulli(2 * r)), 2 * r))
    d = n if r % 2 == 0 else -n
    if d % 4 not in (0, 1):
        return 0
    d0, f = fundamental_decomposition(d)
    total = 0
    for dd in divisors(f):
        mu = moebius(dd)
        if mu:
            total += mu * kronecker(d0, dd) * dd ** (r - 1) * sigma(2 * r - 1, f // dd)
    return _as_exact(Fraction(_lvalue(r, d0)) * total)


def sigma_series(k: int, truncation: int) -> list[int]:
    """[0, sigma_k(1), ..., sigma_k(truncation)] via a divisor sieve."""
    out = [0] * (truncation + 1)
    for d in range(1, truncation + 1):
        dk = d**k
        for mult in range(d, truncation + 1, d):
            out[mult] += dk
    return out


def eisenstein(k: int, truncation: int) -> QSeries:
    """Normalized Eisenstein series E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n."""
    if k % 2 or k < 4:
        raise ValueError("Eisenstein series needs even k >= 4")
    scale = Fraction(-2 * k, 1) / Fraction(bernoulli(k))
    sig = sigma_series(k - 1, truncation)
    coeffs: list[Rational] = [1] + [_as_exact(scale * sig[n]) for n in range(1, truncation + 1)]
    return QSeries(coeffs, truncation)
