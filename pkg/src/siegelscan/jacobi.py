"""Degree-1 Jacobi forms on the (D, r mod 2m) quotient.

Tables store one exact rational per invariant class (D = 4mn - r^2,
r mod 2m), which bakes the elementary coefficient relation into the data
model: expand() reconstructs c(n, r) for arbitrary (n, r).  Constructors are
the index-1 Eisenstein series (from Cohen's H function), the two weight-10/12
index-1 cusp forms, the index-raising operators V_l, and the theta
split/assemble pair.  theta_eval sums the classical theta series numerically
for the multiplier extraction in `gauss`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import divisors
from .qseries import QSeries, Rational, _as_exact, cohen_h, convolve_exact, eisenstein


@dataclass(frozen=True)
class JacobiTable:
    """Coefficients of a Jacobi form of weight k, index m, keyed by (D, r mod 2m).

    Only nonzero values are stored; keys satisfy D >= 0, D = -r^2 (mod 4m),
    D <= disc_bound.  Treat instances as immutable.
    """

    weight: int
    index: int
    disc_bound: int
    coeffs: dict[tuple[int, int], Rational] = field(compare=False)

    def __post_init__(self):
        m = self.index
        clean: dict[tuple[int, int], Rational] = {}
        for (d, r), v in self.coeffs.items():
            r %= 2 * m
            if d < 0 or d > self.disc_bound:
                raise ValueError(f"key D={d} outside [0, {self.disc_bound}]")
            if (d + r * r) % (4 * m):
                raise ValueError(f"key (D={d}, r={r}) violates D = -r^2 mod 4m")
            v = _as_exact(v)
            if v:
                clean[(d, r)] = v
        object.__setattr__(self, "coeffs", clean)

    def __eq__(self, other):
        return (
            isinstance(other, JacobiTable)
            and (self.weight, self.index, self.disc_bound) == (other.weight, other.index, other.disc_bound)
            and self.coeffs == other.coeffs
        )

    def coeff(self, d: int, r: int) -> Rational:
        """Value on the class (D, r mod 2m); zero if absent."""
        if d > self.disc_bound:
            raise ValueError(f"D={d} beyond stored disc_bound {self.disc_bound}")
        if d < 0:
            return 0
        return self.coeffs.get((d, r % (2 * self.index)), 0)

    def expand(self, n: int, r: int) -> Rational:
        """c(n, r) for arbitrary integers n >= 0, r: depends only on
        (4mn - r^2, r mod 2m)."""
        d = 4 * self.index * n - r * r
        if d < 0:
            return 0
        return self.coeff(d, r)

    def is_cusp(self) -> bool:
        return all(d > 0 for d, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def scaled(self, s: Rational) -> "JacobiTable":
        return JacobiTable(
            self.weight, self.index, self.disc_bound,
            {k: _as_exact(Fraction(v) * Fraction(s)) for k, v in self.coeffs.items()},
        )

    def _combine(self, other: "JacobiTable", sign: int) -> "JacobiTable":
        if (self.weight, self.index) != (other.weight, other.index):
            raise ValueError("can only combine tables of equal weight and index")
        bound = min(self.disc_bound, other.disc_bound)
        out: dict[tuple[int, int], Rational] = {
            k: v for k, v in self.coeffs.items() if k[0] <= bound
        }
        for k, v in other.coeffs.items():
            if k[0] <= bound:
                out[k] = out.get(k, 0) + sign * v
        return JacobiTable(self.weight, self.index, bound, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def residues(self) -> range:
        return range(2 * self.index)

    def __repr__(self):
        return (f"JacobiTable(weight={self.weight}, index={self.index}, "
                f"disc_bound={self.disc_bound}, {len(self.coeffs)} nonzero)")


@dataclass(frozen=True)
class ThetaComponent:
    """One theta component h_r: the map D -> c_r(D) for a residue r mod 2m.

    disc_bound records how far the component is known; a missing D below the
    bound is a known zero, beyond it nothing is asserted.
    """

    weight: int
    index: int
    residue: int
    disc_bound: int
    coeffs: dict[int, Rational] = field(compare=False)

    def __eq__(self, other):
        return (
            isinstance(other, ThetaComponent)
            and (self.weight, self.index, self.residue, self.disc_bound)
            == (other.weight, other.index, other.residue, other.disc_bound)
            and self.coeffs == other.coeffs
        )

    def first_nonzero(self) -> int | None:
        return min((d for d, v in self.coeffs.items() if v), default=None)


@lru_cache(maxsize=16)
def jacobi_eisenstein(k: int, disc_bound: int) -> JacobiTable:
    """Index-1 Jacobi Eisenstein series E_{k,1}: c(n, r) = H(k-1, D) / H(k-1, 0)."""
    if k % 2 or k < 4:
        raise ValueError("need even k >= 4")
    h0 = Fraction(cohen_h(k - 1, 0))
    coeffs: dict[tuple[int, int], Rational] = {}
    for r in (0, 1):
        d = (-r * r) % 4
        while d <= disc_bound:
            v = cohen_h(k - 1, d)
            if v:
                coeffs[(d, r)] = _as_exact(Fraction(v) / h0)
            d += 4
    return JacobiTable(k, 1, disc_bound, coeffs)


def multiply_scalar_jacobi(
    f: QSeries, f_weight: int, phi: JacobiTable, disc_bound: int | None = None
) -> JacobiTable:
    """Product of a scalar modular form with a Jacobi form, exact.

    c_out(n, r) = sum_j f_j c_phi(n - j, r); output weight f_weight + phi.weight.
    Raises on truncation shortfall rather than silently truncating.
    """
    m = phi.index
    worst_r2 = (2 * m - 1) ** 2
    attainable = min(phi.disc_bound, 4 * m * f.truncation - worst_r2)
    if disc_bound is None:
        disc_bound = attainable
    elif disc_bound > attainable:
        need = (disc_bound + worst_r2 + 4 * m - 1) // (4 * m)
        raise ValueError(
            f"disc_bound {disc_bound} needs f truncation >= {need} and "
            f"phi disc_bound >= {disc_bound} (have {f.truncation}, {phi.disc_bound})"
        )
    out: dict[tuple[int, int], Rational] = {}
    for r in range(2 * m):
        n_max = (disc_bound + r * r) // (4 * m)
        col = [phi.expand(n, r) for n in range(n_max + 1)]
        prod = convolve_exact(f.coeffs[: n_max + 1], col, n_max)
        for n, v in enumerate(prod):
            d = 4 * m * n - r * r
            if v and 0 <= d <= disc_bound:
                out[(d, r)] = v
    return JacobiTable(f_weight + phi.weight, m, disc_bound, out)


@lru_cache(maxsize=8)
def phi_cusp(k: int, disc_bound: int) -> JacobiTable:
    """The index-1 cusp forms of weight 10 and 12, normalized so c(1,1) = 1.

    phi_10 = (E_6 E_{4,1} - E_4 E_{6,1}) / 144,
    phi_12 = (E_4^2 E_{4,1} - E_6 E_{6,1}) / 144.
    """
    if k not in (10, 12):
        raise ValueError("cusp seeds exist for k in {10, 12} only")
    trunc = (disc_bound + 1) // 4 + 1
    e4 = eisenstein(4, trunc)
    e6 = eisenstein(6, trunc)
    e41 = jacobi_eisenstein(4, disc_bound)
    e61 = jacobi_eisenstein(6, disc_bound)
    if k == 10:
        combo = (
            multiply_scalar_jacobi(e6, 6, e41, disc_bound)
            - multiply_scalar_jacobi(e4, 4, e61, disc_bound)
        )
    else:
        combo = (
            multiply_scalar_jacobi(e4 * e4, 8, e41, disc_bound)
            - multiply_scalar_jacobi(e6, 6, e61, disc_bound)
        )
    combo = combo.scaled(Fraction(1, 144))
    if not combo.is_cusp():
        raise AssertionError("cusp combination has a nonzero singular term")
    raw = combo.coeff(3, 1)
    if raw == 0:
        raise AssertionError("normalizing coefficient c(1,1) vanished")
    return combo.scaled(Fraction(1, Fraction(raw)))


def v_operator(phi: JacobiTable, l: int) -> JacobiTable:
    """Index-raising operator V_l on an index-1 form:
    c_out(n, r) = sum_{d | gcd(n, r, l)} d^{k-1} c(n l / d^2, r / d)."""
    if phi.index != 1:
        raise ValueError("V_l implemented for index-1 input")
    if l < 1:
        raise ValueError("need l >= 1")
    if l == 1:
        return JacobiTable(phi.weight, 1, phi.disc_bound, dict(phi.coeffs))
    k = phi.weight
    bound = phi.disc_bound
    out: dict[tuple[int, int], Rational] = {}
    for r in range(2 * l):
        n = (r * r + 4 * l - 1) // (4 * l)  # least n with D = 4ln - r^2 >= 0
        while True:
            d_key = 4 * l * n - r * r
            if d_key > bound:
                break
            g = gcd(gcd(n, r), l)
            acc = Fraction(0)
            for d in divisors(g):
                acc += d ** (k - 1) * Fraction(phi.expand(n * l // (d * d), r // d))
            if acc:
                out[(d_key, r)] = _as_exact(acc)
            n += 1
    return JacobiTable(k, l, bound, out)


def theta_split(phi: JacobiTable) -> list[ThetaComponent]:
    """Partition the table into its 2m theta components h_r; lossless."""
    comps = [
        ThetaComponent(phi.weight, phi.index, r, phi.disc_bound, {})
        for r in range(2 * phi.index)
    ]
    for (d, r), v in phi.coeffs.items():
        comps[r].coeffs[d] = v
    return comps


def theta_assemble(components) -> JacobiTable:
    """Inverse of theta_split; requires one component per residue class."""
    comps = list(components)
    if not comps:
        raise ValueError("no components given")
    m = comps[0].index
    k = comps[0].weight
    if any((c.index, c.weight) != (m, k) for c in comps):
        raise ValueError("components disagree on index or weight")
    seen = sorted(c.residue for c in comps)
    if seen != list(range(2 * m)):
        missing = sorted(set(range(2 * m)) - set(seen))
        raise ValueError(f"missing residue classes {missing}")
    bound = min(c.disc_bound for c in comps)
    coeffs: dict[tuple[int, int], Rational] = {}
    for c in comps:
        for d, v in c.coeffs.items():
            coeffs[(d, c.residue)] = v
    return JacobiTable(k, m, bound, coeffs)


def check_nonvanishing(phi: JacobiTable) -> list[tuple[int, int | None]]:
    """Least D with h_r(D) != 0 for each residue class, or None within bound.

    Empirical witness for the nonvanishing of all 2p theta components of a
    nonzero Jacobi cusp form of odd prime index.
    """
    from .arith import is_prime

    if phi.index == 2 or not is_prime(phi.index):
        raise ValueError("nonvanishing check expects an odd prime index")
    return [(c.residue, c.first_nonzero()) for c in theta_split(phi)]


def theta_eval(m: int, r: int, tau: complex, z: complex, tail_tol: float = 1e-12) -> complex:
    """Numeric theta series theta_{m,r}(tau, z) = sum_lambda
    e(m (lambda + r/2m)^2 tau + 2m (lambda + r/2m) z).

    The lattice sum is truncated where the Gaussian envelope
    exp(-2 pi m (s^2 Im tau - 2 |s| |Im z|)) drops below tail_tol; the
    cutoff is computed analytically so results are deterministic.
    """
    if m < 1:
        raise ValueError("need index m >= 1")
    y = tau.imag
    if y <= 0:
        raise ValueError("tau must lie in the upper half plane")
    b = abs(z.imag)
    c = r / (2 * m)
    # need s^2 y - 2 s b >= q for the term to be below tail_tol/4
    q = math.log(4.0 / (tail_tol * (1 - math.exp(-2 * math.pi * m * y)))) / (2 * math.pi * m)
    s_min = (b + math.sqrt(b * b + y * max(q, 0.0))) / y
    cap = int(math.ceil(s_min + abs(c))) + 2
    total = 0j
    for lam in range(-cap, cap + 1):
        s = lam + c
        total += cmath.exp(2j * cmath.pi * (m * s * s * tau + 2 * m * s * z))
    return total
