"""Quadratic exponential sums mod 2p, the theta multiplier system on the
generator words, closed forms with brute-force oracles, and the exact
nonvanishing criterion.

Closed forms carry an inverse-residue rider: the quadratic sum
sum_{v mod 2p} e((A v^2 - 2 B v)/4p) evaluates to
eps_p sqrt(p) (A/p) i^{B^2 p} (1 + (-1)^B e(Ap/4)) e(-A* B^2 / 4p)
with A* = A^{-1} (mod p), A* = 1 (mod 4).  For A = 1 (mod p) this is the
familiar display with A* = 1; the general rider is what the full parameter
sweeps require, and the degenerate stratum p | A is handled separately
(the sum is p (1 + (-1)^B e(Ap/4)) when p | B and zero otherwise).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, pi

import numpy as np

from . import _intmat
from .arith import is_prime
from .jacobi import theta_eval
from .qseries import kronecker


def _e(num: int, den: int) -> complex:
    """e(num/den) = exp(2 pi i num / den)."""
    return cmath.exp(2j * pi * (num % den) / den)


_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


def epsilon_p(p: int) -> complex:
    """1 for p = 1 (mod 4), i for p = 3 (mod 4)."""
    _require_odd_prime(p)
    return 1 + 0j if p % 4 == 1 else 1j


def _require_odd_prime(p: int):
    if p < 3 or not is_prime(p):
        raise ValueError(f"p = {p} must be an odd prime")


def _quartic_unit_inverse(a: int, p: int) -> int:
    """A* with A* = a^{-1} (mod p) and A* = 1 (mod 4)."""
    inv = pow(a % p, -1, p)
    while inv % 4 != 1:
        inv += p
    return inv % (4 * p)


def quad_sum_brute(p: int, a: int, b: int) -> complex:
    """Literal sum over v mod 2p of e((a v^2 - 2 b v)/4p)."""
    return sum(_e(a * v * v - 2 * b * v, 4 * p) for v in range(2 * p))


def quad_sum_closed(p: int, a: int, b: int) -> complex:
    """Closed evaluation of quad_sum_brute, valid for every integer a, b."""
    _require_odd_prime(p)
    sign = -1 if b % 2 else 1
    branch = 1 + sign * _I_POW[(a * p) % 4]
    if a % p == 0:
        return p * branch if b % p == 0 else 0j
    astar = _quartic_unit_inverse(a, p)
    return (
        epsilon_p(p)
        * cmath.sqrt(p)
        * kronecker(a, p)
        * _I_POW[(b * b * p) % 4]
        * branch
        * _e(-astar * b * b, 4 * p)
    )


def gauss_sum_brute(p: int, m: int, lam: int, beta: int) -> complex:
    """sum_{v mod 2p} e((m v^2 - 2 v (lam + beta))/4p)."""
    return quad_sum_brute(p, m, lam + beta)


def gauss_sum_closed(p: int, m: int, lam: int, beta: int) -> complex:
    """Closed form of gauss_sum_brute for m >= 1, p not dividing m."""
    _require_odd_prime(p)
    if m < 1:
        raise ValueError("need m >= 1")
    if m % p == 0:
        raise ValueError("closed form requires p not dividing m")
    s = lam + beta
    mstar = _quartic_unit_inverse(m, p)
    return (
        epsilon_p(p)
        * cmath.sqrt(p)
        * kronecker(m, p)
        * _I_POW[(s * s * p) % 4]
        * (1 + (-1 if s % 2 else 1) * _I_POW[(m * p) % 4])
        * _e(-mstar * s * s, 4 * p)
    )


def lambda_sum_brute(p: int, l: int, m: int, alpha: int, beta: int) -> complex:
    """sum_{lam mod 2p} i^{(lam+beta)^2 p} (1 + (-1)^{lam+beta} e(mp/4))
    e((l lam^2 - 2 lam alpha - (lam+beta)^2)/4p)."""
    total = 0j
    for lam in range(2 * p):
        s = lam + beta
        total += (
            _I_POW[(s * s * p) % 4]
            * (1 + (-1 if s % 2 else 1) * _I_POW[(m * p) % 4])
            * _e(l * lam * lam - 2 * lam * alpha - s * s, 4 * p)
        )
    return total


def lambda_sum_closed(p: int, l: int, m: int, alpha: int, beta: int) -> complex:
    """Closed form of lambda_sum_brute; requires p not dividing (l - 1).

    Derivation: fold i^{s^2 p} e(-s^2/4p) into e(s^2 (p^2-1)/4p) and expand
    s = lam + beta; the two parity branches become quadratic sums with
    A = l - 1 + p^2 and B = alpha - (p^2 - 1) beta, shifted by p.
    """
    _require_odd_prime(p)
    if (l - 1) % p == 0:
        raise ValueError("closed form requires p not dividing (l - 1)")
    a = l - 1 + p * p
    b = alpha - (p * p - 1) * beta
    pre = _e(beta * beta * (p * p - 1), 4 * p)
    sign = -1 if beta % 2 else 1
    return pre * (
        quad_sum_closed(p, a, b)
        + sign * _I_POW[(m * p) % 4] * quad_sum_closed(p, a, b - p)
    )


@lru_cache(maxsize=None)
def extract_kappa(p: int, probe_tau: complex = 1j, probe_w: complex = 0.3 + 0.2j) -> complex:
    """kappa(M_1) for degree 1, extracted numerically from the theta inversion
    theta_{p,a}(-1/tau, w/tau) = tau^{1/2} e(p w^2/tau) sum_b rho_ab(M_1) theta_{p,b}
    and snapped to the nearest 8th root of unity (residual must be < 1e-6)."""
    _require_odd_prime(p)
    tau, w = complex(probe_tau), complex(probe_w)
    lhs = theta_eval(p, 0, -1 / tau, w / tau)
    s = sum(theta_eval(p, b, tau, w) for b in range(2 * p))
    denom = cmath.sqrt(tau) * cmath.exp(2j * pi * p * w * w / tau) * (2 * p) ** -0.5 * s
    raw = lhs / denom
    snapped = min(
        (cmath.exp(2j * pi * k / 8) for k in range(8)),
        key=lambda z: abs(z - raw),
    )
    if abs(raw - snapped) > 1e-6:
        raise ArithmeticError(
            f"theta evaluation inconsistent: kappa residual {abs(raw - snapped):.3e}"
        )
    return snapped


def _coords(v, g: int) -> tuple[int, ...]:
    if isinstance(v, int):
        v = (v,)
    v = tuple(int(x) for x in v)
    if len(v) != g:
        raise ValueError(f"expected a length-{g} vector")
    return v


def rho_product_brute(p: int, g: int, l: int, m: int, alpha, beta) -> complex:
    """rho_{alpha,beta}(M1 M2^l M1 M2^m M1) via the literal double sum over
    lambda, nu in (Z/2p)^g, with the numerically extracted kappa."""
    _require_odd_prime(p)
    alpha, beta = _coords(alpha, g), _coords(beta, g)
    kappa = extract_kappa(p) ** g
    total = 0j
    for lam in product(range(2 * p), repeat=g):
        outer = _e(sum(l * x * x - 2 * x * ax for x, ax in zip(lam, alpha)), 4 * p)
        inner = 1 + 0j
        for lj, bj in zip(lam, beta):
            inner *= quad_sum_brute(p, m, lj + bj)
        total += outer * inner
    return (2 * p) ** (-1.5 * g) * kappa**3 * total


def rho_product_closed(p: int, g: int, l: int, m: int, alpha, beta) -> complex:
    """Closed form of rho_product_brute (per-coordinate product of closed
    quadratic sums); hypotheses l, m >= 1 and p not dividing (l-1) m."""
    _require_odd_prime(p)
    if l < 1 or m < 1:
        raise ValueError("need l, m >= 1")
    if ((l - 1) * m) % p == 0:
        raise ValueError("hypothesis p does not divide (l-1)m fails")
    alpha, beta = _coords(alpha, g), _coords(beta, g)
    kappa = extract_kappa(p) ** g
    mstar = _quartic_unit_inverse(m, p)
    a2 = l + p * p - mstar
    scale = epsilon_p(p) * cmath.sqrt(p) * kronecker(m, p)
    out = (2 * p) ** (-1.5 * g) * kappa**3
    for aj, bj in zip(alpha, beta):
        b2 = aj - (p * p - mstar) * bj
        sign = -1 if bj % 2 else 1
        tj = _e((p * p - mstar) * bj * bj, 4 * p) * (
            quad_sum_closed(p, a2, b2)
            + sign * _I_POW[(m * p) % 4] * quad_sum_closed(p, a2, b2 - p)
        )
        out *= scale * tj
    return out


# ---------------------------------------------------------------------------
# multiplier matrices on the generators


def indices(p: int, g: int) -> list[tuple[int, ...]]:
    """(Z/2p)^g in lexicographic order; the row/column order of all matrices."""
    return list(product(range(2 * p), repeat=g))


@dataclass(frozen=True)
class MultiplierMatrix:
    """rho(M) as a (2p)^g x (2p)^g complex matrix, rows/columns indexed by
    indices(p, g); word records which generator word M the matrix realizes."""

    p: int
    g: int
    word: str
    entries: np.ndarray

    def is_unitary(self, tol: float = 1e-9) -> bool:
        n = self.entries.shape[0]
        return bool(np.max(np.abs(self.entries @ self.entries.conj().T - np.eye(n))) < tol)


def rho_inversion_matrix(p: int, g: int) -> MultiplierMatrix:
    """rho(M_1): (2p)^{-g/2} kappa^g e(-beta^t alpha / 2p)."""
    _require_odd_prime(p)
    kappa = extract_kappa(p) ** g
    idx = indices(p, g)
    scale = (2 * p) ** (-0.5 * g) * kappa
    ent = np.empty((len(idx), len(idx)), dtype=complex)
    for i, a in enumerate(idx):
        for j, b in enumerate(idx):
            ent[i, j] = scale * _e(-sum(x * y for x, y in zip(a, b)), 2 * p)
    return MultiplierMatrix(p, g, "M1", ent)


def m2_power_phases(p: int, g: int, m: int) -> list[int]:
    """Exact diagonal phases of rho(M_2^m) as integer exponents t with
    entry = e(t / 4p): t = m alpha^t alpha mod 4p."""
    return [sum(x * x for x in a) * m % (4 * p) for a in indices(p, g)]


def rho_translation_matrix(p: int, g: int, m: int) -> MultiplierMatrix:
    """rho(M_2^m): diagonal with entries e(m alpha^t alpha / 4p)."""
    _require_odd_prime(p)
    ent = np.diag([_e(t, 4 * p) for t in m2_power_phases(p, g, m)])
    return MultiplierMatrix(p, g, f"M2^{m}", ent)


def rho_m2m_m1_matrix(p: int, g: int, m: int) -> MultiplierMatrix:
    """rho(M_2^m M_1) assembled from the generator formulas:
    (2p)^{-g/2} kappa^g e((m alpha^t alpha - 2 beta^t alpha)/4p)."""
    _require_odd_prime(p)
    kappa = extract_kappa(p) ** g
    idx = indices(p, g)
    scale = (2 * p) ** (-0.5 * g) * kappa
    ent = np.empty((len(idx), len(idx)), dtype=complex)
    for i, a in enumerate(idx):
        aa = m * sum(x * x for x in a)
        for j, b in enumerate(idx):
            ent[i, j] = scale * _e(aa - 2 * sum(x * y for x, y in zip(b, a)), 4 * p)
    return MultiplierMatrix(p, g, f"M2^{m}*M1", ent)


# ---------------------------------------------------------------------------
# symplectic generator words and the cocycle ratio


def generator_m1(g: int) -> _intmat.IntMatrix:
    """M_1 = [[0, -E], [E, 0]]."""
    z = [[0] * g for _ in range(g)]
    e = [[1 if i == j else 0 for j in range(g)] for i in range(g)]
    top = [z[i] + [-x for x in e[i]] for i in range(g)]
    bot = [e[i] + z[i] for i in range(g)]
    return _intmat.freeze(top + bot)


def generator_m2(g: int, power: int = 1) -> _intmat.IntMatrix:
    """M_2^power = [[E, power*E], [0, E]]."""
    rows = []
    for i in range(g):
        rows.append([1 if i == j else 0 for j in range(g)] + [power if i == j else 0 for j in range(g)])
    for i in range(g):
        rows.append([0] * g + [1 if i == j else 0 for j in range(g)])
    return _intmat.freeze(rows)


def word_matrix(l: int, m: int, g: int) -> _intmat.IntMatrix:
    """M_1 M_2^l M_1 M_2^m M_1 by direct integer multiplication."""
    m1 = generator_m1(g)
    out = m1
    for part in (generator_m2(g, l), m1, generator_m2(g, m), m1):
        out = _intmat.mat_mul(out, part)
    return out


def is_symplectic(mat, g: int) -> bool:
    j = generator_m1(g)
    return _intmat.mat_mul(_intmat.mat_mul(_intmat.transpose(mat), j), mat) == j


def in_gamma0(mat, n_level: int, g: int) -> bool:
    """C block of [[A, B], [C, D]] vanishes mod N."""
    return all(mat[g + i][j] % n_level == 0 for i in range(g) for j in range(g))


def _cmat(rows, tau: np.ndarray) -> np.ndarray:
    return np.array(rows, dtype=complex) if not isinstance(rows, np.ndarray) else rows


def _j_factor(mat, tau: np.ndarray, g: int) -> complex:
    c = np.array([row[:g] for row in mat[g:]], dtype=complex)
    d = np.array([row[g:] for row in mat[g:]], dtype=complex)
    return complex(np.linalg.det(c @ tau + d))


def _apply(mat, tau: np.ndarray, g: int) -> np.ndarray:
    a = np.array([row[:g] for row in mat[:g]], dtype=complex)
    b = np.array([row[g:] for row in mat[:g]], dtype=complex)
    c = np.array([row[:g] for row in mat[g:]], dtype=complex)
    d = np.array([row[g:] for row in mat[g:]], dtype=complex)
    return (a @ tau + b) @ np.linalg.inv(c @ tau + d)


def cocycle_ratio(mat_a, mat_b, tau, g: int) -> complex:
    """J(A, B; tau) = j(A; B tau)^{1/2} j(B; tau)^{1/2} / j(AB; tau)^{1/2}
    with principal square roots; the multiplier ratio is tau-independent and
    is evaluated at the probe point tau."""
    tau = np.asarray(tau, dtype=complex)
    if tau.ndim == 0:
        tau = tau.reshape(1, 1)
    ja = cmath.sqrt(_j_factor(mat_a, _apply(mat_b, tau, g), g))
    jb = cmath.sqrt(_j_factor(mat_b, tau, g))
    jab = cmath.sqrt(_j_factor(_intmat.mat_mul(mat_a, mat_b), tau, g))
    return ja * jb / jab


# ---------------------------------------------------------------------------
# the exact nonvanishing criterion


@dataclass(frozen=True)
class CriterionParams:
    """Integers (l, m) for level N and prime p with l = m = 0 (mod 4),
    l m = 1 (mod N), and p not dividing (l - 1) m."""

    p: int
    l: int
    m: int
    level: int

    def __post_init__(self):
        _require_odd_prime(self.p)
        if self.level < 1 or self.level % 2 == 0:
            raise ValueError("level N must be odd")
        if self.l % 4 or self.m % 4:
            raise ValueError("need l = m = 0 (mod 4)")
        if (self.l * self.m) % self.level != 1 % self.level:
            raise ValueError("need l m = 1 (mod N)")
        if ((self.l - 1) * self.m) % self.p == 0:
            raise ValueError("need p not dividing (l - 1) m")


def find_criterion_params(p: int, n_level: int) -> CriterionParams:
    """Smallest (l, m) in lexicographic order satisfying the constraints."""
    _require_odd_prime(p)
    if n_level < 1 or n_level % 2 == 0:
        raise ValueError("level N must be odd")
    if gcd(p, 2 * n_level) != 1:
        raise ValueError("need gcd(p, 2N) = 1")
    l = 4
    while True:
        if (l - 1) % p and gcd(l, n_level) == 1:
            m = 4
            while True:
                if (l * m) % n_level == 1 % n_level and m % p:
                    return CriterionParams(p, l, m, n_level)
                m += 4
                if m > 4 * n_level * p + 4:
                    break
        l += 4


def _gi_mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


_GI_I_POW = ((1, 0), (0, 1), (-1, 0), (0, -1))


def criterion_value(params: CriterionParams, alpha_j: int, beta_j: int) -> complex:
    """1 + (-1)^beta e(mp/4) + (-1)^alpha e(lp/4) (1 - (-1)^beta e(mp/4)),
    evaluated exactly in Z[i] (all phases are powers of i).

    With l = m = 0 (mod 4) the value is 2 for even beta and (-1)^alpha 2 for
    odd beta; never zero."""
    sa = -1 if alpha_j % 2 else 1
    sb = -1 if beta_j % 2 else 1
    em = _GI_I_POW[(params.m * params.p) % 4]
    el = _GI_I_POW[(params.l * params.p) % 4]
    t1 = (sb * em[0], sb * em[1])
    inner = (1 - t1[0], -t1[1])
    t2 = _gi_mul(el, inner)
    re = 1 + t1[0] + sa * t2[0]
    im = t1[1] + sa * t2[1]
    return complex(re, im)
