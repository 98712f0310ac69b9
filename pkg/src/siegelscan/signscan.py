"""Normalized coefficient sequences and the window sign-change scanner.

Sign decisions are always made on the exact rational coefficients; the
normalized doubles exist only for statistics and display, so every scan
outcome is an exact-arithmetic fact.  A sign change in a window means two
entries of strictly opposite sign; zeros never witness a change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .qseries import Rational


@dataclass(frozen=True)
class NormalizedSequence:
    """Entries (n, c, c_hat) with c_hat = c / n^{(lambda-1)/2}, lambda = k - g/2.

    residue_class = (modulus, residue) describes the support; coverage is the
    largest n through which the sequence is complete (entries may end earlier
    when the tail of the residue class carries zero coefficients).
    """

    weight_lambda: Fraction
    entries: tuple[tuple[int, Rational, float], ...]
    residue_class: tuple[int, int]
    coverage: int

    def signs(self):
        for n, c, _ in self.entries:
            yield n, (0 if c == 0 else (1 if c > 0 else -1))


@dataclass(frozen=True)
class WindowReport:
    x: float
    window_end: float
    sign_change: bool
    witness: Optional[tuple[int, int]]
    positive: int
    negative: int
    zero: int


def normalize(
    seq: Sequence[tuple[int, Rational]],
    k: int,
    g: int,
    modulus: int = 1,
    residue: int = 0,
    coverage: int | None = None,
) -> NormalizedSequence:
    """Attach c_hat = c / n^{(lambda-1)/2} (double precision) to an exact
    coefficient sequence; input must be sorted by n and supported on the
    stated residue class."""
    lam = Fraction(2 * k - g, 2)
    exponent = float((lam - 1) / 2)
    entries = []
    last = 0
    for n, c in seq:
        if n <= last:
            raise ValueError("sequence must be strictly increasing in n")
        if n % modulus != residue % modulus:
            raise ValueError(f"n = {n} escapes the residue class {residue} mod {modulus}")
        last = n
        entries.append((n, c, float(c) / float(n) ** exponent))
    if coverage is None:
        coverage = last
    return NormalizedSequence(lam, tuple(entries), (modulus, residue % modulus), coverage)


def default_grid(x_min: float, x_max: float, ratio: float = 1.25) -> list[float]:
    """Geometric grid x_min * ratio^j, capped at x_max."""
    if x_min <= 0 or ratio <= 1:
        raise ValueError("need x_min > 0 and ratio > 1")
    out = []
    x = float(x_min)
    while x <= x_max:
        out.append(x)
        x *= ratio
    return out


def _window_slice(seq: NormalizedSequence, x: float):
    # Window membership n in (x, x + x^(3/5)] is decided by plain double
    # comparisons: grid points are generic reals (never within half an ulp of
    # an integer for the geometric grids used here), so ties cannot occur.
    end = x + x ** 0.6
    return end, [(n, c) for n, c, _ in seq.entries if x < n <= end]


def scan_windows(seq: NormalizedSequence, x_grid: Sequence[float]) -> list[WindowReport]:
    """Per-window sign-change reports over (x, x + x^{3/5}].

    A window reports True iff it holds two entries with strictly opposite
    signs of the exact coefficients; the witness is the earliest such pair.
    """
    reports = []
    for x in x_grid:
        end = x + x ** 0.6
        if end > seq.coverage:
            need = int(math.ceil(end))
            raise ValueError(f"window ({x}, {end}] needs coverage n >= {need}, have {seq.coverage}")
        _, window = _window_slice(seq, x)
        pos = sum(1 for _, c in window if c > 0)
        neg = sum(1 for _, c in window if c < 0)
        zero = len(window) - pos - neg
        witness = None
        first_n = None
        first_sign = 0
        for n, c in window:
            s = 0 if c == 0 else (1 if c > 0 else -1)
            if s == 0:
                continue
            if first_sign == 0:
                first_n, first_sign = n, s
            elif s != first_sign:
                witness = (first_n, n)
                break
        reports.append(WindowReport(float(x), end, witness is not None, witness, pos, neg, zero))
    return reports


def first_sign_change(seq: NormalizedSequence) -> Optional[tuple[int, int]]:
    """Earliest pair of consecutive nonzero-sign entries with opposite signs
    (zeros are skipped, consistent with the strict-sign convention)."""
    prev_n = None
    prev_sign = 0
    for n, sign in seq.signs():
        if sign == 0:
            continue
        if prev_sign and sign != prev_sign:
            return (prev_n, n)
        prev_n, prev_sign = n, sign
    return None


def partial_sum_stats(
    seq: NormalizedSequence, x_checkpoints: Sequence[float]
) -> list[tuple[float, float, float, float]]:
    """Rows (x, S1(x), S2(x), S2(x)/x) with S1 = sum c_hat, S2 = sum c_hat^2
    over n <= x, accumulated in compensated (Kahan) double precision."""
    checkpoints = sorted(float(x) for x in x_checkpoints)
    if checkpoints and checkpoints[-1] > seq.coverage:
        raise ValueError(f"checkpoint {checkpoints[-1]} beyond coverage {seq.coverage}")
    rows = []
    s1 = c1 = s2 = c2 = 0.0
    it = iter(seq.entries)
    current = next(it, None)
    for x in checkpoints:
        while current is not None and current[0] <= x:
            ch = current[2]
            y = ch - c1
            t = s1 + y
            c1 = (t - s1) - y
            s1 = t
            y2 = ch * ch - c2
            t2 = s2 + y2
            c2 = (t2 - s2) - y2
            s2 = t2
            current = next(it, None)
        rows.append((x, s1, s2, s2 / x))
    return rows


def growth_check(
    seq: NormalizedSequence, exponent_margin: float
) -> tuple[float, Optional[int]]:
    """max |c_hat(n)| / n^{3/16 + margin} and its argmax; a diagnostic for
    the coefficient growth bound, not a proof of it."""
    best = 0.0
    arg = None
    expo = 3 / 16 + exponent_margin
    for n, _, ch in seq.entries:
        ratio = abs(ch) / n**expo
        if ratio > best:
            best = ratio
            arg = n
    return best, arg
