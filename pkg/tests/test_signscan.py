from fractions import Fraction

import pytest

from siegelscan.signscan import (
    default_grid,
    first_sign_change,
    growth_check,
    normalize,
    partial_sum_stats,
    scan_windows,
)


def test_normalize_exact_unit_case():
    # k = 4, g = 2: lambda = 3, exponent (lambda-1)/2 = 1, so c = n gives c_hat = 1
    seq = normalize([(n, n) for n in range(1, 20)], 4, 2)
    assert seq.weight_lambda == Fraction(3)
    assert all(ch == 1.0 for _, _, ch in seq.entries)


def test_normalize_lambda_arithmetic():
    seq = normalize([(1, 1)], 10, 1)
    assert seq.weight_lambda == Fraction(19, 2)
    assert (seq.weight_lambda - 1) / 2 == Fraction(17, 4)


def test_normalize_sign_preservation():
    seq = normalize([(n, (-1) ** n * n**3) for n in range(1, 40)], 10, 1)
    for n, c, ch in seq.entries:
        assert (c > 0) == (ch > 0) and (c < 0) == (ch < 0)


def test_normalize_input_discipline():
    with pytest.raises(ValueError, match="increasing"):
        normalize([(2, 1), (2, 1)], 10, 1)
    with pytest.raises(ValueError, match="residue"):
        normalize([(3, 1)], 10, 1, modulus=4, residue=0)


def test_scan_windows_alternating_and_constant():
    alt = normalize([(n, (-1) ** n) for n in range(1, 300)], 10, 1)
    reports = scan_windows(alt, [10.0, 30.0, 100.0])
    assert all(r.sign_change for r in reports)
    pos = normalize([(n, 1) for n in range(1, 300)], 10, 1)
    reports = scan_windows(pos, [10.0, 30.0, 100.0])
    assert not any(r.sign_change for r in reports)
    assert all(r.negative == 0 and r.zero == 0 for r in reports)


def test_scan_windows_zero_never_witnesses():
    # +, 0, 0, ... 0 pattern: no strict change
    entries = [(n, 1 if n == 11 else 0) for n in range(11, 40)]
    seq = normalize(entries, 10, 1)
    (rep,) = scan_windows(seq, [10.5])
    assert not rep.sign_change and rep.zero > 0
    # +, 0, -: change witnessed across the zero
    entries = [(11, 1), (12, 0), (13, -2)]
    seq = normalize(entries, 10, 1, coverage=20)
    (rep,) = scan_windows(seq, [10.5])
    assert rep.sign_change and rep.witness == (11, 13)


def test_scan_windows_earliest_witness():
    entries = [(11, 2), (12, 5), (13, -1), (14, -4)]
    seq = normalize(entries, 10, 1, coverage=20)
    (rep,) = scan_windows(seq, [10.5])
    assert rep.witness == (11, 13)
    assert (rep.positive, rep.negative, rep.zero) == (2, 2, 0)


def test_scan_windows_coverage_error_names_requirement():
    seq = normalize([(n, 1) for n in range(1, 50)], 10, 1)
    with pytest.raises(ValueError, match="coverage n >= 60"):
        scan_windows(seq, [50.0])


def test_scan_windows_monotone_under_refinement():
    # adding entries can only turn false -> true
    sparse = normalize([(20, 1), (30, 1)], 10, 1, coverage=40)
    dense = normalize([(20, 1), (25, -1), (30, 1)], 10, 1, coverage=40)
    (r1,) = scan_windows(sparse, [18.0])
    (r2,) = scan_windows(dense, [18.0])
    assert not r1.sign_change and r2.sign_change


def test_window_membership_boundaries():
    # window (16, 16 + 16^0.6] = (16, 21.27...]: 16 excluded, 21 included
    seq = normalize([(16, 1), (17, 1), (21, -1), (22, 1)], 10, 1, coverage=30)
    (rep,) = scan_windows(seq, [16.0])
    assert rep.witness == (17, 21)
    assert rep.positive == 1 and rep.negative == 1


def test_first_sign_change():
    seq = normalize([(1, 1), (2, 1), (3, -1)], 10, 1)
    assert first_sign_change(seq) == (2, 3)
    mono = normalize([(n, 5) for n in range(1, 10)], 10, 1)
    assert first_sign_change(mono) is None
    skip = normalize([(1, 1), (2, 0), (3, -1)], 10, 1)
    assert first_sign_change(skip) == (1, 3)


def test_partial_sum_stats():
    ones = normalize([(n, n**4) for n in range(1, 1001)], 10, 2)
    # lambda = 9, exponent 4: c_hat = 1 identically
    rows = partial_sum_stats(ones, [100, 400, 1000])
    for x, s1, s2, ratio in rows:
        assert s1 == pytest.approx(x, abs=1e-9)
        assert ratio == pytest.approx(1.0, rel=1e-6)
    zeros = normalize([(n, 0) for n in range(1, 100)], 10, 2)
    rows = partial_sum_stats(zeros, [50])
    assert rows[0][1] == 0 and rows[0][2] == 0
    with pytest.raises(ValueError, match="coverage"):
        partial_sum_stats(ones, [2000])


def test_growth_check():
    zeros = normalize([(n, 0) for n in range(1, 100)], 10, 2)
    assert growth_check(zeros, 0.05) == (0.0, None)
    # single spike dominates
    entries = [(n, n**4 if n != 50 else 50**4 * 1000) for n in range(1, 100)]
    spike = normalize(entries, 10, 2)
    _, arg = growth_check(spike, 0.05)
    assert arg == 50


def test_default_grid():
    grid = default_grid(50, 2000, 1.25)
    assert grid[0] == 50
    assert all(b / a == pytest.approx(1.25) for a, b in zip(grid, grid[1:]))
    assert grid[-1] <= 2000 < grid[-1] * 1.25
    with pytest.raises(ValueError):
        default_grid(0, 100, 1.25)
    with pytest.raises(ValueError):
        default_grid(50, 100, 1.0)
