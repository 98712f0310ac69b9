import cmath
import random
from fractions import Fraction
from math import isqrt

import pytest

from siegelscan.jacobi import (
    JacobiTable,
    check_nonvanishing,
    jacobi_eisenstein,
    multiply_scalar_jacobi,
    phi_cusp,
    theta_assemble,
    theta_eval,
    theta_split,
    v_operator,
)
from siegelscan.qseries import QSeries, cohen_h, eisenstein


def eisenstein_restriction(table, n):
    """E_{k,1}(tau, 0) coefficient of q^n: sum over all r with 4n - r^2 >= 0."""
    r_max = 2 * isqrt(n) + 1
    return sum(table.expand(n, r) for r in range(-r_max, r_max + 1) if 4 * n - r * r >= 0)


def test_eisenstein_table_values():
    e41 = jacobi_eisenstein(4, 200)
    assert e41.coeff(0, 0) == 1
    assert Fraction(e41.coeff(3, 1)) == Fraction(cohen_h(3, 3)) / Fraction(cohen_h(3, 0))
    assert e41.coeff(3, 1) == 56 and e41.coeff(4, 0) == 126
    assert e41.expand(0, 1) == 0  # 4n - r^2 < 0
    assert e41.expand(1, 3) == 0


def test_eisenstein_restriction_cross_check():
    e41 = jacobi_eisenstein(4, 130)
    e61 = jacobi_eisenstein(6, 130)
    e4 = eisenstein(4, 30)
    e6 = eisenstein(6, 30)
    for n in range(31):
        assert eisenstein_restriction(e41, n) == e4.coeff(n)
        assert eisenstein_restriction(e61, n) == e6.coeff(n)


def test_multiply_identity_and_shift():
    e41 = jacobi_eisenstein(4, 120)
    one = QSeries([1], 40)
    same = multiply_scalar_jacobi(one, 0, e41, 120)
    assert same.coeffs == e41.coeffs and same.weight == 4
    q = QSeries([0, 1], 40)
    shifted = multiply_scalar_jacobi(q, 0, e41, 120)
    for (d, r), v in shifted.coeffs.items():
        assert v == e41.coeff(d - 4, r)  # n -> n+1 shifts D by 4m


def test_multiply_truncation_shortfall_errors():
    e41 = jacobi_eisenstein(4, 120)
    short = QSeries([1, 2], 1)
    with pytest.raises(ValueError, match="truncation"):
        multiply_scalar_jacobi(short, 4, e41, 120)


def test_phi10_combination_is_cuspidal_with_unit_normalizer():
    # raw combination before normalization; the recorded raw c(1,1) is 1
    disc = 200
    e4 = eisenstein(4, disc // 4 + 2)
    e6 = eisenstein(6, disc // 4 + 2)
    e41 = jacobi_eisenstein(4, disc)
    e61 = jacobi_eisenstein(6, disc)
    combo = (
        multiply_scalar_jacobi(e6, 6, e41, disc)
        - multiply_scalar_jacobi(e4, 4, e61, disc)
    ).scaled(Fraction(1, 144))
    assert combo.coeff(0, 0) == 0  # zero constant term
    assert combo.coeff(3, 1) == 1  # normalization scalar is exactly 1
    assert combo.coeff(4, 0) == -2


def test_phi_cusp_tables(phi10_small, phi12_small):
    assert phi10_small.coeff(3, 1) == 1 and phi10_small.coeff(4, 0) == -2
    assert phi12_small.coeff(3, 1) == 1 and phi12_small.coeff(4, 0) == 10
    assert phi10_small.is_cusp() and phi12_small.is_cusp()
    with pytest.raises(ValueError):
        phi_cusp(8, 100)


def test_phi_cusp_integrality(phi10_small, phi12_small):
    for table in (phi10_small, phi12_small):
        assert all(isinstance(v, int) for v in table.coeffs.values())


def test_coefficient_relation_eq25(phi10_small):
    rng = random.Random(71)
    tables = [phi10_small, v_operator(phi10_small, 3)]
    for table in tables:
        m = table.index
        checked = 0
        while checked < 100:
            n = rng.randint(0, 30)
            r = rng.randint(-15, 15)
            lam = rng.randint(-3, 3)
            n2 = n + r * lam + m * lam * lam
            r2 = r + 2 * m * lam
            if n2 < 0:
                continue
            d = 4 * m * n - r * r
            if d > table.disc_bound or 4 * m * n2 - r2 * r2 > table.disc_bound:
                continue
            assert table.expand(n, r) == table.expand(n2, r2)
            checked += 1


def test_v_operator_examples(phi10_small):
    v1 = v_operator(phi10_small, 1)
    assert v1 == phi10_small
    v2 = v_operator(phi10_small, 2)
    assert v2.coeff(7, 1) == phi10_small.expand(2, 1)
    assert v2.expand(2, 2) == phi10_small.expand(4, 2) + 2**9 * phi10_small.expand(1, 1)


def test_theta_split_assemble_round_trip(phi10_small, phi12_small):
    for table in (phi10_small, phi12_small, v_operator(phi10_small, 3)):
        comps = theta_split(table)
        assert len(comps) == 2 * table.index
        assert theta_assemble(comps) == table
    comps = theta_split(phi10_small)
    # index 1: h_0 on D = 0 mod 4, h_1 on D = 3 mod 4
    assert all(d % 4 == 0 for d in comps[0].coeffs)
    assert all(d % 4 == 3 for d in comps[1].coeffs)
    assert comps[1].coeffs[3] == phi10_small.coeff(3, 1)


def test_theta_assemble_missing_residue_errors(phi10_small):
    comps = theta_split(v_operator(phi10_small, 3))
    with pytest.raises(ValueError, match="missing residue"):
        theta_assemble(comps[:-1])


def test_theta_component_reflection_symmetry(phi10_small):
    # h_{-r} = (-1)^k h_r with k even
    for table in (v_operator(phi10_small, 3), v_operator(phi10_small, 5)):
        comps = theta_split(table)
        two_m = 2 * table.index
        for r in range(1, table.index):
            assert comps[r].coeffs == comps[two_m - r].coeffs


def test_check_nonvanishing(phi10_small):
    v3 = v_operator(phi10_small, 3)
    res = check_nonvanishing(v3)
    assert [r for r, _ in res] == list(range(6))
    assert all(d is not None for _, d in res)
    # reflection pairs report the same first D
    firsts = dict(res)
    assert firsts[1] == firsts[5] and firsts[2] == firsts[4]
    zero = JacobiTable(10, 3, 500, {})
    assert check_nonvanishing(zero) == [(r, None) for r in range(6)]
    with pytest.raises(ValueError):
        check_nonvanishing(v_operator(phi10_small, 4))


def test_theta_eval_reference_value():
    # theta_{1,0}(i, 0) = sum exp(-2 pi n^2) = 1 + 2 e^{-2 pi} + ... = 1.0037349...
    val = theta_eval(1, 0, 1j, 0)
    ref = sum(cmath.exp(-2 * cmath.pi * n * n) for n in range(-30, 31))
    assert abs(val - ref) < 1e-12
    assert abs(val - 1.0037349) < 1e-6


def test_theta_eval_symmetries():
    tau, z = 0.3 + 0.9j, 0.2 + 0.1j
    assert abs(theta_eval(3, 2, tau, 0) - theta_eval(3, -2, tau, 0)) < 1e-12
    assert abs(theta_eval(3, 2, tau, z) - theta_eval(3, 8, tau, z)) < 1e-12
    with pytest.raises(ValueError):
        theta_eval(1, 0, 1.0 - 0.5j, 0)


def test_coeff_bound_discipline(phi10_small):
    with pytest.raises(ValueError, match="disc_bound"):
        phi10_small.coeff(601, 1)
