import random

import pytest

from siegelscan._intmat import mat_mul
from siegelscan.halfint import HalfIntMatrix, SMmuSpec, act
from siegelscan.jacobi import phi_cusp, v_operator
from siegelscan.siegel import (
    diagonal_sequence,
    fourier_jacobi,
    maass_lift,
    smmu_sequence,
)


@pytest.fixture(scope="module")
def chi10():
    return maass_lift(phi_cusp(10, 600), 600)


@pytest.fixture(scope="module")
def chi12():
    return maass_lift(phi_cusp(12, 600), 600)


def test_lift_examples(chi10):
    phi = phi_cusp(10, 600)
    assert chi10.lookup(HalfIntMatrix(((2, 1), (1, 2)))) == phi.expand(1, 1) == 1
    assert chi10.lookup(HalfIntMatrix.diagonal(1, 1)) == phi.expand(1, 0)
    t = HalfIntMatrix(((2, 1), (1, 2)))
    assert chi10.lookup(t.scaled(2)) == phi.expand(4, 2) + 2**9 * phi.expand(1, 1)


def test_lift_requires_cusp_and_bound():
    phi = phi_cusp(10, 100)
    with pytest.raises(ValueError, match="need >= 600"):
        maass_lift(phi, 600)
    from siegelscan.jacobi import jacobi_eisenstein

    with pytest.raises(ValueError, match="cusp"):
        maass_lift(jacobi_eisenstein(4, 100), 100)


def test_fourier_jacobi_recovers_seed(chi10):
    phi = phi_cusp(10, 600)
    assert fourier_jacobi(chi10, 1) == phi


def test_fourier_jacobi_equals_v_operator(chi10, chi12):
    phi10 = phi_cusp(10, 600)
    phi12 = phi_cusp(12, 600)
    for m in range(1, 7):
        assert fourier_jacobi(chi10, m) == v_operator(phi10, m)
        assert fourier_jacobi(chi12, m) == v_operator(phi12, m)


def test_gl2_invariance(chi10):
    rng = random.Random(404)

    def rand_sl2():
        u = ((1, 0), (0, 1))
        for _ in range(rng.randint(1, 6)):
            if rng.random() < 0.5:
                u = mat_mul(u, ((1, rng.randint(-3, 3)), (0, 1)))
            else:
                u = mat_mul(u, ((0, -1), (1, 0)))
        return u

    done = 0
    while done < 100:
        n = rng.randint(1, 5)
        m = rng.randint(n, 10)
        r = rng.randint(-n, n)
        t = HalfIntMatrix.binary(n, r, m)
        d4 = 4 * n * m - r * r
        if d4 <= 0 or d4 > 600:
            continue
        u = rand_sl2()
        assert chi10.lookup(act(t, u)) == chi10.lookup(t)
        # improper equivalence (det U = -1), valid for even weight
        assert chi10.lookup(act(t, ((1, 0), (0, -1)))) == chi10.lookup(t)
        done += 1


def test_maass_transpose_relation(chi10):
    for n, r, m in [(1, 1, 5), (2, 1, 7), (3, -2, 8), (2, 0, 11)]:
        if 4 * n * m - r * r <= 600:
            assert chi10.coeff(n, r, m) == chi10.coeff(m, r, n)


def test_lookup_bound_discipline(chi10):
    with pytest.raises(ValueError, match="beyond table bound"):
        chi10.lookup(HalfIntMatrix.diagonal(200, 200))
    with pytest.raises(ValueError, match="positive definite"):
        chi10.lookup(HalfIntMatrix.binary(1, 5, 1))


def test_fourier_jacobi_nonzero_for_small_primes(chi10):
    for p in (3, 5, 7):
        assert not fourier_jacobi(chi10, p).is_zero()


def test_smmu_sequences(chi10):
    spec = SMmuSpec.make(HalfIntMatrix.diagonal(1), (0,))
    seq = smmu_sequence(chi10, spec, 600)
    assert [m for m, _ in seq] == [4 * n for n in range(1, 151)]
    diag = diagonal_sequence(chi10, 1, 150)
    assert [(4 * n, c) for n, c in diag] == seq

    spec30 = SMmuSpec.make(HalfIntMatrix.diagonal(3), (0,))
    s30 = smmu_sequence(chi10, spec30, 600)
    assert [m for m, _ in s30] == [12 * n for n in range(1, 51)]
    assert [c for _, c in s30] == [c for _, c in diagonal_sequence(chi10, 3, 50)]

    spec31 = SMmuSpec.make(HalfIntMatrix.diagonal(3), (1,))
    s31 = smmu_sequence(chi10, spec31, 600)
    assert all(m % 12 == 11 for m, _ in s31)


def test_sequences_are_integral(chi10):
    assert all(isinstance(c, int) for _, c in diagonal_sequence(chi10, 1, 150))


def test_sequence_bounds(chi10):
    with pytest.raises(ValueError):
        diagonal_sequence(chi10, 1, 151)
    spec = SMmuSpec.make(HalfIntMatrix.diagonal(1), (0,))
    with pytest.raises(ValueError):
        smmu_sequence(chi10, spec, 601)
