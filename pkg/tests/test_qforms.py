import random
from itertools import product
from math import gcd

import pytest

from siegelscan._intmat import det
from siegelscan.arith import is_prime
from siegelscan.halfint import HalfIntMatrix, content
from siegelscan.qforms import (
    QuadForm,
    pivot_to_prime,
    represent_coprime,
    represent_prime,
    sl_completion,
)


def random_primitive_form(rng, dims=(2, 3), definite=True):
    while True:
        n = rng.choice(dims)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = 2 * rng.randint(1, 8)
            for j in range(i + 1, n):
                gram[i][j] = gram[j][i] = rng.randint(-3, 3)
        q = QuadForm(tuple(tuple(r) for r in gram))
        if definite and not q.is_positive_definite():
            continue
        if q.is_primitive():
            return q


def test_quadform_value_and_content():
    q = QuadForm.from_coefficients(2, {(0, 0): 1, (0, 1): 1, (1, 1): 1})
    assert q.value((1, 0)) == 1 and q.value((1, 1)) == 3 and q.value((1, -1)) == 1
    assert q.is_primitive()
    q3 = QuadForm.from_coefficients(2, {(0, 0): 3, (1, 1): 3})
    assert q3.coefficient_gcd() == 3 and not q3.is_primitive()


def test_represent_coprime_examples():
    q = QuadForm.from_coefficients(2, {(0, 0): 1, (1, 1): 3})
    x = represent_coprime(q, 3)
    assert gcd(q.value(x), 3) == 1
    q2 = QuadForm.from_coefficients(2, {(0, 0): 1, (0, 1): 1, (1, 1): 1})
    assert gcd(q2.value(represent_coprime(q2, 1)), 1) == 1


def test_represent_coprime_rejects_imprimitive():
    q3 = QuadForm.from_coefficients(2, {(0, 0): 3, (1, 1): 3})
    with pytest.raises(ValueError, match="imprimitive"):
        represent_coprime(q3, 3)


def test_represent_coprime_randomized():
    rng = random.Random(1234)
    for _ in range(60):
        q = random_primitive_form(rng, definite=False)
        n = rng.randrange(1, 10001, 2)
        x = represent_coprime(q, n)
        assert gcd(q.value(x), n) == 1


def test_represent_prime_examples():
    q = QuadForm.from_coefficients(2, {(0, 0): 1, (1, 1): 1})
    assert represent_prime(q, 3, 60) == [(5, (1, 2)), (13, (2, 3)), (17, (1, 4))]
    q2 = QuadForm.from_coefficients(2, {(0, 0): 1, (0, 1): 1, (1, 1): 1})
    assert [p for p, _ in represent_prime(q2, 2, 20)] == [3, 7]


def prime_enumeration_oracle(q, bound):
    """Exhaustive cube enumeration, independent of the search-box logic."""
    top = bound + 1  # coordinates beyond value-bound in any direction overshoot
    primes = set()
    n = q.n
    for x in product(range(-top, top + 1), repeat=n):
        v = q.value(x)
        if 2 < v <= bound and v % 2 and is_prime(v):
            primes.add(v)
    return sorted(primes)


def test_represent_prime_exhaustive_below_bound():
    rng = random.Random(77)
    for _ in range(6):
        q = random_primitive_form(rng, dims=(2,))
        bound = 40
        got = represent_prime(q, 100, bound)
        assert [p for p, _ in got] == prime_enumeration_oracle(q, bound)
        for p, x in got:
            assert q.value(x) == p and p % 2 == 1 and is_prime(p)


def test_represent_prime_output_certified():
    rng = random.Random(3)
    for _ in range(20):
        q = random_primitive_form(rng)
        for p, x in represent_prime(q, 5, 150):
            assert p % 2 == 1 and is_prime(p) and q.value(x) == p


def test_sl_completion_examples():
    assert sl_completion((0, 0, 1)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    u = sl_completion((3, 5))
    assert det(u) == 1 and (u[0][1], u[1][1]) == (3, 5)
    u = sl_completion((6, 10, 15))
    assert det(u) == 1 and tuple(r[-1] for r in u) == (6, 10, 15)


def test_sl_completion_rejects_imprimitive():
    with pytest.raises(ValueError, match="not primitive"):
        sl_completion((2, 4))
    with pytest.raises(ValueError):
        sl_completion((5,))


def test_sl_completion_randomized():
    rng = random.Random(555)
    done = 0
    while done < 200:
        n = rng.choice([2, 3, 4])
        v = tuple(rng.randint(-1000, 1000) for _ in range(n))
        g = 0
        for w in v:
            g = gcd(g, w)
        if g != 1:
            continue
        u = sl_completion(v)
        assert det(u) == 1
        assert tuple(row[-1] for row in u) == v
        done += 1


def test_pivot_to_prime_example():
    a = HalfIntMatrix.diagonal(1, 1)
    out = pivot_to_prime(a, 2, 30)
    assert out[0][0] == 5
    for p, u, a_prime in out:
        assert det(u) == 1
        assert a_prime.doubled[-1][-1] == 2 * p
        assert a_prime.is_positive_definite()
        assert content(a_prime) == content(a)
        assert a_prime.det() == a.det()


def test_pivot_to_prime_randomized():
    rng = random.Random(909)
    for _ in range(10):
        n = rng.randint(1, 4)
        r = rng.randint(-1, 1)
        m = rng.randint(n, 5)
        a = HalfIntMatrix.binary(n, r, m)
        if not a.is_positive_definite() or content(a) != 1:
            continue
        for p, u, a_prime in pivot_to_prime(a, 3, 200):
            assert a_prime.doubled[-1][-1] == 2 * p
            assert content(a_prime) == 1
            assert a_prime.det() == a.det()
