import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnizk.errors import DuplicateAbscissa, FieldMismatch, NoPrimeInRange
from dnizk.field import (PrimeField, Polynomial, find_prime, is_prime, lagrange_basis, poly_add, poly_eval,
                         poly_interpolate, poly_mul, poly_scale, poly_sub, random_poly)
from dnizk.rand import RandomStream


def sieve(hi):
    flags = [True] * (hi + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(hi ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = [False] * len(flags[i * i::i])
    return flags


def test_is_prime_matches_sieve():
    flags = sieve(5000)
    assert [is_prime(k) for k in range(5001)] == flags


def test_is_prime_large_known_values():
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("lo,hi,expected", [(5, 8, 5), (11, 20, 11), (65, 128, 67), (6, 10, 7)])
def test_find_prime_smallest_in_range(lo, hi, expected):
    assert find_prime(lo, hi) == expected


def test_find_prime_matches_sieve_over_bertrand_ranges():
    flags = sieve(400)
    for n in range(2, 200):
        assert find_prime(n + 1, 2 * n) == next(p for p in range(n + 1, 2 * n + 1) if flags[p])


def test_find_prime_empty_range():
    with pytest.raises(NoPrimeInRange):
        find_prime(24, 28)


def test_field_rejects_composite_and_oversized():
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ValueError):
        PrimeField(2 ** 64 - 59)


@given(st.integers(0, 2 ** 61 - 2), st.integers(0, 2 ** 61 - 2))
def test_mul_matches_wide_integer_oracle(a, b):
    F = PrimeField(2 ** 61 - 1)
    assert F.mul(a, b) == (a * b) % (2 ** 61 - 1)


@given(st.integers(1, 100))
def test_inverse(a):
    F = PrimeField(101)
    assert F.mul(a, F.inv(a)) == 1


def test_poly_eval_examples():
    F5, F11 = PrimeField(5), PrimeField(11)
    assert poly_eval(Polynomial.of(F5, [3]), 4) == 3
    assert poly_eval(Polynomial.of(F11, [0, 1]), 7) == 7
    assert poly_eval(Polynomial.of(F5, [1, 2, 3]), 2) == 2


def test_interpolate_examples():
    F7 = PrimeField(7)
    p = poly_interpolate(F7, [(0, 0), (1, 1), (2, 4)])
    assert all(p(x) == x * x % 7 for x in range(7))
    assert p == Polynomial.of(F7, [0, 0, 1])
    assert poly_interpolate(F7, [(0, 3)]) == Polynomial.of(F7, [3])


def test_interpolate_coloring_constraints():
    F = PrimeField(11)
    r = 6
    p = poly_interpolate(F, [(0, 1), (1, 0), (2, 0), (3, r)])
    assert [p(i) for i in range(4)] == [1, 0, 0, r]
    assert p.degree() <= 3


def test_interpolate_duplicate_abscissa():
    with pytest.raises(DuplicateAbscissa):
        poly_interpolate(PrimeField(7), [(1, 2), (1, 3)])
    with pytest.raises(DuplicateAbscissa):
        lagrange_basis(7, (0, 7))


def test_ring_operations():
    F = PrimeField(5)
    p = Polynomial.of(F, [1, 1])
    assert poly_mul(p, p) == Polynomial.of(F, [1, 2, 1])
    assert poly_mul(p, p).degree_bound == 2
    assert poly_add(p, Polynomial.zero(F)) == p
    assert poly_sub(p, p) == Polynomial.zero(F)
    assert poly_scale(p, 3) == Polynomial.of(F, [3, 3])
    assert p * 3 == poly_scale(p, 3)
    assert -p + p == Polynomial.zero(F)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        poly_add(Polynomial.of(PrimeField(5), [1]), Polynomial.of(PrimeField(7), [1]))


def test_equality_ignores_trailing_zeros():
    F = PrimeField(5)
    assert Polynomial(F, (1, 2, 0, 0), 3) == Polynomial(F, (1, 2), 1)
    assert Polynomial(F, (1, 2, 0, 0), 3).padded() == (1, 2, 0, 0)


def test_random_poly_shape_and_replay():
    F = PrimeField(13)
    a = random_poly(F, 6, RandomStream(4))
    b = random_poly(F, 6, RandomStream(4))
    assert len(a.coeffs) == 7 and a.degree_bound == 6
    assert a.coeffs == b.coeffs
    assert len(random_poly(F, 0, RandomStream(1)).coeffs) == 1


@settings(max_examples=60)
@given(st.sampled_from([5, 7, 11, 13, 101]), st.data())
def test_interpolation_round_trip(q, data):
    F = PrimeField(q)
    d = data.draw(st.integers(0, min(q - 1, 6)))
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=d + 1, max_size=d + 1))
    xs = data.draw(st.lists(st.integers(0, q - 1), min_size=d + 1, max_size=d + 1, unique=True))
    p = Polynomial.of(F, coeffs)
    assert poly_interpolate(F, [(x, p(x)) for x in xs]) == p


@pytest.mark.parametrize("q", [5, 7, 11])
def test_randomness_at_extra_point_is_a_bijection(q):
    # For fixed values on {0,1,2}, r -> C(i) is a bijection of F_q for every i >= 3.
    F = PrimeField(q)
    for fixed in itertools.product(range(2), repeat=3):
        for i in range(4, q):
            images = {poly_interpolate(F, [(0, fixed[0]), (1, fixed[1]), (2, fixed[2]), (3, r)])(i)
                      for r in range(q)}
            assert len(images) == q
