import random

import pytest
from sympy.polys.domains import QQ

from src.exact_arith import (
    BIVAR,
    NEG_INF,
    UNIPOLY,
    UNIPOLY_QQ,
    T,
    X,
    Y,
    InterpolationError,
    binom,
    clear_denominators,
    coeff_of,
    evaluate_exact,
    expand_binomial_power,
    is_homogeneous,
    monomial_divisible,
    poly_add,
    poly_mul,
    poly_scale,
    reduce_mod_monomials,
    to_integer_poly,
    total_degree,
    unipoly_interpolate,
)


@pytest.mark.parametrize(
    "n, k, expected",
    [(5, 2, 10), (-1, -1, 1), (3, -1, 0), (0, 0, 1), (2, 3, 0), (-1, 2, 1), (-2, 1, -2), (-3, -5, 6)],
)
def test_binom_values(n, k, expected):
    assert binom(n, k) == expected


def test_pascal_rule_fails_only_at_origin():
    failures = {
        (n, k)
        for n in range(-20, 21)
        for k in range(-20, 21)
        if binom(n, k) != binom(n - 1, k - 1) + binom(n - 1, k)
    }
    assert failures == {(0, 0)}


def test_poly_arithmetic():
    p = poly_mul(X + Y, X - Y)
    assert p == X**2 - Y**2
    assert coeff_of(p, 2, 0) == 1
    assert coeff_of(p, 1, 1) == 0
    assert coeff_of(p, -1, 3) == 0
    assert poly_scale(BIVAR.zero, 7) == 0
    assert poly_add(X, -X) == 0


def test_ring_axioms_on_random_polys():
    rng = random.Random(7)

    def rand_poly():
        return BIVAR.from_dict({(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-9, 9) for _ in range(5)})

    for _ in range(20):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_expand_binomial_power():
    assert expand_binomial_power(0) == 1
    assert expand_binomial_power(2) == X**2 + 2 * X * Y + Y**2
    assert coeff_of(expand_binomial_power(3), 1, 2) == 3
    with pytest.raises(ValueError):
        expand_binomial_power(-1)


def test_degree_helpers():
    assert total_degree(BIVAR.zero) == NEG_INF
    assert total_degree(X**3 * Y + Y) == 4
    assert is_homogeneous(X**2 - 3 * X * Y)
    assert not is_homogeneous(X**2 + Y)
    assert monomial_divisible(X**2 * Y + X**3 * Y**2, 2, 1)
    assert not monomial_divisible(X**2 * Y + X * Y, 2, 1)


def test_reduce_mod_monomials():
    p = X**3 + X**2 * Y**2 + X * Y
    assert reduce_mod_monomials(p, [(3, 0), (0, 2)]) == X * Y


def test_interpolate_constant_and_square():
    poly, integral = unipoly_interpolate([(0, 1), (1, 1)])
    assert poly == UNIPOLY_QQ(1) and integral
    poly, _ = unipoly_interpolate([(0, 0), (1, 1), (2, 4)])
    assert to_integer_poly(poly) == T**2


def test_interpolation_round_trip():
    rng = random.Random(11)
    for deg in range(0, 21, 4):
        target = UNIPOLY.from_dict({(i,): rng.randint(-50, 50) for i in range(deg + 1)})
        xs = [2 * i + 1 for i in range(deg + 1)]
        poly, integral = unipoly_interpolate([(x, int(target(x))) for x in xs])
        assert integral
        assert to_integer_poly(poly) == target


def test_interpolation_detects_non_polynomial_data():
    points = [(0, 0), (1, 1), (2, 4)]
    with pytest.raises(InterpolationError):
        unipoly_interpolate(points, holdout=[(3, 10)])
    with pytest.raises(ValueError):
        unipoly_interpolate([(1, 1), (1, 2)])


def test_clear_denominators():
    poly = UNIPOLY_QQ.from_dict({(1,): QQ(1, 2), (0,): QQ(1, 3)})
    cleared, scale = clear_denominators(poly)
    assert scale == 6
    assert cleared == 3 * T + 2


def test_evaluate_exact_stays_in_qq():
    poly = UNIPOLY_QQ.from_dict({(1,): QQ(1, 2), (0,): QQ(1, 3)})
    assert evaluate_exact(poly, 1) == QQ(5, 6)
    assert QQ.of_type(evaluate_exact(poly, 1))
    assert evaluate_exact(3 * T + 2, 4) == QQ(14)
    assert QQ.of_type(evaluate_exact(3 * T + 2, 4))
