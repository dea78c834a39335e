import pytest

from src.colon import (
    ColonParams,
    Regime,
    base_case_products,
    colon_generators,
    colon_generators_any_order,
    expected_degrees,
    gen_F1,
    gen_F2,
    gen_G1,
    gen_G2,
    gen_H,
    gen_H_alternative,
    h_stepping_residual,
    is_redundant_pair,
    nth_x_derivative,
    proof_identity_residuals,
    swap_params,
)
from src.exact_arith import X, Y, coeff_of, is_homogeneous, reduce_mod_monomials, total_degree
from src.oracle import ideal_membership2


def _grid(d_max):
    for d1 in range(2, d_max + 1):
        for d2 in range(d1, d_max + 1):
            for a in range(1, d1 + d2 - 1):
                yield d1, d2, a


def test_generator_examples():
    assert gen_F1(2, 1, 0) == X - Y
    assert gen_F2(2, 1, 0) == Y**2
    assert coeff_of(gen_F1(4, 3, 0), 2, 0) == 3
    assert gen_H(2, 1, 2) == Y**2 * (X - Y)
    assert total_degree(gen_H(2, 1, 2)) == 3


def test_parity_is_enforced():
    with pytest.raises(ValueError):
        gen_F1(4, 2, 0)
    with pytest.raises(ValueError):
        gen_G1(4, 3, 0)
    with pytest.raises(ValueError):
        gen_H(3, 3, 2)


@pytest.mark.parametrize("d", range(2, 9))
@pytest.mark.parametrize("a", [2, 4, 6])
@pytest.mark.parametrize("n", range(0, 3))
def test_g2_has_no_i_equals_one_term(d, a, n):
    g2 = gen_G2(d, a, n)
    x_top = d - a // 2 - n
    assert coeff_of(g2, x_top - 1, 1) == 0


def test_h_times_linear_form():
    assert (X + Y) * gen_H(3, 1, 2) == X**3 * Y**2 + Y**5


@pytest.mark.parametrize("d1", range(2, 7))
@pytest.mark.parametrize("k", range(1, 5))
def test_h_alternative_agrees_modulo_x_power(d1, k):
    for a in range(1, k + 1):
        sign = (-1) ** (k - a + 1)
        diff = gen_H(d1, a, k) - sign * gen_H_alternative(d1 + k, a)
        assert reduce_mod_monomials(diff, [(d1, 0)]) == 0


def test_colon_examples():
    g = colon_generators(ColonParams(2, 2, 1))
    assert (g.q1, g.q2, g.regime) == (X - Y, Y**2, Regime.CASE_ODD)
    g = colon_generators(ColonParams(2, 4, 1))
    assert (g.q1, g.q2, g.regime) == (X**2, Y**2 * (X - Y), Regime.CASE_SMALL_A)
    g = colon_generators(ColonParams(2, 2, 3))
    assert g.regime == Regime.UNIT and g.q1 == 1


def test_params_validation():
    with pytest.raises(ValueError):
        ColonParams(1, 3, 1)
    with pytest.raises(ValueError):
        ColonParams(4, 3, 1)
    with pytest.raises(ValueError):
        ColonParams(3, 4, 0)


def test_swap_helper():
    params, swapped = swap_params(5, 3, 2)
    assert (params.d1, params.d2, swapped) == (3, 5, True)
    g = colon_generators_any_order(4, 2, 1)
    assert g.q1 == Y**2
    assert g.q2 == X**2 * (Y - X)
    assert g.swapped
    assert not colon_generators_any_order(2, 4, 1).swapped


@pytest.mark.parametrize("d1, d2, a", list(_grid(12)))
def test_membership_and_degree_laws(d1, d2, a):
    p = ColonParams(d1, d2, a)
    g = colon_generators(p)
    for q in (g.q1, g.q2):
        assert is_homogeneous(q)
        assert ideal_membership2((X + Y) ** a * q, d1, d2)
    assert sum(g.degrees) == d1 + d2 - a
    assert g.degrees == expected_degrees(p)


@pytest.mark.parametrize("d1, d2, a", list(_grid(8)))
def test_generators_are_not_redundant(d1, d2, a):
    assert not is_redundant_pair(colon_generators(ColonParams(d1, d2, a)))


@pytest.mark.parametrize("d", range(2, 11))
def test_proof_identities(d):
    for a in range(1, 2 * d - 2):
        residuals = proof_identity_residuals(d, a)
        assert set(residuals) == ({"G1", "G2"} if a % 2 else {"F1", "F2"})
        assert all(r == 0 for r in residuals.values()), (d, a)


@pytest.mark.parametrize("d1", range(2, 9))
@pytest.mark.parametrize("k", range(2, 7))
def test_h_stepping_identity(d1, k):
    for a in range(1, k):
        assert h_stepping_residual(d1, a, k) == 0


@pytest.mark.parametrize("d", range(2, 9))
def test_base_case_products(d):
    products = base_case_products(d)
    assert products["F1"] == X**d + (-1) ** (d - 1) * Y**d
    assert products["F2"] == (-1) ** d * (d - 1) * (X + Y) * Y**d
    assert ideal_membership2(products["G1"], d, d)
    assert ideal_membership2(products["G2"], d, d)


def _falling(h, n):
    out = 1
    for j in range(1, n + 1):
        out *= h + j
    return out


@pytest.mark.parametrize("d", range(2, 11))
@pytest.mark.parametrize("n", range(0, 4))
def test_derivatives_shift_n(d, n):
    for a in range(1, 8, 2):
        assert nth_x_derivative(gen_F1(d, a, 0), n) == _falling((a - 1) // 2, n) * gen_F1(d, a, n)
        assert nth_x_derivative(gen_F2(d, a, 0), n) == _falling((a - 3) // 2, n) * gen_F2(d, a, n)
    for a in range(2, 9, 2):
        scalar = _falling((a - 2) // 2, n)
        assert nth_x_derivative(gen_G1(d, a, 0), n) == scalar * gen_G1(d, a, n)
        assert nth_x_derivative(gen_G2(d, a, 0), n) == scalar * gen_G2(d, a, n)


def test_x_derivative_basics():
    assert nth_x_derivative(X**2, 1) == 2 * X
    assert nth_x_derivative(X**2 * Y, 3) == 0
    with pytest.raises(ValueError):
        nth_x_derivative(X, -1)


@pytest.mark.parametrize("d1, d2", [(d1, d2) for d1 in range(2, 7) for d2 in range(d1 + 1, 8)])
def test_x_derivatives_map_colon_into_colon(d1, d2):
    k = d2 - d1
    for a in range(k + 1, d1 + d2 - 1):
        source = colon_generators(ColonParams(d2, d2, a - k))
        for f in (source.q1, source.q2, X * source.q1 + Y**2 * source.q2):
            assert ideal_membership2((X + Y) ** a * nth_x_derivative(f, k), d1, d2)
