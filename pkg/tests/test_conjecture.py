import logging

import pytest

import src.conjecture as conjecture
from src.conjecture import (
    A1,
    A2,
    SP_RING,
    S,
    P,
    TA1,
    TA2,
    TX,
    TY,
    X3,
    Y3,
    Z3,
    build_F,
    check_pattern,
    classify_triple,
    constant_term_pattern,
    delta,
    delta3,
    direct_coefficient,
    from_sym,
    solve_integer_cases,
    tau,
    tau_xyz,
    to_sym,
)
from src.exact_arith import X, Y
from src.wlp_matrix import AciCase, admissible_cases, wlp_by_determinant


# ==========================================
# Delta and tau
# ==========================================

def test_delta_examples():
    assert delta(X**2) == 2 * X
    assert delta(X * Y) == Y - X
    assert delta((X + Y) ** 3) == 0
    assert delta3(X3 * Z3) == Z3
    with pytest.raises(ValueError):
        delta3(X * Y)


def test_tau_low_powers():
    assert tau(0).poly == 1
    assert tau(1).poly == TA1 * TY - TA2 * TX
    assert tau(2).poly == TA2 * (TA2 - 1) * TX**2 - 2 * TA1 * TA2 * TX * TY + TA1 * (TA1 - 1) * TY**2


def test_tau_switches_branch_past_a1():
    # a1 = 1: the second step only differentiates
    t2 = tau(2, 1).poly
    t1 = tau(1, 1).poly
    assert t2 == TY * delta(t1) - (TA2 - 1) * t1
    assert tau(2, 1).degree == 1


@pytest.mark.parametrize("k", range(0, 6))
def test_tau_degree(k):
    assert tau(k).degree == k


def test_tau_rejects_large_k():
    with pytest.raises(ValueError):
        tau(4, 1, 2)
    with pytest.raises(ValueError):
        tau(-1)
    with pytest.raises(ValueError):
        tau(1).bivariate()


@pytest.mark.parametrize("a1", range(1, 6))
@pytest.mark.parametrize("a2", range(1, 6))
def test_delta_powers_factor_through_tau(a1, a2):
    base = X3**a1 * Y3**a2 * Z3**3
    current = base
    for k in range(0, a2 + 1):
        monomial = X3 ** max(a1 - k, 0) * Y3 ** (a2 - k) * Z3**3
        assert current == monomial * tau_xyz(k, a1, a2), (a1, a2, k)
        current = delta3(current)


# ==========================================
# Coefficient polynomial
# ==========================================

def test_build_F_for_a_equal_one():
    f = build_F(1)
    assert f.poly == A1 - A2
    assert f.antisymmetric
    assert f.core == 1


def test_build_F_for_a_equal_two():
    f = build_F(2)
    assert not f.antisymmetric
    assert to_sym(f) == S**3 - 4 * S**2 + 3 * S - 4 * S * P + 10 * P


def test_build_F_fixed_regime():
    assert build_F(2, 1).poly == A2**3 - 5 * A2**2 + 4 * A2


def test_build_F_for_a_equal_three_is_antisymmetric():
    f = build_F(3)
    assert f.antisymmetric
    assert f.poly == f.core * (A1 - A2)


def test_build_F_rejects_bad_regime():
    with pytest.raises(ValueError):
        build_F(0)
    with pytest.raises(ValueError):
        build_F(2, 2)


def test_to_sym_examples():
    assert to_sym(A1 + A2) == S
    assert to_sym(A1 * A2) == P
    assert to_sym(A1**2 + A2**2) == S**2 - 2 * P
    assert to_sym(A1 - A1 + 7) == SP_RING(7)
    with pytest.raises(ValueError):
        to_sym(A1)


def test_from_sym_inverts_to_sym():
    p = A1**3 * A2 + A1 * A2**3 - 5 * A1 * A2 + A1**2 + A2**2
    assert from_sym(to_sym(p)) == p


def test_constant_term_pattern():
    pattern, modulus = constant_term_pattern(2)
    assert modulus == 5
    assert pattern.degree() == 3
    _, modulus = constant_term_pattern(3)
    assert modulus == 7


@pytest.mark.parametrize("a, scaled", [(1, 1), (2, -15), (3, -45)])
def test_pattern_holds_for_small_a(a, scaled):
    ok, _, value = check_pattern(to_sym(build_F(a)), a)
    assert ok
    assert value == scaled


@pytest.mark.slow
@pytest.mark.parametrize("a", [4, 5, 6])
def test_pattern_holds(a):
    ok, _, value = check_pattern(to_sym(build_F(a)), a)
    assert ok
    assert value is not None


# ==========================================
# Integer search
# ==========================================

def test_solve_a_equal_two():
    result = solve_integer_cases(2, 100)
    symmetric = result.regimes[0]
    assert symmetric.label == "a1>=a"
    assert symmetric.candidates == [2, 3, 4, 5, 10]
    assert symmetric.scaled_constant == -15
    assert (3, 7, 14) in symmetric.triples
    assert result.regimes[1].label == "a1=1"
    assert result.regimes[1].triples == [(1, 4, 4)]
    assert result.triples == [(1, 4, 4), (3, 7, 14)]
    assert not result.families


def test_solve_a_equal_three():
    result = solve_integer_cases(3, 60)
    assert result.regimes[0].viable == [5, 6, 8, 11, 26]
    assert result.triples == [(1, 7, 7), (2, 9, 13)]
    (family,) = result.families
    assert family.name == "a1=a2"
    assert family.members[:3] == [(3, 3, 3), (4, 4, 7), (5, 5, 11)]


def test_solve_a_equal_one():
    result = solve_integer_cases(1, 20)
    assert result.regimes[0].candidates == []
    assert result.triples == []
    assert result.families[0].members[:3] == [(1, 1, 1), (2, 2, 5), (3, 3, 9)]


def test_solve_rejects_non_positive_a():
    with pytest.raises(ValueError):
        solve_integer_cases(0)


def test_direct_coefficient():
    assert direct_coefficient(2, 3, 7) == 0
    assert direct_coefficient(2, 1, 4) == 0
    assert direct_coefficient(2, 3, 6) != 0
    with pytest.raises(ValueError):
        direct_coefficient(5, 1, 1)


@pytest.mark.parametrize(
    "triple, label",
    [((3, 7, 14), "rogue"), ((2, 13, 9), "rogue"), ((3, 3, 3), "family"), ((1, 4, 4), "family"), ((2, 2, 2), "new")],
)
def test_classify_triple(triple, label):
    assert classify_triple(*triple) == label


def _borderline_cases(s_max):
    out = []
    for a1, a2, a3, t in admissible_cases(s_max, 1):
        s = a1 + a2 + a3
        case = AciCase(a1, a2, a3, t)
        if t == s // 3 + 1 and case.a >= 1:
            out.append(case)
    return out


@pytest.mark.parametrize("case", _borderline_cases(12), ids=lambda c: str(c.key))
def test_coefficient_vanishes_exactly_when_determinant_does(case):
    vanishes = direct_coefficient(case.a, case.a1, case.a2) == 0
    assert vanishes == (not wlp_by_determinant(case))


@pytest.mark.slow
@pytest.mark.parametrize("a", [4, 5, 6])
def test_larger_a_finds_nothing_new(a):
    result = solve_integer_cases(a)
    assert all(classify_triple(*tr) != "new" for tr in result.triples)


def _reported_triples(a_max):
    reported = set()
    for a in range(1, a_max + 1):
        result = solve_integer_cases(a)
        reported.update(result.triples)
        for family in result.families:
            reported.update(family.members)
    return reported


@pytest.mark.slow
def test_reported_triples_are_exactly_the_vanishing_determinants():
    reported = _reported_triples(5)
    for a1, a2, a3 in sorted(reported):
        if a1 + a2 + a3 <= 30:
            case = AciCase(a1, a2, a3, (a1 + a2 + a3) // 3 + 1)
            assert not wlp_by_determinant(case), case.key

    for a1, a2, a3, t in admissible_cases(15, 1):
        if t != (a1 + a2 + a3) // 3 + 1 or (a1, a2, a3) in reported:
            continue
        assert wlp_by_determinant(AciCase(a1, a2, a3, t)), (a1, a2, a3, t)


def test_zero_constant_term_falls_back_with_its_own_reason(monkeypatch, caplog):
    monkeypatch.setattr(conjecture, "check_pattern", lambda sp, a: (True, 5, 0))
    with caplog.at_level(logging.WARNING):
        result = solve_integer_cases(2, 12)
    assert result.regimes[0].fallback
    assert result.regimes[0].candidates == list(range(2, 13))
    assert "scaled constant term is zero" in caplog.text
    assert "pattern fails" not in caplog.text
