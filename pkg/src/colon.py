"""
Closed-form generators of the colon ideal (x^d1, y^d2) : (x + y)^a.

Two families cover the non-trivial range:
  * a <= k = d2 - d1: (x^d1, H) with H built from one alternating sum;
  * a > k: the k-th x-derivatives of F1, F2 (a - k odd) or
    G1, G2 (a - k even) taken at d = d2 and a' = a - k.
Past a >= d1 + d2 - 1 the colon is the unit ideal.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Tuple

from src.exact_arith import (
    BIVAR,
    X,
    Y,
    BivarPoly,
    binom,
    divides,
    from_terms,
    monomial,
    swap_xy,
    total_degree,
)


class Regime(str, Enum):
    CASE_SMALL_A = "CaseSmallA"
    CASE_ODD = "CaseOddAminusK"
    CASE_EVEN = "CaseEvenAminusK"
    UNIT = "UnitIdeal"


@dataclass(frozen=True)
class ColonParams:
    d1: int
    d2: int
    a: int

    def __post_init__(self):
        if self.d1 < 2 or self.d2 < 2:
            raise ValueError(f"Degrees must be at least 2, got d1={self.d1}, d2={self.d2}.")
        if self.a < 1:
            raise ValueError(f"Exponent a must be positive, got {self.a}.")
        if self.d1 > self.d2:
            raise ValueError(
                f"Expected d1 <= d2, got d1={self.d1}, d2={self.d2}; use swap_params first."
            )

    @property
    def k(self) -> int:
        return self.d2 - self.d1


@dataclass(frozen=True)
class ColonGens:
    q1: BivarPoly
    q2: BivarPoly
    regime: Regime
    params: ColonParams
    # x and y traded places relative to the caller's (d1, d2)
    swapped: bool = False

    @property
    def degrees(self) -> Tuple[int, int]:
        return total_degree(self.q1), total_degree(self.q2)


# ==========================================
# Alternating sums
# ==========================================

def _alternating_sum(
    upper: int,
    top: int,
    lower: int,
    shift: int,
    x_top: int,
    y_shift: int = 0,
    weight: Callable[[int], int] = lambda i: 1,
) -> BivarPoly:
    """
    sum_{i=0}^{upper} (-1)^i C(top - i, lower) C(shift + i, shift) w(i)
        x^(x_top - i) y^(i + y_shift)

    Terms with a negative x-exponent are dropped.
    """
    terms = []
    for i in range(upper + 1):
        if x_top - i < 0:
            continue
        c = (-1) ** i * binom(top - i, lower) * binom(shift + i, shift) * weight(i)
        if c:
            terms.append((x_top - i, i + y_shift, c))
    return from_terms(terms)


def _check_common(d: int, n: int):
    if d < 2:
        raise ValueError(f"Degree d must be at least 2, got {d}.")
    if n < 0:
        raise ValueError(f"Derivative order n must be nonnegative, got {n}.")


def _require_odd(a: int):
    if a < 1 or a % 2 == 0:
        raise ValueError(f"Expected a positive odd exponent, got a={a}.")


def _require_even(a: int):
    if a < 2 or a % 2:
        raise ValueError(f"Expected a positive even exponent, got a={a}.")


def gen_F1(d: int, a: int, n: int) -> BivarPoly:
    _check_common(d, n)
    _require_odd(a)
    h = (a - 1) // 2
    return _alternating_sum(
        upper=d - (a + 1) // 2,
        top=d - 1,
        lower=h + n,
        shift=h,
        x_top=d - (a + 1) // 2 - n,
    )


def gen_F2(d: int, a: int, n: int) -> BivarPoly:
    _check_common(d, n)
    _require_odd(a)
    return _alternating_sum(
        upper=d - (a + 3) // 2,
        top=d - 3,
        lower=(a - 3) // 2 + n,
        shift=(a + 1) // 2,
        x_top=d - (a + 3) // 2 - n,
        y_shift=2,
    )


def gen_G1(d: int, a: int, n: int) -> BivarPoly:
    _check_common(d, n)
    _require_even(a)
    return _alternating_sum(
        upper=d - (a + 2) // 2,
        top=d - 2,
        lower=(a - 2) // 2 + n,
        shift=a // 2,
        x_top=d - (a + 2) // 2 - n,
        y_shift=1,
    )


def gen_G2(d: int, a: int, n: int) -> BivarPoly:
    _check_common(d, n)
    _require_even(a)
    h = (a - 2) // 2
    return _alternating_sum(
        upper=d - a // 2,
        top=d - 1,
        lower=h + n,
        shift=h,
        x_top=d - a // 2 - n,
        weight=lambda i: i - 1,
    )


def gen_H(d1: int, a: int, k: int) -> BivarPoly:
    if not 1 <= a <= k:
        raise ValueError(f"gen_H needs 1 <= a <= k, got a={a}, k={k}.")
    if d1 < 1:
        raise ValueError(f"Degree d1 must be positive, got {d1}.")
    return _alternating_sum(
        upper=d1 - 1,
        top=d1 + a - 2,
        lower=a - 1,
        shift=0,
        x_top=d1 - 1,
        y_shift=k - a + 1,
    )


def gen_H_alternative(d2: int, a: int) -> BivarPoly:
    """Second expression of H: sum_j (-1)^j C(d2-j-1, a-1) x^(d2-a-j) y^j."""
    if a < 1 or a > d2:
        raise ValueError(f"Expected 1 <= a <= d2, got a={a}, d2={d2}.")
    return _alternating_sum(
        upper=d2 - a,
        top=d2 - 1,
        lower=a - 1,
        shift=0,
        x_top=d2 - a,
    )


def nth_x_derivative(p: BivarPoly, n: int) -> BivarPoly:
    if n < 0:
        raise ValueError(f"Derivative order must be nonnegative, got {n}.")
    for _ in range(n):
        p = p.diff(X)
    return p


# ==========================================
# Colon generators
# ==========================================

def _order_pair(p: BivarPoly, q: BivarPoly) -> Tuple[BivarPoly, BivarPoly]:
    # ascending degree, ties put the generator not divisible by y first
    def key(f):
        return total_degree(f), 1 if _y_divisible(f) else 0

    return (p, q) if key(p) <= key(q) else (q, p)


def _y_divisible(f: BivarPoly) -> bool:
    return bool(f) and all(m[1] >= 1 for m in f.keys())


def colon_generators(p: ColonParams) -> ColonGens:
    d1, d2, a, k = p.d1, p.d2, p.a, p.k

    if a >= d1 + d2 - 1:
        logging.info(f"Colon ({d1},{d2},{a}) is the unit ideal")
        return ColonGens(BIVAR.one, BIVAR.zero, Regime.UNIT, p)

    if a <= k:
        q1, q2 = _order_pair(monomial(d1, 0), gen_H(d1, a, k))
        return ColonGens(q1, q2, Regime.CASE_SMALL_A, p)

    reduced = a - k
    if reduced % 2:
        f1, f2 = gen_F1(d2, reduced, k), gen_F2(d2, reduced, k)
        regime = Regime.CASE_ODD
    else:
        f1, f2 = gen_G1(d2, reduced, k), gen_G2(d2, reduced, k)
        regime = Regime.CASE_EVEN

    q1, q2 = _order_pair(f1, f2)
    logging.debug(f"Colon ({d1},{d2},{a}) regime {regime.value}: degrees {total_degree(q1)}, {total_degree(q2)}")
    return ColonGens(q1, q2, regime, p)


def swap_params(d1: int, d2: int, a: int) -> Tuple[ColonParams, bool]:
    """Orders the degrees so d1 <= d2; the flag says whether x and y trade places."""
    if d1 <= d2:
        return ColonParams(d1, d2, a), False
    return ColonParams(d2, d1, a), True


def colon_generators_any_order(d1: int, d2: int, a: int) -> ColonGens:
    """colon_generators for either ordering of the degrees."""
    params, swapped = swap_params(d1, d2, a)
    gens = colon_generators(params)
    if not swapped:
        return gens
    return ColonGens(swap_xy(gens.q1), swap_xy(gens.q2), gens.regime, params, swapped=True)


def expected_degrees(p: ColonParams) -> Tuple[int, int]:
    """Generator degrees predicted for each regime (ascending)."""
    d1, d2, a, k = p.d1, p.d2, p.a, p.k
    if a >= d1 + d2 - 1:
        return 0, 0
    if a <= k:
        return tuple(sorted((d1, d2 - a)))
    return d2 - (a + k + 1) // 2, d2 - (a + k) // 2


def is_redundant_pair(gens: ColonGens) -> bool:
    if gens.regime == Regime.UNIT:
        return False
    return divides(gens.q1, gens.q2) or divides(gens.q2, gens.q1)


# ==========================================
# Identities behind the construction
# ==========================================

def proof_identity_residuals(d: int, a: int) -> Dict[str, BivarPoly]:
    """
    Residuals of the linear relations tying the generators at a and a + 1
    (n = 0). Odd a yields keys "G1", "G2"; even a yields "F1", "F2".
    Every residual is zero for 1 <= a <= 2d - 3.
    """
    if not 1 <= a <= 2 * d - 3:
        raise ValueError(f"Identities need 1 <= a <= 2d - 3, got d={d}, a={a}.")
    s = X + Y

    if a % 2:
        b = (a - 1) // 2
        f1, f2 = gen_F1(d, a, 0), gen_F2(d, a, 0)
        g1, g2 = gen_G1(d, a + 1, 0), gen_G2(d, a + 1, 0)
        return {
            "G1": (d - 1) * s * g1 - ((d - b - 1) * Y * f1 + (d + b) * f2),
            "G2": (1 - d) * s * g2
            - (((d - 1) * X + ((d - 1) + (b + 1) * (d - b - 1)) * Y) * f1 + (b + 1) * (d + b) * f2),
        }

    g1, g2 = gen_G1(d, a, 0), gen_G2(d, a, 0)
    f1, f2 = gen_F1(d, a + 1, 0), gen_F2(d, a + 1, 0)
    b = a // 2
    residual_f1 = b * s * f1 - (b * (b + 2 - d) * g1 + (b - d) * g2)
    b = (a - 2) // 2
    residual_f2 = -(b + 2) * s * f2 - (((d - 1) * X + (b + 2) * (d - b - 2) * Y) * g1 + (d - b - 1) * Y * g2)
    return {"F1": residual_f1, "F2": residual_f2}


def base_case_products(d: int) -> Dict[str, BivarPoly]:
    """(x + y) F1, (x + y) F2 at a = 1 and (x + y)^2 G1, (x + y)^2 G2 at a = 2 (n = 0)."""
    s = X + Y
    return {
        "F1": s * gen_F1(d, 1, 0),
        "F2": s * gen_F2(d, 1, 0),
        "G1": s**2 * gen_G1(d, 2, 0),
        "G2": s**2 * gen_G2(d, 2, 0),
    }


def h_stepping_residual(d1: int, a: int, k: int) -> BivarPoly:
    """(x + y) H_{a+1} - H_a with multiples of x^d1 removed; zero for 1 <= a < k."""
    diff = (X + Y) * gen_H(d1, a + 1, k) - gen_H(d1, a, k)
    return BIVAR.from_dict({m: c for m, c in diff.items() if m[0] < d1})
