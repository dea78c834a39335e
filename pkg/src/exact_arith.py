import logging
from typing import Iterable, Sequence, Tuple

from sympy import binomial, ilcm
from sympy.polys.domains import QQ, ZZ
from sympy.polys.rings import PolyElement, ring

# Every bivariate form in the package lives in ZZ[x, y]; a PolyElement is a
# dict keyed by exponent pairs with no stored zero coefficients.
BIVAR, X, Y = ring("x,y", ZZ)
BIVAR_QQ, _, _ = ring("x,y", QQ)

# Univariate polynomials in t: integral form and the interpolation field.
UNIPOLY, T = ring("t", ZZ)
UNIPOLY_QQ, T_QQ = ring("t", QQ)

NEG_INF = float("-inf")

BivarPoly = PolyElement
UniPolyT = PolyElement


class InterpolationError(RuntimeError):
    """Raised when exact interpolation fails one of its self-checks."""


def binom(n: int, k: int) -> int:
    """
    Binomial coefficient extended to negative integers.

    Follows the convention that keeps Pascal's rule valid wherever both sides
    are defined, in particular binom(-1, -1) = 1 and binom(n, k) = 0 for
    0 <= n < k.
    """
    if n >= 0:
        if k < 0 or k > n:
            return 0
        return int(binomial(n, k))
    if k >= 0:
        return (-1) ** k * int(binomial(-n + k - 1, k))
    if k <= n:
        return (-1) ** (n - k) * int(binomial(-k - 1, n - k))
    return 0


def poly_add(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    return p + q


def poly_mul(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    return p * q


def poly_scale(p: BivarPoly, c: int) -> BivarPoly:
    return p * c


def coeff_of(p: BivarPoly, i: int, j: int) -> int:
    if i < 0 or j < 0:
        return 0
    return int(p.get((i, j), 0))


def monomial(i: int, j: int, coeff: int = 1) -> BivarPoly:
    if coeff == 0:
        return BIVAR.zero
    return BIVAR.from_dict({(i, j): coeff})


def from_terms(terms: Iterable[Tuple[int, int, int]]) -> BivarPoly:
    """Builds a form from (i, j, coeff) triples, summing repeated exponents."""
    acc = {}
    for i, j, c in terms:
        acc[(i, j)] = acc.get((i, j), 0) + c
    return BIVAR.from_dict({m: c for m, c in acc.items() if c != 0})


def total_degree(p: BivarPoly):
    if not p:
        return NEG_INF
    return max(sum(m) for m in p.keys())


def is_homogeneous(p: BivarPoly) -> bool:
    return len({sum(m) for m in p.keys()}) <= 1


def monomial_divisible(p: BivarPoly, i: int, j: int) -> bool:
    """True when every term of p is a multiple of x^i y^j."""
    return all(m[0] >= i and m[1] >= j for m in p.keys())


def reduce_mod_monomials(p: BivarPoly, monomials: Sequence[Tuple[int, int]]) -> BivarPoly:
    """Remainder of p modulo the monomial ideal generated by `monomials`."""
    kept = {
        m: c
        for m, c in p.items()
        if not any(m[0] >= g[0] and m[1] >= g[1] for g in monomials)
    }
    return BIVAR.from_dict(kept)


def divides(f: BivarPoly, g: BivarPoly) -> bool:
    """True when f divides g in QQ[x, y]."""
    if not f:
        return not g
    return not g.set_ring(BIVAR_QQ).rem(f.set_ring(BIVAR_QQ))


def expand_binomial_power(a: int) -> BivarPoly:
    """(x + y)^a."""
    if a < 0:
        raise ValueError(f"Exponent must be nonnegative, got {a}.")
    return (X + Y) ** a


def swap_xy(p: BivarPoly) -> BivarPoly:
    return BIVAR.from_dict({(j, i): c for (i, j), c in p.items()})


def unipoly_interpolate(
    points: Sequence[Tuple[int, int]],
    holdout: Sequence[Tuple[int, int]] = (),
) -> Tuple[PolyElement, bool]:
    """
    Exact interpolation over QQ through `points` (Newton divided differences).

    Returns (poly over QQ[t], integral) where `integral` tells whether every
    coefficient is an integer. Each `holdout` point must lie on the result.
    """
    xs = [int(p[0]) for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("Interpolation abscissae must be distinct.")
    if not xs:
        raise ValueError("At least one interpolation point is required.")

    coefs = [QQ(int(v)) for _, v in points]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / QQ(xs[i] - xs[i - level])

    poly = UNIPOLY_QQ(coefs[-1])
    for i in range(n - 2, -1, -1):
        poly = poly * (T_QQ - xs[i]) + coefs[i]

    for tx, ty in holdout:
        got = poly(int(tx))
        if got != QQ(int(ty)):
            logging.error(f"Interpolant misses held-out point t={tx}")
            raise InterpolationError(
                f"Held-out point t={tx} does not lie on the interpolant; "
                f"the data are not polynomial of degree < {n}."
            )

    integral = all(c.denominator == 1 for c in poly.values())
    return poly, integral


def to_integer_poly(poly: PolyElement) -> PolyElement:
    """Converts an integral QQ[t] polynomial to ZZ[t]."""
    if any(c.denominator != 1 for c in poly.values()):
        raise InterpolationError("Polynomial has non-integer coefficients.")
    return UNIPOLY.from_dict({m: int(c.numerator) for m, c in poly.items()})


def clear_denominators(poly: PolyElement) -> Tuple[PolyElement, int]:
    """Returns (integer poly, scale) with integer poly == scale * poly."""
    scale = 1
    for c in poly.values():
        d = int(c.denominator)
        scale = ilcm(scale, d)
    cleared = UNIPOLY.from_dict(
        {m: int(c.numerator) * (scale // int(c.denominator)) for m, c in poly.items()}
    )
    return cleared, scale


def evaluate_exact(poly: PolyElement, t: int):
    """Value at an integer point as an element of QQ."""
    return QQ.convert(poly(int(t)))

