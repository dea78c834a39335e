"""
Borderline case t = s/3 + 1 of the WLP conjecture.

WLP fails there exactly when one coefficient of (tau^a 1)(x + y)^a3 vanishes,
tau being the operator with Delta^k(x^a1 y^a2 z^a3) = (monomial) * tau^k.
After a3 = 2(a1 + a2) - 3a that coefficient becomes a polynomial in a1, a2
whose integer zeros are the exceptional triples; the symmetric part is
rewritten in S = a1 + a2, P = a1 a2 and solved through a divisor argument.
"""
import logging
import os
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Tuple

from sympy import Poly, divisors, integer_nthroot
from sympy.polys.domains import QQ, ZZ
from sympy.polys.polyfuncs import symmetrize
from sympy.polys.rings import PolyElement, ring

from src.exact_arith import BIVAR, coeff_of, expand_binomial_power

_DEFAULT_A_MAX = "6"
_DEFAULT_MAX_S = 100

SYM_RING, A1, A2 = ring("a1,a2", ZZ)
SP_RING, S, P = ring("S,P", ZZ)
S_RING, S1 = ring("S", ZZ)
WEIGHT_RING, A3 = ring("a3", ZZ)
TAU_RING, TX, TY, TA1, TA2 = ring("x,y,a1,a2", ZZ)
XYZ_RING, X3, Y3, Z3 = ring("x,y,z", ZZ)

ROGUE_TRIPLES = ((2, 9, 13), (3, 7, 14))

Triple = Tuple[int, int, int]


def get_a_max() -> int:
    return max(1, int(os.environ.get("LEFSCHETZ_A_MAX", _DEFAULT_A_MAX)))


@dataclass(frozen=True)
class TauState:
    k: int
    a1: Optional[int]
    a2: Optional[int]
    poly: PolyElement

    @property
    def degree(self) -> int:
        if not self.poly:
            return -1
        return max(m[0] + m[1] for m in self.poly.keys())

    def bivariate(self) -> PolyElement:
        """The form in ZZ[x, y]; needs concrete a1 and a2."""
        if self.a1 is None or self.a2 is None:
            raise ValueError("bivariate() needs concrete a1 and a2.")
        return BIVAR.from_dict({(i, j): c for (i, j, _, _), c in self.poly.items()})


@dataclass(frozen=True)
class SymPoly:
    a: int
    fixed_a1: Optional[int]
    poly: PolyElement
    core: PolyElement
    divided: Tuple[PolyElement, ...] = ()

    @property
    def antisymmetric(self) -> bool:
        return bool(self.divided)


@dataclass
class RegimeScan:
    fixed_a1: Optional[int]
    candidates: List[int] = field(default_factory=list)
    viable: List[int] = field(default_factory=list)
    triples: List[Triple] = field(default_factory=list)
    pattern_ok: Optional[bool] = None
    scaled_constant: Optional[int] = None
    fallback: bool = False

    @property
    def label(self) -> str:
        return "a1>=a" if self.fixed_a1 is None else f"a1={self.fixed_a1}"


@dataclass
class Family:
    name: str
    members: List[Triple] = field(default_factory=list)


@dataclass
class ScanResult:
    a: int
    max_S: int
    regimes: List[RegimeScan] = field(default_factory=list)
    families: List[Family] = field(default_factory=list)

    @property
    def triples(self) -> List[Triple]:
        return sorted({tr for r in self.regimes for tr in r.triples})

    def all_triples(self) -> List[Triple]:
        found = set(self.triples)
        for fam in self.families:
            found.update(fam.members)
        return sorted(found)


# ==========================================
# Delta and tau
# ==========================================

def _gens_by_name(p: PolyElement) -> Dict[str, PolyElement]:
    return dict(zip(map(str, p.ring.symbols), p.ring.gens))


def delta(p: PolyElement) -> PolyElement:
    """d/dx - d/dy on any ring with generators named x and y."""
    gens = _gens_by_name(p)
    return p.diff(gens["x"]) - p.diff(gens["y"])


def delta3(p: PolyElement) -> PolyElement:
    if "z" not in _gens_by_name(p):
        raise ValueError("delta3 expects a polynomial in x, y, z.")
    return delta(p)


def tau(k: int, a1: Optional[int] = None, a2: Optional[int] = None) -> TauState:
    """
    tau^k applied to 1.

    A symbolic a1 (None) stands for a1 >= k, so the first branch runs
    throughout. With a concrete a1 the second branch takes over from
    k = a1 + 1. A symbolic a2 keeps a2 as a ring generator.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}.")
    if a2 is not None and k > a2 + 1:
        raise ValueError(f"tau^k is only defined for k <= a2 + 1; got k={k}, a2={a2}.")
    if a1 is not None and a1 < 0:
        raise ValueError(f"a1 must be nonnegative, got {a1}.")

    u1 = TA1 if a1 is None else a1
    u2 = TA2 if a2 is None else a2
    cur = TAU_RING.one
    for step in range(1, k + 1):
        if a1 is None or step <= a1:
            cur = TX * TY * delta(cur) + ((u1 - step + 1) * TY - (u2 - step + 1) * TX) * cur
        else:
            cur = TY * delta(cur) - (u2 - step + 1) * cur
    return TauState(k, a1, a2, cur)


def tau_xyz(k: int, a1: int, a2: int) -> PolyElement:
    """Concrete tau^k moved into ZZ[x, y, z]."""
    t = tau(k, a1, a2)
    return XYZ_RING.from_dict({(i, j, 0): c for (i, j, _, _), c in t.poly.items()})


# ==========================================
# The coefficient polynomial
# ==========================================

def _xy_coefficient(poly: PolyElement, i: int, j: int) -> PolyElement:
    return SYM_RING.from_dict({(p, q): c for (ti, tj, p, q), c in poly.items() if (ti, tj) == (i, j)})


def _binomial_weights_symmetric(a: int) -> List[PolyElement]:
    # C(a3, m0 + i) / C(a3, m0) * prod, m0 = (a3 - a)/2, common denominator cleared
    weights = []
    for i in range(a + 1):
        w = WEIGHT_RING.one
        for r in range(i):
            w *= A3 + a - 2 * r
        for r in range(i, a):
            w *= A3 - a + 2 * r + 2
        weights.append(w)
    return weights


def _binomial_weights_fixed(a: int, c: int) -> List[PolyElement]:
    # same ratios with m0 = c + a2 - 2a and a3 - m0 = c + a2 - a
    weights = []
    for i in range(c + 1):
        w = SYM_RING.one
        for r in range(i):
            w *= c + A2 - a - r
        for r in range(i, c):
            w *= c + A2 - 2 * a + r + 1
        weights.append(w)
    return weights


def _strip_common_factor(weights: List[PolyElement]) -> List[PolyElement]:
    g = reduce(lambda p, q: p.gcd(q), weights)
    return [w.exquo(g) for w in weights]


def _substitute_a3(w: PolyElement, a: int) -> PolyElement:
    value = 2 * (A1 + A2) - 3 * a
    out = SYM_RING.zero
    for (m,), c in w.items():
        out += int(c) * value**m
    return out


def _swap_a(p: PolyElement) -> PolyElement:
    return SYM_RING.from_dict({(j, i): c for (i, j), c in p.items()})


def _normalize(total: PolyElement) -> PolyElement:
    _, prim = total.primitive()
    if prim and prim.LC < 0:
        prim = -prim
    return prim


def build_F(a: int, a1: Optional[int] = None) -> SymPoly:
    """
    The vanishing condition as a polynomial.

    a1=None is the regime a1 >= a (a polynomial in a1, a2); a concrete
    a1 = c < a gives a polynomial in a2 alone.
    """
    if a < 1:
        raise ValueError(f"a must be positive, got {a}.")
    if a1 is not None and not 1 <= a1 < a:
        raise ValueError(f"Fixed a1 must satisfy 1 <= a1 < a, got a1={a1}, a={a}.")

    if a1 is None:
        t = tau(a).poly
        coeffs = [_xy_coefficient(t, a - i, i) for i in range(a + 1)]
        weights = [_substitute_a3(w, a) for w in _strip_common_factor(_binomial_weights_symmetric(a))]
    else:
        t = tau(a, a1).poly
        coeffs = [_xy_coefficient(t, a1 - i, i) for i in range(a1 + 1)]
        weights = _strip_common_factor(_binomial_weights_fixed(a, a1))

    total = SYM_RING.zero
    for c, w in zip(coeffs, weights):
        total += c * w
    if not total:
        logging.error(f"Coefficient polynomial vanishes identically for a={a}, a1={a1}")
        raise RuntimeError(f"Degenerate coefficient polynomial for a={a}, a1={a1}.")

    poly = _normalize(total)
    if a1 is None and _swap_a(poly) == -poly:
        factor = A1 - A2
        return SymPoly(a, a1, poly, poly.exquo(factor), (factor,))
    return SymPoly(a, a1, poly, poly)


# ==========================================
# Symmetric reduction
# ==========================================

def to_sym(p) -> PolyElement:
    """Rewrites a symmetric polynomial in a1, a2 as one in S = a1 + a2, P = a1 a2."""
    poly = p.core if isinstance(p, SymPoly) else p
    a1_sym, a2_sym = SYM_RING.symbols
    s_sym, p_sym = SP_RING.symbols
    sym, rem, _ = symmetrize(poly.as_expr(), a1_sym, a2_sym, formal=True, symbols=[s_sym, p_sym])
    if rem != 0:
        raise ValueError("Polynomial is not symmetric in a1 and a2.")
    return SP_RING.from_expr(sym) if sym.free_symbols else SP_RING(int(sym))


def from_sym(sp: PolyElement) -> PolyElement:
    out = SYM_RING.zero
    for (i, j), c in sp.items():
        out += int(c) * (A1 + A2) ** i * (A1 * A2) ** j
    return out


def p_coefficients(sp: PolyElement) -> Dict[int, PolyElement]:
    """Coefficient of each power of P, as polynomials in S."""
    grouped: Dict[int, Dict[tuple, int]] = {}
    for (i, j), c in sp.items():
        grouped.setdefault(j, {})[(i,)] = int(c)
    return {j: S_RING.from_dict(d) for j, d in sorted(grouped.items())}


def constant_term_pattern(a: int) -> Tuple[PolyElement, int]:
    """The observed P-free term and the modulus c(a)."""
    if a % 2:
        roots = list(range(1, a)) + list(range((3 * a + 1) // 2, 2 * a))
        modulus = 3 * a - 2
    else:
        roots = list(range(0, a)) + list(range(3 * a // 2, 2 * a))
        modulus = 3 * a - 1
    pattern = S_RING.one
    for r in roots:
        pattern *= S1 - r
    return pattern, modulus


def _eval_half(q: PolyElement, c: int):
    half = QQ(c, 2)
    return sum((QQ(int(v)) * half**m for (m,), v in q.items()), QQ(0))


def check_pattern(sp: PolyElement, a: int) -> Tuple[bool, int, Optional[int]]:
    """
    (pattern_ok, c(a), scaled constant). The pattern asks for every
    P-coefficient but the P-free one to vanish at S = c(a)/2 and for the
    P-free term to be a scalar multiple of the expected product.
    """
    pattern, modulus = constant_term_pattern(a)
    coeffs = p_coefficients(sp)
    free = coeffs.get(0, S_RING.zero)

    divisible = all(_eval_half(q, modulus) == 0 for j, q in coeffs.items() if j > 0)
    proportional = bool(free) and free * pattern.LC == pattern * free.LC
    if not free:
        return False, modulus, None

    deg = free.degree()
    scaled = _eval_half(free, modulus) * QQ(2) ** deg
    scaled_int = int(scaled.numerator) if scaled.denominator == 1 else None
    return divisible and proportional and scaled_int is not None, modulus, scaled_int


def _integer_roots(expr, var) -> Optional[List[int]]:
    """Integer zeros of a univariate integer polynomial; None if it is identically zero."""
    poly = Poly(expr, var, domain="ZZ")
    if poly.is_zero:
        return None
    _, factors = poly.factor_list()
    roots = set()
    for f, _mult in factors:
        if f.degree() == 1:
            b, c = (int(v) for v in f.all_coeffs())
            if c % b == 0:
                roots.add(-c // b)
    return sorted(roots)


def _pair_from_sp(s: int, p: int) -> Optional[Tuple[int, int]]:
    disc = s * s - 4 * p
    if disc < 0:
        return None
    r, exact = integer_nthroot(disc, 2)
    if not exact or (s - r) % 2:
        return None
    return (s - int(r)) // 2, (s + int(r)) // 2


# ==========================================
# Direct evaluation and classification
# ==========================================

def direct_coefficient(a: int, a1: int, a2: int) -> int:
    """The borderline coefficient for concrete exponents, from exact expansion."""
    a3 = 2 * (a1 + a2) - 3 * a
    if a3 < 0:
        raise ValueError(f"a3 = 2(a1 + a2) - 3a is negative for ({a1}, {a2}, a={a}).")
    t = a1 + a2 - a + 1
    form = tau(a, a1, a2).bivariate() * expand_binomial_power(a3)
    if a1 >= a:
        return coeff_of(form, t - 1, t - 1)
    return coeff_of(form, t + a1 - a - 1, t - 1)


def classify_triple(a1: int, a2: int, a3: int) -> str:
    b = tuple(sorted((a1, a2, a3)))
    if b in ROGUE_TRIPLES:
        return "rogue"
    if sum(b) % 2 and (b[0] == b[1] or b[1] == b[2]):
        return "family"
    return "new"


# ==========================================
# Integer search
# ==========================================

def _accept(a: int, a1: int, a2: int, regime_fixed: Optional[int]) -> Optional[Triple]:
    a3 = 2 * (a1 + a2) - 3 * a
    if not 0 < a1 <= a2 <= a3:
        return None
    if regime_fixed is None and a1 < a:
        return None
    if regime_fixed is not None and a1 != regime_fixed:
        return None
    if a > a2 + 1:
        return None
    if direct_coefficient(a, a1, a2) != 0:
        logging.warning(f"Candidate ({a1},{a2},{a3}) for a={a} fails the direct check; dropped")
        return None
    return a1, a2, a3


def _scan_symmetric(a: int, max_S: int) -> Tuple[RegimeScan, SymPoly]:
    f = build_F(a)
    sp = to_sym(f)
    scan = RegimeScan(fixed_a1=None)

    ok, modulus, scaled = check_pattern(sp, a)
    scan.pattern_ok = ok
    scan.scaled_constant = scaled
    if ok and scaled != 0:
        cands = set()
        for d in divisors(abs(scaled)):
            for delta_ in (d, -d):
                if (modulus + delta_) % 2 == 0 and (modulus + delta_) // 2 >= 2:
                    cands.add((modulus + delta_) // 2)
        scan.candidates = sorted(cands)
    else:
        reason = "scaled constant term is zero" if ok else "constant-term pattern fails"
        logging.warning(f"No divisor bound for a={a} ({reason}); scanning S up to {max_S}")
        scan.fallback = True
        scan.candidates = list(range(2, max_S + 1))
    scan.viable = [s for s in scan.candidates if 2 * s - 3 * a >= 1]

    p_sym = SP_RING.symbols[1]
    coeffs = p_coefficients(sp)
    for s in scan.viable:
        expr = sum(int(q(s)) * p_sym**j for j, q in coeffs.items())
        roots = _integer_roots(expr, p_sym)
        if roots is None:
            roots = list(range(1, s * s // 4 + 1))
        for p in roots:
            pair = _pair_from_sp(s, p)
            if pair is None:
                continue
            found = _accept(a, pair[0], pair[1], None)
            if found:
                scan.triples.append(found)
    scan.triples.sort()
    return scan, f


def _scan_fixed(a: int, c: int, max_S: int) -> RegimeScan:
    f = build_F(a, c)
    scan = RegimeScan(fixed_a1=c)
    a2_sym = SYM_RING.symbols[1]
    roots = _integer_roots(f.poly.as_expr(), a2_sym)
    if roots is None:
        logging.warning(f"Fixed regime a1={c}, a={a} vanishes identically; scanning a2 directly")
        scan.fallback = True
        roots = list(range(c, max_S - c + 1))
    scan.candidates = sorted(r for r in roots if r >= 1)
    scan.viable = [r for r in scan.candidates if r >= c and 2 * (c + r) - 3 * a >= 1]
    for a2 in scan.viable:
        found = _accept(a, c, a2, c)
        if found:
            scan.triples.append(found)
    scan.triples.sort()
    return scan


def solve_integer_cases(a: int, max_S: int = _DEFAULT_MAX_S) -> ScanResult:
    if a < 1:
        raise ValueError(f"a must be positive, got {a}.")
    logging.info(f"Conjecture scan for a={a}, max S={max_S}")
    result = ScanResult(a=a, max_S=max_S)

    symmetric, f = _scan_symmetric(a, max_S)
    result.regimes.append(symmetric)
    for c in range(a - 1, 0, -1):
        result.regimes.append(_scan_fixed(a, c, max_S))

    if f.antisymmetric:
        members = []
        for c in range(a, max_S // 2 + 1):
            found = _accept(a, c, c, None)
            if found:
                members.append(found)
        result.families.append(Family("a1=a2", members))
    return result
