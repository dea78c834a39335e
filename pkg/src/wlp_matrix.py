"""
WLP for level monomial almost complete intersections
    I = (x^(t+a1), y^(t+a2), z^(t+a3), x^a1 y^a2 z^a3)
decided by the vanishing of one (a1 + a2) x (a1 + a2) integer determinant.

The matrix is the linear system H1 F1 + H2 F2 = C (x + y)^t taken modulo
x^a1 y^a2, where F1, F2 generate (x^(t+a1), y^(t+a2)) : (x + y)^a3.
"""
import logging
import os
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from src.colon import ColonParams, colon_generators
from src.exact_arith import (
    BivarPoly,
    InterpolationError,
    binom,
    coeff_of,
    expand_binomial_power,
    from_terms,
    reduce_mod_monomials,
    total_degree,
    unipoly_interpolate,
)
from src.oracle import nullspace_exact
from src.parallel_helper import Progress, ordered_map

_DEFAULT_HOLDOUT = "3"

# Quadruples outside the conjectured family where WLP is known to fail.
ROGUE_CASES = ((2, 9, 13, 9), (3, 7, 14, 9))


class HeldOutCheckError(InterpolationError):
    """The determinant polynomial disagrees with a held-out determinant."""


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def bit(self) -> int:
        return 0 if self is Parity.EVEN else 1


def get_holdout() -> int:
    return max(1, int(os.environ.get("LEFSCHETZ_HOLDOUT", _DEFAULT_HOLDOUT)))


@dataclass(frozen=True)
class AciCase:
    a1: int
    a2: int
    a3: int
    t: int
    swapped: bool = False

    def __post_init__(self):
        if min(self.a1, self.a2, self.a3) < 1:
            raise ValueError(f"Exponents must be positive, got ({self.a1}, {self.a2}, {self.a3}).")
        if self.a1 > self.a2:
            raise ValueError("Expected a1 <= a2; build the case with AciCase.normalized.")
        if self.s % 3:
            raise ValueError(f"a1 + a2 + a3 = {self.s} is not divisible by 3.")
        if self.a3 > 2 * (self.a1 + self.a2):
            raise ValueError(f"a3 = {self.a3} exceeds 2(a1 + a2) = {2 * (self.a1 + self.a2)}.")
        if 3 * self.t < self.s:
            raise ValueError(f"t = {self.t} is below s/3 = {self.s // 3}.")

    @classmethod
    def normalized(cls, a1: int, a2: int, a3: int, t: int) -> "AciCase":
        """Sorts (a1, a2); the ideal only changes by renaming x and y."""
        if a1 > a2:
            logging.info(f"Swapping a1={a1} and a2={a2}")
            return cls(a2, a1, a3, t, swapped=True)
        return cls(a1, a2, a3, t)

    @property
    def s(self) -> int:
        return self.a1 + self.a2 + self.a3

    @property
    def a(self) -> int:
        return (2 * (self.a1 + self.a2) - self.a3) // 3

    @property
    def matrix_ready(self) -> bool:
        """a2 <= 2(a1 + a3): otherwise the second generator has no room in degree t + a - 1."""
        return self.a2 <= 2 * (self.a1 + self.a3)

    @property
    def degrees(self) -> Tuple[int, int, int]:
        return self.t + self.a1, self.t + self.a2, self.t + self.a3

    @property
    def key(self) -> Tuple[int, int, int, int]:
        return self.a1, self.a2, self.a3, self.t


@dataclass(frozen=True)
class WlpMatrix:
    case: AciCase
    rows: Tuple[Tuple[int, int], ...]
    widths: Tuple[int, int, int]
    entries: Tuple[Tuple[int, ...], ...]
    f1: BivarPoly
    f2: BivarPoly

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, row: int, col: int) -> int:
        """1-based access, the way the blocks are printed."""
        return self.entries[row - 1][col - 1]

    def block(self, index: int) -> List[List[int]]:
        """Columns of block 1 (H1), 2 (H2) or 3 (C), as a row-major list."""
        start = sum(self.widths[: index - 1])
        stop = start + self.widths[index - 1]
        return [list(r[start:stop]) for r in self.entries]


@dataclass(frozen=True)
class KernelRelation:
    h1: BivarPoly
    h2: BivarPoly
    c: BivarPoly
    matrix: WlpMatrix

    def residual(self) -> BivarPoly:
        """H1 F1 + H2 F2 - C (x + y)^t with multiples of x^a1 y^a2 removed."""
        m = self.matrix
        lhs = self.h1 * m.f1 + self.h2 * m.f2 - self.c * expand_binomial_power(m.case.t)
        return reduce_mod_monomials(lhs, [(m.case.a1, m.case.a2)])


@dataclass(frozen=True)
class DeterminantPolynomial:
    a1: int
    a2: int
    a3: int
    parity: Parity
    poly: object
    degree_bound: int
    samples: Tuple[Tuple[int, int], ...]
    integral: bool
    verified: bool

    @property
    def degree(self) -> int:
        return self.poly.degree() if self.poly else -1

    def __call__(self, t: int):
        return self.poly(int(t))


# ==========================================
# Matrix construction
# ==========================================

def _block_order(f: BivarPoly, g: BivarPoly) -> Tuple[BivarPoly, BivarPoly]:
    # ascending degree; on a tie the y-divisible generator takes the H1 block
    def key(p):
        y_div = all(m[1] >= 1 for m in p.keys())
        return total_degree(p), 0 if y_div else 1

    return (f, g) if key(f) <= key(g) else (g, f)


def row_monomials(case: AciCase) -> List[Tuple[int, int]]:
    e = case.t + case.a - 1
    top = [(e - r, r) for r in range(case.a2)]
    bottom = [(c, e - c) for c in range(case.a1 - 1, -1, -1)]
    return top + bottom


def build_wlp_matrix(case: AciCase) -> WlpMatrix:
    a = case.a
    if a < 1:
        raise ValueError(f"Matrix mode needs a3 < 2(a1 + a2); got a = {a}.")
    if not case.matrix_ready:
        raise ValueError(
            f"Matrix mode needs a2 <= 2(a1 + a3); got a2 = {case.a2} > {2 * (case.a1 + case.a3)} for {case.key}."
        )
    d1, d2, _ = case.degrees
    gens = colon_generators(ColonParams(d1, d2, case.a3))
    f1, f2 = _block_order(gens.q1, gens.q2)

    e = case.t + a - 1
    rows = row_monomials(case)
    if len(set(rows)) != len(rows):
        raise ValueError(f"Row monomials collide for {case.key}; t is too small.")

    w1 = max(0, e - total_degree(f1) + 1)
    w2 = max(0, e - total_degree(f2) + 1)
    if w1 + w2 + a != case.a1 + case.a2:
        logging.error(f"Block widths {(w1, w2, a)} do not fill {case.a1 + case.a2} columns for {case.key}")
        raise RuntimeError(f"Inconsistent block widths for {case.key}.")

    entries = []
    for p, q in rows:
        row = [coeff_of(f1, p - (w1 - 1 - j), q - j) for j in range(w1)]
        row += [coeff_of(f2, p - (w2 - 1 - j), q - j) for j in range(w2)]
        for j in range(a):
            u, v = p - (a - 1 - j), q - j
            row.append(binom(case.t, v) if u >= 0 and v >= 0 else 0)
        entries.append(tuple(row))

    return WlpMatrix(case, tuple(rows), (w1, w2, a), tuple(entries), f1, f2)


def det_exact(m: Union[WlpMatrix, Sequence[Sequence[int]]]) -> int:
    """Exact determinant (fraction-free elimination over ZZ)."""
    rows = m.entries if isinstance(m, WlpMatrix) else m
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("Determinant needs a square matrix.")
    if n == 0:
        return 1
    dm = DomainMatrix([[ZZ(int(v)) for v in r] for r in rows], (n, n), ZZ)
    return int(dm.det())


def wlp_by_determinant(case: AciCase) -> bool:
    """True when WLP holds."""
    if case.a == 0:
        return True
    return det_exact(build_wlp_matrix(case)) != 0


def relation_from_kernel(case: AciCase) -> KernelRelation:
    m = build_wlp_matrix(case)
    kernel = nullspace_exact(m.entries, m.size)
    if not kernel:
        raise ValueError(f"Determinant does not vanish for {case.key}; no relation exists.")
    vec = kernel[0]
    w1, w2, a = m.widths
    h1 = from_terms((w1 - 1 - j, j, vec[j]) for j in range(w1))
    h2 = from_terms((w2 - 1 - j, j, vec[w1 + j]) for j in range(w2))
    c = from_terms((a - 1 - j, j, -vec[w1 + w2 + j]) for j in range(a))
    return KernelRelation(h1, h2, c, m)


# ==========================================
# Determinant as a polynomial in t
# ==========================================

def degree_bound(a1: int, a2: int, a3: int) -> int:
    a1, a2 = sorted((a1, a2))
    return (a1 + a2) * (-(-(a2 - a1 + a3) // 2) + max(a1, a2) + 1)


def _det_at(key: Tuple[int, int, int, int]) -> int:
    return det_exact(build_wlp_matrix(AciCase(*key)))


def determinant_polynomial(
    a1: int,
    a2: int,
    a3: int,
    parity: Union[Parity, str],
    holdout: Optional[int] = None,
    jobs: Optional[int] = None,
    progress: Optional[Progress] = None,
) -> DeterminantPolynomial:
    parity = Parity(parity)
    a1, a2 = sorted((a1, a2))
    s = a1 + a2 + a3
    if s % 3:
        raise ValueError(f"a1 + a2 + a3 = {s} is not divisible by 3.")
    if a3 >= 2 * (a1 + a2):
        raise ValueError("determinant_polynomial needs a3 < 2(a1 + a2).")
    if a2 > 2 * (a1 + a3):
        raise ValueError(f"determinant_polynomial needs a2 <= 2(a1 + a3); got a2 = {a2}.")
    holdout = get_holdout() if holdout is None else max(1, holdout)

    t0 = s // 3 if (s // 3) % 2 == parity.bit else s // 3 + 1
    bound = degree_bound(a1, a2, a3)
    ts = [t0 + 2 * i for i in range(bound + 1 + holdout)]

    logging.info(f"Sampling {len(ts)} determinants for ({a1},{a2},{a3}), {parity.value} t from {t0}")
    dets = ordered_map(_det_at, [(a1, a2, a3, t) for t in ts], jobs, progress)
    samples = list(zip(ts, dets))

    try:
        poly, integral = unipoly_interpolate(samples[: bound + 1], holdout=samples[bound + 1 :])
    except InterpolationError as e:
        logging.error(f"Held-out check failed for ({a1},{a2},{a3}) {parity.value}", exc_info=True)
        raise HeldOutCheckError(str(e)) from e

    return DeterminantPolynomial(a1, a2, a3, parity, poly, bound, tuple(samples), integral, True)


def integer_root_scan(poly, lo: int, hi: int, parity: Union[Parity, str, None] = None) -> List[int]:
    if lo > hi:
        raise ValueError(f"Empty scan range [{lo}, {hi}].")
    bit = None if parity is None else Parity(parity).bit
    return [t for t in range(lo, hi + 1) if (bit is None or t % 2 == bit) and poly(t) == 0]


# ==========================================
# Conjectured failures and test grids
# ==========================================

def conjecture_predicts_failure(a1: int, a2: int, a3: int, t: int) -> bool:
    b1, b2, b3 = sorted((a1, a2, a3))
    if (b1, b2, b3, t) in ROGUE_CASES:
        return True
    return t % 2 == 0 and (b1 + b2 + b3) % 2 == 1 and (b1 == b2 or b2 == b3)


def admissible_cases(s_max: int, t_span: int) -> List[Tuple[int, int, int, int]]:
    """(a1, a2, a3, t) with 0 < a1 <= a2 <= a3 <= 2(a1 + a2), 3 | s, s/3 <= t <= s/3 + t_span."""
    out = []
    for s in range(3, s_max + 1, 3):
        for a1 in range(1, s // 3 + 1):
            for a2 in range(a1, (s - a1) // 2 + 1):
                a3 = s - a1 - a2
                if a3 < a2 or a3 > 2 * (a1 + a2):
                    continue
                for t in range(s // 3, s // 3 + t_span + 1):
                    out.append((a1, a2, a3, t))
    return out
