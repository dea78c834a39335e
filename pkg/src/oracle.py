"""
Brute-force ground truth by exact linear algebra.

Graded pieces of F[x, y]/(x^d1, y^d2) and of F[x, y, z]/I for a monomial
ideal I, the matrices of multiplication by (x + y)^a or x + y + z between
them, and the colon ideal and WLP verdict read off from ranks and kernels.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational, igcd, ilcm
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.exact_arith import BIVAR, BivarPoly, expand_binomial_power, from_terms


class OracleMismatchError(RuntimeError):
    """Closed-form and brute-force colon ideals disagree."""

    def __init__(self, d1: int, d2: int, a: int, detail: str = ""):
        self.d1, self.d2, self.a = d1, d2, a
        msg = f"Colon ideal mismatch at (d1, d2, a) = ({d1}, {d2}, {a})"
        super().__init__(f"{msg}: {detail}" if detail else msg)


Monomial3 = Tuple[int, int, int]


@dataclass(frozen=True)
class MonomialIdeal3:
    """(x^d1, y^d2, z^d3) plus an optional mixed generator x^a1 y^a2 z^a3."""

    d1: int
    d2: int
    d3: int
    mixed: Optional[Monomial3] = None

    def __post_init__(self):
        if min(self.d1, self.d2, self.d3) < 1:
            raise ValueError(
                f"Ideal is not Artinian: pure powers ({self.d1}, {self.d2}, {self.d3}) must be positive."
            )
        if self.mixed is not None:
            for e, d in zip(self.mixed, (self.d1, self.d2, self.d3)):
                if not 0 < e < d:
                    raise ValueError(
                        f"Mixed generator {self.mixed} is not minimal against ({self.d1}, {self.d2}, {self.d3})."
                    )

    @classmethod
    def level_aci(cls, a1: int, a2: int, a3: int, t: int) -> "MonomialIdeal3":
        """(x^(t+a1), y^(t+a2), z^(t+a3), x^a1 y^a2 z^a3)."""
        return cls(t + a1, t + a2, t + a3, (a1, a2, a3))

    @property
    def generators(self) -> List[Monomial3]:
        gens = [(self.d1, 0, 0), (0, self.d2, 0), (0, 0, self.d3)]
        if self.mixed is not None:
            gens.append(self.mixed)
        return gens

    def contains(self, m: Monomial3) -> bool:
        return any(all(e >= g for e, g in zip(m, gen)) for gen in self.generators)


@dataclass
class GradedMap:
    domain: List[tuple]
    codomain: List[tuple]
    matrix: DomainMatrix

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.codomain), len(self.domain)


@dataclass
class DegreeRank:
    degree: int
    dim_source: int
    dim_target: int
    rank: int

    @property
    def maximal(self) -> bool:
        return self.rank == min(self.dim_source, self.dim_target)


@dataclass
class WlpReport:
    holds: bool
    degrees: List[DegreeRank] = field(default_factory=list)

    @property
    def failing_degrees(self) -> List[int]:
        return [d.degree for d in self.degrees if not d.maximal]


# ==========================================
# Exact linear algebra
# ==========================================

def _matrix(rows: Sequence[Sequence[int]], ncols: int) -> DomainMatrix:
    sparse = {}
    for i, row in enumerate(rows):
        entries = {j: ZZ(int(v)) for j, v in enumerate(row) if v}
        if entries:
            sparse[i] = entries
    return DomainMatrix(sparse, (len(rows), ncols), ZZ)


def rank_exact(rows: Sequence[Sequence[int]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _matrix(rows, ncols).convert_to(QQ).rank()


def nullspace_exact(rows: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Integer basis of {v : M v = 0}, each vector primitive."""
    if ncols == 0:
        return []
    if not rows or all(not any(r) for r in rows):
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    basis = _matrix(rows, ncols).convert_to(QQ).nullspace()
    return [_primitive(vec) for vec in basis.to_Matrix().tolist()]


def _primitive(vec) -> List[int]:
    vals = [Rational(v) for v in vec]
    den = 1
    for v in vals:
        den = ilcm(den, v.q)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = igcd(g, v)
    g = g or 1
    return [v // g for v in ints]


# ==========================================
# Two variables
# ==========================================

def hilbert_function_ci2(d1: int, d2: int, deg: int) -> int:
    if deg < 0:
        return 0
    return max(0, min(d1 - 1, deg) - max(0, deg - d2 + 1) + 1)


def _basis2(d1: int, d2: int, deg: int) -> List[Tuple[int, int]]:
    # descending x-exponent
    return [(i, deg - i) for i in range(min(d1 - 1, deg), -1, -1) if deg - i < d2]


def _full_degree2(deg: int) -> List[Tuple[int, int]]:
    return [(i, deg - i) for i in range(deg, -1, -1)]


def _power_map_rows(
    source: List[Tuple[int, int]], target: List[Tuple[int, int]], a: int
) -> List[List[int]]:
    col = {m: j for j, m in enumerate(source)}
    power = expand_binomial_power(a)
    rows = []
    for ti, tj in target:
        row = [0] * len(source)
        for (i, j), c in power.items():
            m = (ti - i, tj - j)
            if m in col:
                row[col[m]] = int(c)
        rows.append(row)
    return rows


def multiplication_map2(d1: int, d2: int, a: int, deg: int) -> GradedMap:
    """Multiplication by (x + y)^a from the degree-deg piece to degree deg + a."""
    source, target = _basis2(d1, d2, deg), _basis2(d1, d2, deg + a)
    rows = _power_map_rows(source, target, a)
    return GradedMap(source, target, _matrix(rows, len(source)))


def rank_profile2(d1: int, d2: int, a: int) -> List[DegreeRank]:
    profile = []
    for deg in range(d1 + d2 - 1):
        source, target = _basis2(d1, d2, deg), _basis2(d1, d2, deg + a)
        r = rank_exact(_power_map_rows(source, target, a), len(source))
        profile.append(DegreeRank(deg, len(source), len(target), r))
    return profile


def injectivity_failure_degree(d1: int, d2: int, a: int) -> int:
    d1, d2 = sorted((d1, d2))
    k = d2 - d1
    if a <= k:
        return d2 - a
    return d2 - (a + k + 1) // 2


def ideal_membership2(p: BivarPoly, d1: int, d2: int) -> bool:
    return all(m[0] >= d1 or m[1] >= d2 for m in p.keys())


def colon_piece(d1: int, d2: int, a: int, deg: int) -> List[List[int]]:
    """
    Basis of the degree-deg part of (x^d1, y^d2) : (x + y)^a, as coefficient
    vectors over the monomials x^deg, x^(deg-1) y, ..., y^deg.
    """
    source = _full_degree2(deg)
    target = _basis2(d1, d2, deg + a)
    return nullspace_exact(_power_map_rows(source, target, a), len(source))


def _vector_to_poly(vec: Sequence[int], deg: int) -> BivarPoly:
    return from_terms((deg - j, j, c) for j, c in enumerate(vec) if c)


def _poly_to_vector(p: BivarPoly, deg: int) -> List[int]:
    return [int(p.get((deg - j, j), 0)) for j in range(deg + 1)]


def _shift_up(vectors: List[List[int]]) -> List[List[int]]:
    # x * v and y * v for every v of degree e - 1, as degree-e vectors
    out = []
    for v in vectors:
        out.append(list(v) + [0])
        out.append([0] + list(v))
    return out


def first_kernel_degree(d1: int, d2: int, a: int) -> Optional[int]:
    """Smallest degree where (x + y)^a kills something outside (x^d1, y^d2)."""
    for deg in range(d1 + d2 - 1):
        source, target = _basis2(d1, d2, deg), _basis2(d1, d2, deg + a)
        if source and rank_exact(_power_map_rows(source, target, a), len(source)) < len(source):
            return deg
    return None


def brute_colon2(d1: int, d2: int, a: int) -> List[BivarPoly]:
    """Minimal homogeneous generators of (x^d1, y^d2) : (x + y)^a up to degree d1 + d2."""
    gens: List[BivarPoly] = []
    previous: List[List[int]] = []
    for deg in range(d1 + d2 + 1):
        piece = colon_piece(d1, d2, a, deg)
        below = _shift_up(previous) if previous else []
        r_below = rank_exact(below, deg + 1)
        if len(piece) > r_below:
            chosen = list(below)
            r = r_below
            for vec in piece:
                r_new = rank_exact(chosen + [vec], deg + 1)
                if r_new > r:
                    chosen.append(vec)
                    gens.append(_vector_to_poly(vec, deg))
                    r = r_new
                    if r == len(piece):
                        break
        previous = piece
        if len(piece) == deg + 1:
            # everything from here on is in the ideal
            break
    logging.debug(f"brute_colon2({d1},{d2},{a}): {len(gens)} generators")
    return gens


def _graded_rows(gens: Sequence[BivarPoly], deg: int) -> List[List[int]]:
    rows = []
    for g in gens:
        if not g:
            continue
        gd = max(sum(m) for m in g.keys())
        if gd > deg:
            continue
        for i in range(deg - gd + 1):
            shifted = g * BIVAR.from_dict({(i, deg - gd - i): 1})
            rows.append(_poly_to_vector(shifted, deg))
    return rows


def ideal_equal_graded(
    gens_a: Sequence[BivarPoly], gens_b: Sequence[BivarPoly], max_deg: int
) -> bool:
    """Mutual containment of two homogeneous ideals of F[x, y], degree by degree."""
    for deg in range(max_deg + 1):
        rows_a, rows_b = _graded_rows(gens_a, deg), _graded_rows(gens_b, deg)
        ra, rb = rank_exact(rows_a, deg + 1), rank_exact(rows_b, deg + 1)
        if ra != rb or rank_exact(rows_a + rows_b, deg + 1) != ra:
            logging.debug(f"Ideals differ in degree {deg}: ranks {ra}, {rb}")
            return False
    return True


# ==========================================
# Three variables
# ==========================================

def socle_degree_bound(ideal: MonomialIdeal3) -> int:
    return ideal.d1 + ideal.d2 + ideal.d3 - 3


def graded_basis3(ideal: MonomialIdeal3, deg: int) -> List[Monomial3]:
    if deg < 0:
        return []
    basis = []
    for i in range(min(deg, ideal.d1 - 1), -1, -1):
        for j in range(min(deg - i, ideal.d2 - 1), -1, -1):
            m = (i, j, deg - i - j)
            if not ideal.contains(m):
                basis.append(m)
    return basis


def hilbert_function3(ideal: MonomialIdeal3, deg: int) -> int:
    return len(graded_basis3(ideal, deg))


def multiplication_map3(ideal: MonomialIdeal3, deg: int) -> GradedMap:
    """Multiplication by x + y + z from the degree-deg piece of F[x, y, z]/I to the next."""
    source, target = graded_basis3(ideal, deg), graded_basis3(ideal, deg + 1)
    row_of = {m: i for i, m in enumerate(target)}
    sparse: Dict[int, Dict[int, object]] = {}
    for j, (a, b, c) in enumerate(source):
        for m in ((a + 1, b, c), (a, b + 1, c), (a, b, c + 1)):
            i = row_of.get(m)
            if i is not None:
                sparse.setdefault(i, {})[j] = ZZ(1)
    return GradedMap(source, target, DomainMatrix(sparse, (len(target), len(source)), ZZ))


def wlp_direct(ideal: MonomialIdeal3) -> WlpReport:
    """
    Decides WLP for F[x, y, z]/I with L = x + y + z.

    Once the map is surjective in some degree it stays surjective, so the
    scan stops there.
    """
    report = WlpReport(holds=True)
    top = socle_degree_bound(ideal)
    for deg in range(top + 1):
        m = multiplication_map3(ideal, deg)
        n_target, n_source = m.shape
        if n_source == 0 or n_target == 0:
            report.degrees.append(DegreeRank(deg, n_source, n_target, 0))
            if n_target == 0:
                break
            continue
        r = m.matrix.convert_to(QQ).rank()
        entry = DegreeRank(deg, n_source, n_target, r)
        report.degrees.append(entry)
        if not entry.maximal:
            report.holds = False
        elif r == n_target:
            break
    logging.debug(f"wlp_direct {ideal}: holds={report.holds}")
    return report
