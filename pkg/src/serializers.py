import json
from typing import Any, Dict, List, Sequence

from sympy.polys.rings import PolyElement

from src.colon import ColonGens, Regime, expected_degrees
from src.conjecture import ScanResult, SymPoly, to_sym
from src.exact_arith import clear_denominators, total_degree
from src.oracle import WlpReport
from src.wlp_matrix import DeterminantPolynomial


def poly_to_json(p: PolyElement) -> List[List[int]]:
    """[[i, j, coeff], ...] sorted by descending exponent of the first variable."""
    return [[*m, int(c)] for m, c in sorted(p.items(), key=lambda mc: tuple(-e for e in mc[0]))]


def unipoly_to_json(p: PolyElement) -> List[List[int]]:
    return [[m[0], int(c)] for m, c in sorted(p.items(), key=lambda mc: -mc[0][0])]


def poly_to_text(p: PolyElement) -> str:
    return str(p.as_expr()) if p else "0"


def dumps(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


# ==========================================
# Reports
# ==========================================

def colon_report(gens: ColonGens) -> Dict[str, Any]:
    p = gens.params
    unit = gens.regime == Regime.UNIT
    degrees = [0, None] if unit else [total_degree(gens.q1), total_degree(gens.q2)]
    law_ok = True if unit else sum(degrees) == p.d1 + p.d2 - p.a
    d1, d2 = (p.d2, p.d1) if gens.swapped else (p.d1, p.d2)
    return {
        "d1": d1,
        "d2": d2,
        "a": p.a,
        "swapped": gens.swapped,
        "regime": gens.regime.value,
        "q1": poly_to_json(gens.q1),
        "q2": poly_to_json(gens.q2),
        "degrees": degrees,
        "degree_law_ok": law_ok and (unit or tuple(sorted(degrees)) == expected_degrees(p)),
    }


def colon_text(report: Dict[str, Any], gens: ColonGens) -> str:
    head = f"(x^{report['d1']}, y^{report['d2']}) : (x+y)^{report['a']}"
    if gens.regime == Regime.UNIT:
        return f"{head}\nregime: {report['regime']}\nunit ideal"
    lines = [
        head,
        f"regime: {report['regime']}",
        f"q1 = {poly_to_text(gens.q1)}",
        f"q2 = {poly_to_text(gens.q2)}",
        f"degrees: {report['degrees'][0]}, {report['degrees'][1]}",
        f"degree law: {'ok' if report['degree_law_ok'] else 'FAILED'}",
    ]
    return "\n".join(lines)


def wlp_report(case_key: Sequence[int], verdicts: Dict[str, bool], predicted: bool, direct: WlpReport = None) -> Dict[str, Any]:
    out = {
        "case": list(case_key),
        "verdicts": {k: ("holds" if v else "fails") for k, v in sorted(verdicts.items())},
        "agree": len(set(verdicts.values())) <= 1,
        "conjecture_predicts_failure": predicted,
    }
    if direct is not None:
        out["failing_degrees"] = direct.failing_degrees
    return out


def det_poly_report(dp: DeterminantPolynomial, roots: List[int]) -> Dict[str, Any]:
    cleared, scale = clear_denominators(dp.poly)
    return {
        "case": [dp.a1, dp.a2, dp.a3],
        "parity": dp.parity.value,
        "degree": dp.degree,
        "degree_bound": dp.degree_bound,
        "coefficients": unipoly_to_json(cleared),
        "denominator": scale,
        "integral": dp.integral,
        "roots": roots,
        "verified": dp.verified,
    }


def sym_poly_json(f: SymPoly) -> Dict[str, Any]:
    out = {
        "poly": poly_to_json(f.poly),
        "divided_factors": [poly_to_json(g) for g in f.divided],
    }
    if f.fixed_a1 is None:
        out["sp_form"] = poly_to_json(to_sym(f))
    return out


def scan_report(result: ScanResult) -> Dict[str, Any]:
    return {
        "a": result.a,
        "max_S": result.max_S,
        "regimes": [
            {
                "regime": r.label,
                "candidates": r.candidates,
                "viable": r.viable,
                "triples": [list(t) for t in r.triples],
                "pattern_ok": r.pattern_ok,
                "scaled_constant": r.scaled_constant,
                "fallback": r.fallback,
            }
            for r in result.regimes
        ],
        "families": [{"name": f.name, "members": [list(m) for m in f.members]} for f in result.families],
        "triples": [list(t) for t in result.triples],
    }


def scan_text(report: Dict[str, Any]) -> str:
    lines = [f"a = {report['a']}"]
    for r in report["regimes"]:
        status = "fallback scan" if r["fallback"] else f"pattern ok: {r['pattern_ok']}"
        triples = ", ".join(str(tuple(t)) for t in r["triples"]) or "none"
        lines.append(f"  {r['regime']}: {triples}  ({status})")
    for fam in report["families"]:
        shown = ", ".join(str(tuple(m)) for m in fam["members"][:4])
        lines.append(f"  family {fam['name']}: {shown}, ...")
    return "\n".join(lines)
