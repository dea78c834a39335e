import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import dotenv

from src.colon import ColonParams, Regime, colon_generators, colon_generators_any_order
from src.conjecture import build_F, get_a_max, solve_integer_cases
from src.exact_arith import InterpolationError, expand_binomial_power
from src.oracle import (
    MonomialIdeal3,
    OracleMismatchError,
    brute_colon2,
    first_kernel_degree,
    hilbert_function3,
    hilbert_function_ci2,
    ideal_equal_graded,
    ideal_membership2,
    injectivity_failure_degree,
    socle_degree_bound,
    wlp_direct,
)
from src.parallel_helper import Progress, get_default_jobs, ordered_map
from src.serializers import (
    colon_report,
    colon_text,
    det_poly_report,
    dumps,
    scan_report,
    scan_text,
    sym_poly_json,
    wlp_report,
)
from src.wlp_matrix import (
    AciCase,
    conjecture_predicts_failure,
    determinant_polynomial,
    integer_root_scan,
    wlp_by_determinant,
)

_DEFAULT_LOG_LEVEL = "WARNING"
_DEFAULT_MAX_S = 100

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INTERNAL = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _configure_logging(verbose: bool):
    level = "INFO" if verbose else os.environ.get("LEFSCHETZ_LOG_LEVEL", _DEFAULT_LOG_LEVEL).upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(message)s",
        force=True,
    )


def _emit(args, report: Dict[str, Any], text: str):
    print(dumps(report) if args.format == "json" else text)


def _progress(label: str) -> Progress:
    """Reporter for long scans; writes to stderr whatever the log level."""

    def report(done: int, total: int):
        step = max(1, total // 10)
        if done == total or done % step == 0:
            print(f"{label}: {done}/{total}", file=sys.stderr, flush=True)

    return report


# ==========================================
#  1. Colon ideals
# ==========================================
def cmd_colon_gens(args) -> int:
    logging.info(f"colon-gens: d1={args.d1}, d2={args.d2}, a={args.a}")
    gens = colon_generators_any_order(args.d1, args.d2, args.a)
    report = colon_report(gens)
    _emit(args, report, colon_text(report, gens))
    return EXIT_OK if report["degree_law_ok"] else EXIT_MISMATCH


def _verify_case(key: Tuple[int, int, int]) -> Dict[str, Any]:
    d1, d2, a = key
    gens = colon_generators(ColonParams(d1, d2, a))
    closed = [gens.q1] if gens.regime == Regime.UNIT else [gens.q1, gens.q2]
    brute = brute_colon2(d1, d2, a)

    member_ok = all(ideal_membership2(expand_binomial_power(a) * q, d1, d2) for q in closed)
    equal_ok = ideal_equal_graded(closed, brute, d1 + d2)
    if gens.regime == Regime.UNIT:
        inj_ok = True
    else:
        inj_ok = first_kernel_degree(d1, d2, a) == injectivity_failure_degree(d1, d2, a)
    return {
        "case": [d1, d2, a],
        "regime": gens.regime.value,
        "membership": member_ok,
        "ideal_equal": equal_ok,
        "injectivity_degree_ok": inj_ok,
        "pass": member_ok and equal_ok and inj_ok,
    }


def verify_grid(d1_max: int, d2_max: int) -> List[Tuple[int, int, int]]:
    if d1_max < 2 or d2_max < 2:
        raise ValueError("Grid bounds must be at least 2.")
    return [
        (d1, d2, a)
        for d1 in range(2, d1_max + 1)
        for d2 in range(d1, d2_max + 1)
        for a in range(1, d1 + d2 - 1)
    ]


def cmd_verify(args) -> int:
    cases = verify_grid(args.d1_max, args.d2_max)
    logging.info(f"verify: {len(cases)} cases with {args.jobs} job(s)")
    results = ordered_map(_verify_case, cases, args.jobs, _progress("verify"))

    failures = [r for r in results if not r["pass"]]
    report = {"cases": results, "total": len(results), "failures": len(failures), "all_pass": not failures}
    text = "\n".join(
        f"({r['case'][0]},{r['case'][1]},{r['case'][2]}) {r['regime']}: {'pass' if r['pass'] else 'FAIL'}"
        for r in results
    )
    _emit(args, report, text)
    if failures:
        raise OracleMismatchError(*failures[0]["case"], detail=str(failures[0]))
    return EXIT_OK


# ==========================================
#  2. WLP for level almost complete intersections
# ==========================================
def _wlp_verdict(job: Tuple[str, Tuple[int, int, int, int]]):
    method, key = job
    if method == "det":
        return wlp_by_determinant(AciCase(*key))
    return wlp_direct(MonomialIdeal3.level_aci(*key))


def cmd_wlp(args) -> int:
    case = AciCase.normalized(args.a1, args.a2, args.a3, args.t)
    methods = ["det", "direct"] if args.method == "both" else [args.method]
    outcomes = dict(zip(methods, ordered_map(_wlp_verdict, [(m, case.key) for m in methods], args.jobs)))
    direct = outcomes.get("direct")
    verdicts = {m: (v.holds if m == "direct" else v) for m, v in outcomes.items()}

    predicted = conjecture_predicts_failure(case.a1, case.a2, case.a3, case.t)
    report = wlp_report(case.key, verdicts, predicted, direct)
    lines = [f"(a1,a2,a3,t) = {case.key}"]
    lines += [f"{m}: {v}" for m, v in report["verdicts"].items()]
    if args.method == "both":
        lines.append("agree" if report["agree"] else "DISAGREE")
    lines.append(f"conjecture predicts failure: {predicted}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report["agree"] else EXIT_MISMATCH


def cmd_det_poly(args) -> int:
    label = f"det-poly ({args.a1},{args.a2},{args.a3}) {args.parity}"
    dp = determinant_polynomial(args.a1, args.a2, args.a3, args.parity, jobs=args.jobs, progress=_progress(label))
    roots = integer_root_scan(dp.poly, args.root_lo, args.root_hi, dp.parity)
    report = det_poly_report(dp, roots)
    text = "\n".join(
        [
            f"({dp.a1},{dp.a2},{dp.a3}) {dp.parity.value} t: degree {report['degree']} (bound {dp.degree_bound})",
            f"held-out check: {'passed' if dp.verified else 'failed'}",
            f"integer roots in [{args.root_lo}, {args.root_hi}]: {roots}",
        ]
    )
    _emit(args, report, text)
    return EXIT_OK


# ==========================================
#  3. Conjecture scan
# ==========================================
def _scan_one(job: Tuple[int, int]) -> Dict[str, Any]:
    a, max_s = job
    report = scan_report(solve_integer_cases(a, max_s))
    report["F"] = sym_poly_json(build_F(a))
    return report


def cmd_conjecture_scan(args) -> int:
    a_max = get_a_max()
    values = [args.a] if args.a is not None else list(range(1, a_max + 1))
    if any(a < 1 or a > a_max for a in values):
        raise ValueError(f"--a must lie in 1..{a_max} (LEFSCHETZ_A_MAX).")

    tasks = [(a, args.max_s) for a in values]
    reports = ordered_map(_scan_one, tasks, args.jobs, _progress("conjecture-scan"))
    texts = [scan_text(report) for report in reports]
    out = reports[0] if len(reports) == 1 else {"scans": reports}
    _emit(args, out, "\n".join(texts))
    return EXIT_OK


# ==========================================
#  4. Hilbert functions
# ==========================================
def _turning_degree(hf: List[int]) -> Optional[int]:
    for deg in range(len(hf) - 1):
        if hf[deg] > hf[deg + 1]:
            return deg
    return None


def cmd_hilbert(args) -> int:
    aci = [args.a1, args.a2, args.a3, args.t]
    if all(v is not None for v in aci):
        ideal = MonomialIdeal3.level_aci(*aci)
        top = socle_degree_bound(ideal)
        hf = [hilbert_function3(ideal, deg) for deg in range(top + 1)]
        label = f"level ACI (a1,a2,a3,t) = {tuple(aci)}"
    elif args.d1 is not None and args.d2 is not None:
        if min(args.d1, args.d2) < 1:
            raise ValueError("--d1 and --d2 must be positive.")
        top = args.d1 + args.d2 - 2
        hf = [hilbert_function_ci2(args.d1, args.d2, deg) for deg in range(top + 1)]
        label = f"(x^{args.d1}, y^{args.d2})"
    else:
        raise ValueError("Give either --d1 and --d2, or all of --a1 --a2 --a3 --t.")

    while len(hf) > 1 and hf[-1] == 0:
        hf.pop()
    report = {
        "hilbert_function": hf,
        "turning_degree": _turning_degree(hf),
        "symmetric": hf == hf[::-1],
    }
    text = f"{label}\nHF: {' '.join(map(str, hf))}\nturning degree: {report['turning_degree']}\nsymmetric: {report['symmetric']}"
    _emit(args, report, text)
    return EXIT_OK


# ==========================================
#  Entry point
# ==========================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verbose", action="store_true")

    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=None)

    parser = _Parser(prog="lefschetz", description="Colon ideals and the weak Lefschetz property.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colon-gens", parents=[common])
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(handler=cmd_colon_gens)

    p = sub.add_parser("verify", parents=[common, jobs])
    p.add_argument("--d1-max", type=int, default=6)
    p.add_argument("--d2-max", type=int, default=6)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("wlp", parents=[common, jobs])
    for name in ("--a1", "--a2", "--a3", "--t"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--method", choices=("det", "direct", "both"), default="det")
    p.set_defaults(handler=cmd_wlp)

    p = sub.add_parser("det-poly", parents=[common, jobs])
    for name in ("--a1", "--a2", "--a3"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--root-lo", type=int, default=1)
    p.add_argument("--root-hi", type=int, default=99)
    p.set_defaults(handler=cmd_det_poly)

    p = sub.add_parser("conjecture-scan", parents=[common, jobs])
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--max-s", type=int, default=_DEFAULT_MAX_S)
    p.set_defaults(handler=cmd_conjecture_scan)

    p = sub.add_parser("hilbert", parents=[common])
    for name in ("--d1", "--d2", "--a1", "--a2", "--a3", "--t"):
        p.add_argument(name, type=int, default=None)
    p.set_defaults(handler=cmd_hilbert)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    dotenv.load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)
    if hasattr(args, "jobs") and args.jobs is None:
        args.jobs = get_default_jobs()

    try:
        return args.handler(args)
    except ValueError as ve:
        logging.error(f"Invalid input: {ve}")
        print(f"error: {ve}", file=sys.stderr)
        return EXIT_USAGE
    except OracleMismatchError as me:
        logging.error(str(me))
        print(f"mismatch: {me}", file=sys.stderr)
        return EXIT_MISMATCH
    except InterpolationError as ie:
        logging.error(f"Internal check failed: {ie}")
        return EXIT_INTERNAL
    except Exception as e:
        logging.error(f"Internal Error: {e}", exc_info=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
