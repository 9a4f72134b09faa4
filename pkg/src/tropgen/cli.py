"""Command line driver.

Text output is a human summary (and the only place wall-clock times
appear); JSON output is the machine contract and is byte-identical across
runs with the same input, seed and flags.

Exit codes: 0 success / all checks passed, 1 a check failed, 2 parse or
usage error, 3 improper ideal (contains a unit), 4 persistent transform
disagreement, 5 fan budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .fans import (
    build_W,
    cone_to_jsonable,
    dumps_canonical,
    fan_to_jsonable,
    skeleton,
)
from .generic import (
    DisagreementError,
    check_lineality,
    check_skeleton_equality,
    check_symmetry,
    generic_membership_map,
)
from .groebner import krull_dimension, normal_form, reduced_gb
from .linalg import QQ
from .poly import (
    GRLEX,
    Ideal,
    ImproperIdealError,
    ParseError,
    Polynomial,
    parse_ideal_file,
)
from .special import (
    LinearIdealMatrix,
    NonGenericMatrixError,
    check_linear_theorem,
    check_principal_theorem,
    gauss_reduce_report,
    linear_groebner_cone,
    parse_matrix_file,
    right_block_nonzero,
)
from .verify import Corpus, VerifySession
from .weights import (
    BudgetExceededError,
    enumerate_groebner_fan,
    in_tropical_variety,
    initial_ideal_generators,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_IMPROPER = 3
EXIT_DISAGREE = 4
EXIT_BUDGET = 5


_GLOBAL_DEFAULTS = {"seed": 1, "trials": 3, "bound": 50, "grid": 3,
                    "json": False, "out": None}


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--trials", type=int, default=argparse.SUPPRESS)
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS)
    common.add_argument("--grid", type=int, default=argparse.SUPPRESS,
                        help="grid radius")
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS, help="emit canonical JSON")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write output to a file")

    p = argparse.ArgumentParser(
        prog="tropgen", parents=[common],
        description="exact tropical memberships, Groebner cones and "
                    "generic tropical varieties of graded ideals")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("dim", parents=[common],
                        help="Krull dimension of a graded ideal")
    sp.add_argument("ideal")

    sp = sub.add_parser("member", parents=[common],
                        help="is w in the tropical variety?")
    sp.add_argument("ideal")
    sp.add_argument("-w", "--weight", required=True,
                    help="comma-separated integer weight vector")

    sp = sub.add_parser("generic", parents=[common],
                        help="generic tropical variety campaign")
    sp.add_argument("ideal")

    sp = sub.add_parser("fan", parents=[common],
                        help="export a fan as canonical JSON")
    fan_sub = sp.add_subparsers(dest="fan_kind", required=True)
    wn = fan_sub.add_parser("wn", parents=[common],
                            help="the reference fan W(n)")
    wn.add_argument("--n", type=int, required=True)
    wn.add_argument("--skeleton", type=int, default=None)
    gf = fan_sub.add_parser("groebner", parents=[common],
                            help="Groebner fan of an ideal")
    gf.add_argument("ideal")

    sp = sub.add_parser("linear", parents=[common],
                        help="linear ideal closed-form checks")
    sp.add_argument("matrix", help="matrix file ('matrix: r n' header)")
    sp.add_argument("-w", "--weight", default=None,
                    help="emit the closed-form cone at this weight")

    sp = sub.add_parser("principal", parents=[common],
                        help="principal ideal closed-form checks")
    sp.add_argument("ideal")

    sp = sub.add_parser("verify-corpus", parents=[common],
                        help="run the acceptance criteria")
    sp.add_argument("corpus")
    sp.add_argument("--criteria", default=None,
                    help="comma-separated criterion numbers (default all)")
    return p


def _load_ideal(path) -> Ideal:
    try:
        with open(path) as fh:
            return parse_ideal_file(fh.read())
    except OSError as exc:
        raise ParseError(str(exc), 0)


def _parse_weight(text, n):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != n:
        raise ParseError(f"weight has {len(parts)} entries, ideal has {n} "
                         f"variables", 0)
    try:
        return tuple(int(s) for s in parts)
    except ValueError as exc:
        raise ParseError(f"bad weight entry: {exc}", 0)


def _emit(args, jsonable, text_lines):
    out = dumps_canonical(jsonable) if args.json else "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _base_report(args):
    return {"tool": "tropgen", "version": __version__, "seed": args.seed}


def cmd_dim(args) -> int:
    ideal = _load_ideal(args.ideal)
    d = krull_dimension(ideal)
    report = _base_report(args)
    report.update({"command": "dim", "n": ideal.n, "dim": d})
    _emit(args, report, [f"dim = {d}"])
    return EXIT_OK


def _monomial_certificate(ideal, w):
    """A monomial of in_w(I), for a weight outside the tropical variety."""
    gens = initial_ideal_generators(ideal, w)
    for g in gens:
        if len(g.terms) == 1:
            return g.terms[0][0]
    # some power of x1*..*xn lies in in_w(I); find the smallest
    gb = reduced_gb(Ideal.of(ideal.n, gens), GRLEX)
    for k in range(1, 32):
        mono = Polynomial(ideal.n, ((tuple([k] * ideal.n), QQ(1)),))
        if normal_form(mono, gb.elements, gb.heads, gb.order).is_zero:
            return tuple([k] * ideal.n)
    return None


def _format_monomial(e):
    parts = [f"x{i + 1}" + (f"^{k}" if k > 1 else "")
             for i, k in enumerate(e) if k]
    return "*".join(parts) if parts else "1"


def cmd_member(args) -> int:
    ideal = _load_ideal(args.ideal)
    w = _parse_weight(args.weight, ideal.n)
    inside = in_tropical_variety(ideal, w)
    report = _base_report(args)
    report.update({"command": "member", "weight": list(w), "member": inside})
    lines = [f"w = {w}: {'true' if inside else 'false'}"]
    if not inside:
        cert = _monomial_certificate(ideal, w)
        if cert is not None:
            report["certificate"] = list(cert)
            lines.append(f"certificate monomial: {_format_monomial(cert)}")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_generic(args) -> int:
    t0 = time.perf_counter()
    ideal = _load_ideal(args.ideal)
    m = krull_dimension(ideal)
    report = generic_membership_map(ideal, grid_radius=args.grid,
                                    trials=args.trials, bound=args.bound,
                                    seed=args.seed)
    skel_ok, mismatches = check_skeleton_equality(report, m)
    sym_ok, sym_counter = check_symmetry(report)
    lin_ok, lin_counter = check_lineality(report)
    empty_ok = (m > 0) or not any(report.membership.values())
    all_ok = skel_ok and sym_ok and lin_ok and empty_ok
    out = _base_report(args)
    out.update({
        "command": "generic",
        "dim": m,
        "report": report.to_jsonable(),
        "skeleton_equality": skel_ok,
        "symmetry": sym_ok,
        "lineality": lin_ok,
        "empty_iff_dim_zero": empty_ok,
        "all_passed": all_ok,
    })
    lines = [
        f"dim = {m}" + ("  (generic variety is empty)" if m == 0 else ""),
        f"skeleton equality with W_{ideal.n}^{m}: "
        f"{'PASS' if skel_ok else 'FAIL (%d mismatches)' % len(mismatches)}",
        f"symmetry: {'PASS' if sym_ok else f'FAIL at {sym_counter}'}",
        f"lineality: {'PASS' if lin_ok else f'FAIL at {lin_counter}'}",
        f"bounds used: {report.escalations}",
        f"wall-clock: {time.perf_counter() - t0:.2f}s",
    ]
    _emit(args, out, lines)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_fan(args) -> int:
    if args.fan_kind == "wn":
        fan = build_W(args.n)
        if args.skeleton is not None:
            fan = skeleton(fan, args.skeleton)
        label = f"W({args.n})" + (
            f" skeleton {args.skeleton}" if args.skeleton is not None else "")
    else:
        ideal = _load_ideal(args.ideal)
        fan = enumerate_groebner_fan(ideal)
        label = f"Groebner fan of {args.ideal}"
    jsonable = fan_to_jsonable(fan)
    jsonable.update(_base_report(args))
    jsonable["command"] = "fan"
    lines = [f"{label}: {len(fan.cones)} cones"]
    if not args.json:
        # the fan itself is only emitted as JSON
        lines.append("use --json for the cone data")
    _emit(args, jsonable, lines)
    return EXIT_OK


def cmd_linear(args) -> int:
    try:
        with open(args.matrix) as fh:
            A = parse_matrix_file(fh.read())
    except OSError as exc:
        raise ParseError(str(exc), 0)
    reduced, perm = gauss_reduce_report(A)
    report = _base_report(args)
    report.update({
        "command": "linear",
        "n": A.n,
        "rank": A.rank,
        "dim": A.n - A.rank,
        "reduced": [[str(x) for x in row] for row in reduced],
        "column_permutation": [p + 1 for p in perm],
        "right_block_nonzero": right_block_nonzero(reduced, A.n),
    })
    lines = [f"rank = {A.rank}, dim = {A.n - A.rank}"]
    if args.weight is not None:
        w = _parse_weight(args.weight, A.n)
        cone = linear_groebner_cone(reduced, A.n, w)
        report["cone"] = cone_to_jsonable(cone)
        lines.append(f"cone at {w}: {len(cone.equalities)} equalities, "
                     f"{len(cone.inequalities)} inequalities")
        _emit(args, report, lines)
        return EXIT_OK
    result = check_linear_theorem(A, trials=args.trials, seed=args.seed,
                                  bound=args.bound, radius=args.grid)
    report["checks"] = result.to_jsonable()
    report["all_passed"] = result.ok
    lines.append(f"closed-form checks: {'PASS' if result.ok else 'FAIL'}")
    _emit(args, report, lines)
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_principal(args) -> int:
    ideal = _load_ideal(args.ideal)
    if len(ideal.generators) != 1:
        raise ParseError("principal command needs a single generator", 0)
    result = check_principal_theorem(ideal.generators[0], trials=args.trials,
                                     seed=args.seed, bound=args.bound,
                                     radius=args.grid)
    report = _base_report(args)
    report.update({"command": "principal", "checks": result.to_jsonable(),
                   "all_passed": result.ok})
    _emit(args, report,
          [f"closed-form checks: {'PASS' if result.ok else 'FAIL'}"])
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_verify_corpus(args) -> int:
    t0 = time.perf_counter()
    corpus = Corpus(args.corpus)
    numbers = None
    if args.criteria:
        try:
            numbers = [int(s) for s in args.criteria.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad criteria list: {exc}", 0)
    session = VerifySession(corpus, seed=args.seed, trials=args.trials,
                            bound=args.bound, grid=args.grid)
    results = session.run(numbers)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"criterion {r.number:2d} {r.name:<32} {status}  "
                     f"({r.seconds:.1f}s)  {r.detail}")
    lines.append(f"wall-clock: {time.perf_counter() - t0:.2f}s")
    _emit(args, session.report_jsonable(results), lines)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "dim": cmd_dim,
    "member": cmd_member,
    "generic": cmd_generic,
    "fan": cmd_fan,
    "linear": cmd_linear,
    "principal": cmd_principal,
    "verify-corpus": cmd_verify_corpus,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ImproperIdealError, NonGenericMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IMPROPER
    except DisagreementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
