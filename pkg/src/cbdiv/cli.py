"""Command-line interface: ``cbdiv <subcommand> ...``.

Exit codes: 0 success or verified, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import jsonio
from .certificate import DEFAULT_LP_CAP, LabeledTuple, decide_effectivity, lp_feasible, verify_proposition
from .divisor import conformal_blocks_divisor, scale_check
from .errors import DomainError
from .fusion import fuse, rank, rank_level_one_closed_form, verlinde_rank_numeric
from .lie import format_weight, parse_weights, tables_for
from .suites import certify_instance, theorem1_instances

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _request(args):
    tables = tables_for(args.family, args.rank)
    weights = parse_weights(args.weights, tables)
    return tables, args.level, weights


def _add_algebra(p, level=True):
    p.add_argument("family", choices=list("ABCDabcd"), help="Lie algebra family")
    p.add_argument("rank", type=int, help="rank r")
    if level:
        p.add_argument("--level", type=int, default=1)
    p.add_argument("--weights", required=True,
                   help="comma-separated weights: w0, wi, k*wi or [a1,...,ar]")
    p.add_argument("--format", choices=["text", "json"], default="text")


def _fmt_divisor(D) -> list[str]:
    lines = ["psi: " + " ".join(str(a) for a in D.psi)]
    for p, c in D.boundary.items():
        lines.append(f"D{list(p.side)}: {c}")
    if not D.boundary:
        lines.append("boundary: 0")
    return lines


def cmd_rank(args, out):
    tables, level, weights = _request(args)
    if args.method == "engine":
        value = rank(tables, level, weights)
    elif args.method == "closed":
        if level != 1:
            raise DomainError("the closed form is only available at level 1")
        value = rank_level_one_closed_form(tables, weights)
    else:
        value = verlinde_rank_numeric(tables, level, weights)
    out.append(jsonio.emit_json({"rank": value}) if args.format == "json" else str(value))
    return EXIT_OK


def cmd_fusion(args, out):
    tables, level, weights = _request(args)
    vec = fuse(tables, level, weights)
    if args.format == "json":
        out.append(jsonio.emit_json(
            [{"weight": list(w.labels), "mult": m} for w, m in sorted(vec.items())]))
    else:
        out.extend(f"{format_weight(w)}: {m}" for w, m in sorted(vec.items()))
    return EXIT_OK


def cmd_divisor(args, out):
    tables, level, weights = _request(args)
    D = conformal_blocks_divisor(tables, level, weights)
    if args.format == "json":
        out.append(jsonio.emit_json(D))
    else:
        out.extend(_fmt_divisor(D))
    return EXIT_OK


def cmd_certify(args, out):
    tables, level, weights = _request(args)
    res = decide_effectivity(tables, level, weights, lp_cap=args.lp_cap)
    if args.format == "json":
        out.append(jsonio.emit_json({
            "status": res.status,
            "method": res.method,
            "divisor": jsonio.divisor_to_obj(res.divisor),
            "report": jsonio.report_to_obj(res.report) if res.report else None,
            "witness": jsonio.weighting_to_obj(res.witness) if res.witness else None,
        }))
    else:
        out.append(f"status: {res.status} (method: {res.method})")
        if res.report:
            r = res.report
            out.append(f"vertex residuals: {' '.join(str(x) for x in r.vertex_residuals)}")
            out.append(f"min cut slack: {r.min_slack} at {list(r.argmin.side)}")
            for p, s in r.failing:
                out.append(f"failing {list(p.side)}: {s}")
    return EXIT_OK if res.status == "effective" else EXIT_FAILED


def cmd_lp_search(args, out):
    tables, level, weights = _request(args)
    D = conformal_blocks_divisor(tables, level, weights)
    w = lp_feasible(D, cap=args.lp_cap)
    if w is None:
        out.append("infeasible")
        return EXIT_FAILED
    if args.format == "json":
        out.append(jsonio.emit_json(w))
    else:
        out.extend(f"w({i},{j}) = {v}" for (i, j), v in w.weights.items())
    return EXIT_OK


def cmd_verify_prop(args, out):
    tables = tables_for(args.family, args.rank)
    lt = LabeledTuple.from_weights(tables, parse_weights(args.weights, tables))
    rep = verify_proposition(lt)
    if not args.quiet:
        for c in rep.checks:
            mark = "ok" if c.holds else "FAIL"
            out.append(f"{c.split} {c.case}: flow {c.flow} >= {c.bound} margin {c.margin} {mark}")
    for case in sorted({c.case for c in rep.checks}):
        best = rep.minimum(case)
        out.append(f"min margin ({case}): {best.margin} at {best.split}")
    for c in rep.corners:
        out.append(f"corner {c.split}: stated bound {c.stated_bound} < possible c {c.required}; "
                   f"flow {c.flow} {'meets' if c.flow_meets_required else 'misses'} it")
    out.append("all stated bounds hold" if rep.all_hold else "some stated bound fails")
    return EXIT_OK if rep.all_hold else EXIT_FAILED


def cmd_verify_theorem1(args, out):
    family = args.family.upper()
    if family not in ("B", "D"):
        raise DomainError("verify-theorem1 covers families B and D")
    min_rank = args.min_rank or (2 if family == "B" else 3)
    passed = failed = 0
    for lt in theorem1_instances(family, args.max_n, min_rank, args.max_rank):
        ok, line = certify_instance(lt)
        passed += ok
        failed += not ok
        if not args.quiet or not ok:
            out.append(("PASS " if ok else "FAIL ") + line)
    out.append(f"{passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_FAILED


def cmd_verify_scaling(args, out):
    res = scale_check(args.rank, args.n, args.N)
    if args.format == "json":
        out.append(jsonio.emit_json({
            "holds": res.holds,
            "level_N": jsonio.divisor_to_obj(res.level_n),
            "level_1": jsonio.divisor_to_obj(res.level_one),
        }))
    else:
        out.append(f"B{args.rank}, n={args.n}, N={args.N}: "
                   f"D(N w1, N) == N D(w1, 1): {res.holds}")
        out.extend("level N  " + s for s in _fmt_divisor(res.level_n))
        out.extend("level 1  " + s for s in _fmt_divisor(res.level_one))
    return EXIT_OK if res.holds else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cbdiv", description="Conformal blocks divisors on M_0,n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rank", help="rank of a conformal blocks bundle")
    _add_algebra(p)
    p.add_argument("--method", choices=["engine", "closed", "verlinde"], default="engine")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("fusion", help="iterated fusion product of the weights")
    _add_algebra(p)
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("divisor", help="conformal blocks divisor in the psi/boundary basis")
    _add_algebra(p)
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("certify", help="decide boundary effectivity with a certificate")
    _add_algebra(p)
    p.add_argument("--lp-cap", type=int, default=DEFAULT_LP_CAP)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("lp-search", help="search a certificate by exact LP")
    _add_algebra(p)
    p.add_argument("--lp-cap", type=int, default=DEFAULT_LP_CAP)
    p.set_defaults(func=cmd_lp_search)

    p = sub.add_parser("verify-prop", help="check the stated cut-flow bounds split by split")
    _add_algebra(p, level=False)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify_prop)

    p = sub.add_parser("verify-theorem1", help="certify every admissible labeling in a range")
    p.add_argument("--family", required=True, choices=list("BDbd"))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--min-rank", type=int, default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify_theorem1)

    p = sub.add_parser("verify-scaling", help="compare D(N w1, B_r, N) with N D(w1, B_r, 1)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify_scaling)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    out: list[str] = []
    try:
        args = parser.parse_args(argv)
        if getattr(args, "family", None):
            args.family = args.family.upper()
        code = args.func(args, out)
    except UsageError as exc:
        print(f"cbdiv: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"cbdiv: {exc}", file=stderr)
        return EXIT_USAGE
    for line in out:
        print(line, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
