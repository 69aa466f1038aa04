"""Command-line interface.

Subcommands:
  mzv     eval / sum / enumerate       brute-force numerics
  hyper   check {gauss|trans2|trans1|prop31}
  verify  {<identity>|all}             sampled verification suites
  ko      diff / diag / table / expand  exact polynomial extraction

Exit codes: 0 all verdicts pass, 1 any verification failure, 2 usage error.
Reports stream as text lines or JSON lines (--format json).
"""

import argparse
import json
import sys

import mpmath as mp

from . import __version__, extract, hyper, mzvnum, suites
from .config import RunConfig
from .report import num_str
from .zring import even_zeta_display


def _emit(obj, fmt, stream=sys.stdout):
    if fmt == "json":
        stream.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        if isinstance(obj, dict):
            stream.write(" ".join("%s=%s" % (k, v) for k, v in obj.items()) + "\n")
        else:
            stream.write(str(obj) + "\n")
    stream.flush()


def _emit_report(report, fmt, stream=sys.stdout):
    if fmt == "json":
        _emit(report.to_json_dict(), "json", stream)
    else:
        inputs = ", ".join("%s=%s" % (k, num_str(v, 8)) for k, v in sorted(report.inputs.items()))
        stream.write(
            "[%s] %s  residual=%s  tol=%s  (%s)\n"
            % (report.verdict.upper(), report.identity_name,
               num_str(report.residual, 6), num_str(report.tolerance, 4), inputs)
        )
        stream.flush()


def _parse_composition(text):
    return tuple(int(p) for p in text.replace(" ", "").split(","))


def _add_common(parser):
    parser.add_argument("--precision-bits", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--max-weight", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json", "latex"), default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mzstar",
        description="Multiple zeta-star sums: high-precision identity checks and "
                    "exact zeta-polynomial extraction.",
    )
    parser.add_argument("--version", action="version", version="mzstar " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_mzv = sub.add_parser("mzv", help="brute-force numeric values")
    mzv_sub = p_mzv.add_subparsers(dest="action", required=True)
    p_eval = mzv_sub.add_parser("eval", help="evaluate one zeta(-star) value")
    p_eval.add_argument("--composition", required=True, help="e.g. 2,1,1")
    p_eval.add_argument("--star", action="store_true", help="weak inequalities (zeta-star)")
    p_eval.add_argument("--trunc-n", type=int, default=None)
    _add_common(p_eval)
    p_sum = mzv_sub.add_parser("sum", help="height-graded sum X0(k,n,s)")
    for flag in ("--k", "--n", "--s"):
        p_sum.add_argument(flag, type=int, required=True)
    p_sum.add_argument("--star", action="store_true")
    p_sum.add_argument("--trunc-n", type=int, default=None)
    _add_common(p_sum)
    p_enum = mzv_sub.add_parser("enumerate", help="list the compositions of a key")
    for flag in ("--k", "--n", "--s"):
        p_enum.add_argument(flag, type=int, required=True)
    _add_common(p_enum)

    p_hyper = sub.add_parser("hyper", help="hypergeometric identity checks")
    hyper_sub = p_hyper.add_subparsers(dest="action", required=True)
    p_check = hyper_sub.add_parser("check")
    p_check.add_argument("what", choices=("gauss", "trans2", "trans1", "prop31"))
    _add_common(p_check)

    p_verify = sub.add_parser("verify", help="run a sampled verification suite")
    p_verify.add_argument(
        "suite",
        choices=tuple(suites.SUITES) + ("all",),
        help="identity family to verify",
    )
    p_verify.add_argument("--tier1", type=str, default=None, help="override tier-1 tolerance")
    _add_common(p_verify)

    p_ko = sub.add_parser("ko", help="exact zeta-polynomial extraction")
    ko_sub = p_ko.add_subparsers(dest="action", required=True)
    p_diff = ko_sub.add_parser("diff", help="difference polynomial for (m, n, s)")
    p_diff.add_argument("m", type=int)
    p_diff.add_argument("n", type=int)
    p_diff.add_argument("s", type=int)
    p_diff.add_argument("--even-zeta-powers", action="store_true",
                        help="display zeta(4), zeta(6) as zeta(2) powers")
    _add_common(p_diff)
    p_diag = ko_sub.add_parser("diag", help="diagonal polynomial for (k, s)")
    p_diag.add_argument("k", type=int)
    p_diag.add_argument("s", type=int)
    p_diag.add_argument("--even-zeta-powers", action="store_true")
    _add_common(p_diag)
    p_table = ko_sub.add_parser("table", help="all polynomials up to a weight")
    p_table.add_argument("--validate-weight", type=int, default=8,
                         help="cross-validate entries up to this weight (0 disables)")
    _add_common(p_table)
    p_expand = ko_sub.add_parser("expand", help="run the series expansion")
    p_expand.add_argument("--max-degree", type=int, default=extract.DEFAULT_MAX_DEGREE)
    p_expand.add_argument("--dump", action="store_true", help="emit the full series as JSON")
    _add_common(p_expand)

    return parser


def _config(args):
    return RunConfig.from_env(
        precision_bits=getattr(args, "precision_bits", None),
        seed=getattr(args, "seed", None),
        samples=getattr(args, "samples", None),
        max_weight=getattr(args, "max_weight", None),
        output_format=getattr(args, "format", None),
    )


def _render_poly(poly, fmt, even_powers=False):
    if even_powers:
        poly = even_zeta_display(poly)
    if fmt == "latex":
        return poly.render(latex=True)
    if fmt == "json":
        return poly.to_json()
    return poly.render()


def _cmd_mzv(args, cfg):
    fmt = cfg.output_format
    if args.action == "enumerate":
        comps = mzvnum.enumerate_compositions((args.k, args.n, args.s))
        _emit({"key": [args.k, args.n, args.s],
               "compositions": [list(c.parts) for c in comps]}, fmt)
        return 0
    trunc = args.trunc_n or cfg.mzv_trunc_N
    if args.action == "eval":
        comp = _parse_composition(args.composition)
        fn = mzvnum.mzsv_numeric if args.star else mzvnum.mzv_numeric
        res = fn(comp, cfg.precision_bits, trunc)
        _emit({"composition": list(comp), "star": bool(args.star),
               "value": num_str(res.value), "error_estimate": num_str(res.error_estimate, 6),
               "N": res.n_terms, "precision_bits": res.precision_bits}, fmt)
        return 0
    if args.action == "sum":
        res = mzvnum.x_sum((args.k, args.n, args.s), cfg.precision_bits, trunc,
                           star=bool(args.star))
        _emit({"key": [args.k, args.n, args.s], "star": bool(args.star),
               "value": num_str(res.value), "error_estimate": num_str(res.error_estimate, 6),
               "N": res.n_terms, "precision_bits": res.precision_bits}, fmt)
        return 0
    raise AssertionError(args.action)


def _cmd_hyper(args, cfg):
    name = {"gauss": "gauss", "trans2": "trans2", "trans1": "trans1", "prop31": "prop31"}[args.what]
    reports = suites.run_suite(name, cfg)
    failures = 0
    for report in reports:
        _emit_report(report, cfg.output_format)
        failures += 0 if report.passed else 1
    return 0 if failures == 0 else 1


def _cmd_verify(args, cfg):
    if args.tier1:
        cfg.tier1 = mp.mpf(args.tier1)
    reports = suites.run_suite(args.suite, cfg)
    failures = 0
    per_identity = {}
    for report in reports:
        _emit_report(report, cfg.output_format)
        ok = report.passed
        failures += 0 if ok else 1
        good, total = per_identity.get(report.identity_name, (0, 0))
        per_identity[report.identity_name] = (good + (1 if ok else 0), total + 1)
    for name in sorted(per_identity):
        good, total = per_identity[name]
        _emit({"identity": name, "passed": good, "total": total}, cfg.output_format,
              stream=sys.stderr)
    return 0 if failures == 0 else 1


def _cmd_ko(args, cfg):
    fmt = cfg.output_format
    if args.action == "expand":
        result = extract.expand_theorem_rhs(args.max_degree)
        payload = {
            "max_total_degree": result.max_total_degree,
            "gamma_free": result.gamma_free,
            "divisibility_log": result.divisibility_log,
            "monomials": len(result.series.coeffs),
        }
        if args.dump:
            payload["series"] = result.series.to_json()
        _emit(payload, "json" if fmt != "text" or args.dump else fmt)
        return 0
    if args.action == "diff":
        dp = extract.difference_poly(args.m, args.n, args.s)
        rendered = _render_poly(dp.poly, fmt, args.even_zeta_powers)
        _emit({"m": args.m, "n": args.n, "s": args.s, "weight": dp.weight,
               "polynomial": rendered}, fmt)
        return 0
    if args.action == "diag":
        poly = extract.diagonal_poly(args.k, args.s)
        rendered = _render_poly(poly, fmt, args.even_zeta_powers)
        _emit({"k": args.k, "s": args.s, "weight": args.k, "polynomial": rendered}, fmt)
        return 0
    if args.action == "table":
        max_w = cfg.max_weight
        expansion = extract.cached_expansion(max(extract.DEFAULT_MAX_DEGREE, max_w - 1))
        failures = 0
        for s in range(1, (max_w - 1) // 2 + 1):
            for m in range(s, max_w):
                for n in range(s, max_w):
                    if m + n + 1 > max_w:
                        continue
                    dp = extract.difference_poly(m, n, s, expansion)
                    row = {"kind": "difference", "m": m, "n": n, "s": s,
                           "weight": dp.weight, "polynomial": _render_poly(dp.poly, fmt)}
                    if 0 < args.validate_weight >= dp.weight and m >= n:
                        rep = extract.cross_validate(m, n, s, cfg.precision_bits, expansion)
                        row["residual"] = num_str(rep.residual, 6)
                        failures += 0 if rep.passed else 1
                    _emit(row, fmt)
        for s in range(1, max_w // 2 + 1):
            for k in range(2 * s, max_w + 1):
                poly = extract.diagonal_poly(k, s, expansion)
                row = {"kind": "diagonal", "k": k, "s": s, "weight": k,
                       "polynomial": _render_poly(poly, fmt)}
                if 0 < args.validate_weight >= k:
                    rep = extract.cross_validate_diagonal(k, s, cfg.precision_bits, expansion)
                    row["residual"] = num_str(rep.residual, 6)
                    failures += 0 if rep.passed else 1
                _emit(row, fmt)
        return 0 if failures == 0 else 1
    raise AssertionError(args.action)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args)
    with mp.workprec(cfg.precision_bits + 16):
        if args.command == "mzv":
            return _cmd_mzv(args, cfg)
        if args.command == "hyper":
            return _cmd_hyper(args, cfg)
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        if args.command == "ko":
            return _cmd_ko(args, cfg)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
