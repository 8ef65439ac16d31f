"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .motive import NotAFunctionOfL, PoleError, format_motive
from .quiver import (
    CutError,
    InvalidSigma,
    SigmaPartition,
    ToricData,
    build_cut,
    build_quiver,
    flip,
    special_cut,
    special_sigma,
)
from .roots import (
    NonGenericStability,
    StabilityParam,
    curve_class,
    enumerate_positive_roots,
    simple_reflection,
)
from .series import SeriesError, TruncatedSeries, dtpt_series, universal_series, z_zeta

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2
DEFAULT_DEGREE = 4


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _frac_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n0", type=int, help="number of Z factors (default: from --sigma, else 1)")
    p.add_argument("--n1", type=int, help="number of W factors (default: from --sigma, else 1)")
    p.add_argument("--sigma", help="row bits of the partition, e.g. 01 (default: the special one)")


def _common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def resolve_sigma(n0: int | None, n1: int | None, bits: str | None) -> SigmaPartition:
    try:
        if bits is not None:
            return SigmaPartition.from_bits(bits, n0, n1)
        n0 = 1 if n0 is None else n0
        n1 = 1 if n1 is None else n1
        if n1 > n0:
            # the special partition needs n0 >= n1; fall back to ones first
            return SigmaPartition(ToricData(n0, n1), (1,) * n1 + (0,) * n0)
        return special_sigma(n0, n1)
    except (InvalidSigma, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _config(args: argparse.Namespace, sigma: SigmaPartition | None = None) -> dict:
    out = {k: v for k, v in vars(args).items() if k != "func"}
    for k, v in list(out.items()):
        if isinstance(v, list):
            out[k] = [str(x) if isinstance(x, Fraction) else x for x in v]
    if sigma is not None:
        out["resolved"] = {"n0": sigma.toric.n0, "n1": sigma.toric.n1, "sigma": sigma.bits}
    return out


def _emit_series(series: TruncatedSeries, args, sigma, out) -> None:
    if args.format == "json":
        print(json.dumps({"config": _config(args, sigma), "series": series.to_json()}), file=out)
        return
    print(f"# sigma={sigma.bits} vars={','.join(series.names)} cap={series.cap}", file=out)
    terms = series.sorted_terms()
    if len(terms) == 1 and not any(terms[0][0]):
        print(format_motive(terms[0][1], args.style), file=out)
    else:
        print(series.pretty(args.style), file=out)


# ---------------------------------------------------------------------------
# commands


def cmd_series(args, out) -> int:
    sigma = resolve_sigma(args.n0, args.n1, args.sigma)
    kind = args.kind
    if kind == "universal":
        series = universal_series(sigma, args.degree)
    elif kind == "framed":
        if args.zeta_base is None:
            raise InputError("framed series needs --zeta-base")
        eps = args.zeta_eps if args.zeta_eps is not None else [0] * len(args.zeta_base)
        if len(args.zeta_base) != sigma.N or len(eps) != sigma.N:
            raise InputError(f"stability vectors must have {sigma.N} entries")
        series = z_zeta(sigma, StabilityParam(args.zeta_base, eps), args.degree)
    else:
        series = dtpt_series(sigma, kind, args.degree, route=args.route)
    if args.euler:
        from .series import euler_specialize

        series = euler_specialize(series)
    _emit_series(series, args, sigma, out)
    return EXIT_OK


SUITES = ("thm-a", "appendix", "factorization", "dtpt", "qseries", "reflection")


def cmd_verify(args, out) -> int:
    from . import verify as V

    suite = args.suite
    sigma = None
    if suite in ("thm-a", "factorization", "dtpt"):
        sigma = resolve_sigma(args.n0, args.n1, args.sigma)
    if suite == "thm-a":
        alphas = None
        if args.alpha is not None:
            if len(args.alpha) != sigma.N:
                raise InputError(f"--alpha needs {sigma.N} entries")
            alphas = [args.alpha]
        try:
            records = V.verify_theorem_A(sigma, args.degree, args.primes, alphas=alphas,
                                         cut=args.cut, budget=args.budget, workers=args.workers)
        except CutError as exc:
            raise InputError(str(exc)) from exc
    elif suite == "appendix":
        models = [tuple(m) for m in args.models] if args.models else [(1, 1), (2, 1), (3, 1)]
        if args.max_boxes <= 0:
            records = [V.CheckRecord("appendix", "all", "pass", detail="no boxes: nothing to check")]
        else:
            records = V.verify_appendix(models, args.max_boxes, min(args.max_boxes, args.tuple_boxes))
    elif suite == "factorization":
        try:
            records = V.verify_factorization(sigma, args.degree)
        except InvalidSigma as exc:
            raise InputError(f"factorization needs the special partition: {exc}") from exc
    elif suite == "dtpt":
        records = V.verify_dtpt(sigma, args.degree)
    elif suite == "qseries":
        records = V.verify_qseries(max(args.degree, 1))
    else:
        records = V.verify_reflection(degree=args.degree)
    failed = not V.all_passed(records)
    if args.format == "json":
        print(json.dumps({"config": _config(args, sigma)}), file=out)
        for r in records:
            print(json.dumps(r.to_json()), file=out)
    else:
        for r in records:
            where = f" alpha={r.alpha}" if r.alpha is not None else ""
            prime = f" p={r.prime}" if r.prime is not None else ""
            print(f"{r.status.upper():7s} {r.check} {r.model}{where}{prime} "
                  f"[{r.elapsed_ms:.0f} ms] {r.detail}".rstrip(), file=out)
        n_fail = sum(1 for r in records if r.status == "fail")
        n_skip = sum(1 for r in records if r.status == "skipped")
        print(f"{len(records)} checks, {n_fail} failed, {n_skip} skipped", file=out)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_roots(args, out) -> int:
    if args.n is not None and args.sigma is None and args.n0 is None and args.n1 is None:
        sigma = SigmaPartition(ToricData(args.n, 0), (0,) * args.n)
    else:
        sigma = resolve_sigma(args.n0, args.n1, args.sigma)
        if args.n is not None and args.n != sigma.N:
            raise InputError(f"--n {args.n} does not match sigma of length {sigma.N}")
    roots = enumerate_positive_roots(sigma, args.degree)
    rows = []
    for r in roots:
        n_delta, interval, c = curve_class(sigma, r.coords)
        rows.append({"root": list(r.coords), "kind": r.kind.value, "form": r.describe(),
                     "interval": list(interval) if interval else None, "c": c})
    if args.reflect is not None:
        if not 0 <= args.reflect < sigma.N:
            raise InputError(f"vertex {args.reflect} out of range")
        for row in rows:
            row["reflected"] = list(simple_reflection(sigma.N, args.reflect, row["root"]))
    if args.format == "json":
        print(json.dumps({"config": _config(args, sigma), "roots": rows}), file=out)
    else:
        for row in rows:
            extra = f" -> {tuple(row['reflected'])}" if "reflected" in row else ""
            c = f" c={row['c']}" if row["interval"] else ""
            print(f"{tuple(row['root'])} {row['kind']} {row['form']}{c}{extra}", file=out)
        print(f"{len(rows)} roots", file=out)
    return EXIT_OK


def _quiver_json(sigma: SigmaPartition) -> dict:
    try:
        Q = special_cut(sigma) if sigma == special_sigma(sigma.toric.n0, sigma.toric.n1) else build_cut(sigma)
    except (CutError, InvalidSigma):
        Q = build_quiver(sigma)
    return Q.to_json()


def cmd_flip(args, out) -> int:
    sigma = resolve_sigma(args.n0, args.n1, args.sigma)
    try:
        flipped = flip(sigma, args.k)
        back = flip(flipped, args.k)
    except InvalidSigma as exc:
        raise InputError(str(exc)) from exc
    data = {
        "sigma": sigma.bits,
        "flipped": flipped.bits,
        "round_trip": back == sigma,
        "quiver": _quiver_json(sigma),
        "flipped_quiver": _quiver_json(flipped),
    }
    if args.format == "json":
        print(json.dumps({"config": _config(args, sigma), **data}), file=out)
    else:
        print(f"{sigma.bits} -> {flipped.bits} (flip at k={args.k}); "
              f"round trip {'ok' if data['round_trip'] else 'FAILED'}", file=out)
        for label, q in (("before", data["quiver"]), ("after", data["flipped_quiver"])):
            arrows = ", ".join(a["name"] if isinstance(a, dict) else str(a) for a in q["arrows"])
            print(f"{label}: loops {q['loops']}; arrows {arrows}", file=out)
    return EXIT_OK if data["round_trip"] else EXIT_FAILED


def cmd_quiver(args, out) -> int:
    sigma = resolve_sigma(args.n0, args.n1, args.sigma)
    data = _quiver_json(sigma)
    if args.format == "json":
        print(json.dumps({"config": _config(args, sigma), "quiver": data}), file=out)
    else:
        print(json.dumps(data, indent=2), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-dt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="print a generating series")
    p.add_argument("kind", choices=("universal", "framed", "dt", "pt", "points"))
    _model_args(p)
    _common_args(p)
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="total y-degree cap")
    p.add_argument("--zeta-base", type=_frac_list, help="stability vector, comma-separated rationals")
    p.add_argument("--zeta-eps", type=_frac_list, help="infinitesimal part of the stability vector")
    p.add_argument("--route", choices=("corollary", "zeta"), default="corollary")
    p.add_argument("--style", choices=("L", "v"), default="L", help="text output in L^(1/2) or v")
    p.add_argument("--euler", action="store_true", help="specialize v -> 1")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _model_args(p)
    _common_args(p)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--alpha", type=_int_list)
    p.add_argument("--primes", type=_int_list, default=[2, 3])
    p.add_argument("--budget", type=int, default=None, help="max tuples enumerated per count")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--cut", choices=("auto", "special", "generic"), default="auto")
    p.add_argument("--max-boxes", type=int, default=4)
    p.add_argument("--tuple-boxes", type=int, default=3)
    p.add_argument("--models", type=_int_list, nargs="*", help="(n0,n1) pairs for the appendix suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roots", help="list positive roots")
    p.add_argument("--n", type=int)
    _model_args(p)
    _common_args(p)
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--reflect", type=int, help="also apply the simple reflection at this vertex")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("flip", help="flip sigma at a loopless vertex")
    _model_args(p)
    _common_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("quiver", help="print the quiver with potential and its cut")
    _model_args(p)
    _common_args(p)
    p.set_defaults(func=cmd_quiver)
    return parser


_VERIFY_DEGREES = {"thm-a": 3, "factorization": 4, "dtpt": 6, "qseries": 8, "reflection": 6}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "degree", 0) is None:
        args.degree = _VERIFY_DEGREES.get(args.suite, DEFAULT_DEGREE)
    if getattr(args, "degree", 0) < 0:
        print("error: --degree must be non-negative", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args, out)
    except NonGenericStability as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, InvalidSigma, SeriesError, PoleError, NotAFunctionOfL, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
