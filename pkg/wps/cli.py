"""Command-line front door for the weighted-scrolls toolkit.

Usage:
    python -m wps degree --ideal example211
    python -m wps hilbert --ideal ideal.json --keep 5,3
    python -m wps qp --ideal '{"weights": [1,2,2], "generators": ["x0_1"]}'
    python -m wps betti --weights 1^2,3^2,6^3 --profile 1,3,6,6,6
    python -m wps scrolls --weights 1,1,3,3,6,6,6 --min-codim 2 --format tsv
    python -m wps minimal-profile --weights 1^2,2^4 --dim 1
    python -m wps bound --weights 1,1,2,2 --dim 1
    python -m wps kw-build --spec example417
    python -m wps check-1generic --matrix example45_m
    python -m wps param --spec intro_c2
    python -m wps threefold --m 3 --n 4
    python -m wps reproduce figure5

Inputs (--ideal, --matrix, --spec) are a preset name, a JSON file path or
inline JSON. Results go to stdout; failures print a one-line JSON diagnostic
on stderr and exit 2 (unreadable input), 3 (budget exhausted) or 1.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from wps.config import Config, load_config
from wps.errors import BudgetExceededError, ParseError, WpsError
from wps.groebner import degree, hilbert_series, resolution_data
from wps.hilbert import cone_degree, degree_from_qp, quasi_polynomial, reduce_series
from wps.kw import BlockSpec, build_kw_matrix, pseudo_1generic_probe, structural_1generic_check
from wps.lowdim import conjecture_report, det_curve_degree, profile_search, threefold_profile_of
from wps.param import parameterize_curve, verify_parameterization
from wps.parse import (
    document_from_matrix,
    ideal_from_document,
    load_ideal_document,
    matrix_from_document,
    read_json,
)
from wps.presets import REPRODUCTIONS, load_preset, reproduce
from wps.ring import WeightSystem
from wps.scroll import (
    Profile,
    betti_from_profile,
    check_wNp,
    degree_display,
    enumerate_scrolls,
    minimal_degree_bound,
    minimal_profile,
    regularities,
)
from wps.serialize import dump_json, format_rational, parse_rational, to_tsv

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

SCROLL_HEADER = ["dim", "profile", "degree", "display", "kReg", "wReg", "minimal"]


def _source(text: str) -> dict:
    """Preset name, JSON file path or inline JSON."""
    try:
        return load_preset(text)
    except WpsError:
        return read_json(text)


def _ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}")


def _weights(args) -> WeightSystem:
    if not args.weights:
        raise ParseError("--weights is required")
    return WeightSystem.parse(args.weights)


def _ideal(args):
    if not args.ideal:
        raise ParseError("--ideal is required")
    return ideal_from_document(load_ideal_document(_source(args.ideal)))


def _scroll_rows_tsv(rows: list[dict]) -> str:
    table = [[r["dim"], r["profile"], r["degree"], r["degree_display"], r["kReg"], r["wReg"],
              "yes" if r["minimal"] else ""] for r in rows]
    return to_tsv(SCROLL_HEADER, table)


def cmd_degree(args, config: Config) -> dict:
    I = _ideal(args)
    return {"degree": format_rational(degree(I, config))}


def cmd_hilbert(args, config: Config) -> dict:
    I = _ideal(args)
    hs = hilbert_series(I, config)
    out = {"hilbert_series": hs.to_dict(), "display": str(hs)}
    if args.keep:
        d = hs.pole_order() - 1
        out["reduced"] = reduce_series(hs, d, _ints(args.keep)).to_dict()
    return out


def cmd_qp(args, config: Config) -> dict:
    I = _ideal(args)
    Q = quasi_polynomial(hilbert_series(I, config), config)
    d = Q.degree
    out = {"quasi_polynomial": Q.to_dict(), "dim": d, "degree": format_rational(degree_from_qp(Q, d))}
    if args.cone:
        out["cone_degree"] = format_rational(cone_degree(Q, d, args.cone))
    return out


def cmd_betti(args, config: Config) -> dict:
    if args.profile:
        W = _weights(args)
        P = Profile.from_multiset(W, _ints(args.profile))
        betti = betti_from_profile(P)
        return {
            "profile": P.label(),
            "betti": betti.to_dict(),
            "table": betti.to_text(),
            "wNp": check_wNp(betti, W, True).to_dict(),
            **regularities(P).to_dict(),
        }
    I = _ideal(args)
    res = resolution_data(I, config)
    return {**res.to_dict(), "table": res.betti.to_text(),
            "wNp": check_wNp(res.betti, I.ambient, res).to_dict()}


def cmd_scrolls(args, config: Config) -> dict:
    W = _weights(args)
    rows = [row.to_dict() for row in enumerate_scrolls(W, min_codim=args.min_codim)]
    return {"ambient": W.label(), "rows": rows, "tsv": _scroll_rows_tsv(rows)}


def cmd_minimal_profile(args, config: Config) -> dict:
    W = _weights(args)
    P = minimal_profile(W, args.dim)
    return {"profile": P.to_dict(), "degree_display": degree_display(P), **regularities(P).to_dict()}


def cmd_bound(args, config: Config) -> dict:
    W = _weights(args)
    return {"ambient": W.label(), "dim": args.dim,
            "bound": format_rational(minimal_degree_bound(W, args.dim))}


def _spec(args) -> BlockSpec:
    if not args.spec:
        raise ParseError("--spec is required")
    return BlockSpec.load(_source(args.spec))


def cmd_kw_build(args, config: Config) -> dict:
    spec = _spec(args)
    M = build_kw_matrix(spec)
    return {
        "matrix": document_from_matrix(M),
        "profile": M.profile.label(),
        "structural": structural_1generic_check(spec).to_dict(),
    }


def cmd_check_1generic(args, config: Config) -> dict:
    if args.spec:
        return {"structural": structural_1generic_check(_spec(args)).to_dict()}
    if not args.matrix:
        raise ParseError("give --matrix or --spec")
    M = matrix_from_document(load_ideal_document(_source(args.matrix)))
    return {"probe": pseudo_1generic_probe(M, args.samples, config).to_dict()}


def cmd_param(args, config: Config) -> dict:
    spec = _spec(args)
    series = parameterize_curve(spec).normalized()
    return {
        "series": series.to_dict(),
        "verification": verify_parameterization(series, build_kw_matrix(spec), spec).to_dict(),
    }


def cmd_threefold(args, config: Config) -> dict:
    if args.matrix:
        M = matrix_from_document(load_ideal_document(_source(args.matrix)))
        P = threefold_profile_of(M)
        return {"profile": P.to_dict(), "degree": format_rational(det_curve_degree(P))}
    if args.cap:
        return profile_search(_weights(args), parse_rational(args.cap), config).to_dict()
    if args.m is None or args.n is None:
        raise ParseError("give --m and --n, --weights with --cap, or --matrix")
    return conjecture_report(args.m, args.n).to_dict()


def cmd_reproduce(args, config: Config) -> dict:
    return reproduce(args.name, config)


COMMANDS = {
    "degree": cmd_degree,
    "hilbert": cmd_hilbert,
    "qp": cmd_qp,
    "betti": cmd_betti,
    "scrolls": cmd_scrolls,
    "minimal-profile": cmd_minimal_profile,
    "bound": cmd_bound,
    "kw-build": cmd_kw_build,
    "check-1generic": cmd_check_1generic,
    "param": cmd_param,
    "threefold": cmd_threefold,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "tsv"),
        default="json",
        help="Output format; tsv applies to tables (default: json)",
    )
    common.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Debug logging on stderr",
    )
    common.add_argument(
        "--config",
        type=str,
        default=None,
        help="Path to wps.json (default: ./wps.json if present)",
    )

    parser = argparse.ArgumentParser(
        prog="wps",
        description="Weighted projective toolkit: degrees, scrolls, KW matrices, parameterizations",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in ("degree", "hilbert", "qp"):
        p = sub.add_parser(verb, parents=[common], help=f"{verb} of an ideal or matrix document")
        p.add_argument("--ideal", type=str, help="Preset, JSON path or inline JSON")
        if verb == "hilbert":
            p.add_argument("--keep", type=str, help="Denominator exponents to keep, e.g. 5,3")
        if verb == "qp":
            p.add_argument("--cone", type=int, help="Also report the degree of the m-cone")

    p = sub.add_parser("betti", parents=[common], help="Betti table of a scroll profile or an ideal")
    p.add_argument("--weights", type=str, help="Weights, e.g. 1,1,3,3 or 1^2,3^2")
    p.add_argument("--profile", type=str, help="Column degrees, e.g. 1,3,6,6,6")
    p.add_argument("--ideal", type=str, help="Preset, JSON path or inline JSON")

    p = sub.add_parser("scrolls", parents=[common], help="Classify scrolls in a divisible P(w)")
    p.add_argument("--weights", type=str, required=True)
    p.add_argument("--min-codim", type=int, default=2)

    for verb in ("minimal-profile", "bound"):
        p = sub.add_parser(verb, parents=[common], help="Minimal-degree profile or bound")
        p.add_argument("--weights", type=str, required=True)
        p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("kw-build", parents=[common], help="Build the matrix of a block spec")
    p.add_argument("--spec", type=str, required=True)

    p = sub.add_parser("check-1generic", parents=[common], help="1-genericity check or probe")
    p.add_argument("--spec", type=str, help="Block spec (structural check)")
    p.add_argument("--matrix", type=str, help="Matrix document (sampled probe)")
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("param", parents=[common], help="Root-section parameterization of a KW curve")
    p.add_argument("--spec", type=str, required=True)

    p = sub.add_parser("threefold", parents=[common], help="Curves in P(1,1,m,n) and threefold searches")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--weights", type=str)
    p.add_argument("--cap", type=str, help="Degree cap for the profile search, e.g. 4/7")
    p.add_argument("--matrix", type=str)

    p = sub.add_parser("reproduce", parents=[common], help="Reproduce a table or example")
    p.add_argument("name", choices=sorted(REPRODUCTIONS))

    return parser


def render(result: dict, fmt: str) -> str:
    if fmt == "tsv" and "tsv" in result:
        return result["tsv"]
    return dump_json({k: v for k, v in result.items() if k != "tsv"})


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")

    try:
        config = load_config(args.config)
        result = COMMANDS[args.verb](args, config)
    except (ParseError, FileNotFoundError, json.JSONDecodeError) as e:
        return _fail(e, EXIT_PARSE)
    except BudgetExceededError as e:
        return _fail(e, EXIT_BUDGET)
    except WpsError as e:
        return _fail(e, EXIT_INVARIANT)

    sys.stdout.write(render(result, args.format))
    return EXIT_OK


def _fail(error: Exception, code: int) -> int:
    print(json.dumps({"error": type(error).__name__, "message": str(error)}), file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
