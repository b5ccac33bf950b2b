"""Command-line front end.

Subcommands: build-matrix, numrange, predict, verify, examples, plot.
Symbol pairs are read from a JSON file (or stdin via "-") shaped as
{"psi": [{"alpha": [re, im], "k": 0, "c": [re, im]}, ...],
 "phi": {"a": {"polar": {"r": 0.5, "pi_num": 0, "pi_den": 1}}, "b": [re, im]}}.

Exit codes: 0 success, 1 internal numeric failure, 2 parse error,
3 hypothesis violation, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    EigensolverError,
    HypothesisViolation,
    SeriesDivergence,
    SymbolSpecError,
    VerificationFailure,
)
from .numrange import membership, sweep
from .render import render_report, render_svg
from .symbols import parse_symbol_spec
from .truncation import build_truncation
from .verify import EXAMPLES, predict_regions, run_all_examples, run_example, verify_pipeline


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_spec(path: str):
    if path == "-":
        raw = sys.stdin.read()
        label = "<stdin>"
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
        label = path
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SymbolSpecError(f"{label}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_symbol_spec(obj)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_build_matrix(args) -> int:
    psi, phi = _load_spec(args.spec)
    op = build_truncation(psi, phi, args.dim)
    if args.format == "csv":
        _emit(op.to_csv_text(), args.out)
    else:
        _emit(_dump(op.to_json_dict()), args.out)
    for note in op.notes:
        print(f"note: {note}", file=sys.stderr)
    return 0


def _cmd_numrange(args) -> int:
    psi, phi = _load_spec(args.spec)
    op = build_truncation(psi, phi, args.dim)
    fov = sweep(op.entries, args.angles)
    zero = membership(fov, 0j, tol=args.tol if args.tol is not None else 1e-7)
    if args.format == "svg":
        _emit(render_svg(fov, labels=[f"dim {fov.dim}, {len(fov)} angles"]), args.out)
        return 0
    if args.format == "csv":
        lines = [
            f"{float(t)!r},{float(h)!r},{float(p.real)!r},{float(p.imag)!r}"
            for t, h, p in zip(fov.angles, fov.support, fov.boundary)
        ]
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    payload = {
        "dim": fov.dim,
        "angles": len(fov),
        "hull_vertices": [[float(v.real), float(v.imag)] for v in fov.hull_vertices],
        "area": fov.area,
        "contains_zero_verdict": {"status": zero.status, "margin": zero.margin},
    }
    _emit(_dump(payload), args.out)
    return 0


def _cmd_predict(args) -> int:
    psi, phi = _load_spec(args.spec)
    prediction = predict_regions(psi, phi, mode=args.mode)
    payload = {
        "regions": [
            {"claim": claim, "direction": direction, **region.to_json_dict()}
            for claim, region, direction in prediction.regions
        ],
        "witness": prediction.witness.to_json_dict() if prediction.witness else None,
        "notes": list(prediction.notes),
    }
    _emit(_dump(payload), args.out)
    return 0


def _cmd_verify(args) -> int:
    psi, phi = _load_spec(args.spec)
    result = verify_pipeline(
        psi,
        phi,
        N=args.dim,
        K=args.angles,
        mode=args.mode,
        tol=args.tol if args.tol is not None else 1e-8,
    )
    _emit(_dump(result), args.out)
    if not result["contained"]:
        print("verification failed: see discrepancies", file=sys.stderr)
        return 4
    return 0


def _cmd_examples(args) -> int:
    if args.example == "all":
        reports = run_all_examples(N=args.dim, K=args.angles)
        _emit(_dump([r.to_json_dict() for r in reports]), args.out)
        return 0
    report = run_example(args.example, N=args.dim, K=args.angles)
    _emit(report.to_json(), args.out)
    return 0


def _cmd_plot(args) -> int:
    if args.source in EXAMPLES:
        report = run_example(args.source, N=args.dim, K=args.angles)
        _emit(render_report(report), args.out)
        return 0
    psi, phi = _load_spec(args.source)
    prediction = predict_regions(psi, phi, mode=args.mode)
    op = build_truncation(psi, phi, args.dim)
    fov = sweep(op.entries, args.angles)
    regions = [region for _, region, _ in prediction.regions]
    labels = [f"dim {fov.dim}, {len(fov)} angles"]
    labels += [r.provenance or r.kind for r in regions]
    _emit(render_svg(fov, regions, labels), args.out)
    return 0


def _add_common(sub, spec_arg=True, fmt_choices=None):
    if spec_arg:
        sub.add_argument("spec", help='symbol-spec JSON path, or "-" for stdin')
    sub.add_argument("--dim", type=int, default=64, metavar="N", help="truncation size")
    sub.add_argument("--angles", type=int, default=720, metavar="K", help="sweep angles")
    sub.add_argument("--tol", type=float, default=None, metavar="X", help="check tolerance")
    sub.add_argument(
        "--mode",
        choices=("literal", "corrected", "both"),
        default="both",
        help="which compression ellipse reading(s) to use",
    )
    if fmt_choices:
        sub.add_argument("--format", choices=fmt_choices, default=fmt_choices[0])
    sub.add_argument("--out", default=None, metavar="PATH", help="write output here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockrange",
        description="Truncations, numerical-range sweeps and region predictions "
        "for weighted composition operators with affine symbol.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("build-matrix", help="write the truncated matrix")
    _add_common(p, fmt_choices=("json", "csv"))
    p.set_defaults(func=_cmd_build_matrix)

    p = subs.add_parser("numrange", help="sweep the numerical range of a truncation")
    _add_common(p, fmt_choices=("json", "csv", "svg"))
    p.set_defaults(func=_cmd_numrange)

    p = subs.add_parser("predict", help="emit predicted regions for a symbol pair")
    _add_common(p, fmt_choices=("json",))
    p.set_defaults(func=_cmd_predict)

    p = subs.add_parser("verify", help="cross-check predictions against a sweep")
    _add_common(p, fmt_choices=("json",))
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("examples", help="run a registered example end to end")
    p.add_argument("example", choices=tuple(sorted(EXAMPLES)) + ("all",))
    p.add_argument("--dim", type=int, default=64, metavar="N")
    p.add_argument("--angles", type=int, default=720, metavar="K")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=_cmd_examples)

    p = subs.add_parser("plot", help="render hull and regions as SVG")
    p.add_argument("source", help="example id or symbol-spec JSON path")
    p.add_argument("--dim", type=int, default=64, metavar="N")
    p.add_argument("--angles", type=int, default=720, metavar="K")
    p.add_argument(
        "--mode", choices=("literal", "corrected", "both"), default="both"
    )
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SymbolSpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (HypothesisViolation, SeriesDivergence) as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return 3
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 4
    except EigensolverError as exc:
        print(f"eigensolver failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
