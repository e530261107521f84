"""Command-line front end.

    poisson-maxima dist  --lambda 1 --log10-n 0,2,4 [--k-max 30] [--format csv|json]
    poisson-maxima prob  --lambda 1 --log10-n-range 0:40:0.1
    poisson-maxima modes --lambda 5 --log10-n-range 0:40:0.25
    poisson-maxima point --lambda 5 --log10-n 40
    poisson-maxima serve [--host 127.0.0.1] [--port 8000]

n is given as log10(n) (real-valued; comma-separate several values), as an
inclusive min:max:step range of decades, or — for integer n up to 10^15 — via
--n.  Tables go to stdout (or --out) with locked 17-significant-digit floats,
so identical invocations are byte-identical; per-cell numeric failures print
a warning to stderr and leave the cell empty/null.  Exit codes: 0 success,
2 usage error, 1 numeric failure that produced no output.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from . import __version__, sweeps
from .errors import PoissonMaximaError
from .schemas import (
    DistRequest,
    Log10nRange,
    ModesRequest,
    PointRequest,
    ProbRequest,
    run_dist,
    run_modes,
    run_point,
    run_prob,
)

__all__ = ["main", "build_parser"]


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected min:max:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numeric min:max:step, got {text!r}") from None
    return lo, hi, step


def _add_common(sub: argparse.ArgumentParser, point: bool = False) -> None:
    sub.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        required=True,
        metavar="F",
        help="Poisson mean (positive real)",
    )
    group = sub.add_mutually_exclusive_group(required=True)
    if point:
        group.add_argument(
            "--log10-n",
            dest="log10_n",
            type=float,
            metavar="F",
            help="log10 of the number of variables (real, >= 0)",
        )
    else:
        group.add_argument(
            "--log10-n",
            dest="log10_n",
            type=_parse_float_list,
            metavar="F[,F...]",
            help="log10 of the number of variables; comma-separate several values",
        )
        group.add_argument(
            "--log10-n-range",
            dest="log10_n_range",
            type=_parse_range,
            metavar="MIN:MAX:STEP",
            help="inclusive grid of log10(n) values in decades",
        )
    group.add_argument(
        "--n",
        dest="n",
        type=int,
        metavar="INT",
        help="number of variables as an integer (1 to 1e15)",
    )
    sub.add_argument(
        "--format",
        choices=("csv", "json"),
        default="json" if point else "csv",
        help="output format (default %(default)s)",
    )
    sub.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poisson-maxima",
        description="Exact and asymptotic distribution of the maximum of n i.i.d. Poisson variables.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_dist = subs.add_parser(
        "dist", help="pmf of the maximum by k, one block per n (distribution curves)"
    )
    _add_common(p_dist)
    p_dist.add_argument(
        "--k-max",
        dest="k_max",
        type=int,
        metavar="INT",
        help="largest k in the table (defaults to the scan-window top)",
    )

    p_prob = subs.add_parser(
        "prob", help="best adjacent-pair probability by n (focussing curves)"
    )
    _add_common(p_prob)

    p_modes = subs.add_parser(
        "modes", help="exact modal value and all asymptotic estimates by n"
    )
    _add_common(p_modes)

    p_point = subs.add_parser("point", help="everything computable for a single (lambda, n)")
    _add_common(p_point, point=True)

    p_serve = subs.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1", help="bind address (default %(default)s)")
    p_serve.add_argument("--port", type=int, default=8000, help="port (default %(default)s)")
    return parser


def _request_kwargs(args: argparse.Namespace) -> dict[str, Any]:
    kw: dict[str, Any] = {"lam": args.lam, "format": args.format}
    if getattr(args, "log10_n", None) is not None:
        kw["log10_n"] = args.log10_n
    if getattr(args, "log10_n_range", None) is not None:
        lo, hi, step = args.log10_n_range
        kw["log10_n_range"] = Log10nRange(min=lo, max=hi, step=step)
    if getattr(args, "n", None) is not None:
        kw["n"] = args.n
    return kw


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _usage_error(parser: argparse.ArgumentParser, err: Exception) -> int:
    for line in str(err).splitlines():
        print(f"poisson-maxima: error: {line}", file=sys.stderr)
    parser.print_usage(sys.stderr)
    return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        if args.command == "dist":
            kw = _request_kwargs(args)
            if args.k_max is not None:
                kw["k_max"] = args.k_max
            req: Any = DistRequest(**kw)
        elif args.command == "prob":
            req = ProbRequest(**_request_kwargs(args))
        elif args.command == "modes":
            req = ModesRequest(**_request_kwargs(args))
        else:
            req = PointRequest(**_request_kwargs(args))
    except ValidationError as err:
        return _usage_error(parser, err)

    try:
        if args.command == "point":
            record, warns = run_point(req)
            if req.format == "csv":
                text = sweeps.to_csv(sweeps.SweepTable(sweeps.POINT_COLUMNS, (record,), warns))
            else:
                text = sweeps.to_json_object(sweeps.POINT_COLUMNS, record)
        else:
            table = {"dist": run_dist, "prob": run_prob, "modes": run_modes}[args.command](req)
            warns = table.warnings
            text = sweeps.to_csv(table) if req.format == "csv" else sweeps.to_json(table)
    except PoissonMaximaError as err:
        print(f"poisson-maxima: numeric failure: {err}", file=sys.stderr)
        return 1

    for w in warns:
        print(f"poisson-maxima: warning: {w}", file=sys.stderr)
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
