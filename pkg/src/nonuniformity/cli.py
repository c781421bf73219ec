"""Command-line front end (``nuk``).

Exit codes: 0 success, 1 input error, 2 a no-go answer under ``--strict``,
64 malformed command line.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional, Sequence

from . import catalysis, conversion, lorenz, monotones, plotting, smoothing
from .dist import Distribution, read_distribution
from .errors import NonuniformityError

EXIT_OK, EXIT_INPUT, EXIT_NOGO, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


def precision() -> int:
    raw = os.environ.get("NUK_PRECISION", "9")
    try:
        digits = int(raw)
    except ValueError:
        raise NonuniformityError(f"NUK_PRECISION must be an integer, got {raw!r}") from None
    if not 1 <= digits <= 17:
        raise NonuniformityError(f"NUK_PRECISION must lie in 1..17, got {raw!r}")
    return digits


def fmt(value: float, digits: Optional[int] = None) -> str:
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return f"{value:.{digits or precision()}g}"


def parse_distribution_file(path: str) -> Distribution:
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    return read_distribution(path)


def _orders(text: str) -> list[float]:
    out = []
    for token in text.split(","):
        try:
            out.append(monotones.parse_order(token))
        except (ValueError, ZeroDivisionError):
            raise NonuniformityError(f"bad order {token.strip()!r} in --p") from None
    return out


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _decision_line(report: lorenz.WitnessReport) -> str:
    if report.go:
        return f"GO Δ={report.delta}"
    return f"NO-GO Δ={report.delta} at k={report.failing_k}"


# ---- subcommands ------------------------------------------------------------

def cmd_monotones(args) -> int:
    x = parse_distribution_file(args.x)
    rows = monotones.monotone_table(x, _orders(args.p) if args.p else None)
    p_text = lambda p: "" if p is None else fmt(p)  # noqa: E731
    if args.format == "csv" or args.out:
        text = "name,p,value\n" + "".join(f"{r.name},{p_text(r.p)},{fmt(r.value)}\n" for r in rows)
    else:
        text = f"{'name':<10} {'p':>8} {'value':>16}\n"
        text += "".join(f"{r.name:<10} {p_text(r.p):>8} {fmt(r.value):>16}\n" for r in rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_decide(args) -> int:
    x, y = parse_distribution_file(args.x), parse_distribution_file(args.y)
    report = conversion.decide(x, y)
    print(_decision_line(report))
    return EXIT_NOGO if args.strict and not report.go else EXIT_OK


def cmd_witness(args) -> int:
    x, y = parse_distribution_file(args.x), parse_distribution_file(args.y)
    report = conversion.decide(x, y)
    cy = conversion.cost_or_yield(x, y)
    print(_decision_line(report))
    print(f"Lambda={fmt(report.lambda_)} 2^Lambda={report.two_to_lambda}")
    print(f"{cy.kind} bounds=[{fmt(cy.lower)}, {fmt(cy.upper)}]")
    return EXIT_NOGO if args.strict and not report.go else EXIT_OK


def cmd_protocol(args) -> int:
    x, y = parse_distribution_file(args.x), parse_distribution_file(args.y)
    report = conversion.decide(x, y)
    if not report.go:
        print(_decision_line(report))
        return EXIT_NOGO if args.strict else EXIT_OK
    protocol = conversion.synthesize(x, y)
    _emit(conversion.format_protocol(protocol), args.out)
    return EXIT_OK


def cmd_trump(args) -> int:
    x, y = parse_distribution_file(args.x), parse_distribution_file(args.y)
    fn = catalysis.strong_noisy_trumps if args.strong else catalysis.noisy_trumps
    report = fn(x, y)
    print(catalysis.render_trumping_report(report, precision()))
    return EXIT_NOGO if args.strict and not report.trumps else EXIT_OK


def cmd_smooth(args) -> int:
    x = parse_distribution_file(args.x)
    eps = args.eps
    lines = [
        f"H0^eps={fmt(smoothing.h0_eps(x, eps, args.metric))}",
        f"I0^eps={fmt(smoothing.i0_eps(x, eps, args.metric))}",
        f"Iinf^eps={fmt(smoothing.iinf_eps(x, eps, args.metric))}",
        f"J0^eps={fmt(smoothing.j0_eps(x, eps, args.metric))}",
    ]
    if args.y:
        y = parse_distribution_file(args.y)
        lines.append(f"convert: {smoothing.approx_convert_check(x, y, eps, args.metric)}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_distill(args) -> int:
    x = parse_distribution_file(args.x)
    sharp = conversion.distillable(x)
    print(f"sharp d={sharp.d} d_u={sharp.d_u} I0={fmt(sharp.nonuniformity())}")
    if args.eps is not None:
        achievable, optimal = smoothing.approx_distill(x, args.eps)
        print(f"eps={args.eps} achievable={fmt(achievable)} optimal={fmt(optimal)}")
    return EXIT_OK


def cmd_form(args) -> int:
    x = parse_distribution_file(args.x)
    print(f"Iinf={fmt(conversion.formation_cost(x))} 2^Iinf={conversion.formation_ratio(x)}")
    if args.eps is not None:
        print(f"eps={args.eps} Iinf^eps={fmt(smoothing.approx_formation(x, args.eps))}")
    return EXIT_OK


def _experiment(args, fn) -> int:
    x, y = parse_distribution_file(args.x), parse_distribution_file(args.y)
    exp = fn(x, y, args.eps, args.n_max)
    if args.out and args.out.endswith(".svg"):
        _emit(plotting.render_rate_svg(exp), args.out)
    else:
        _emit(smoothing.experiment_to_csv(exp, precision()), args.out)
    return EXIT_OK


def cmd_rate(args) -> int:
    return _experiment(args, smoothing.asymptotic_rate_experiment)


def cmd_cost(args) -> int:
    return _experiment(args, smoothing.asymptotic_cost_experiment)


def cmd_plot(args) -> int:
    curves = [("x", lorenz.build_curve(parse_distribution_file(args.x)))]
    if args.y:
        curves.append(("y", lorenz.build_curve(parse_distribution_file(args.y))))
    _emit(plotting.render_curves_svg(curves), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nuk", description="Nonuniformity toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, y=False, y_optional=False, strict=False, out=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--x", required=True, help="distribution file for x")
        if y or y_optional:
            p.add_argument("--y", required=not y_optional, help="distribution file for y")
        if strict:
            p.add_argument("--strict", action="store_true", help="exit 2 on a no-go answer")
        if out:
            p.add_argument("--out", help="output file (CSV, or SVG by extension)")
        p.set_defaults(func=fn)
        return p

    p = add("monotones", cmd_monotones, "evaluate monotones", out=True)
    p.add_argument("--p", help="comma-separated Renyi orders, e.g. 0,1,2,inf")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    add("decide", cmd_decide, "exact conversion decision", y=True, strict=True)
    add("witness", cmd_witness, "Delta and Lambda witnesses", y=True, strict=True)
    add("protocol", cmd_protocol, "synthesize a T-transform protocol", y=True, strict=True, out=True)
    p = add("trump", cmd_trump, "catalytic (noisy-trumping) decision", y=True, strict=True)
    p.add_argument("--strong", action="store_true", help="include negative orders")
    p = add("smooth", cmd_smooth, "smoothed entropies", y_optional=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--metric", default="trace", choices=("trace", "purified"))
    p = add("distill", cmd_distill, "distillable sharp state")
    p.add_argument("--eps")
    p = add("form", cmd_form, "formation cost")
    p.add_argument("--eps")
    for name, fn in (("rate", cmd_rate), ("cost", cmd_cost)):
        p = add(name, fn, f"n-copy {name} experiment", y=True, out=True)
        p.add_argument("--eps", required=True)
        p.add_argument("--n-max", type=int, default=14)
    p = add("plot", cmd_plot, "SVG of Lorenz curves", y_optional=True)
    p.add_argument("--out", required=True)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonuniformityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
