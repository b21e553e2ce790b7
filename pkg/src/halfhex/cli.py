"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 enumeration cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Iterable, List, Optional

from . import binomial_matrix as bm
from .ensemble import (
    DEFAULT_CAP,
    EnsembleSpec,
    SpaceTimePoint,
    count_lgv,
    empirical_correlation,
    enumerate_configurations,
    format_configuration,
    format_configurations,
    parse_configurations,
    sample,
)
from .errors import CapExceeded, InvalidInput
from .exactnum import format_rational
from .kernel import KernelContext, correlation, em_kernel, general_kernel, halfhex_kernel
from .render import render
from .verify import SUITES, VerifyOptions, faulty_inverse, run_all

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _int_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _point(text: str) -> SpaceTimePoint:
    t, sep, x = text.partition(":")
    if not sep:
        t, sep, x = text.partition(",")
    try:
        return SpaceTimePoint(int(t), int(x))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a point 't:x', got {text!r}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("ensemble")
    g.add_argument("--halfhex", type=int, metavar="N", help="order-N Novak half-hexagon")
    g.add_argument("--n", type=int, help="number of walkers")
    g.add_argument("--steps", type=int, help="number of time steps N")
    g.add_argument("--ends", type=_int_list, help="end positions, comma separated")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv", "text", "svg", "ascii"], default=None)
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum enumeration size")
    p.add_argument("--decimal", action="store_true", help="also show float approximations")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfhex",
        description="Exact correlations of nonintersecting stay/step-right walkers "
        "and Novak half-hexagon lozenge tilings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    sub.add_parser("count", parents=[common], help="number of configurations (LGV determinant)")
    sub.add_parser("invert", parents=[common], help="closed-form inverse of the LGV matrix")

    p = sub.add_parser("verify", parents=[common], help="run the consistency sweeps")
    p.add_argument("--n-max", type=int, default=None, help="quick mode: small sizes only")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="run only these suites")
    p.add_argument("--inject-fault", action="store_true",
                   help="self-test: run with a deliberately wrong inverse (must fail)")

    p = sub.add_parser("kernel", parents=[common], help="evaluate K(r,x;s,y)")
    for name in ("r", "x", "s", "y"):
        p.add_argument(name, type=int)
    p.add_argument("--method", choices=["em", "general", "halfhex"], default="em")

    p = sub.add_parser("correlate", parents=[common], help="probability that all points are occupied")
    p.add_argument("points", nargs="*", type=_point, metavar="t:x")
    p.add_argument("--check", action="store_true", help="also compute the value by enumeration")

    sub.add_parser("enumerate", parents=[common], help="list every configuration")
    sub.add_parser("sample", parents=[common], help="exact uniform random configuration")

    p = sub.add_parser("render", parents=[common], help="draw a configuration")
    p.add_argument("--input", help="configuration file (first record is drawn); default: sample")
    p.add_argument("--mode", choices=["paths", "lozenges"], default="lozenges")
    return parser


def spec_from_args(args) -> EnsembleSpec:
    explicit = [args.n, args.steps, args.ends]
    if args.halfhex is not None:
        if any(v is not None for v in explicit):
            raise InvalidInput("--halfhex cannot be combined with --n/--steps/--ends")
        return EnsembleSpec.half_hexagon(args.halfhex)
    if args.ends is None or args.steps is None:
        raise InvalidInput("give --halfhex N, or --steps N and --ends y1,...,yn")
    n = args.n if args.n is not None else len(args.ends)
    return EnsembleSpec(n, args.steps, tuple(args.ends))


class Emitter:
    """Collects result records and serialises them in the requested format."""

    def __init__(self, fmt: str, decimal: bool):
        self.fmt = fmt
        self.decimal = decimal
        self.records: List[dict] = []

    def add(self, spec: Optional[EnsembleSpec], query, value, **extra) -> None:
        rec = {"spec": spec.to_dict() if spec else None, "query": query, "value": _encode(value)}
        if self.decimal and isinstance(value, (Fraction, int)):
            rec["decimal"] = float(value)
        rec.update(extra)
        self.records.append(rec)

    def render(self) -> str:
        if self.fmt == "json":
            return "".join(json.dumps(r) + "\n" for r in self.records)
        if self.fmt == "csv":
            buf = io.StringIO()
            keys = ["query", "value"] + [k for k in self.records[0] if k not in ("spec", "query", "value")] if self.records else []
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(keys)
            for r in self.records:
                w.writerow([_flat(r.get(k)) for k in keys])
            return buf.getvalue()
        lines = []
        for r in self.records:
            extra = " ".join(f"{k}={_flat(v)}" for k, v in r.items() if k not in ("spec", "query", "value"))
            lines.append(f"{_flat(r['query'])}: {_flat(r['value'])}" + (f"  {extra}" if extra else ""))
        return "\n".join(lines) + "\n"


def _encode(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _flat(value) -> str:
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_count(args) -> int:
    spec = spec_from_args(args)
    em = Emitter(args.format or "text", args.decimal)
    value = count_lgv(spec)
    extra = {}
    if args.halfhex is not None:
        predicted = 2 ** (args.halfhex * (args.halfhex + 1) // 2)
        extra = {"predicted": str(predicted), "match": value == predicted}
    em.add(spec, "count", value, **extra)
    _write(em.render(), args.out)
    return EXIT_OK


def cmd_invert(args) -> int:
    spec = spec_from_args(args)
    minv = bm.closed_form_inverse(spec.matrix_spec())
    fmt = args.format or "text"
    if fmt == "json":
        em = Emitter("json", False)
        em.add(spec, "inverse", [list(row) for row in minv.rows])
        text = em.render()
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "value"])
        for i in range(1, minv.nrows + 1):
            for j in range(1, minv.ncols + 1):
                w.writerow([i, j, format_rational(minv.entry(i, j))])
        text = buf.getvalue()
    else:
        cells = [[format_rational(v) for v in row] for row in minv.rows]
        width = max((len(c) for row in cells for c in row), default=1)
        text = "\n".join(" ".join(c.rjust(width) for c in row) for row in cells) + "\n"
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = VerifyOptions.quick(args.n_max, args.seed) if args.n_max else VerifyOptions(seed=args.seed)
    names = args.suite
    if args.inject_fault:
        opts.inverse = faulty_inverse
        names = names or ["inverse_identity"]
    results = run_all(opts, names)
    fmt = args.format or "text"
    if fmt == "json":
        text = "".join(json.dumps(r.to_dict()) + "\n" for r in results)
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.name:<22} cases={r.cases} time={r.seconds:.2f}s"
            if not r.passed:
                line += f" counterexample={json.dumps(r.counterexample)}"
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_kernel(args) -> int:
    spec = spec_from_args(args)
    if args.method == "halfhex":
        if args.halfhex is None:
            raise InvalidInput("--method halfhex needs --halfhex N")
        value = halfhex_kernel(args.halfhex, args.r, args.x, args.s, args.y)
    elif args.method == "general":
        value = general_kernel(spec, args.r, args.x, args.s, args.y)
    else:
        value = em_kernel(KernelContext.build(spec), args.r, args.x, args.s, args.y)
    em = Emitter(args.format or "json", args.decimal)
    em.add(spec, {"r": args.r, "x": args.x, "s": args.s, "y": args.y}, value)
    _write(em.render(), args.out)
    return EXIT_OK


def cmd_correlate(args) -> int:
    spec = spec_from_args(args)
    value = correlation(KernelContext.build(spec), args.points)
    extra = {}
    if args.check:
        empirical = empirical_correlation(spec, args.points, cap=args.cap)
        extra = {"empirical": format_rational(empirical), "match": empirical == value}
    em = Emitter(args.format or "json", args.decimal)
    em.add(spec, [list(p) for p in args.points], value, **extra)
    _write(em.render(), args.out)
    return EXIT_OK


def _configs_text(configs: Iterable, fmt: str, spec: EnsembleSpec) -> str:
    configs = list(configs)
    if fmt == "json":
        return "".join(
            json.dumps({"spec": spec.to_dict(), "positions": [list(r) for r in c.positions]}) + "\n"
            for c in configs
        )
    return format_configurations(configs)


def cmd_enumerate(args) -> int:
    spec = spec_from_args(args)
    configs = enumerate_configurations(spec, cap=args.cap)
    _write(_configs_text(configs, args.format or "text", spec), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    spec = spec_from_args(args)
    config = sample(spec, args.seed)
    fmt = args.format or "text"
    if fmt == "svg":
        text = render(config, "lozenges", "svg")
    elif fmt == "ascii":
        text = render(config, "paths", "ascii")
    else:
        text = _configs_text([config], fmt, spec)
    _write(text, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            configs = parse_configurations(fh.read())
        if not configs:
            raise InvalidInput(f"no configuration found in {args.input}")
        config = configs[0]
    else:
        config = sample(spec_from_args(args), args.seed)
    fmt = args.format or "svg"
    if fmt not in ("svg", "ascii", "text"):
        raise InvalidInput("render supports --format svg or ascii")
    _write(render(config, args.mode, "svg" if fmt == "svg" else "ascii"), args.out)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "invert": cmd_invert,
    "verify": cmd_verify,
    "kernel": cmd_kernel,
    "correlate": cmd_correlate,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
    "render": cmd_render,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cap is not None and args.cap < 1:
            raise InvalidInput("--cap must be positive")
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"halfhex: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInput, OSError) as exc:
        print(f"halfhex: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
