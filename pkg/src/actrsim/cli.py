"""Command-line front end: ``actrsim run|experiment|compile``."""
from __future__ import annotations

import argparse
import os
import sys

from . import experiments
from .compilation import compose, proceduralize
from .engine import Engine
from .errors import ActrError, ModelError
from .modelfile import format_model, parse_model
from .models import BUNDLED, bundled_text
from .params import PARAMETER_NAMES, Parameters
from .trace import Trace
from .values import format_value

EXIT_OK, EXIT_ERROR, EXIT_IMPASSE = 0, 1, 2


def _read_model_text(path: str) -> str:
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    if path in BUNDLED:
        return bundled_text(path)
    raise FileNotFoundError(path)


def _param_pairs(items):
    pairs = []
    for item in items or ():
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in PARAMETER_NAMES:
            raise ModelError(f"bad --param {item!r}")
        pairs.append((key, value))
    return pairs


def _load(path, overrides=()):
    model = parse_model(_read_model_text(path))
    if overrides:
        try:
            model.parameters = model.parameters.with_text_values(_param_pairs(overrides))
        except (ValueError, TypeError) as exc:
            raise ModelError(f"bad --param: {exc}") from None
    return model


def cmd_run(args) -> int:
    model = _load(args.model, args.param)
    engine = Engine(model)
    trace = engine.run(args.max_cycles)
    if args.trace:
        sys.stdout.write(trace.to_text())
    else:
        print("fired: " + " ".join(trace.fired()))
        for kind, slots in engine.environment:
            print("external: " + kind + "".join(f" {k}={format_value(v)}" for k, v in slots.items()))
        print(f"halted: {engine.halt_reason}")
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            fh.write(trace.to_text())
    return EXIT_IMPASSE if engine.halt_reason == "impasse" else EXIT_OK


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_powerlaw(args) -> int:
    result = experiments.powerlaw(args.d, args.dt, args.events, args.probe)
    _write(result.to_csv(), args.out)
    print(f"log-log slope (k >= 5): {result.slope:.4f}", file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_spacing(args) -> int:
    specs = args.schedule or ["massed=1x10", "spaced=100x10"]
    schedules = {}
    for spec in specs:
        name, gaps = experiments.parse_schedule(spec)
        if name in schedules:
            raise ValueError(f"schedule {name} given twice")
        schedules[name] = gaps
    params = Parameters().with_text_values(_param_pairs(args.param))
    rows = experiments.spacing(schedules, args.mode, args.test_time, params)
    _write(experiments.spacing_csv(rows), args.out)
    return EXIT_OK


def cmd_compile(args) -> int:
    model = _load(args.model)
    with open(args.trace, encoding="utf-8") as fh:
        trace = Trace.from_text(fh.read())
    rule = args.rule[0]
    if rule == "proceduralize" and len(args.rule) == 1:
        new = proceduralize(trace)
    elif rule == "compose" and len(args.rule) == 3:
        a, b = args.rule[1:]
        fired = trace.fired()
        if not any(x == a and y == b for x, y in zip(fired, fired[1:])):
            raise ActrError(f"{a} never fires immediately before {b} in the trace")
        new = compose(model.production(a), model.production(b))
    else:
        raise ValueError("--rule takes 'proceduralize' or 'compose A B'")
    if any(p.name == new.name for p in model.productions):
        raise ActrError(f"model already has a rule named {new.name}")
    model.productions.append(new)
    sys.stdout.write(format_model(model))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="actrsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a model file")
    p.add_argument("model")
    p.add_argument("--trace", action="store_true", help="print every trace event")
    p.add_argument("--trace-out", metavar="FILE", help="also save the trace to FILE")
    p.add_argument("--max-cycles", type=int, metavar="N")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="override a parameter (repeatable, last wins)")
    p.set_defaults(func=cmd_run)

    exp = sub.add_parser("experiment", help="power-law and spacing experiments")
    exp_sub = exp.add_subparsers(dest="experiment", required=True)
    pl = exp_sub.add_parser("powerlaw", help="latency under equally spaced practice")
    pl.add_argument("--d", type=float, default=0.5)
    pl.add_argument("--dt", type=float, default=10.0)
    pl.add_argument("--events", type=int, default=100)
    pl.add_argument("--probe", type=float, default=0.5,
                    help="probe delay after each use, as a fraction of dt")
    pl.add_argument("--out", metavar="CSV")
    pl.set_defaults(func=cmd_powerlaw)

    sp = exp_sub.add_parser("spacing", help="activation after differently spaced schedules")
    sp.add_argument("--mode", choices=("as91", "pa08", "constant"), default="as91")
    sp.add_argument("--schedule", action="append", metavar="NAME=GAPxEVENTS|NAME=g1,g2,...")
    sp.add_argument("--test-time", type=float, default=1e4,
                    help="delay between the last event and the test")
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--out", metavar="CSV")
    sp.set_defaults(func=cmd_spacing)

    c = sub.add_parser("compile", help="append a compiled rule to a model")
    c.add_argument("model")
    c.add_argument("trace", help="trace file written by 'run --trace-out'")
    c.add_argument("--rule", nargs="+", required=True, metavar="ARG",
                   help="'proceduralize' or 'compose A B'")
    c.set_defaults(func=cmd_compile)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"actrsim: no such file: {exc.filename or exc}", file=sys.stderr)
    except (ActrError, ValueError, KeyError) as exc:
        print(f"actrsim: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
