"""Command-line front end.

Exit codes: 0 on success, 1 on a domain or validation error, 2 on a usage
error.  Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from bnumbers import encoding, entropy, experiments, machine, reduction
from bnumbers.errors import BNumberError

SCHEMES = {s.value: s for s in encoding.Scheme}
CONVENTIONS = {c.value: c for c in encoding.Convention}


def fmt(x: float) -> str:
    return format(x, ".9g")


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {value}")
    return value


def _read_machine(path: str) -> machine.TuringMachine:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BNumberError(f"cannot read machine file: {exc}") from None
    return machine.parse_machine(text)


def cmd_encode(args) -> int:
    print(encoding.encode(args.value, SCHEMES[args.scheme], CONVENTIONS[args.sign]))
    return 0


def cmd_decode(args) -> int:
    print(encoding.decode(encoding.BitString.parse(args.bits), SCHEMES[args.scheme]))
    return 0


def cmd_entropy(args) -> int:
    print(fmt(entropy.binary_entropy(entropy.parse_probability(args.p))))
    return 0


def cmd_bounds(args) -> int:
    bounds = entropy.entropy_bounds(args.b)
    print(f"lower={fmt(bounds.lower)} upper={fmt(bounds.upper)}")
    return 0


def cmd_invert(args) -> int:
    print(fmt(entropy.inverse_entropy(entropy.parse_entropy(args.epsilon))))
    return 0


def cmd_reduce(args) -> int:
    epsilon = entropy.parse_entropy(args.epsilon)
    if args.bits is not None:
        padded = reduction.apply_mapping(encoding.BitString.parse(args.bits), epsilon)
        print(f"padding={padded.padding}")
        print(f"bits={padded}")
        return 0
    if args.machine is None or args.input is None:
        raise BNumberError("reduce needs --bits, or --machine together with --input")
    m = _read_machine(args.machine)
    c = machine.computation_for(m, args.input, args.step_limit)
    reduced, plan = reduction.reduce_computation(c, epsilon, args.fill)
    before = machine.computation_uncertainty(c)
    after = machine.computation_uncertainty(reduced)
    verdict = reduction.execute(reduced, args.step_limit).verdict
    print(f"original_length={plan.original_length} padding={plan.bits_to_add}")
    print(f"uncertainty={fmt(before.entropy)} achieved={fmt(after.entropy)} target={fmt(epsilon)}")
    print(f"output={reduced.output_bit} verdict={verdict.value}")
    return 0


def cmd_simulate(args) -> int:
    m = _read_machine(args.machine)
    result = machine.run(m, args.input, args.step_limit)
    print(f"verdict={result.verdict.value} steps={result.steps} tape={result.final_tape}")
    return 0


def cmd_worst_case(args) -> int:
    m = _read_machine(args.machine)
    w = machine.worst_case_time(m, args.n, args.step_limit, parallel=args.parallel)
    line = f"n={w.n} t_max={w.t_max} witness={w.witness}"
    if w.hit_limit:
        line += " step_limit_reached"
    print(line)
    return 0


def _write(report: experiments.ExperimentReport, out: str | None) -> None:
    if out is None:
        return
    if out == "-":
        experiments.emit_csv(report, sys.stdout)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        experiments.emit_csv(report, fh)


def cmd_experiment(args) -> int:
    # a CSV on stdout pushes the summary to stderr so the CSV stays clean
    note = sys.stderr if args.out == "-" else sys.stdout
    if args.theorem == 3:
        if args.max_n is None:
            raise BNumberError("--theorem 3 needs --max-n")
        efficient, length = experiments.theorem3_sweep(args.max_n)
        reports = {"efficient": efficient, "length": length}
        _write(reports[args.case], args.out)
        if args.out_dir:
            out_dir = Path(args.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            for case, report in reports.items():
                _write(report, str(out_dir / f"theorem3_{case}.csv"))
        for case, report in reports.items():
            print(f"{case}: {experiments.summary(report)}", file=note)
        return 0
    if args.max_b is None:
        raise BNumberError("--theorem 4 needs --max-b")
    m = _read_machine(args.machine) if args.machine else None
    report = experiments.theorem4_sweep(args.max_b, machine=m)
    _write(report, args.out)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write(report, str(out_dir / "theorem4.csv"))
    print(experiments.summary(report), file=note)
    return 0


def cmd_vonneumann(args) -> int:
    print(encoding.von_neumann(args.n, ascii=args.ascii))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bnum", description="b-number encodings and entropy reduction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="write a natural number as payload|sign")
    p.add_argument("--value", type=_natural, required=True)
    p.add_argument("--scheme", choices=SCHEMES, default="binary")
    p.add_argument("--sign", choices=CONVENTIONS, default="normal")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="read the value of a payload|sign string")
    p.add_argument("--bits", required=True)
    p.add_argument("--scheme", choices=SCHEMES, default="binary")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("entropy", help="binary entropy I(p)")
    p.add_argument("--p", required=True, help="decimal or fraction, e.g. 0.25 or 1/3")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("bounds", help="uncertainty bounds of a b-number")
    p.add_argument("--b", type=_natural, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("invert", help="probability in [0, 0.5] with the given entropy")
    p.add_argument("--epsilon", required=True, help="decimal or I(1/K)")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("reduce", help="pad a representation or computation below an uncertainty target")
    p.add_argument("--epsilon", required=True, help="decimal or I(1/K)")
    p.add_argument("--bits")
    p.add_argument("--machine")
    p.add_argument("--input", type=_natural, help="input value for --machine")
    p.add_argument("--fill", choices=(reduction.CONSTANT_FILL, reduction.PROGRAM_FILL),
                   default=reduction.CONSTANT_FILL)
    p.add_argument("--step-limit", type=_natural, default=machine.DEFAULT_STEP_LIMIT)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("simulate", help="run a machine on a bit string")
    p.add_argument("--machine", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--step-limit", type=_natural, default=machine.DEFAULT_STEP_LIMIT)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("worst-case", help="worst-case step count over all inputs of length n")
    p.add_argument("--machine", required=True)
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--step-limit", type=_natural, default=machine.DEFAULT_STEP_LIMIT)
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_worst_case)

    p = sub.add_parser("experiment", help="padding-cost growth sweeps")
    p.add_argument("--theorem", type=int, choices=(3, 4), required=True)
    p.add_argument("--max-n", type=_natural)
    p.add_argument("--max-b", type=_natural)
    p.add_argument("--case", choices=("efficient", "length"), default="length",
                   help="which theorem 3 report --out receives")
    p.add_argument("--machine", help="machine file for the theorem 4 baseline (default M1)")
    p.add_argument("--out", help="CSV path, or - for stdout")
    p.add_argument("--out-dir", help="write theorem3_*.csv / theorem4.csv into this directory")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("vonneumann", help="von Neumann ordinal as nested sets")
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--ascii", action="store_true", help="write the empty set as {}")
    p.set_defaults(func=cmd_vonneumann)

    return parser


def main(argv: list[str] | None = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except BNumberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
