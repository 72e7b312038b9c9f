"""Command-line front end.

Subcommands: graph, twiddle, emit, sim, verify, lint, prompts.  Exit codes
are the machine contract: 0 success, 1 verification/lint/sim failure,
2 usage error.  Human-readable output goes to stdout, diagnostics to
stderr.  The same argv and seed always produce identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import codegen, lint, oracle, prompts, sim, twiddle
from .fixedpoint import ScalingMode
from .flowgraph import build_graph, elaborate, render_dot, render_text


def _power_of_two(text: str) -> int:
    value = int(text)
    if not twiddle.is_power_of_two(value) or not 2 <= value <= 4096:
        raise argparse.ArgumentTypeError(
            f"{value} is not a power of two in [2, 4096]"
        )
    return value


def _width(text: str) -> int:
    value = int(text)
    if not 4 <= value <= 32:
        raise argparse.ArgumentTypeError(f"width {value} outside [4, 32]")
    return value


def _scaling(name: str) -> ScalingMode:
    return ScalingMode.PER_STAGE_HALVING if name == "half" else ScalingMode.NONE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fftgen",
        description="Radix-2 FFT Verilog generator, simulator, and verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="export the dataflow graph")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--elaborate", action="store_true", help="recurse to primitives")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("twiddle", help="export the rotation-constant table")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--width", type=_width, default=16)
    p.add_argument("--format", choices=("table", "records", "hdl"), default="table")
    p.set_defaults(func=cmd_twiddle)

    p = sub.add_parser("emit", help="write the Verilog file set")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--width", type=_width, default=16)
    p.add_argument("--delay", type=int, default=1, help="complex-multiplier DELAY")
    p.add_argument("--sync", choices=("on", "off"), default="on")
    p.add_argument("--order", choices=("natural", "raw"), default="natural")
    p.add_argument("--scaling", choices=("half", "none"), default="half")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("sim", help="run the dataflow simulator")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--width", type=_width, default=16)
    p.add_argument("--scaling", choices=("half", "none"), default="half")
    p.add_argument("--sync", choices=("on", "off"), default="on")
    p.add_argument("--input", choices=("impulse", "constant", "random"), default="impulse")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jitter", type=int, default=0)
    p.add_argument("--latency-butterfly", type=int, default=1)
    p.add_argument("--latency-cmult", type=int, default=1)
    p.add_argument("--raw-order", action="store_true", help="skip the output permutation")
    p.add_argument("--trace", action="store_true", help="print the full tick table")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("verify", help="simulator vs independent references")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--width", type=_width, default=16)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scaling", choices=("half", "none"), default="half")
    p.add_argument("--max-lsb", type=float, default=oracle.VERIFY_MAX_LSB)
    p.add_argument("--rms-lsb", type=float, default=oracle.VERIFY_RMS_LSB)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lint", help="structural checks over Verilog files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("prompts", help="write the replayable prompt pack")
    p.add_argument("--n-target", type=_power_of_two, required=True)
    p.add_argument("--n-example", type=_power_of_two, default=8)
    p.add_argument("--width", type=_width, default=16)
    p.add_argument("--delay", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prompts)

    return parser


def cmd_graph(args) -> int:
    g = elaborate(args.n) if args.elaborate else build_graph(args.n)
    render = render_dot if args.format == "dot" else render_text
    sys.stdout.write(render(g))
    return 0


def cmd_twiddle(args) -> int:
    entries = twiddle.twiddle_table(args.n, args.width)
    if args.format == "table":
        sys.stdout.write(twiddle.format_table(entries))
    elif args.format == "records":
        json.dump(twiddle.table_records(entries), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(twiddle.format_hdl_localparams(entries))
    return 0


def cmd_emit(args) -> int:
    cfg = codegen.EmitConfig(
        n=args.n,
        width=args.width,
        cmult_delay=args.delay,
        sync=args.sync == "on",
        order=args.order,
        scaling=_scaling(args.scaling),
    )
    written = codegen.write_fft_files(cfg, args.out)
    for name, path in written.items():
        print(f"wrote {path}")
    return 0


def _stimulus(args) -> list:
    if args.input == "impulse":
        return oracle.impulse_vector(args.n, args.width)
    if args.input == "constant":
        return oracle.constant_vector(args.n, args.width)
    rng = random.Random(args.seed)
    return oracle.random_vector(args.n, args.width, rng, full_scale_disk=True)


def cmd_sim(args) -> int:
    cfg = sim.SimConfig(
        width=args.width,
        butterfly_latency=args.latency_butterfly,
        cmult_latency=args.latency_cmult,
        scaling=_scaling(args.scaling),
        sync=sim.SyncMode.STAGE_CHAINED if args.sync == "on" else sim.SyncMode.DISABLED,
        seed=args.seed,
        jitter=args.jitter,
        natural_order=not args.raw_order,
    )
    x = _stimulus(args)
    y, trace = sim.simulate(elaborate(args.n), x, cfg)
    order = "natural" if cfg.natural_order else "raw"
    print(f"outputs ({order} order):")
    for i, s in enumerate(y):
        print(f"  bin {i:>3d}: ({s.re:>7d}, {s.im:>7d})")
    print(f"design done at tick {trace.done_tick}")
    if args.trace:
        sys.stdout.write(trace.render())
    report = sim.detect_violations(trace)
    sys.stdout.write(report.render())
    return 1 if report.total else 0


def cmd_verify(args) -> int:
    mode = _scaling(args.scaling)
    g = elaborate(args.n)
    cfg = sim.SimConfig(width=args.width, scaling=mode)
    rng = random.Random(args.seed)
    mismatches = 0
    worst, sq_acc, count = 0.0, 0.0, 0
    for _ in range(args.trials):
        x = oracle.random_vector(args.n, args.width, rng, full_scale_disk=True)
        got, _ = sim.simulate(g, x, cfg)
        ref = oracle.fft_fixed_reference(x, mode)
        if got != ref:
            mismatches += 1
            continue
        if mode is ScalingMode.PER_STAGE_HALVING:
            rep = oracle.compare_outputs(
                got, oracle.dft_float([s.to_complex() for s in x]), 1.0 / args.n
            )
            worst = max(worst, rep.max_abs_lsb)
            sq_acc += rep.rms_lsb**2 * 2 * args.n
            count += 2 * args.n
    print(f"{args.trials} trials, n={args.n}, width={args.width}, scaling={args.scaling}")
    print(f"simulator vs fixed reference: {mismatches} mismatching trial(s)")
    ok = mismatches == 0
    if mode is ScalingMode.PER_STAGE_HALVING and count:
        import math

        rms = math.sqrt(sq_acc / count)
        print(f"float fidelity vs direct DFT/n: max {worst:.3f} LSB, rms {rms:.3f} LSB")
        print(f"thresholds: max <= {args.max_lsb}, rms <= {args.rms_lsb}")
        ok = ok and worst <= args.max_lsb and rms <= args.rms_lsb
    print("VERIFY PASS" if ok else "VERIFY FAIL")
    return 0 if ok else 1


def cmd_lint(args) -> int:
    any_error = False
    total = 0
    for name in args.files:
        text = Path(name).read_text(encoding="utf-8")
        diags = lint.lint_structural(text)
        total += len(diags)
        for d in diags:
            print(f"{name}:{d.render()}", file=sys.stderr)
        any_error = any_error or lint.has_errors(diags)
    print(f"{total} diagnostic(s) in {len(args.files)} file(s)")
    return 1 if any_error else 0


def cmd_prompts(args) -> int:
    paths = prompts.write_prompt_pack(
        args.n_target,
        args.out,
        width=args.width,
        cmult_delay=args.delay,
        n_example=args.n_example,
    )
    for path in paths:
        print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    raise SystemExit(main())
