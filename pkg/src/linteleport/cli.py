"""Command-line front end.

Subcommands: run (seeded protocol trials), exact (outcome distribution and
success probability), fidelity (mean squared fidelity report), klm (outcome
count table), limit (continuous-limit sweep), verify (the acceptance
harness), report (CSV/JSON table plus figures).

Every ladder quantity is passed and printed as a doubled integer (a2x, b2x,
Q2x, P2x) so half-integer cases never round through floats.  Seeds are
explicit flags only; the same invocation always produces identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import analysis
from .qstate import flat_state, load_state, random_state
from .spectrum import HalfInt, Spectrum
from .teleport import ProtocolConfig, record_to_dict, run_trials


def _cell(v) -> str:
    """CSV cell rendering matching the JSON encoding of the same value."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit_rows(fmt: str, header: list[str], rows: list[dict]) -> None:
    if fmt == "json":
        for r in rows:
            print(json.dumps(r))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow([_cell(r[k]) for k in header])
    else:
        for r in rows:
            print("  ".join(f"{k}={_cell(r[k])}" for k in header))


def _sub_seeds(seed: int) -> tuple[int, int]:
    """Independent sub-streams: one for state draws, one for outcome draws."""
    children = np.random.SeedSequence(seed).spawn(2)
    return tuple(int(c.generate_state(1, np.uint64)[0]) for c in children)


def _build_config(args, parser) -> tuple[ProtocolConfig, int]:
    if args.a2x < 0 or args.b2x < args.a2x:
        parser.error("need b2x >= a2x >= 0")
    sa, sb = Spectrum(HalfInt(args.a2x)), Spectrum(HalfInt(args.b2x))
    state_seed, trial_seed = _sub_seeds(args.seed)
    source = getattr(args, "input", "flat")
    if source == "flat":
        state = flat_state(sa)
    elif source == "random":
        state = random_state(sa, np.random.default_rng(state_seed))
    else:
        try:
            state = load_state(source)
        except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
            print(f"error: cannot read state file {source!r}: {e}", file=sys.stderr)
            raise SystemExit(2)
        if state.modes != (sa,):
            print(
                f"error: state file {source!r} is not a single mode with "
                f"half-width {args.a2x}/2",
                file=sys.stderr,
            )
            raise SystemExit(2)
    return ProtocolConfig(a=sa, b=sb, input_state=state), trial_seed


def cmd_run(args, parser) -> int:
    cfg, trial_seed = _build_config(args, parser)
    records = run_trials(cfg, args.trials, trial_seed)
    header = ["Q2x", "P2x", "probability", "success", "fidelity_sq"]
    _emit_rows(args.format, header, [record_to_dict(r) for r in records])
    n = len(records)
    summary = {
        "trials": n,
        "success_rate": sum(r.success for r in records) / n,
        "mean_fidelity_sq": sum(r.fidelity_sq for r in records) / n,
    }
    if args.format == "json":
        print(json.dumps(summary))
    elif args.format == "csv":
        print("# " + ",".join(f"{k}={_cell(v)}" for k, v in summary.items()))
    else:
        print(
            f"summary: trials={n} success_rate={summary['success_rate']!r} "
            f"mean_fidelity_sq={summary['mean_fidelity_sq']!r}"
        )
    return 0


def cmd_exact(args, parser) -> int:
    cfg, _ = _build_config(args, parser)
    rep = analysis.success_report(
        cfg.a.half_width, cfg.b.half_width, cfg.input_state.amps
    )
    if args.format == "json":
        print(json.dumps(rep.to_dict()))
    else:
        header = ["a2x", "b2x", "Q2x", "p", "P_success"]
        rows = [
            {
                "a2x": rep.a.doubled,
                "b2x": rep.b.doubled,
                "Q2x": q.doubled,
                "p": float(p),
                "P_success": float(rep.p_success),
            }
            for q, p in sorted(rep.p_of_q.items())
        ]
        _emit_rows(args.format, header, rows)
    return 0


def cmd_fidelity(args, parser) -> int:
    if args.a2x < 0 or args.b2x < args.a2x:
        parser.error("need b2x >= a2x >= 0")
    rep = analysis.mean_squared_fidelity(HalfInt(args.a2x), HalfInt(args.b2x))
    if args.format == "json":
        print(json.dumps(rep.to_dict()))
    else:
        header = ["a2x", "b2x", "exact_success_part", "failure_overlap_part", "F_mean"]
        _emit_rows(args.format, header, [rep.to_dict()])
    return 0


def cmd_klm(args, parser) -> int:
    if args.n < 0:
        parser.error("need n >= 0")
    rows = [
        {"n": n, "klm_count": analysis.klm_outcome_count(n)}
        for n in range(args.n + 1)
    ]
    _emit_rows(args.format, ["n", "klm_count"], rows)
    return 0


def cmd_limit(args, parser) -> int:
    try:
        steps = [float(s) for s in args.steps.split(",") if s]
        sweep = analysis.continuous_limit_sweep(args.A, args.B, steps)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rows = [
        {"step": eps, "P_disc": p, "gap": gap, "P_cont": 1.0 - args.A / args.B}
        for eps, p, gap in sweep
    ]
    _emit_rows(args.format, ["step", "P_disc", "gap", "P_cont"], rows)
    return 0


def cmd_verify(args, parser) -> int:
    from .verify import run_verification

    return run_verification(quick=args.quick)


def cmd_report(args, parser) -> int:
    from .report import render_report

    if args.b2x_max < max(args.a2x_values):
        parser.error("need --b2x-max >= every a2x value")
    created = render_report(
        args.outdir, a2x_values=tuple(args.a2x_values), b2x_max=args.b2x_max
    )
    for path in created:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linteleport",
        description="Exact simulator for probabilistic qudit teleportation "
        "with sum/difference projective measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_input=True):
        sp.add_argument("--a2x", type=int, required=True,
                        help="doubled input half-width (qubit: 1)")
        sp.add_argument("--b2x", type=int, required=True,
                        help="doubled resource half-width")
        if with_input:
            sp.add_argument("--input", default="flat",
                            help="'flat', 'random', or a state-file path")
            sp.add_argument("--seed", type=int, default=0,
                            help="explicit seed for all randomness")
        sp.add_argument("--format", choices=("json", "csv", "pretty"),
                        default="pretty")

    sp = sub.add_parser("run", help="seeded protocol trials with a summary line")
    add_common(sp)
    sp.add_argument("--trials", type=int, required=True)
    sp.set_defaults(fn=cmd_run)

    sp = sub.add_parser("exact", help="exact outcome distribution and success probability")
    add_common(sp)
    sp.set_defaults(fn=cmd_exact)

    sp = sub.add_parser("fidelity", help="mean squared fidelity report")
    add_common(sp, with_input=False)
    sp.set_defaults(fn=cmd_fidelity)

    sp = sub.add_parser("klm", help="photon-counting outcome count table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    sp.set_defaults(fn=cmd_klm)

    sp = sub.add_parser("limit", help="continuous-limit discretization sweep")
    sp.add_argument("--A", type=float, required=True)
    sp.add_argument("--B", type=float, required=True)
    sp.add_argument("--steps", required=True, help="comma-separated step sizes")
    sp.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    sp.set_defaults(fn=cmd_limit)

    sp = sub.add_parser("verify", help="run every acceptance check")
    sp.add_argument("--quick", action="store_true",
                    help="smaller sampling sizes, same checks")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("report", help="summary table (CSV/JSON) plus figures")
    sp.add_argument("--outdir", default="report")
    sp.add_argument("--a2x-values", dest="a2x_values", type=int, nargs="+",
                    default=[1, 2, 3, 4])
    sp.add_argument("--b2x-max", dest="b2x_max", type=int, default=9)
    sp.set_defaults(fn=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, parser)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
