"""Command-line front end.

Subcommands::

    qcorr sweep  --model cavity --p 0.5 --theta 0.785398 [--t-max 12 --steps 1200]
    qcorr state  rho.json [--measured B]
    qcorr figure f1b [--out f1b.csv]

Exit codes: 0 ok, 1 usage or malformed input, 2 physics/validation
failure, 3 I/O failure.
"""
import argparse
import json
import sys

from .measures import correlation_report
from .models import Model
from .states import MatrixFormatError, PhysicsError, matrix_from_json, validate
from .sweep import PRESETS, SweepSpec, format_summary, preset_spec, render, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _values(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    parser = _Parser(prog="qcorr", description="Two-qubit quantum and classical correlations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(p):
        p.add_argument("--measured", choices=("A", "B"), default="B", help="qubit measured for discord (default B)")
        p.add_argument("--out", help="output file (default: stdout for sweep, <preset>.<format> for figure)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    sw = sub.add_parser("sweep", help="sweep a model over time, purity or coupling")
    sw.add_argument("--model", choices=[m.value for m in Model], required=True)
    sw.add_argument("--p", type=float, required=True, help="purity of the initial Werner state")
    sw.add_argument("--theta", type=float, required=True, help="superposition angle in radians")
    sw.add_argument("--gamma", type=float, default=0.0, help="dephasing coupling gamma/lambda")
    sw.add_argument("--t-max", type=float, default=12.0, help="final lambda*t")
    sw.add_argument("--steps", type=int, default=1200, help="time grid points, endpoint inclusive")
    sw.add_argument("--vary", choices=("time", "purity", "coupling"), default="time")
    sw.add_argument("--values", type=_values, default=(), help="comma-separated p or gamma/lambda values")
    output_flags(sw)

    st = sub.add_parser("state", help="all measures for one density matrix in JSON")
    st.add_argument("file", help="4x4 nested [re, im] pairs, basis |00>,|01>,|10>,|11>")
    st.add_argument("--measured", choices=("A", "B"), default="B")

    fg = sub.add_parser("figure", help="run a frozen figure preset")
    fg.add_argument("preset", help=f"one of: {', '.join(PRESETS)}")
    fg.add_argument("--t-max", type=float, default=None)
    fg.add_argument("--steps", type=int, default=None)
    output_flags(fg)
    return parser


def _emit(spec, jobs):
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    result = run_sweep(spec, jobs=jobs)
    data = render(result)
    summary = format_summary(result)
    if spec.out:
        try:
            with open(spec.out, "w", newline="\n") as fh:
                fh.write(data)
        except OSError as exc:
            raise OSError(f"cannot write {spec.out}: {exc.strerror or exc}") from exc
        sys.stdout.write(f"wrote {len(result.series) * spec.steps} rows to {spec.out}\n")
        sys.stdout.write(summary)
    else:
        sys.stdout.write(data)
        sys.stderr.write(summary)


def cmd_sweep(args):
    try:
        spec = SweepSpec(
            model=args.model,
            p=args.p,
            theta=args.theta,
            gamma_over_lambda=args.gamma,
            t_max=args.t_max,
            steps=args.steps,
            vary=args.vary,
            values=args.values,
            measured=args.measured,
            out=args.out,
            fmt=args.fmt,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(spec, args.jobs)


def cmd_figure(args):
    try:
        spec = preset_spec(
            args.preset,
            t_max=args.t_max,
            steps=args.steps,
            measured=args.measured,
            fmt=args.fmt,
            out=args.out or f"{args.preset}.{args.fmt}",
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(spec, args.jobs)


def cmd_state(args):
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {args.file}: {exc.strerror or exc}") from exc
    try:
        mat = matrix_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{args.file}: invalid JSON ({exc})") from exc
    except MatrixFormatError as exc:
        raise MatrixFormatError(f"{args.file}: {exc}") from exc
    report = validate(mat)
    if not report.ok:
        raise PhysicsError(report)
    rep = correlation_report(report.state, measured=args.measured)
    out = {
        "mutual_info": rep.mutual_info,
        "classical_corr": rep.classical_corr,
        "discord": rep.discord,
        "gmqd": rep.gmqd,
        "negativity": rep.negativity,
        "argmax_basis": {"theta_m": rep.argmax_basis.theta_m, "phi_m": rep.argmax_basis.phi_m},
        "measured": args.measured,
        "converged": rep.converged,
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")


COMMANDS = {"sweep": cmd_sweep, "state": cmd_state, "figure": cmd_figure}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (UsageError, MatrixFormatError) as exc:
        sys.stderr.write(f"qcorr: error: {exc}\n")
        return EXIT_USAGE
    except PhysicsError as exc:
        sys.stderr.write(f"qcorr: physics error: {exc}\n")
        sys.stderr.write(json.dumps(exc.report.as_dict(), indent=2) + "\n")
        return EXIT_PHYSICS
    except OSError as exc:
        sys.stderr.write(f"qcorr: I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
