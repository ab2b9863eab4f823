"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 bad input file.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from typing import Sequence

from . import __version__
from .bipartition import Locus, all_loci, enumerate_loci
from .four_qubit import GENERIC_DISCLAIMER, ZERO_THRESHOLD, fingerprint
from .harness import CHECKS, HarnessConfig, parse_float_list, run_checks
from .report import SPOT_CHECK_CAP, full_report
from .states import PureState, StateFormatError, StateLabel, load_state, make_state, write_amplitudes

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_MAX_QUBITS = 12


class UsageError(Exception):
    pass


def _add_state_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", help="ghz, w, psi-plus, psi-minus, cluster4, basis:X or random:SEED")
    src.add_argument("--input", metavar="FILE", help="amplitude file ('N' then 'X re im' lines)")
    p.add_argument("--qubits", type=int, help="qubit count for --state (4 for the four-qubit states)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubit-monotones",
        description="Bipartite entanglement monotones D_n and linear entropies S_n of N-qubit pure states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="D_n, S_n and Q_1 for every locus")
    _add_state_args(p)
    p.add_argument("--locus", action="append", default=[], help="only this locus, e.g. 1,3 (repeatable)")
    p.add_argument("--n", type=int, action="append", default=[], help="only loci of this size (repeatable)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS,
                   help=f"refuse larger states (default {DEFAULT_MAX_QUBITS})")
    p.add_argument("--no-spot-check", action="store_true", help="skip the minor-enumeration cross-check")

    p = sub.add_parser("fingerprint", help="four-qubit D_2 triple and zero-pattern group")
    _add_state_args(p)
    p.add_argument("--threshold", type=float, default=ZERO_THRESHOLD)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("make-state", help="write the amplitude file of a built-in state")
    p.add_argument("--state", required=True)
    p.add_argument("--qubits", type=int)
    p.add_argument("--output", "-o", metavar="FILE", help="default: stdout")

    p = sub.add_parser("verify", help="randomized invariance and monotonicity checks")
    p.add_argument("--config", metavar="FILE", help="key = value file; flags override it")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--start", type=int, help="index of the first trial (for replaying one trial)")
    p.add_argument("--min-qubits", type=int)
    p.add_argument("--max-qubits", type=int)
    p.add_argument("--nu", help="comma-separated powers in (0, 1], e.g. 0.25,0.5,1")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--only", action="append", choices=CHECKS, help="run only this check (repeatable)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def _load(args: argparse.Namespace) -> tuple[PureState, str]:
    if args.input is not None:
        if args.qubits is not None:
            raise UsageError("--qubits applies to --state, not --input")
        state, _ = load_state(args.input)
        return state, args.input
    try:
        label = StateLabel.parse(args.state, args.qubits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return make_state(label), str(label)


def _select_loci(args: argparse.Namespace, N: int) -> list[Locus]:
    try:
        if args.locus:
            return [Locus.parse(text, N) for text in args.locus]
        if args.n:
            return [loc for n in sorted(set(args.n)) for loc in enumerate_loci(N, n)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return all_loci(N)


def cmd_compute(args: argparse.Namespace, out) -> int:
    if args.qubits is not None and args.qubits > args.max_qubits:
        raise UsageError(f"{args.qubits} qubits exceeds --max-qubits {args.max_qubits}")
    state, name = _load(args)
    if state.num_qubits > args.max_qubits:
        raise UsageError(f"{state.num_qubits} qubits exceeds --max-qubits {args.max_qubits}")
    if state.num_qubits < 2:
        raise UsageError("a single qubit has no bipartition")
    loci = _select_loci(args, state.num_qubits)
    report = full_report(state, name, loci, spot_check_cap=0 if args.no_spot_check else SPOT_CHECK_CAP)
    out.write(report.to_json() + "\n" if args.format == "json" else report.to_table())
    return EXIT_OK


def cmd_fingerprint(args: argparse.Namespace, out) -> int:
    state, name = _load(args)
    if state.num_qubits != 4:
        raise UsageError(f"fingerprint needs a four-qubit state, got {state.num_qubits} qubits")
    fp = fingerprint(state, threshold=args.threshold)
    if args.format == "json":
        out.write(json.dumps({"state": name, **fp.to_dict()}, indent=2) + "\n")
        return EXIT_OK
    labels = ("D2(1,2)", "D2(1,3)", "D2(1,4)")
    out.write(f"state: {name}\n")
    for lab, v, z in zip(labels, fp.d2_values, fp.zero_pattern):
        out.write(f"{lab}: {v:.6f}{'  (zero)' if z else ''}\n")
    out.write(f"zero_pattern: {''.join('0' if z else '1' for z in fp.zero_pattern)}\n")
    out.write(f"group: {fp.group.value}\n")
    out.write(f"families: {', '.join(fp.families) or '(none; two-zero pattern is outside the grouping)'}\n")
    out.write(f"note: {GENERIC_DISCLAIMER}\n")
    return EXIT_OK


def cmd_make_state(args: argparse.Namespace, out) -> int:
    try:
        state = make_state(StateLabel.parse(args.state, args.qubits))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_amplitudes(state, fh)
    else:
        write_amplitudes(state, out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out) -> int:
    try:
        overrides = dict(
            trials=args.trials,
            seed=args.seed,
            start=args.start,
            min_qubits=args.min_qubits,
            max_qubits=args.max_qubits,
            nus=parse_float_list(args.nu) if args.nu else None,
            tolerance=args.tolerance,
            checks=tuple(args.only) if args.only else None,
        )
        if args.config:
            cfg = HarnessConfig.from_file(args.config, **overrides)
        else:
            cfg = HarnessConfig(**{k: v for k, v in overrides.items() if v is not None})
    except (ValueError, configparser.Error) as exc:
        raise UsageError(str(exc)) from None
    report = run_checks(cfg)
    if args.format == "json":
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        for r in report.results:
            status = "PASS" if r.ok else "FAIL"
            out.write(
                f"{status} {r.name}: {r.trials} trials, {r.evaluations} evaluations, "
                f"{r.failures} failures, max error {r.max_error:.3e}\n"
            )
            for key, value in r.extra.items():
                out.write(f"    {key}: {value}\n")
        first = next((r.first_counterexample for r in report.results if not r.ok), None)
        if first is not None:
            out.write("first counterexample:\n")
            out.write(json.dumps(first, indent=2) + "\n")
            out.write(f"replay: {first['command']}\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {
    "compute": cmd_compute,
    "fingerprint": cmd_fingerprint,
    "make-state": cmd_make_state,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{parser.prog} {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except (StateFormatError, OSError) as exc:
        err.write(f"{parser.prog} {args.command}: input error: {exc}\n")
        return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
