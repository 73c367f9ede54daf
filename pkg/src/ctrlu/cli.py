"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (verification or lemma check
failed), 2 input error.
"""

import argparse
import json
import sys

from .circuit import CircuitParseError, from_json, matrix_from_json, render_ascii
from .classify import DEFAULT_EPS, classify
from .falsify import DEFAULT_RESTARTS, THRESHOLD, falsify
from .linalg import NAMED, NonUnitaryError, check_unitary, phase_gate, ry, rz
from .qasm import to_qasm3
from .synth import synth
from .verify import lemma_report, verify


class InputError(Exception):
    pass


def _add_matrix_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="PATH", help="matrix JSON file")
    src.add_argument("--name", choices=sorted(NAMED), help="named matrix")
    src.add_argument("--rz", type=float, metavar="THETA")
    src.add_argument("--ry", type=float, metavar="THETA")
    src.add_argument("--phase", type=float, metavar="PHI", help="diag(1, e^{i phi})")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)


def _common(p):
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--out", metavar="PATH", help="write JSON here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="ctrlu", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="class and minimal gate count of controlled-U")
    _add_matrix_args(p)
    _common(p)

    p = sub.add_parser("synth", help="optimal circuit for controlled-U")
    _add_matrix_args(p)
    _common(p)
    p.add_argument("--qasm", metavar="PATH", help="also write OpenQASM 3")
    p.add_argument("--ascii", action="store_true", help="print a wire diagram")

    p = sub.add_parser("verify", help="check a circuit JSON against controlled-U")
    _add_matrix_args(p)
    _common(p)
    p.add_argument("--circuit", metavar="PATH", required=True)
    p.add_argument("--metric", choices=("exact", "phase"), default="exact")

    p = sub.add_parser("falsify", help="search all circuits with at most --gates gates")
    _add_matrix_args(p)
    _common(p)
    p.add_argument("--gates", type=int, required=True)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--metric", choices=("exact", "phase"), default="phase")
    p.add_argument("--threshold", type=float, default=THRESHOLD)
    p.add_argument("--exhaustive", action="store_true",
                   help="search dominated templates too")

    p = sub.add_parser("lemmas", help="circuit identities and the entanglement criterion")
    _common(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    return parser


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_matrix(args):
    if args.matrix:
        try:
            obj = json.loads(_read_json(args.matrix))
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {args.matrix}: {exc}") from None
        m = matrix_from_json(obj)
    elif args.name:
        m = NAMED[args.name].copy()
    elif args.rz is not None:
        m = rz(args.rz)
    elif args.ry is not None:
        m = ry(args.ry)
    else:
        m = phase_gate(args.phase)
    return check_unitary(m, atol=1e-8, name="input matrix")


def _emit(args, data):
    text = json.dumps(data, indent=2 if args.pretty else None, ensure_ascii=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _warn_boundary(report):
    if report.near_boundary:
        print(f"warning: a class margin is below {100 * report.eps:g}; "
              "the decision follows the tr U, tr UX, det U precedence", file=sys.stderr)


def run_classify(args):
    u = load_matrix(args)
    report = classify(u, args.eps)
    _warn_boundary(report)
    _emit(args, report.to_dict())
    return 0


def run_synth(args):
    u = load_matrix(args)
    _warn_boundary(classify(u, args.eps))
    result = synth(u, args.eps)
    check = verify(result.circuit, u, "exact")
    data = result.to_dict()
    data["verified"] = check.passed
    _emit(args, data)
    if args.qasm:
        with open(args.qasm, "w", encoding="utf-8") as fh:
            fh.write(to_qasm3(result.circuit))
    if args.ascii:
        print(render_ascii(result.circuit))
    return 0 if check.passed else 1


def run_verify(args):
    u = load_matrix(args)
    circuit = from_json(_read_json(args.circuit))
    report = verify(circuit, u, args.metric)
    _emit(args, report.to_dict())
    return 0 if report.passed else 1


def run_falsify(args):
    u = load_matrix(args)
    if not 0 <= args.gates <= 7:
        raise InputError(f"--gates must be in [0, 7], got {args.gates}")
    if args.restarts < 1:
        raise InputError("--restarts must be positive")
    report = falsify(u, args.gates, args.restarts, args.seed, args.metric,
                     args.threshold, prune=not args.exhaustive)
    _emit(args, report.to_dict())
    return 0


def run_lemmas(args):
    if args.trials < 1:
        raise InputError("--trials must be positive")
    report = lemma_report(args.trials, args.seed)
    _emit(args, report)
    return 0 if report["failures"] == 0 else 1


COMMANDS = {
    "classify": run_classify,
    "synth": run_synth,
    "verify": run_verify,
    "falsify": run_falsify,
    "lemmas": run_lemmas,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    if hasattr(args, "eps") and not 0 < args.eps <= 1e-3:
        print("error: --eps must lie in (0, 1e-3]", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (InputError, CircuitParseError, NonUnitaryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
