"""Command-line front end.

Exit codes, shared by every subcommand:
    0  success / solvable / certificate verifies
    1  unsolvable / certificate fails
    2  parse or usage error
    3  diagram validation failure
    4  capacity exceeded
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagrams import random_diagram, validate_diagram
from .documents import (
    parse_certificate_text,
    parse_diagram_text,
    render_certificate,
    render_diagram,
    render_document,
)
from .errors import (
    CapacityError,
    DimensionError,
    DocumentError,
    ValidationError,
)
from .forms import gauss_invariant
from .gf2 import Unsolvable
from .solver import solve_twists, verify_certificate

GAUSS_DIMENSION_LIMIT = 24


def _read(path: str, what: str):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {what} {path!r}: {exc.strerror or exc}") from exc


def _print_report(report, as_json: bool, heading: str):
    if as_json:
        print(render_document(report.as_dict()), end="")
        return
    print(f"{heading}: {'PASS' if report.passed else 'FAIL'}")
    for v in report.violations:
        print(f"violation {v.rule}: {v.detail}")
    if "lagrangian" in report.info:
        print(f"lagrangian: {'yes' if report.info['lagrangian'] else 'no'}")


def cmd_validate(args) -> int:
    diagram = parse_diagram_text(_read(args.file, "diagram"))
    report = validate_diagram(diagram)
    _print_report(report, args.json, "validation")
    return 0 if report.passed else 3


def cmd_solve(args) -> int:
    diagram = parse_diagram_text(_read(args.file, "diagram"))
    policy = "minimal_weight" if args.minimal else "first"
    outcome = solve_twists(diagram, policy=policy)
    if isinstance(outcome, Unsolvable):
        if args.json:
            print(render_document({"solvable": False, "witness": str(outcome.witness)}), end="")
        else:
            print("solvable: no")
            print(f"witness: {outcome.witness}")
        return 1
    text = render_certificate(outcome)
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        print(text, end="")
    else:
        print("solvable: yes")
        print(f"epsilon: {outcome.epsilon}")
        print(f"twists: {list(outcome.twist_indices)}")
        print(f"kernel_dimension: {len(outcome.solution_family)}")
        print(f"transcript_b: {[v.q for v in outcome.transcript.b_values]}")
        print(f"transcript_a: {[v.q for v in outcome.transcript.a_values]}")
    return 0


def cmd_verify(args) -> int:
    diagram = parse_diagram_text(_read(args.file, "diagram"))
    certificate = parse_certificate_text(_read(args.cert, "certificate"))
    try:
        report = verify_certificate(diagram, certificate)
    except DimensionError as exc:
        raise DocumentError(f"certificate does not match the diagram: {exc}") from exc
    _print_report(report, False, "certificate")
    return 0 if report.passed else 1


def cmd_invariant(args) -> int:
    diagram = parse_diagram_text(_read(args.file, "diagram"))
    if diagram.dimension > GAUSS_DIMENSION_LIMIT:
        raise CapacityError(
            f"dimension {diagram.dimension} exceeds the invariant limit {GAUSS_DIMENSION_LIMIT}"
        )
    report = validate_diagram(diagram)
    if not report.passed:
        _print_report(report, False, "validation")
        return 3
    beta = gauss_invariant(diagram.form, limit=GAUSS_DIMENSION_LIMIT)
    print(f"dimension: {diagram.dimension}")
    print(f"gauss_invariant: {beta}")
    print(f"lagrangian: {'yes' if report.info['lagrangian'] else 'no'}")
    return 0


def cmd_generate(args) -> int:
    diagram = random_diagram(
        seed=args.seed,
        genus=args.genus,
        targets_nonzero=args.nonzero_targets,
        scramble_length=args.scramble,
    )
    print(render_diagram(diagram), end="")
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcert",
        description="Validate, solve, and certify twist systems on Heegaard diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every diagram invariant")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="find a twist subset zeroing the form on the b-curves")
    p.add_argument("file")
    p.add_argument("--minimal", action="store_true", help="fewest twists instead of first solution")
    p.add_argument("--json", action="store_true", help="print the certificate document")
    p.add_argument("--out", metavar="PATH", help="also write the certificate document here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="recompute a certificate from scratch")
    p.add_argument("file")
    p.add_argument("--cert", required=True, metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariant", help="exponential-sum invariant of the diagram's form")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("generate", help="emit a deterministic pseudo-random diagram")
    p.add_argument("--genus", type=_positive_int, required=True)
    p.add_argument("--seed", type=_non_negative_int, default=0)
    p.add_argument("--scramble", type=_non_negative_int, default=None,
                   help="twist-word length (default 4 * genus)")
    p.add_argument("--nonzero-targets", action="store_true",
                   help="force at least one nonzero b-value")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
