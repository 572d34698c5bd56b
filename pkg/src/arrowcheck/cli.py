"""Command-line front end.

Exit codes follow one contract everywhere: 0 when the requested property
holds (or the command simply succeeded), 1 when a property fails and a
witness is printed, 2 on usage or input errors.  All output is
byte-deterministic for fixed inputs, flags, and seeds.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .characterization import (
    BlockStructure,
    FailureCertificate,
    classify,
    count_characterized,
    enumerate_iia,
    generate,
)
from .constitution import IiaConstitution, parse_constitution, serialize_constitution
from .errors import (
    CapExceededError,
    ConstitutionFormatError,
    DEFAULT_CAP,
    IndeterminateWitnessError,
)
from .pivotal import paradox_witness
from .probability import distance_to_simple_family, exact_paradox_probability, mc_paradox_probability
from .properties import CHECKERS, PropertyReport
from .rankings import Profile

PROPERTY_ORDER = ["transitivity", "iia", "unanimity", "ni", "wni", "nd", "dictator"]
FILTER_NAMES = {
    "transitive": "transitivity",
    "unanimity": "unanimity",
    "ni": "ni",
    "wni": "wni",
    "nd": "nd",
    "dictator": "dictator",
}


def _print_profile(p: Profile) -> None:
    for index, ranking in enumerate(p.voters):
        print(f"voter {index}: {ranking.to_text()}")


def _load_constitution(path: str) -> IiaConstitution:
    return parse_constitution(Path(path).read_text())


def _print_report(report: PropertyReport) -> None:
    print(f"property: {report.name}")
    print(f"holds: {str(report.holds).lower()}")
    if report.holds:
        if report.name == "dictator" and report.witness is not None:
            voter, sign = report.witness
            print(f"dictator: voter={voter} sign={'+1' if sign == 1 else '-1'}")
        return
    witness = report.witness
    if report.name == "transitivity":
        print("witness:")
        _print_profile(witness)
    elif report.name == "unanimity":
        (a, b), profile = witness
        print(f"witness-pair: {a}>{b}")
        print("witness:")
        _print_profile(profile)
    elif report.name == "ni":
        print(f"missing-order: {witness.to_text()}")
    elif report.name == "wni":
        a, b = witness
        print(f"missing-pair: {a}>{b}")
    elif report.name == "nd":
        alternative, position = witness
        print(f"degenerate: alternative={alternative} position={position}")


def _cmd_check(args: argparse.Namespace) -> int:
    C = _load_constitution(args.file)
    if args.properties is None:
        names = list(PROPERTY_ORDER)
    else:
        names = [name.strip() for name in args.properties.split(",")]
    for name in names:
        if name not in CHECKERS:
            print(f"error: unknown property {name!r}", file=sys.stderr)
            return 2
    reports = []
    for index, name in enumerate(names):
        if index:
            print()
        report = CHECKERS[name](C, cap=args.cap)
        _print_report(report)
        reports.append(report)
    return 0 if all(r.holds for r in reports) else 1


def _cmd_classify(args: argparse.Namespace) -> int:
    C = _load_constitution(args.file)
    result = classify(C, cap=args.cap, seed=args.seed)
    if isinstance(result, FailureCertificate):
        print("classification: failed")
        print(f"reason: {result.reason}")
        if result.conflicting_pairs is not None:
            (w1, l1), (w2, l2) = result.conflicting_pairs
            print(f"conflict: {w1}>{l1} {w2}>{l2}")
        print("witness:")
        _print_profile(result.cyclic_profile)
        return 1
    print(result.to_text(), end="")
    return 0


def _cmd_witness(args: argparse.Namespace) -> int:
    C = _load_constitution(args.file)
    try:
        witness = paradox_witness(C, cap=args.cap, samples=args.samples, seed=args.seed)
    except IndeterminateWitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if witness is None:
        print("paradox: none")
        return 0
    print("paradox: found")
    _print_profile(witness)
    return 1


def _cmd_enumerate(args: argparse.Namespace) -> int:
    filters = []
    if args.filter:
        for raw in args.filter.split(","):
            name = raw.strip()
            if name not in FILTER_NAMES:
                print(f"error: unknown filter {name!r}", file=sys.stderr)
                return 2
            filters.append(FILTER_NAMES[name])
    matched = 0
    listed: list[str] = []
    for C in enumerate_iia(args.voters, args.alternatives, cap=args.cap):
        if all(CHECKERS[name](C, cap=args.cap).holds for name in filters):
            matched += 1
            if args.list:
                listed.append(serialize_constitution(C))
    print(f"count: {matched}")
    for text in listed:
        print()
        print(text, end="")
    return 0


def _cmd_paradox(args: argparse.Namespace) -> int:
    C = _load_constitution(args.file)
    if args.exact:
        estimate = exact_paradox_probability(C, cap=args.cap)
        print(f"paradox-probability: {estimate.to_text()}")
        print("mode: exact")
    else:
        estimate = mc_paradox_probability(C, args.samples, args.seed)
        print(f"paradox-probability: {estimate.to_text()}")
        print(f"stderr: {format(estimate.standard_error, 'g')}")
        print("mode: sampled")
        print(f"samples: {estimate.trials}")
        print(f"seed: {estimate.seed}")
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    blueprint = BlockStructure.from_text(Path(args.file).read_text())
    text = serialize_constitution(generate(blueprint))
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return 0


def _cmd_distance(args: argparse.Namespace) -> int:
    C = _load_constitution(args.file)
    if args.exact:
        report = distance_to_simple_family(C, cap=args.cap)
    else:
        report = distance_to_simple_family(C, samples=args.samples, seed=args.seed)
    print(f"distance: {report.to_text()}")
    print(f"family: {report.family}")
    print(f"nearest: {report.nearest_text()}")
    print(f"mode: {report.mode}")
    if report.mode == "sampled":
        print(f"samples: {args.samples}")
        print(f"seed: {report.seed}")
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    print(f"count: {count_characterized(args.voters, args.alternatives)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_CAP,
        help="profile-evaluation budget for exact modes (default 10^7)",
    )
    parser = argparse.ArgumentParser(
        prog="arrowcheck",
        description="Check, classify, enumerate, and probe pairwise voting constitutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check properties of a constitution file")
    p.add_argument("file")
    p.add_argument("--properties", help="comma-separated subset of: " + ",".join(PROPERTY_ORDER))
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser(
        "classify", parents=[common], help="print the block normal form or a failure certificate"
    )
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="search for a profile with a cyclic outcome")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("enumerate", parents=[common], help="count (and list) IIA constitutions")
    p.add_argument("-n", "--voters", type=int, required=True)
    p.add_argument("-k", "--alternatives", type=int, required=True)
    p.add_argument("--filter", help="comma-separated subset of: " + ",".join(FILTER_NAMES))
    p.add_argument("--list", action="store_true", help="stream matching constitutions")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("paradox", parents=[common], help="paradox probability under impartial culture")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_paradox)

    p = sub.add_parser(
        "generate", parents=[common], help="build a constitution file from a block structure"
    )
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser(
        "distance", parents=[common], help="distance to the nearest constant or dictator"
    )
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_distance)

    p = sub.add_parser(
        "count", parents=[common], help="closed-form count of classifiable constitutions"
    )
    p.add_argument("-n", "--voters", type=int, required=True)
    p.add_argument("-k", "--alternatives", type=int, required=True)
    p.set_defaults(handler=_cmd_count)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstitutionFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
