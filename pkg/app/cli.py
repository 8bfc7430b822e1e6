#!/usr/bin/env python3
"""
Graded Stillman Toolkit - command line front end

Reads rings and ideals in the text format of app.utils.ring_format and
dispatches to the monoid, resolution and Stillman services.
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from app.config import configure_logging, get_settings
from app.errors import AnalysisRejected, InputError, StillmanError
from app.models.monoid import FgMonoid
from app.models.report import BoundReport, DegreeSequence
from app.models.ring import CoefficientField, IdealPresentation, MGPolyRing
from app.schemas import (
    betti_payload,
    counterexample_payload,
    monoid_check_payload,
    refine_payload,
    report_payload,
    FamilyPayload,
    PdimPayload,
)
from app.services import monoid_service
from app.services.resolution_service import ResolutionService
from app.services.stillman_service import (
    StillmanService,
    burch_kohn_family,
    find_homogenizing_weight,
    mccullough_family,
    non_bf_counterexample,
    refine,
)
from app.utils.ring_format import format_input, parse_input


EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT_ERROR = 2

FORMATS = ("text", "json-lines")
FAMILIES = ("mccullough", "burch-kohn")


@dataclass
class CommandSpec:
    """One subcommand invocation."""
    name: str
    input_path: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)
    output_format: str = "text"

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise InputError(f"unknown output format {self.output_format!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.cli",
        description="Stillman bounds for multigraded polynomial rings",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m app.cli monoid-check --gens "(1,0);(-2,1);(0,1)"
  python -m app.cli family mccullough --n 2 | python -m app.cli pdim
  python -m app.cli report app/data/samples/three_cubics.ring
  python -m app.cli counterexample --gens "(1,0);(-1,0);(0,1)" --b 3 | python -m app.cli pdim
  python -m app.cli --format json-lines refine app/data/samples/three_cubics.ring
        """,
    )
    parser.add_argument(
        "--format",
        choices=FORMATS,
        default=get_settings().default_output_format,
        help="Output format (default: %(default)s)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("monoid-check", help="Pointedness and bounded factorization of a monoid")
    check.add_argument("--gens", required=True, help='Generators, e.g. "(1,0);(-2,1)"')

    pdim = subparsers.add_parser("pdim", help="Projective dimension of S/I")
    pdim.add_argument("input", nargs="?", default="-", help="Ring file (default: stdin)")
    weights = pdim.add_mutually_exclusive_group()
    weights.add_argument("--weight", help="Positive integer weights, e.g. 1,1,2")
    weights.add_argument("--auto-weight", action="store_true", help="Search for a homogenizing weight")
    pdim.add_argument("--field", help="Recompute over QQ or GF(p)")

    report = subparsers.add_parser("report", help="Full Stillman bound report")
    report.add_argument("input", nargs="?", default="-", help="Ring file (default: stdin)")
    report.add_argument("--degrees", help='Degree sequence bound, e.g. "(3);(3);(3)"')
    report.add_argument("--no-pdim", action="store_true", help="Skip the resolution")
    report.add_argument("--field", help="Recompute over QQ or GF(p)")

    family = subparsers.add_parser("family", help="Print a counterexample family in the ring format")
    family.add_argument("family", choices=FAMILIES)
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--non-connected", action="store_true", help="McCullough variant with deg x = deg y = 0")
    family.add_argument("--field", help="QQ or GF(p)")

    counterexample = subparsers.add_parser("counterexample", help="Burch-Kohn ideal graded by a non-BF monoid")
    counterexample.add_argument("--gens", required=True, help="Generators of a monoid without bounded factorization")
    counterexample.add_argument("--b", type=int, required=True, help="Factorization length")
    counterexample.add_argument("--field", help="QQ or GF(p)")

    refine_cmd = subparsers.add_parser("refine", help="Finest grading making the generators homogeneous")
    refine_cmd.add_argument("input", nargs="?", default="-", help="Ring file (default: stdin)")

    return parser


def parse_command(argv: Optional[Sequence[str]] = None) -> CommandSpec:
    args = vars(build_parser().parse_args(argv))
    name = args.pop("command")
    output_format = args.pop("format")
    input_path = args.pop("input", None)
    return CommandSpec(name, input_path, args, output_format)


# Helpers

def _read_input(path: Optional[str], stdin: TextIO) -> Tuple[MGPolyRing, Optional[IdealPresentation]]:
    if path in (None, "-"):
        return parse_input(stdin.read())
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_input(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _require_ideal(ideal: Optional[IdealPresentation]) -> IdealPresentation:
    if ideal is None:
        raise InputError("input has no ideal block")
    return ideal


def _field(options: Dict[str, Any]) -> Optional[CoefficientField]:
    text = options.get("field")
    return CoefficientField.parse(text) if text else None


def _parse_weight(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"malformed weight {text!r}; expected e.g. 1,1,2") from None


def _yes(value: Optional[bool]) -> str:
    if value is None:
        return "unknown"
    return "yes" if value else "no"


def _join(values) -> str:
    return ", ".join(str(v) for v in values) if values else "none"


def _report_lines(report: BoundReport) -> List[str]:
    if not report.support_bf:
        lines = [f"support bounded factorization: no, certificate: {report.certificate}"]
        lines.extend(f"note: {note}" for note in report.notes)
        return lines
    lines = [
        f"support bounded factorization: {_yes(report.support_bf)}, witness: {report.witness}",
        f"flatten bounds: {_join(report.flatten_bounds)}",
        f"flattened degrees: {_join(report.flattened_degrees)}",
        f"known bound: {report.known_bound if report.known_bound is not None else 'none'}",
        f"Hilbert bound: {report.hilbert_bound}",
    ]
    if report.pdim is None:
        lines.append("pdim: not computed")
    else:
        lines.append(f"pdim: {report.pdim} (weight {_join(report.pdim_weight)})")
    lines.append(f"regular sequence: {_yes(report.regular_sequence)}")
    lines.append(f"finest grading: rank {report.finest_rank}, torsion {_join(report.finest_torsion)}")
    lines.append(f"refined degrees: {_join(report.refined_degrees)}")
    lines.extend(f"note: {note}" for note in report.notes)
    return lines


# Subcommands

def _monoid_check(cmd: CommandSpec, stdin: TextIO):
    monoid = FgMonoid.parse(cmd.options["gens"])
    verdict = monoid_service.has_bounded_factorization(monoid)
    payload = monoid_check_payload([str(g) for g in monoid.generators], verdict)
    if verdict.bounded:
        text = f"pointed: yes, bounded factorization: yes, witness: {verdict.witness.functional}"
    else:
        text = f"pointed: no, bounded factorization: no, certificate: {verdict.certificate}"
    return payload, [text]


def _pdim(cmd: CommandSpec, stdin: TextIO):
    _, ideal = _read_input(cmd.input_path, stdin)
    ideal = _require_ideal(ideal)
    field_override = _field(cmd.options)
    if field_override is not None:
        ideal = ideal.with_field(field_override)
    if cmd.options.get("weight"):
        weight = _parse_weight(cmd.options["weight"])
    elif cmd.options.get("auto_weight"):
        weight = find_homogenizing_weight(ideal)
        if weight is None:
            raise AnalysisRejected("no positive weight makes every generator homogeneous")
    else:
        weight = (1,) * ideal.ring.nvars
    service = ResolutionService()
    minimal, betti = service.minimalize(service.free_resolution(ideal, weight))
    payload = PdimPayload(
        pdim=minimal.length,
        weight=list(weight),
        betti=betti_payload(betti),
        betti_totals=list(betti.totals()),
    )
    return payload, [str(minimal.length)]


def _report(cmd: CommandSpec, stdin: TextIO):
    _, ideal = _read_input(cmd.input_path, stdin)
    ideal = _require_ideal(ideal)
    field_override = _field(cmd.options)
    if field_override is not None:
        ideal = ideal.with_field(field_override)
    degrees = DegreeSequence.parse(cmd.options["degrees"]) if cmd.options.get("degrees") else None
    report = StillmanService().stillman_report(ideal, degrees, compute_pdim=not cmd.options.get("no_pdim"))
    return report_payload(report), _report_lines(report)


def _family(cmd: CommandSpec, stdin: TextIO):
    name, n = cmd.options["family"], cmd.options["n"]
    field_override = _field(cmd.options)
    if name == "mccullough":
        ideal = mccullough_family(n, connected=not cmd.options.get("non_connected"), field=field_override)
    else:
        if cmd.options.get("non_connected"):
            raise InputError("--non-connected applies to the McCullough family only")
        ideal = burch_kohn_family(n, field=field_override)
    text = format_input(ideal.ring, ideal)
    return FamilyPayload(name=name, n=n, text=text), [text.rstrip("\n")]


def _counterexample(cmd: CommandSpec, stdin: TextIO):
    monoid = FgMonoid.parse(cmd.options["gens"])
    result = non_bf_counterexample(monoid, cmd.options["b"], field=_field(cmd.options))
    text = format_input(result.ring, result.ideal)
    factorization = result.factorization
    header = f"# factorization: {factorization.target} = " + " + ".join(str(p) for p in factorization.parts)
    return counterexample_payload(factorization, text), [header, text.rstrip("\n")]


def _refine(cmd: CommandSpec, stdin: TextIO):
    ring, ideal = _read_input(cmd.input_path, stdin)
    ideal = _require_ideal(ideal)
    refinement = refine(ideal)
    grading = refinement.grading
    lines = [f"rank: {grading.dimension}", f"torsion: {_join(grading.torsion)}"]
    lines.extend(f"deg {name} = {degree}" for name, degree in zip(ring.variables, grading.degrees))
    lines.append(f"refined degrees: {_join(refinement.refined_degrees)}")
    if refinement.coarsening is not None:
        rows = ["(" + ",".join(str(x) for x in row) + ")" for row in refinement.coarsening]
        lines.append(f"coarsening onto the input grading: {_join(rows)}")
    return refine_payload(grading, refinement.refined_degrees, refinement.coarsening), lines


COMMANDS = {
    "monoid-check": _monoid_check,
    "pdim": _pdim,
    "report": _report,
    "family": _family,
    "counterexample": _counterexample,
    "refine": _refine,
}


def run(
    cmd: CommandSpec,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    """Execute one command; 0 on success, 1 on rejection, 2 on bad input."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    handler = COMMANDS.get(cmd.name)
    if handler is None:
        print(f"error: unknown command {cmd.name!r}", file=stderr)
        return EXIT_INPUT_ERROR
    try:
        payload, lines = handler(cmd, stdin)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT_ERROR
    except StillmanError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_REJECTED
    if cmd.output_format == "json-lines":
        print(payload.model_dump_json(), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    try:
        cmd = parse_command(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
