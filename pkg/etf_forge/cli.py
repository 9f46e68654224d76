import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from pydantic import BaseModel

from .core.config import Settings, settings as default_settings
from .core.exceptions import EtfForgeError, UsageError
from .models.design import BlockDesign
from .schemas.report import published_schema
from .schemas.response import error_envelope
from .services import campaign, construct, reports
from .utils.io import dump_json, load_document, to_schema, write_document

logger = logging.getLogger("etf_forge")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; usage errors here exit with 1"""

    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _elements(text: str):
    """'1,2,4' for cyclic groups, '0:1,1:0,1:1' for products"""
    elements = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            elements.append(tuple(int(c) for c in part.split(":")) if ":" in part else int(part))
        except ValueError:
            raise UsageError(f"bad group element {part!r}")
    return elements


# ==============================
# Command Handlers
# ==============================
def _construct(args, settings: Settings):
    kind = args.kind
    if kind == "paley":
        return construct.paley_etf(args.q, args.modulus)
    if kind == "diffset":
        return construct.etf_from_difference_set(args.group, args.set)
    if kind == "conference":
        return construct.conference_etf_gram(args.q)
    if kind == "simplex":
        return construct.simplex_gram(args.n)
    if kind == "onb":
        return construct.onb_gram(args.n)
    if kind == "gabor-steiner-tp":
        return construct.gabor_steiner_tp_table(args.p)
    raise UsageError(f"unknown construction {kind!r}")


def _emit(obj, out: Optional[str]) -> None:
    if out:
        write_document(obj, out)
        logger.info("wrote %s", out)
    else:
        model = obj if isinstance(obj, BaseModel) else to_schema(obj)
        print(dump_json(model))


def _run(args, settings: Settings) -> int:
    command = args.command
    if command == "schema":
        print(json.dumps(published_schema(), indent=2, sort_keys=True))
        return 0
    if command in ("construct", "paley"):
        if command == "paley":
            args.kind = "paley"
        _emit(_construct(args, settings), args.out)
        return 0

    started = time.perf_counter()
    design: Optional[BlockDesign] = None
    if command == "field":
        report = reports.field_report(args.p, args.s, args.modulus, settings)
    elif command == "analyze":
        report = reports.analyze_report(load_document(args.input), args.checks.split(","))
    elif command == "symmetry":
        report = reports.symmetry_report(load_document(args.input), args.mode, args.expect, args.max_k, settings)
    elif command == "homogeneity":
        report = reports.homogeneity_report(load_document(args.input), args.mode, args.max_k, settings)
    elif command == "spark":
        report = reports.spark_report(load_document(args.input), settings, args.jobs, args.max_size)
    elif command == "bender":
        report, design = reports.bender_report(load_document(args.input), args.design_check, settings, args.jobs)
    elif command == "design":
        document = load_document(args.input)
        if not isinstance(document, BlockDesign):
            raise UsageError("design expects a block design document")
        report = reports.design_report(document, args.t)
    elif command == "switch-equiv":
        report = reports.switch_equiv_report(
            load_document(args.input), load_document(args.other), args.permute, settings
        )
    elif command == "paper-suite":
        report = campaign.cmd_paper_suite(args.q, settings, args.jobs, not args.no_matroid)
    elif command == "khom-suite":
        report = campaign.cmd_khom_suite(settings)
    else:
        raise UsageError(f"unknown command {command!r}")

    if args.timing:
        report.timing = {"seconds": round(time.perf_counter() - started, 3)}
    if design is not None and args.out:
        write_document(design, args.out)
    print(report.to_json())

    if command in ("paper-suite", "khom-suite"):
        return campaign.campaign_exit_code(report)
    return 0 if report.passed else 2


# ==============================
# Parser
# ==============================
def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="etf-forge", description="Exact equiangular tight frame toolkit")
    parser.add_argument("--budget", type=int, default=None, help="Subset enumeration budget")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for enumeration")
    parser.add_argument("--timing", action="store_true", help="Record wall time in reports")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    # also accepted after the enumerating subcommands; absent flags keep the global value
    limits = _Parser(add_help=False)
    limits.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="Subset enumeration budget")
    limits.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="Worker processes for enumeration")

    field = sub.add_parser("field", help="Describe GF(p^s) with its residues and intertwiner")
    field.add_argument("--p", type=int, required=True)
    field.add_argument("--s", type=int, default=1)
    field.add_argument("--modulus", type=_int_list, default=None)

    build = sub.add_parser("construct", help="Build a frame, Gram or triple table")
    kinds = build.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    paley = kinds.add_parser("paley")
    paley.add_argument("--q", type=int, required=True)
    paley.add_argument("--modulus", type=_int_list, default=None)
    diffset = kinds.add_parser("diffset")
    diffset.add_argument("--group", type=_int_list, required=True)
    diffset.add_argument("--set", type=_elements, required=True)
    conference = kinds.add_parser("conference")
    conference.add_argument("--q", type=int, required=True)
    for name in ("simplex", "onb"):
        kinds.add_parser(name).add_argument("--n", type=int, required=True)
    kinds.add_parser("gabor-steiner-tp").add_argument("--p", type=int, required=True)
    for p in kinds.choices.values():
        p.add_argument("--out", default=None)

    shortcut = sub.add_parser("paley", help="Shortcut for construct paley")
    shortcut.add_argument("--q", type=int, required=True)
    shortcut.add_argument("--modulus", type=_int_list, default=None)
    shortcut.add_argument("--out", default=None)

    analyze = sub.add_parser("analyze", help="Equiangularity, tightness and triple-product checks")
    analyze.add_argument("--in", dest="input", required=True)
    analyze.add_argument("--checks", default=",".join(reports.ANALYZE_CHECKS))

    for name in ("symmetry", "homogeneity"):
        p = sub.add_parser(name, help="Vector or line symmetry group" if name == "symmetry" else "k-homogeneity table")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--mode", choices=("lines", "vectors"), default="lines")
        p.add_argument("--max-k", type=int, default=4)
        if name == "symmetry":
            p.add_argument("--expect", default=None, help="agl:q, asp:p or sym:n")

    spark = sub.add_parser("spark", help="Smallest dependent subset size", parents=[limits])
    spark.add_argument("--in", dest="input", required=True)
    spark.add_argument("--max-size", type=int, default=None, help="Largest subset size searched")

    bender = sub.add_parser("bender", help="All short circuits", parents=[limits])
    bender.add_argument("--in", dest="input", required=True)
    bender.add_argument("--design-check", action="store_true")
    bender.add_argument("--out", default=None)

    design = sub.add_parser("design", help="t-design degree of a block design")
    design.add_argument("--in", dest="input", required=True)
    design.add_argument("--t", type=int, default=None)

    switch = sub.add_parser("switch-equiv", help="Compare triple products of two frames")
    switch.add_argument("--in", dest="input", required=True)
    switch.add_argument("--other", required=True)
    switch.add_argument("--permute", action="store_true", help="Also search for an index permutation")

    suite = sub.add_parser("paper-suite", help="Paley symmetry and matroid campaign", parents=[limits])
    suite.add_argument("--q", type=_int_list, default=list(campaign.DEFAULT_PAPER_QS))
    suite.add_argument("--no-matroid", action="store_true")

    sub.add_parser("khom-suite", help="3-homogeneity campaign")
    sub.add_parser("schema", help="Print the report JSON schema")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(json.dumps(error_envelope(400, "Usage error", "argv", exc.message), indent=2))
        return exc.exit_code

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else default_settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    overrides = {k: v for k, v in (("budget", args.budget), ("jobs", args.jobs)) if v is not None}
    settings = default_settings.model_copy(update=overrides)

    try:
        return _run(args, settings)
    except EtfForgeError as exc:
        logger.error("%s: %s", type(exc).__name__, exc.message)
        print(json.dumps(
            error_envelope(exc.status_code, type(exc).__name__, args.command, exc.message, exc.report),
            indent=2, sort_keys=True, default=str,
        ))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
