"""
Command line interface for graded r-spin disk graphs and their glued moduli

    python app.py validate graph.json
    python app.py smooth graph.json --site 4
    python app.py detach graph.json --site 4
    python app.py boundaries disk.json --classify --h 3
    python app.py pi cell.json --forward --facet 2
    python app.py enumerate --r 9 --h 3 --B 1,5,5,5 --I ""
    python app.py glue --r 2 --h 0 --B 0,0,0 --I 0
    python app.py report --r 9 --h 3 --B 1,5,5,5 --I "" --euler --signs
    python app.py export-dot cell.json

Documents are read from a file ('-' for standard input); results are written
to standard output as JSON (DOT for export-dot). Exit status is 0 on
success, 1 on a validation or construction failure and 2 on a usage error.
"""

import argparse
import contextlib
import json
import logging
import sys

from core import BOUNDARY_TYPES, GraphError, PreconditionError, SiteNotFoundError
from degeneration import codim1_boundaries, detach, site_of, smooth
from document import parse, to_document, validate_graph
from gluing import build_complex, topology_report
from point_insertion import RHGraph, enumerate_smooth_rh, facets_of, pi_backward, pi_forward
from spin import SpinGraph
from view import export_dot

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

REPORT_SECTIONS = ("euler", "components", "signs", "free_boundaries")


def parse_twists(text: str):
    """(list<int>) Parses a comma-separated twist multiset; the empty string is the empty multiset"""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(item) for item in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class UsageError(Exception):
    """A command was given arguments it cannot work with"""


class RSpinApp:
    """Runs one command line invocation

    Each subcommand is handled by the method _handle_<subcommand>, which
    returns the object to print and the exit status.
    """

    def __init__(self, stdin=None, stdout=None):
        self._stdin = stdin or sys.stdin
        self._stdout = stdout or sys.stdout

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog="rspin", description="Graded r-spin disk graphs and glued moduli")
        parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
        commands = parser.add_subparsers(dest="command", required=True)

        validate = commands.add_parser("validate", help="validate a graph document")
        validate.add_argument("document")

        for name, help_text in (("smooth", "smooth an edge or contracted boundary tail"),
                                ("detach", "detach an edge or normalize a contracted boundary tail")):
            command = commands.add_parser(name, help=help_text)
            command.add_argument("document")
            command.add_argument("--site", type=int, required=True, help="a half-edge of the site")

        boundaries = commands.add_parser("boundaries", help="list the codimension-1 boundaries of a smooth disk or cell")
        boundaries.add_argument("document")
        boundaries.add_argument("--classify", action="store_true", help="classify as CB, R, NS+, AI or BI")
        boundaries.add_argument("--r", type=int, help="expected spin index")
        boundaries.add_argument("--h", type=int, help="level used to classify a single disk")

        insertion = commands.add_parser("pi", help="apply point insertion to a facet of a cell")
        insertion.add_argument("document")
        direction = insertion.add_mutually_exclusive_group(required=True)
        direction.add_argument("--forward", action="store_true", help="BI facet to AI facet")
        direction.add_argument("--backward", action="store_true", help="AI facet to BI facet")
        insertion.add_argument("--facet", type=int, required=True, help="index in the boundaries listing")

        for name, help_text in (("enumerate", "list the smooth (r, h)-graphs"),
                                ("glue", "build the glued cell complex"),
                                ("report", "topology of the glued cell complex")):
            command = commands.add_parser(name, help=help_text)
            command.add_argument("--r", type=int, required=True)
            command.add_argument("--h", type=int, required=True)
            command.add_argument("--B", type=parse_twists, required=True, help="boundary twists, e.g. 1,5,5,5")
            command.add_argument("--I", type=parse_twists, default=[], help="internal twists, e.g. 0")
        report = commands.choices["report"]
        report.add_argument("--euler", action="store_true")
        report.add_argument("--components", action="store_true")
        report.add_argument("--signs", action="store_true")
        report.add_argument("--free-boundaries", dest="free_boundaries", action="store_true")

        export = commands.add_parser("export-dot", help="export a graph document as Graphviz DOT")
        export.add_argument("document")
        return parser

    def run(self, argv=None) -> int:
        parser = self.build_parser()
        try:
            with contextlib.redirect_stdout(self._stdout):
                args = parser.parse_args(argv)
        except SystemExit as exit_:
            return EXIT_USAGE if exit_.code else EXIT_OK

        logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s",
                            level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)])
        handler = getattr(self, "_handle_" + args.command.replace("-", "_"))
        try:
            result, status = handler(args)
        except (UsageError, PreconditionError, SiteNotFoundError, OSError) as error:
            print(f"usage error: {error}", file=sys.stderr)
            return EXIT_USAGE
        except GraphError as error:
            print(f"error: {error}", file=sys.stderr)
            return EXIT_FAILURE

        if isinstance(result, str):
            self._stdout.write(result)
        else:
            self._stdout.write(json.dumps(result, indent=2, sort_keys=True) + "\n")
        return status

    def _read(self, path, validate=True):
        if path == "-":
            text = self._stdin.read()
        else:
            with open(path) as file:
                text = file.read()
        return parse(text, validate)

    def _read_spin(self, path):
        graph = self._read(path)
        if not isinstance(graph, SpinGraph):
            raise UsageError("expected a spin graph document")
        return graph

    def _handle_validate(self, args):
        graph = self._read(args.document, validate=False)
        report = validate_graph(graph)
        return report.to_dict(), EXIT_OK if report.is_valid() else EXIT_FAILURE

    def _handle_smooth(self, args):
        spin = self._read_spin(args.document)
        return to_document(smooth(spin, site_of(spin, args.site))), EXIT_OK

    def _handle_detach(self, args):
        spin = self._read_spin(args.document)
        return to_document(detach(spin, site_of(spin, args.site))), EXIT_OK

    def _as_cell(self, graph, args):
        if isinstance(graph, RHGraph):
            return graph
        if not isinstance(graph, SpinGraph):
            raise UsageError("expected a spin graph or (r, h)-graph document")
        h = args.h if getattr(args, "h", None) is not None else (graph.get_r() - 2) // 2
        base = graph.get_base()
        boundary = {(0, tail): label for tail, label in base.get_boundary_marking().items()}
        internal = {(0, tail): label for tail, label in base.get_internal_marking().items()}
        return RHGraph(graph.get_r(), h, [graph], (), boundary, internal)

    def _handle_boundaries(self, args):
        graph = self._read(args.document)
        r = graph.get_r() if hasattr(graph, "get_r") else None
        if args.r is not None and args.r != r:
            raise UsageError(f"document has r = {r}, not {args.r}")
        if not args.classify:
            if isinstance(graph, SpinGraph):
                return [to_document(facet) for facet in codim1_boundaries(graph)], EXIT_OK
            cell = self._as_cell(graph, args)
            return [_facet_entry(index, facet, False) for index, facet in enumerate(facets_of(cell))], EXIT_OK
        cell = self._as_cell(graph, args)
        entries = [_facet_entry(index, facet, True) for index, facet in enumerate(facets_of(cell))]
        census = {kind: sum(1 for entry in entries if entry["type"] == kind) for kind in BOUNDARY_TYPES}
        return {"facets": entries, "census": census}, EXIT_OK

    def _handle_pi(self, args):
        cell = self._as_cell(self._read(args.document), args)
        facets = facets_of(cell)
        if not 0 <= args.facet < len(facets):
            raise UsageError(f"facet index {args.facet} outside 0..{len(facets) - 1}")
        image_cell, image = (pi_forward if args.forward else pi_backward)(facets[args.facet])
        return {
            "cell": to_document(image_cell),
            "facet": {"component": image.get_component_index(), "type": image.get_type(),
                      "degenerate": to_document(image.get_degenerate())},
        }, EXIT_OK

    def _handle_enumerate(self, args):
        cells = enumerate_smooth_rh(args.r, args.h, args.B, args.I)
        return {"count": len(cells), "cells": [to_document(cell) for cell in cells]}, EXIT_OK

    def _handle_glue(self, args):
        complex_ = build_complex(args.r, args.h, args.B, args.I)
        report = topology_report(complex_, with_signs=False)
        return {
            "dimension": complex_.get_dimension(),
            "cells": len(complex_.get_cells()),
            "facets": len(complex_.get_all_facets()),
            "identifications": [[list(bi), list(ai)] for bi, ai in complex_.get_identifications()],
            "free_boundaries": [[list(facet), kind] for facet, kind in complex_.get_free_boundaries()],
            "perfect_matching": report.is_perfect_matching(),
            "num_components": report.get_num_components(),
            "components": [component.to_dict() for component in report.get_components()],
            "euler": report.get_euler(),
            "closed": report.is_closed(),
        }, EXIT_OK

    def _handle_report(self, args):
        sections = [name for name in REPORT_SECTIONS if getattr(args, name)] or list(REPORT_SECTIONS)
        complex_ = build_complex(args.r, args.h, args.B, args.I)
        report = topology_report(complex_, with_signs="signs" in sections)
        full = report.to_dict()
        result = {"dimension": full["dimension"], "num_components": full["num_components"]}
        if "euler" in sections:
            result["euler"] = full["euler"]
            result["closed"] = full["closed"]
        if "components" in sections:
            result["components"] = full["components"]
        if "signs" in sections:
            result["signs"] = full["signs"]
        if "free_boundaries" in sections:
            result["free_boundaries"] = full["free_boundaries"]
        status = EXIT_OK if "signs" not in sections or report.signs_opposite() else EXIT_FAILURE
        return result, status

    def _handle_export_dot(self, args):
        return export_dot(self._read(args.document)), EXIT_OK


def _facet_entry(index, facet, classify):
    entry = {"index": index, "component": facet.get_component_index(),
             "facet": to_document(facet.get_facet())}
    if classify:
        entry["type"] = facet.get_type()
    return entry


def main(argv=None) -> int:
    """Runs the command line and returns its exit status"""
    return RSpinApp().run(argv)


if __name__ == "__main__":
    sys.exit(main())
