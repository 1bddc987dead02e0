"""
Versioned JSON documents for dual graphs, spin graphs and (r, h)-graphs

A document is a JSON object:

    {
        "format": "rspin-graph",
        "version": 1,
        "kind": "prestable" | "spin" | "rh",
        "header": {"r": 9, "h": 3},
        ...body...
    }

The body of a graph lists its vertices, its half-edges (with partner, block
index and sigma2 successor), its decorations and its markings. An (r, h)-graph
body lists its components as graph bodies, its dashed lines as
[internal component, internal tail, boundary component, boundary tail] and
the labels of its unpaired tails as [component, tail, label].

Unknown fields are rejected, and every error names its location as a path
such as '$.components[0].half_edges[2].kind'.
"""

import json
import logging
from typing import Union

from core import (BOUNDARY, CLOSED, DOCUMENT_FORMAT, DOCUMENT_VERSION, HALF_EDGE_KINDS, VERTEX_KINDS,
                  DocumentError, ValidationReport)
from dual_graph import PreStableGraph, validate_prestable
from instance_router import InstanceRouter
from point_insertion import RHGraph, validate_rh
from spin import SpinGraph, validate_spin

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

PRESTABLE = "prestable"
SPIN = "spin"
RH = "rh"
DOCUMENT_KINDS = (PRESTABLE, SPIN, RH)

GraphObject = Union[PreStableGraph, SpinGraph, RHGraph]


class DocumentWriter(InstanceRouter):
    """Turns graphs into plain JSON-compatible dictionaries"""

    _routing_table = [
        (PreStableGraph, "_write_prestable"),
        (SpinGraph, "_write_spin"),
        (RHGraph, "_write_rh"),
    ]

    def write(self, graph: GraphObject) -> dict:
        """(dict) Returns the document of 'graph'"""
        return self.route_and_call(graph)

    def _write_prestable(self, graph):
        document = _envelope(PRESTABLE, {})
        document.update(_graph_body(graph, None))
        return document

    def _write_spin(self, spin):
        document = _envelope(SPIN, {"r": spin.get_r()})
        document.update(_graph_body(spin.get_base(), spin))
        return document

    def _write_rh(self, rh):
        document = _envelope(RH, {"r": rh.get_r(), "h": rh.get_h()})
        document["components"] = [_graph_body(c.get_base(), c) for c in rh.get_components()]
        document["dashed"] = [[i[0], i[1], b[0], b[1]] for i, b in rh.get_dashed()]
        document["labels"] = {
            "boundary": [[c, h, label] for (c, h), label in sorted(rh.get_boundary_labels().items())],
            "internal": [[c, h, label] for (c, h), label in sorted(rh.get_internal_labels().items())],
        }
        return document


def _envelope(kind, header):
    return {"format": DOCUMENT_FORMAT, "version": DOCUMENT_VERSION, "kind": kind, "header": header}


def _pairs(mapping):
    return [[key, value] for key, value in sorted(mapping.items())]


def _graph_body(base: PreStableGraph, spin: SpinGraph = None) -> dict:
    vertices = [{"id": v, "kind": base.get_vertex_kind(v), "genus_hat": base.get_small_genus(v),
                 "n": base.get_num_boundaries(v)} for v in sorted(base.get_vertices())]
    half_edges = []
    for h in sorted(base.get_half_edges()):
        partner = base.get_partner(h)
        half_edges.append({
            "id": h,
            "kind": base.get_half_edge_kind(h),
            "vertex": base.get_vertex(h),
            "partner": None if partner == h else partner,
            "block": base.get_block_index(h),
            "next": base.get_next(h),
        })
    decorations = {"cb": sorted(base.get_cb_tails())}
    if spin is not None:
        decorations.update({
            "tw": _pairs(spin.get_twists()),
            "alt": _pairs(spin.get_legality_map()),
            "anchors": sorted(spin.get_anchors()),
            "ncb": sorted(spin.get_ncb_tails()),
        })
    return {
        "vertices": vertices,
        "half_edges": half_edges,
        "decorations": decorations,
        "markings": {"boundary": _pairs(base.get_boundary_marking()),
                     "internal": _pairs(base.get_internal_marking())},
    }


def to_document(graph: GraphObject) -> dict:
    """(dict) Returns the JSON-compatible document of a graph"""
    return DocumentWriter().write(graph)


def serialize(graph: GraphObject) -> str:
    """(str) Returns the document text of a graph, with sorted keys"""
    return json.dumps(to_document(graph), indent=2, sort_keys=True)


# Reading

def _fields(value, location, required, optional=()):
    """Checks that 'value' is an object with exactly the 'required' keys plus some 'optional' ones"""
    if not isinstance(value, dict):
        raise DocumentError("expected an object", location)
    for key in value:
        if key not in required and key not in optional:
            raise DocumentError(f"unknown field '{key}'", f"{location}.{key}")
    for key in required:
        if key not in value:
            raise DocumentError(f"missing field '{key}'", f"{location}.{key}")
    return value


def _integer(value, location, nullable=False):
    if value is None and nullable:
        return None
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError("expected an integer", location)
    return value


def _list(value, location):
    if not isinstance(value, list):
        raise DocumentError("expected a list", location)
    return value


def _choice(value, location, choices):
    if value not in choices:
        raise DocumentError(f"expected one of {', '.join(choices)}", location)
    return value


def _integer_pairs(value, location):
    pairs = {}
    for index, pair in enumerate(_list(value, location)):
        where = f"{location}[{index}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentError("expected a [key, value] pair", where)
        pairs[_integer(pair[0], where + "[0]")] = _integer(pair[1], where + "[1]")
    return pairs


def _integers(value, location):
    return [_integer(item, f"{location}[{index}]") for index, item in enumerate(_list(value, location))]


def _read_graph(body, location, with_spin):
    decoration_keys = ("cb", "tw", "alt", "anchors", "ncb") if with_spin else ("cb",)
    _fields(body, location, ("vertices", "half_edges", "decorations", "markings"))

    vertex_kinds, small_genus, num_boundaries = {}, {}, {}
    for index, vertex in enumerate(_list(body["vertices"], f"{location}.vertices")):
        where = f"{location}.vertices[{index}]"
        _fields(vertex, where, ("id", "kind", "genus_hat", "n"))
        vid = _integer(vertex["id"], where + ".id")
        vertex_kinds[vid] = _choice(vertex["kind"], where + ".kind", VERTEX_KINDS)
        small_genus[vid] = _integer(vertex["genus_hat"], where + ".genus_hat")
        num_boundaries[vid] = _integer(vertex["n"], where + ".n")

    half_edge_kinds, sigma0, sigma1, sigma2, block_of = {}, {}, {}, {}, {}
    for index, half_edge in enumerate(_list(body["half_edges"], f"{location}.half_edges")):
        where = f"{location}.half_edges[{index}]"
        _fields(half_edge, where, ("id", "kind", "vertex", "partner", "block", "next"))
        hid = _integer(half_edge["id"], where + ".id")
        half_edge_kinds[hid] = _choice(half_edge["kind"], where + ".kind", HALF_EDGE_KINDS)
        sigma0[hid] = _integer(half_edge["vertex"], where + ".vertex")
        if sigma0[hid] not in vertex_kinds:
            raise DocumentError(f"unknown vertex {sigma0[hid]}", where + ".vertex")
        partner = _integer(half_edge["partner"], where + ".partner", nullable=True)
        sigma1[hid] = hid if partner is None else partner
        block = _integer(half_edge["block"], where + ".block", nullable=True)
        following = _integer(half_edge["next"], where + ".next", nullable=True)
        if half_edge_kinds[hid] == BOUNDARY:
            if block is None or following is None:
                raise DocumentError("boundary half-edges need a block and a next", where)
            block_of[hid] = block
            sigma2[hid] = following

    blocks = {}
    for vid, kind in vertex_kinds.items():
        if kind == CLOSED:
            continue
        members = {h for h, v in sigma0.items() if v == vid and h in block_of}
        vertex_blocks = []
        for index in range(num_boundaries[vid]):
            cycle = sorted(h for h in members if block_of[h] == index)
            if cycle:
                ordered, current = [cycle[0]], sigma2[cycle[0]]
                while current != cycle[0] and current in members and len(ordered) <= len(cycle):
                    ordered.append(current)
                    current = sigma2[current]
                cycle = ordered if len(ordered) == len(cycle) else cycle
            vertex_blocks.append(tuple(cycle))
        blocks[vid] = vertex_blocks

    decorations = _fields(body["decorations"], f"{location}.decorations", decoration_keys)
    markings = _fields(body["markings"], f"{location}.markings", ("boundary", "internal"))
    base = PreStableGraph(
        vertex_kinds, half_edge_kinds, sigma0, sigma1=sigma1, blocks=blocks, sigma2=sigma2,
        small_genus=small_genus, num_boundaries=num_boundaries,
        cb_tails=_integers(decorations["cb"], f"{location}.decorations.cb"),
        boundary_marking=_integer_pairs(markings["boundary"], f"{location}.markings.boundary"),
        internal_marking=_integer_pairs(markings["internal"], f"{location}.markings.internal"),
    )
    if not with_spin:
        return base, None
    return base, {
        "twists": _integer_pairs(decorations["tw"], f"{location}.decorations.tw"),
        "legality": _integer_pairs(decorations["alt"], f"{location}.decorations.alt"),
        "anchors": _integers(decorations["anchors"], f"{location}.decorations.anchors"),
        "ncb_tails": _integers(decorations["ncb"], f"{location}.decorations.ncb"),
    }


def _read_spin(body, location, r):
    base, spin = _read_graph(body, location, True)
    return SpinGraph(base, r, **spin)


def _read_header(header, kind):
    required = {PRESTABLE: (), SPIN: ("r",), RH: ("r", "h")}[kind]
    _fields(header, "$.header", required)
    return {key: _integer(header[key], f"$.header.{key}") for key in required}


def _read_rh(document, header):
    r, h = header["r"], header["h"]
    components = [_read_spin(body, f"$.components[{index}]", r)
                  for index, body in enumerate(_list(document["components"], "$.components"))]
    dashed = []
    for index, line in enumerate(_list(document["dashed"], "$.dashed")):
        where = f"$.dashed[{index}]"
        if not isinstance(line, list) or len(line) != 4:
            raise DocumentError("expected [component, internal tail, component, boundary tail]", where)
        values = [_integer(value, f"{where}[{i}]") for i, value in enumerate(line)]
        dashed.append(((values[0], values[1]), (values[2], values[3])))

    labels = _fields(document["labels"], "$.labels", ("boundary", "internal"))
    parsed = {}
    for kind in ("boundary", "internal"):
        parsed[kind] = {}
        for index, entry in enumerate(_list(labels[kind], f"$.labels.{kind}")):
            where = f"$.labels.{kind}[{index}]"
            if not isinstance(entry, list) or len(entry) != 3:
                raise DocumentError("expected [component, tail, label]", where)
            component, tail, label = (_integer(value, f"{where}[{i}]") for i, value in enumerate(entry))
            parsed[kind][(component, tail)] = label
    return RHGraph(r, h, components, dashed, parsed["boundary"], parsed["internal"])


def from_document(document: dict, validate: bool = True) -> GraphObject:
    """Builds the graph described by a parsed JSON document, validating it unless 'validate' is False

    Raises:
        DocumentError: on a schema violation or a failed validation, with its location
    """
    if not isinstance(document, dict):
        raise DocumentError("expected an object")
    if document.get("format") != DOCUMENT_FORMAT:
        raise DocumentError(f"expected format '{DOCUMENT_FORMAT}'", "$.format")
    if document.get("version") != DOCUMENT_VERSION:
        raise DocumentError(f"unsupported version {document.get('version')!r}, expected {DOCUMENT_VERSION}",
                            "$.version")
    kind = _choice(document.get("kind"), "$.kind", DOCUMENT_KINDS)
    body_keys = ("components", "dashed", "labels") if kind == RH else ("vertices", "half_edges", "decorations",
                                                                          "markings")
    _fields(document, "$", ("format", "version", "kind", "header") + body_keys)
    header = _read_header(document["header"], kind)
    body = {key: document[key] for key in body_keys}

    if kind == PRESTABLE:
        graph, _ = _read_graph(body, "$", False)
    elif kind == SPIN:
        graph = _read_spin(body, "$", header["r"])
    else:
        graph = _read_rh(document, header)
    if not validate:
        return graph

    report = validate_graph(graph)
    if not report.is_valid():
        raise DocumentError("validation failed: " + "; ".join(report.describe()), "$", report)
    logger.debug("read %s document: %r", kind, graph)
    return graph


def parse(text: str, validate: bool = True) -> GraphObject:
    """Parses document text into a PreStableGraph, SpinGraph or RHGraph, validated unless 'validate' is False

    Raises:
        DocumentError: on a syntax error, a schema violation or a failed validation
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise DocumentError(f"syntax error: {error.msg}", f"line {error.lineno} column {error.colno}") from error
    return from_document(document, validate)


class _Validator(InstanceRouter):
    _routing_table = [
        (PreStableGraph, "_validate_prestable"),
        (SpinGraph, "_validate_spin"),
        (RHGraph, "_validate_rh"),
    ]

    def _validate_prestable(self, graph):
        return validate_prestable(graph)

    def _validate_spin(self, spin):
        return validate_spin(spin)

    def _validate_rh(self, rh):
        return validate_rh(rh)


def validate_graph(graph: GraphObject) -> ValidationReport:
    """(ValidationReport) Runs the validator matching the kind of 'graph'"""
    return _Validator().route_and_call(graph)
