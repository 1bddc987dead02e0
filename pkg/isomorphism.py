"""
Isomorphism testing for dual graphs, spin graphs and (r, h)-graphs

Every object is encoded as a labelled directed graph on its vertices and
half-edges, with arcs for sigma0 (half-edge to vertex), sigma1 (half-edge to
partner) and sigma2 (boundary half-edge to successor), plus dashed arcs for
(r, h)-graphs. An isomorphism of objects is exactly a label and arc
preserving isomorphism of the encodings, found by the VF2 matcher of
networkx. Weisfeiler-Lehman hashes of the encodings act as a cheap
invariant before any search is attempted.
"""

import logging
from collections import Counter
from typing import Callable, Dict, Optional

import networkx as nx
from networkx.algorithms import isomorphism as nx_isomorphism

from core import HASH_ITERATIONS
from spin import SpinGraph

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

MARKINGS = "markings"
SPIN = "spin"
DEFAULT_DECORATIONS = frozenset({MARKINGS, SPIN})

_node_match = nx_isomorphism.categorical_node_match("label", None)
_edge_match = nx_isomorphism.categorical_edge_match("rel", None)


class Isomorphism:
    """The bijections (f^V, f^H) of an isomorphism, plus the component bijection for (r, h)-graphs

    For (r, h)-graphs vertices and half-edges are keyed by (component index, id).
    """

    def __init__(self, vertex_map, half_edge_map, component_map=None):
        self._vertex_map = vertex_map
        self._half_edge_map = half_edge_map
        self._component_map = component_map

    def get_vertex_map(self) -> dict:
        return dict(self._vertex_map)

    def get_half_edge_map(self) -> dict:
        return dict(self._half_edge_map)

    def get_component_map(self) -> Optional[dict]:
        return None if self._component_map is None else dict(self._component_map)

    def __repr__(self):
        return f"Isomorphism(vertices={self._vertex_map}, half_edges={self._half_edge_map})"


def encode(graph, decorations=DEFAULT_DECORATIONS, prefix=(), tail_colors=None, target=None):
    """Encodes a PreStableGraph or SpinGraph as a labelled networkx.DiGraph

    Parameters:
        graph (PreStableGraph | SpinGraph): The graph to encode
        decorations (set<str>): 'markings' and/or 'spin', the decorations to preserve
        prefix (tuple): Prepended to every node name
        tail_colors (dict<int, str>): Extra labels of some half-edges
        target (nx.DiGraph): Graph to add the encoding to, a new one if None

    Return:
        nx.DiGraph: Nodes (*prefix, 'v', id) and (*prefix, 'h', id) with a 'label'; arcs with a 'rel'
    """
    spin = graph if isinstance(graph, SpinGraph) else None
    base = graph.get_base() if spin is not None else graph
    digraph = nx.DiGraph() if target is None else target
    tail_colors = tail_colors or {}

    for vertex in base.get_vertices():
        label = f"V:{base.get_vertex_kind(vertex)}:{base.get_small_genus(vertex)}:{base.get_num_boundaries(vertex)}"
        digraph.add_node(prefix + ("v", vertex), label=label)

    relations = {}
    for half_edge in base.get_half_edges():
        parts = ["H", base.get_half_edge_kind(half_edge), "cb" if base.is_cb_tail(half_edge) else ""]
        if MARKINGS in decorations and base.get_marking(half_edge) is not None:
            parts.append(f"m{base.get_marking(half_edge)}")
        if SPIN in decorations and spin is not None:
            parts.append(repr(spin.get_decoration(half_edge)))
        parts.append(tail_colors.get(half_edge, ""))
        node = prefix + ("h", half_edge)
        digraph.add_node(node, label=":".join(parts))

        relations.setdefault((node, prefix + ("v", base.get_vertex(half_edge))), set()).add("sigma0")
        if not base.is_tail(half_edge):
            relations.setdefault((node, prefix + ("h", base.get_partner(half_edge))), set()).add("sigma1")
        if base.is_boundary(half_edge):
            relations.setdefault((node, prefix + ("h", base.get_next(half_edge))), set()).add("sigma2")

    for (source, destination), names in relations.items():
        digraph.add_edge(source, destination, rel="+".join(sorted(names)))
    return digraph


def encode_rh(rh, decorations=frozenset({SPIN})):
    """Encodes an (r, h)-graph as one labelled networkx.DiGraph

    Component markings are bookkeeping only; unpaired tails are told apart by
    their labels, paired tails by the dashed arcs joining them.
    """
    digraph = nx.DiGraph()
    boundary_labels, internal_labels = rh.get_boundary_labels(), rh.get_internal_labels()
    for index, component in enumerate(rh.get_components()):
        colors = {}
        for (owner, tail), label in boundary_labels.items():
            if owner == index:
                colors[tail] = f"B{label}"
        for (owner, tail), label in internal_labels.items():
            if owner == index:
                colors[tail] = f"I{label}"
        for (owner, tail) in rh.get_paired_tails():
            if owner == index:
                colors[tail] = "P"
        encode(component, decorations, prefix=(index,), tail_colors=colors, target=digraph)
    for (internal, boundary) in rh.get_dashed():
        digraph.add_edge(internal[:1] + ("h", internal[1]), boundary[:1] + ("h", boundary[1]), rel="dashed")
    return digraph


def invariant_key(digraph) -> str:
    """(str) Returns a Weisfeiler-Lehman hash; isomorphic encodings have equal keys"""
    return nx.weisfeiler_lehman_graph_hash(digraph, node_attr="label", edge_attr="rel",
                                           iterations=HASH_ITERATIONS)


def match_encodings(first, second) -> Optional[dict]:
    """(dict) Returns a node mapping between two encodings, or None if they are not isomorphic"""
    if first.number_of_nodes() != second.number_of_nodes() or first.number_of_edges() != second.number_of_edges():
        return None
    if Counter(first.nodes[n]["label"] for n in first) != Counter(second.nodes[n]["label"] for n in second):
        return None
    matcher = nx_isomorphism.DiGraphMatcher(first, second, node_match=_node_match, edge_match=_edge_match)
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def are_isomorphic(first, second, respect_decorations=DEFAULT_DECORATIONS) -> Optional[Isomorphism]:
    """Searches for an isomorphism between two graphs

    Kinds, g-hat, n and contracted boundary tails are always preserved;
    'respect_decorations' selects markings and (for SpinGraphs) spin decorations.

    Parameters:
        first (PreStableGraph | SpinGraph): A valid graph
        second (PreStableGraph | SpinGraph): A valid graph

    Return:
        Isomorphism: The bijections found, or None
    """
    mapping = match_encodings(encode(first, respect_decorations), encode(second, respect_decorations))
    if mapping is None:
        return None
    vertex_map = {node[1]: image[1] for node, image in mapping.items() if node[0] == "v"}
    half_edge_map = {node[1]: image[1] for node, image in mapping.items() if node[0] == "h"}
    return Isomorphism(vertex_map, half_edge_map)


def are_rh_isomorphic(first, second) -> Optional[Isomorphism]:
    """Searches for an isomorphism of (r, h)-graphs

    An isomorphism is a family of component isomorphisms preserving spin
    decorations, commuting with the dashed lines and fixing the labels of
    unpaired tails.
    """
    if first.get_r() != second.get_r() or first.get_h() != second.get_h():
        return None
    mapping = match_encodings(encode_rh(first), encode_rh(second))
    if mapping is None:
        return None
    vertex_map, half_edge_map, component_map = {}, {}, {}
    for node, image in mapping.items():
        target = vertex_map if node[1] == "v" else half_edge_map
        target[(node[0], node[2])] = (image[0], image[2])
        component_map[node[0]] = image[0]
    return Isomorphism(vertex_map, half_edge_map, component_map)


class IsomorphismIndex:
    """Stores objects up to isomorphism, bucketed by invariant key

    Parameters:
        encoder (callable): Turns an object into its labelled encoding
    """

    def __init__(self, encoder: Callable = encode):
        self._encoder = encoder
        self._buckets: Dict[str, list] = {}
        self._size = 0

    def find(self, item):
        """Returns the value stored for an object isomorphic to 'item', or None"""
        encoded = self._encoder(item)
        for stored, value in self._buckets.get(invariant_key(encoded), ()):
            if match_encodings(encoded, stored) is not None:
                return value
        return None

    def add(self, item, value=None) -> bool:
        """Stores 'item' with 'value' (the item itself if None) unless an isomorphic object is present

        Return:
            bool: True iff 'item' was new
        """
        encoded = self._encoder(item)
        bucket = self._buckets.setdefault(invariant_key(encoded), [])
        for stored, _ in bucket:
            if match_encodings(encoded, stored) is not None:
                return False
        bucket.append((encoded, item if value is None else value))
        self._size += 1
        return True

    def __len__(self):
        return self._size


def unique_up_to_isomorphism(items, encoder: Callable = encode) -> list:
    """(list) Returns the first object of every isomorphism class, in input order"""
    index = IsomorphismIndex(encoder)
    return [item for item in items if index.add(item)]
