"""
Pre-stable dual graphs of bordered surfaces

A graph is stored half-edge first: every half-edge knows the vertex it
emanates from (sigma0), its partner (sigma1, fixed on tails) and, for boundary
half-edges, its successor in the cyclic order of its boundary block (sigma2).
Graph values never change after construction.
"""

import logging
from typing import Dict, Iterable, Optional, Tuple

import networkx as nx

from core import (BOUNDARY, CLOSED, HALF_EDGE_KINDS, INTERNAL, NONSEPARATING, OPEN, SEPARATING,
                  STABILITY, STRUCTURE, VERTEX_KINDS, DisconnectedGraphError, HalfEdgeId,
                  SiteNotFoundError, ValidationReport, VertexId)

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)


def _auto_marking(tails):
    return {tail: index for index, tail in enumerate(sorted(tails), start=1)}


class PreStableGraph:
    """A pre-stable dual graph (V, H, sigma0, sigma1, H^CB, g-hat, n, sigma2, markings)

    Construction never fails: malformed data is kept as given and reported by
    validate_prestable. Anything left unspecified receives a canonical default:
        - sigma1 fixes every half-edge without a partner (tails)
        - sigma2 is read off 'blocks', each block listed in cyclic order
        - an open vertex without blocks gets one block of its boundary half-edges
        - n(v) is the number of blocks of v (0 for closed vertices)
        - markings number the tails in increasing id order
    """

    def __init__(self, vertex_kinds: Dict[VertexId, str], half_edge_kinds: Dict[HalfEdgeId, str],
                 sigma0: Dict[HalfEdgeId, VertexId], sigma1: Dict[HalfEdgeId, HalfEdgeId] = None,
                 blocks: Dict[VertexId, Iterable[Iterable[HalfEdgeId]]] = None,
                 sigma2: Dict[HalfEdgeId, HalfEdgeId] = None, small_genus: Dict[VertexId, int] = None,
                 num_boundaries: Dict[VertexId, int] = None, cb_tails: Iterable[HalfEdgeId] = (),
                 boundary_marking: Dict[HalfEdgeId, int] = None,
                 internal_marking: Dict[HalfEdgeId, int] = None):
        """Constructor

        Parameters:
            vertex_kinds (dict<int, str>): Maps every vertex to 'open' or 'closed'
            half_edge_kinds (dict<int, str>): Maps every half-edge to 'boundary' or 'internal'
            sigma0 (dict<int, int>): Maps every half-edge to its vertex
            sigma1 (dict<int, int>): Partner of every paired half-edge
            blocks (dict<int, list<list<int>>>): Boundary blocks of each open vertex, in cyclic order
            sigma2 (dict<int, int>): Cyclic successor of every boundary half-edge
            small_genus (dict<int, int>): g-hat of each vertex, 0 when omitted
            num_boundaries (dict<int, int>): n of each vertex
            cb_tails (iterable<int>): Contracted boundary tails
            boundary_marking (dict<int, int>): Labels of boundary tails
            internal_marking (dict<int, int>): Labels of internal tails which are not contracted boundary tails
        """
        self._vertex_kinds = dict(vertex_kinds)
        self._half_edge_kinds = dict(half_edge_kinds)
        self._sigma0 = dict(sigma0)

        self._sigma1 = {half_edge: half_edge for half_edge in self._half_edge_kinds}
        self._sigma1.update(sigma1 or {})

        self._small_genus = {vertex: 0 for vertex in self._vertex_kinds}
        self._small_genus.update(small_genus or {})

        self._cb_tails = frozenset(cb_tails)

        if blocks is None:
            blocks = {}
            for vertex, kind in self._vertex_kinds.items():
                if kind == OPEN:
                    blocks[vertex] = [[h for h in sorted(self._half_edge_kinds)
                                       if self._half_edge_kinds[h] == BOUNDARY
                                       and self._sigma0.get(h) == vertex]]
        self._blocks = {vertex: () for vertex in self._vertex_kinds}
        self._blocks.update({vertex: tuple(tuple(block) for block in vertex_blocks)
                             for vertex, vertex_blocks in blocks.items()})

        if sigma2 is None:
            sigma2 = {}
            for vertex_blocks in self._blocks.values():
                for block in vertex_blocks:
                    for index, half_edge in enumerate(block):
                        sigma2[half_edge] = block[(index + 1) % len(block)]
        self._sigma2 = dict(sigma2)

        self._num_boundaries = {vertex: len(self._blocks[vertex]) for vertex in self._vertex_kinds}
        self._num_boundaries.update(num_boundaries or {})

        tails = [h for h in self._half_edge_kinds if self._sigma1[h] == h]
        if boundary_marking is None:
            boundary_marking = _auto_marking(h for h in tails if self._half_edge_kinds[h] == BOUNDARY)
        if internal_marking is None:
            internal_marking = _auto_marking(h for h in tails if self._half_edge_kinds[h] == INTERNAL
                                             and h not in self._cb_tails)
        self._boundary_marking = dict(boundary_marking)
        self._internal_marking = dict(internal_marking)

        self._components = None
        self._at_vertex = None

    def replace(self, **changes):
        """(PreStableGraph) Returns a copy of this graph with some constructor arguments replaced

        Every argument is carried over unless replaced; pass None for sigma2,
        num_boundaries or a marking to have it derived again.
        """
        arguments = {
            "vertex_kinds": self._vertex_kinds,
            "half_edge_kinds": self._half_edge_kinds,
            "sigma0": self._sigma0,
            "sigma1": self._sigma1,
            "blocks": self._blocks,
            "sigma2": self._sigma2,
            "small_genus": self._small_genus,
            "num_boundaries": self._num_boundaries,
            "cb_tails": self._cb_tails,
            "boundary_marking": self._boundary_marking,
            "internal_marking": self._internal_marking,
        }
        arguments.update(changes)
        return PreStableGraph(**arguments)

    # Whole maps, as fresh copies

    def get_vertex_kinds(self) -> Dict[VertexId, str]:
        return dict(self._vertex_kinds)

    def get_half_edge_kinds(self) -> Dict[HalfEdgeId, str]:
        return dict(self._half_edge_kinds)

    def get_sigma0(self) -> Dict[HalfEdgeId, VertexId]:
        return dict(self._sigma0)

    def get_sigma1(self) -> Dict[HalfEdgeId, HalfEdgeId]:
        return dict(self._sigma1)

    def get_sigma2(self) -> Dict[HalfEdgeId, HalfEdgeId]:
        return dict(self._sigma2)

    def get_small_genus_map(self) -> Dict[VertexId, int]:
        return dict(self._small_genus)

    def get_num_boundaries_map(self) -> Dict[VertexId, int]:
        return dict(self._num_boundaries)

    def get_block_map(self) -> Dict[VertexId, Tuple[Tuple[HalfEdgeId, ...], ...]]:
        return dict(self._blocks)

    # Vertices

    def get_vertices(self) -> Tuple[VertexId, ...]:
        return tuple(sorted(self._vertex_kinds))

    def get_vertex_kind(self, vertex: VertexId) -> str:
        return self._vertex_kinds[vertex]

    def is_open(self, vertex: VertexId) -> bool:
        """(bool) Returns True iff 'vertex' is an open vertex"""
        return self._vertex_kinds[vertex] == OPEN

    def get_open_vertices(self):
        return tuple(v for v in self.get_vertices() if self.is_open(v))

    def get_closed_vertices(self):
        return tuple(v for v in self.get_vertices() if not self.is_open(v))

    def get_small_genus(self, vertex: VertexId) -> int:
        return self._small_genus[vertex]

    def get_num_boundaries(self, vertex: VertexId) -> int:
        return self._num_boundaries[vertex]

    def get_blocks(self, vertex: VertexId) -> Tuple[Tuple[HalfEdgeId, ...], ...]:
        """(tuple<tuple<int>>) Returns the boundary blocks of 'vertex' as listed at construction"""
        return self._blocks[vertex]

    def get_cycle(self, vertex: VertexId, index: int = 0) -> Tuple[HalfEdgeId, ...]:
        """(tuple<int>) Returns block 'index' of 'vertex' in sigma2 order, starting at its first listed element

        Pre-conditions:
            sigma2 restricted to the block is a single cycle
        """
        block = self._blocks[vertex][index]
        if not block:
            return ()
        cycle = [block[0]]
        while len(cycle) < len(block):
            cycle.append(self._sigma2[cycle[-1]])
        return tuple(cycle)

    def get_vertex_genus(self, vertex: VertexId) -> int:
        """(int) Returns g(v): 2 g-hat + n - 1 for open vertices, g-hat for closed ones"""
        if self.is_open(vertex):
            return 2 * self._small_genus[vertex] + self._num_boundaries[vertex] - 1
        return self._small_genus[vertex]

    def get_half_edges_at(self, vertex: VertexId) -> Tuple[HalfEdgeId, ...]:
        if self._at_vertex is None:
            at_vertex = {v: [] for v in self._vertex_kinds}
            for half_edge in sorted(self._half_edge_kinds):
                at_vertex.setdefault(self._sigma0.get(half_edge), []).append(half_edge)
            self._at_vertex = {v: tuple(half_edges) for v, half_edges in at_vertex.items()}
        return self._at_vertex.get(vertex, ())

    def get_boundary_degree(self, vertex: VertexId) -> int:
        """(int) Returns k(v), the number of boundary half-edges at 'vertex'"""
        return sum(1 for h in self.get_half_edges_at(vertex) if self.is_boundary(h))

    def get_internal_degree(self, vertex: VertexId) -> int:
        """(int) Returns l(v), the number of internal half-edges at 'vertex'"""
        return sum(1 for h in self.get_half_edges_at(vertex) if not self.is_boundary(h))

    def is_stable_vertex(self, vertex: VertexId) -> bool:
        """(bool) Returns True iff 'vertex' satisfies the stability inequality

        Open vertices need k + 2l > 2 - 2g, closed vertices need l > 2 - 2g.
        """
        genus = self.get_vertex_genus(vertex)
        if self.is_open(vertex):
            return self.get_boundary_degree(vertex) + 2 * self.get_internal_degree(vertex) > 2 - 2 * genus
        return self.get_internal_degree(vertex) > 2 - 2 * genus

    def is_stable(self) -> bool:
        return all(self.is_stable_vertex(v) for v in self._vertex_kinds)

    # Half-edges

    def get_half_edges(self) -> Tuple[HalfEdgeId, ...]:
        return tuple(sorted(self._half_edge_kinds))

    def has_half_edge(self, half_edge: HalfEdgeId) -> bool:
        return half_edge in self._half_edge_kinds

    def get_half_edge_kind(self, half_edge: HalfEdgeId) -> str:
        return self._half_edge_kinds[half_edge]

    def is_boundary(self, half_edge: HalfEdgeId) -> bool:
        return self._half_edge_kinds[half_edge] == BOUNDARY

    def get_vertex(self, half_edge: HalfEdgeId) -> VertexId:
        """(int) Returns sigma0(half_edge)"""
        return self._sigma0[half_edge]

    def get_partner(self, half_edge: HalfEdgeId) -> HalfEdgeId:
        """(int) Returns sigma1(half_edge)"""
        return self._sigma1[half_edge]

    def get_next(self, half_edge: HalfEdgeId) -> Optional[HalfEdgeId]:
        """(int) Returns sigma2(half_edge), or None for internal half-edges"""
        return self._sigma2.get(half_edge)

    def get_block_index(self, half_edge: HalfEdgeId) -> Optional[int]:
        """(int) Returns the index of the block of 'half_edge' at its vertex, or None"""
        for index, block in enumerate(self._blocks.get(self._sigma0.get(half_edge), ())):
            if half_edge in block:
                return index
        return None

    def is_tail(self, half_edge: HalfEdgeId) -> bool:
        return self._sigma1[half_edge] == half_edge

    def get_tails(self):
        return tuple(h for h in self.get_half_edges() if self.is_tail(h))

    def get_boundary_tails(self):
        return tuple(h for h in self.get_tails() if self.is_boundary(h))

    def get_internal_tails(self):
        """(tuple<int>) Returns the internal tails which are not contracted boundary tails"""
        return tuple(h for h in self.get_tails() if not self.is_boundary(h) and h not in self._cb_tails)

    def get_cb_tails(self) -> frozenset:
        return self._cb_tails

    def is_cb_tail(self, half_edge: HalfEdgeId) -> bool:
        return half_edge in self._cb_tails

    def get_boundary_marking(self) -> Dict[HalfEdgeId, int]:
        return dict(self._boundary_marking)

    def get_internal_marking(self) -> Dict[HalfEdgeId, int]:
        return dict(self._internal_marking)

    def get_marking(self, half_edge: HalfEdgeId) -> Optional[int]:
        """(int) Returns the marking of a tail, or None if it has none"""
        if half_edge in self._boundary_marking:
            return self._boundary_marking[half_edge]
        return self._internal_marking.get(half_edge)

    # Edges

    def get_edges(self) -> Tuple[Tuple[HalfEdgeId, HalfEdgeId], ...]:
        """(tuple<tuple<int, int>>) Returns every edge as (smaller half-edge, larger half-edge)"""
        return tuple((h, self._sigma1[h]) for h in self.get_half_edges() if h < self._sigma1[h])

    def get_boundary_edges(self):
        return tuple(edge for edge in self.get_edges() if self.is_boundary(edge[0]))

    def get_internal_edges(self):
        return tuple(edge for edge in self.get_edges() if not self.is_boundary(edge[0]))

    def get_edge(self, half_edge: HalfEdgeId) -> Tuple[HalfEdgeId, HalfEdgeId]:
        """(tuple<int, int>) Returns the edge containing 'half_edge'

        Raises:
            SiteNotFoundError: if 'half_edge' does not exist or is a tail
        """
        if half_edge not in self._half_edge_kinds or self.is_tail(half_edge):
            raise SiteNotFoundError(f"No edge contains half-edge {half_edge}")
        partner = self._sigma1[half_edge]
        return (min(half_edge, partner), max(half_edge, partner))

    def is_smooth(self) -> bool:
        """(bool) Returns True iff the graph has no edges and no contracted boundary tails"""
        return not self.get_edges() and not self._cb_tails

    # Connectivity

    def to_networkx(self, without_edge=None):
        """(nx.MultiGraph) Returns the vertex multigraph, one edge per graph edge keyed by its smaller half

        Parameters:
            without_edge (tuple<int, int>): An edge to leave out
        """
        graph = nx.MultiGraph()
        graph.add_nodes_from(self._vertex_kinds)
        for edge in self.get_edges():
            if edge != without_edge:
                graph.add_edge(self._sigma0[edge[0]], self._sigma0[edge[1]], key=edge[0])
        return graph

    def get_components(self) -> Tuple[frozenset, ...]:
        """(tuple<frozenset<int>>) Returns the vertex sets of the connected components, ordered by smallest vertex"""
        if self._components is None:
            components = (frozenset(component) for component in nx.connected_components(self.to_networkx()))
            self._components = tuple(sorted(components, key=min))
        return self._components

    def get_component_of(self, vertex: VertexId) -> frozenset:
        for component in self.get_components():
            if vertex in component:
                return component
        raise SiteNotFoundError(f"No vertex {vertex}")

    def is_connected(self) -> bool:
        return len(self.get_components()) == 1

    def separated_parts(self, half_edge: HalfEdgeId):
        """Returns the vertex sets on either side of the edge of 'half_edge' once it is removed

        Return:
            tuple<frozenset<int>, frozenset<int>>: (side of half_edge, side of its partner),
                or None if removing the edge does not disconnect its component
        """
        edge = self.get_edge(half_edge)
        here, there = self._sigma0[half_edge], self._sigma0[self._sigma1[half_edge]]
        if here == there:
            return None
        graph = self.to_networkx(without_edge=edge)
        near = frozenset(nx.node_connected_component(graph, here))
        if there in near:
            return None
        return near, frozenset(nx.node_connected_component(graph, there))

    def part_is_closed(self, vertices) -> bool:
        """(bool) Returns True iff 'vertices' contain no open vertex and no contracted boundary tail"""
        if any(self.is_open(v) for v in vertices):
            return False
        return not any(self._sigma0[h] in vertices for h in self._cb_tails)

    def __repr__(self):
        return (f"PreStableGraph(vertices={len(self._vertex_kinds)}, half_edges={len(self._half_edge_kinds)}, "
                f"edges={len(self.get_edges())})")


def validate_prestable(graph: PreStableGraph) -> ValidationReport:
    """Checks every invariant of a pre-stable dual graph

    Also records k(v), l(v), g(v) and stability for every vertex.

    Parameters:
        graph (PreStableGraph): The graph to check

    Return:
        ValidationReport: Empty iff the graph is a valid pre-stable graph
    """
    report = ValidationReport()
    vertices = set(graph.get_vertices())
    half_edges = graph.get_half_edges()

    for vertex in graph.get_vertices():
        if graph.get_vertex_kind(vertex) not in VERTEX_KINDS:
            report.add(STRUCTURE, "unknown vertex kind", vertex)
        if graph.get_small_genus(vertex) < 0:
            report.add(STRUCTURE, "negative genus", vertex)
        n = graph.get_num_boundaries(vertex)
        if n < 0 or (n == 0) != (graph.get_vertex_kind(vertex) == CLOSED):
            report.add(STRUCTURE, "n(v) = 0 must hold exactly for closed vertices", vertex)

    for half_edge in half_edges:
        if graph.get_half_edge_kind(half_edge) not in HALF_EDGE_KINDS:
            report.add(STRUCTURE, "unknown half-edge kind", half_edge)
        if graph._sigma0.get(half_edge) not in vertices:
            report.add(STRUCTURE, "sigma0 does not reach a vertex", half_edge)
        partner = graph.get_partner(half_edge)
        if not graph.has_half_edge(partner) or graph.get_partner(partner) != half_edge:
            report.add(STRUCTURE, "sigma1 is not an involution", half_edge)
        elif graph.get_half_edge_kind(partner) != graph.get_half_edge_kind(half_edge):
            report.add(STRUCTURE, "sigma1 changes the half-edge kind", half_edge, partner)

    for tail in graph.get_cb_tails():
        if not graph.has_half_edge(tail) or graph.is_boundary(tail) or not graph.is_tail(tail):
            report.add(STRUCTURE, "contracted boundary tail is not an internal tail", tail)

    if not report.is_valid():
        return report

    for vertex in graph.get_vertices():
        boundary_here = {h for h in graph.get_half_edges_at(vertex) if graph.is_boundary(h)}
        blocks = graph.get_blocks(vertex)
        if not graph.is_open(vertex):
            if boundary_here:
                report.add(STRUCTURE, "closed vertex has boundary half-edge", vertex, *sorted(boundary_here))
            if blocks:
                report.add(STRUCTURE, "closed vertex has boundary blocks", vertex)
            continue
        if len(blocks) != graph.get_num_boundaries(vertex):
            report.add(STRUCTURE, "number of blocks differs from n(v)", vertex)
        listed = [h for block in blocks for h in block]
        if len(listed) != len(set(listed)) or set(listed) != boundary_here:
            report.add(STRUCTURE, "blocks do not partition the boundary half-edges", vertex)
            continue
        for block in blocks:
            if block and not _is_single_cycle(graph, block):
                report.add(STRUCTURE, "sigma2 not a single cycle", vertex, *block)

    in_blocks = {h for vertex in graph.get_vertices() for block in graph.get_blocks(vertex) for h in block}
    for half_edge in graph._sigma2:
        if half_edge not in in_blocks:
            report.add(STRUCTURE, "sigma2 defined outside the blocks", half_edge)

    _check_marking(report, graph.get_boundary_marking(), graph.get_boundary_tails(), "boundary")
    _check_marking(report, graph.get_internal_marking(), graph.get_internal_tails(), "internal")

    for vertex in graph.get_vertices():
        report.set_vertex_stats(vertex, k=graph.get_boundary_degree(vertex), l=graph.get_internal_degree(vertex),
                                g=graph.get_vertex_genus(vertex), stable=graph.is_stable_vertex(vertex))
    return report


def _is_single_cycle(graph, block):
    members = set(block)
    seen = [block[0]]
    current = graph.get_next(block[0])
    while current != block[0]:
        if current not in members or current in seen:
            return False
        seen.append(current)
        current = graph.get_next(current)
    return len(seen) == len(members)


def _check_marking(report, marking, tails, name):
    if set(marking) != set(tails):
        report.add(STRUCTURE, f"{name} marking does not cover exactly the {name} tails", *sorted(marking))
    elif sorted(marking.values()) != list(range(1, len(tails) + 1)):
        report.add(STRUCTURE, f"{name} marking is not a bijection onto 1..{len(tails)}", *sorted(marking))


def require_stable(graph: PreStableGraph, report: ValidationReport):
    """Adds a stability violation to 'report' for each unstable vertex of 'graph'"""
    for vertex in graph.get_vertices():
        if not graph.is_stable_vertex(vertex):
            report.add(STABILITY, "unstable vertex", vertex)


def graph_genus(graph: PreStableGraph, component: Iterable[VertexId] = None) -> int:
    """(int) Returns the genus of a connected component of 'graph'

    Parameters:
        graph (PreStableGraph): A valid graph
        component (iterable<int>): The vertices of the component; the whole graph if None

    Raises:
        DisconnectedGraphError: if the vertices do not form one connected component
    """
    vertices = frozenset(graph.get_vertices() if component is None else component)
    if vertices not in graph.get_components():
        raise DisconnectedGraphError(f"Vertices {sorted(vertices)} are not a connected component")

    genus = 1
    for vertex in vertices:
        if graph.is_open(vertex):
            genus += graph.get_vertex_genus(vertex) - 1
        else:
            genus += 2 * graph.get_vertex_genus(vertex) - 2
    for first, _ in graph.get_edges():
        if graph.get_vertex(first) in vertices:
            genus += 1 if graph.is_boundary(first) else 2
    genus += sum(1 for tail in graph.get_cb_tails() if graph.get_vertex(tail) in vertices)
    return genus


def classify_edge(graph: PreStableGraph, half_edge: HalfEdgeId) -> Tuple[str, str]:
    """Classifies the edge containing 'half_edge'

    A boundary edge separates iff removing it disconnects its component. An
    internal edge separates iff removing it disconnects its component and one
    of the parts has neither open vertices nor contracted boundary tails.

    Return:
        tuple<str, str>: (kind, 'separating' or 'nonseparating')

    Raises:
        SiteNotFoundError: if no edge contains 'half_edge'
    """
    graph.get_edge(half_edge)
    kind = graph.get_half_edge_kind(half_edge)
    parts = graph.separated_parts(half_edge)
    if parts is None:
        return kind, NONSEPARATING
    if kind == BOUNDARY or any(graph.part_is_closed(part) for part in parts):
        return kind, SEPARATING
    return kind, NONSEPARATING


def classify_edges(graph: PreStableGraph) -> Dict[Tuple[HalfEdgeId, HalfEdgeId], Tuple[str, str]]:
    """(dict<tuple<int, int>, tuple<str, str>>) Returns the classification of every edge"""
    return {edge: classify_edge(graph, edge[0]) for edge in graph.get_edges()}
