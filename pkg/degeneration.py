"""
Smoothing, detaching and boundary degenerations of graded spin graphs
"""

import itertools
import logging
from typing import List

from core import (BOUNDARY, CLOSED, INTERNAL, OPEN, HalfEdgeId, PreconditionError, SiteNotFoundError,
                  VertexId)
from isomorphism import unique_up_to_isomorphism
from spin import SpinGraph, require_valid, validate_spin

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

EDGE = "edge"
CB_TAIL = "cb"


class DegenerationSite:
    """An edge (named by its smaller half-edge) or a contracted boundary tail of a graph"""

    def __init__(self, kind: str, half_edge: HalfEdgeId):
        """Constructor

        Parameters:
            kind (str): 'edge' or 'cb'
            half_edge (int): The smaller half of the edge, or the tail
        """
        if kind not in (EDGE, CB_TAIL):
            raise PreconditionError(f"Unknown site kind '{kind}'")
        self._kind = kind
        self._half_edge = half_edge

    @classmethod
    def edge(cls, first: HalfEdgeId, second: HalfEdgeId = None):
        """(DegenerationSite) Returns the site of the edge {first, second}"""
        return cls(EDGE, first if second is None else min(first, second))

    @classmethod
    def cb_tail(cls, tail: HalfEdgeId):
        return cls(CB_TAIL, tail)

    def get_kind(self) -> str:
        return self._kind

    def get_half_edge(self) -> HalfEdgeId:
        return self._half_edge

    def is_edge(self) -> bool:
        return self._kind == EDGE

    def __eq__(self, other):
        return isinstance(other, DegenerationSite) and (self._kind, self._half_edge) == (other._kind, other._half_edge)

    def __hash__(self):
        return hash((self._kind, self._half_edge))

    def __repr__(self):
        return f"DegenerationSite({self._kind!r}, {self._half_edge})"


def degeneration_sites(spin: SpinGraph) -> List[DegenerationSite]:
    """(list<DegenerationSite>) Returns every edge, then every contracted boundary tail, in id order"""
    base = spin.get_base()
    sites = [DegenerationSite.edge(first) for first, _ in base.get_edges()]
    sites.extend(DegenerationSite.cb_tail(tail) for tail in sorted(base.get_cb_tails()))
    return sites


def site_of(spin: SpinGraph, half_edge: HalfEdgeId) -> DegenerationSite:
    """Returns the site containing 'half_edge'

    Raises:
        SiteNotFoundError: if 'half_edge' is neither on an edge nor a contracted boundary tail
    """
    base = spin.get_base()
    if base.has_half_edge(half_edge) and base.is_cb_tail(half_edge):
        return DegenerationSite.cb_tail(half_edge)
    return DegenerationSite.edge(*base.get_edge(half_edge))


def _check_site(spin, site):
    base = spin.get_base()
    half_edge = site.get_half_edge()
    if not base.has_half_edge(half_edge):
        raise SiteNotFoundError(f"No half-edge {half_edge}")
    if site.is_edge():
        return base.get_edge(half_edge)
    if not base.is_cb_tail(half_edge):
        raise SiteNotFoundError(f"Half-edge {half_edge} is not a contracted boundary tail")
    return None


def _without(mapping, removed):
    return {key: value for key, value in mapping.items() if key not in removed}


def _smoothed_next(base, half_edge, removed):
    """Returns the sigma2 successor of 'half_edge' once the half-edges 'removed' are erased

    sigma2'(h) is sigma2(h) when it survives, otherwise sigma2 sigma1 sigma2(h),
    unless that equals sigma1 sigma2(h), in which case sigma2 sigma2(h).
    """
    following = base.get_next(half_edge)
    if following not in removed:
        return following
    across = base.get_partner(following)
    candidate = base.get_next(across)
    if candidate == across:
        return base.get_next(following)
    return candidate


def _cycles(successor, members):
    """(list<tuple<int>>) Splits 'members' into the cycles of 'successor', each started at its smallest member"""
    remaining = set(members)
    cycles = []
    while remaining:
        start = min(remaining)
        cycle = [start]
        current = successor[start]
        while current != start:
            cycle.append(current)
            current = successor[current]
        remaining.difference_update(cycle)
        cycles.append(tuple(cycle))
    return cycles


def smooth(spin: SpinGraph, site: DegenerationSite) -> SpinGraph:
    """Smooths 'spin' along an edge or a contracted boundary tail

    Decorations are carried over unchanged on the surviving half-edges. When
    two vertices merge, the smaller vertex id survives. A boundary self-edge
    joining two blocks raises g-hat by one and merges the blocks; one whose
    halves lie in the same block cuts that block in two, so n grows by one
    and g-hat is unchanged.

    Raises:
        SiteNotFoundError: if the site does not exist
    """
    edge = _check_site(spin, site)
    base = spin.get_base()
    vertex_kinds = base.get_vertex_kinds()
    small_genus = base.get_small_genus_map()
    num_boundaries = base.get_num_boundaries_map()
    blocks = base.get_block_map()
    sigma0 = base.get_sigma0()

    if edge is None:
        tail = site.get_half_edge()
        vertex = base.get_vertex(tail)
        removed = {tail}
        vertex_kinds[vertex] = OPEN
        blocks[vertex] = blocks[vertex] + ((),)
        num_boundaries[vertex] += 1
        sigma2 = base.get_sigma2()
    else:
        removed = set(edge)
        first, second = edge
        here, there = base.get_vertex(first), base.get_vertex(second)
        sigma2 = {h: _smoothed_next(base, h, removed) for h in base.get_sigma2() if h not in removed}

        if base.is_boundary(first):
            affected = [block for v in {here, there} for block in blocks[v] if removed & set(block)]
            members = [h for block in affected for h in block if h not in removed]
            merged = _cycles(sigma2, members)
            merged += [()] * (3 - len(affected) - len(merged))
            kept = [block for v in sorted({here, there}) for block in blocks[v] if block not in affected]
            new_blocks = tuple(merged) + tuple(kept)
        else:
            new_blocks = tuple(block for v in sorted({here, there}) for block in blocks[v])

        keep, drop = min(here, there), max(here, there)
        if here == there:
            same_block = base.get_block_index(first) == base.get_block_index(second)
            if not (base.is_boundary(first) and same_block):
                small_genus[keep] += 1
        else:
            small_genus[keep] += small_genus.pop(drop)
            if OPEN in (vertex_kinds[here], vertex_kinds[there]):
                vertex_kinds[keep] = OPEN
            del vertex_kinds[drop], num_boundaries[drop], blocks[drop]
            for half_edge, vertex in sigma0.items():
                if vertex == drop:
                    sigma0[half_edge] = keep
        blocks[keep] = new_blocks if vertex_kinds[keep] == OPEN else ()
        num_boundaries[keep] = len(blocks[keep])

    new_base = base.replace(
        vertex_kinds=vertex_kinds,
        half_edge_kinds=_without(base.get_half_edge_kinds(), removed),
        sigma0=_without(sigma0, removed),
        sigma1=_without(base.get_sigma1(), removed),
        blocks=blocks,
        sigma2=sigma2,
        small_genus=small_genus,
        num_boundaries=num_boundaries,
        cb_tails=base.get_cb_tails() - removed,
    )
    return spin.replace(base=new_base, twists=_without(spin.get_twists(), removed),
                        legality=_without(spin.get_legality_map(), removed),
                        anchors=spin.get_anchors() - removed, ncb_tails=spin.get_ncb_tails() - removed)


def _next_marking(marking, tails):
    marking = dict(marking)
    for tail in sorted(tails):
        marking[tail] = len(marking) + 1
    return marking


def _isolated_parts_anchors(spin, base, half_edges):
    """(set<int>) Returns those of 'half_edges' lying on a part with no open vertex, cb tail or anchor"""
    anchors = set(spin.get_anchors())
    for half_edge in half_edges:
        component = base.get_component_of(base.get_vertex(half_edge))
        if base.part_is_closed(component) and not any(base.get_vertex(a) in component for a in anchors):
            anchors.add(half_edge)
    return anchors


def detach(spin: SpinGraph, site: DegenerationSite) -> SpinGraph:
    """Cuts an edge into two tails, or normalizes a contracted boundary tail

    New tails receive the next free markings in id order. A new tail lying on
    a part with no open vertices, contracted boundary tails or anchors becomes
    the anchor of that part.

    Raises:
        SiteNotFoundError: if the site does not exist
        ValidationError: if the result is not a valid graded spin graph
    """
    edge = _check_site(spin, site)
    base = spin.get_base()

    if edge is None:
        tail = site.get_half_edge()
        new_base = base.replace(cb_tails=base.get_cb_tails() - {tail},
                                internal_marking=_next_marking(base.get_internal_marking(), [tail]))
        result = spin.replace(base=new_base, ncb_tails=spin.get_ncb_tails() | {tail},
                              anchors=_isolated_parts_anchors(spin, new_base, [tail]))
        return require_valid(result, "detached graph")

    sigma1 = base.get_sigma1()
    for half_edge in edge:
        sigma1[half_edge] = half_edge
    if base.is_boundary(edge[0]):
        markings = {"boundary_marking": _next_marking(base.get_boundary_marking(), edge)}
    else:
        markings = {"internal_marking": _next_marking(base.get_internal_marking(), edge)}
    new_base = base.replace(sigma1=sigma1, **markings)
    result = spin.replace(base=new_base, anchors=_isolated_parts_anchors(spin, new_base, edge))
    return require_valid(result, "detached graph")


def _require_disk_vertex(base, vertex):
    if not base.is_open(vertex) or base.get_small_genus(vertex) or base.get_num_boundaries(vertex) != 1:
        raise PreconditionError(f"Vertex {vertex} is not an open genus-0 vertex with one boundary")


def split_vertex(spin: SpinGraph, vertex: VertexId) -> List[SpinGraph]:
    """Lists every way of splitting 'vertex' in two along a new boundary edge

    The first vertex keeps the id 'vertex' and receives a sigma2-contiguous
    arc of the boundary cycle and a subset of the internal half-edges; the
    other vertex gets the rest. The new half-edge twists are the unique
    values in {0, ..., r - 1} satisfying the twist congruence on each side,
    and their legality is forced by the grading parity. Candidates that are
    unstable or fail validation are dropped.

    Parameters:
        spin (SpinGraph): A valid graph
        vertex (int): An open vertex with g-hat = 0 and n = 1

    Return:
        list<SpinGraph>: One graph per unordered splitting
    """
    base = spin.get_base()
    _require_disk_vertex(base, vertex)
    r = spin.get_r()
    cycle = base.get_cycle(vertex, 0)
    internal = [h for h in base.get_half_edges_at(vertex) if not base.is_boundary(h)]
    k = len(cycle)

    half_a = max(base.get_half_edges(), default=-1) + 1
    half_b = half_a + 1
    other = max(base.get_vertices()) + 1

    def weight(half_edges):
        return sum(spin.get_twist(h) if base.is_boundary(h) else 2 * spin.get_twist(h) for h in half_edges)

    def legal_count(half_edges):
        return sum(1 for h in half_edges if base.is_boundary(h) and spin.is_legal(h))

    seen = set()
    results = []
    for start in range(max(k, 1)):
        for length in range(k + 1):
            arc_a = tuple(cycle[(start + i) % k] for i in range(length))
            arc_b = tuple(cycle[(start + length + i) % k] for i in range(k - length))
            for size in range(len(internal) + 1):
                for chosen in itertools.combinations(internal, size):
                    rest = tuple(h for h in internal if h not in chosen)
                    key = frozenset({(arc_a, frozenset(chosen)), (arc_b, frozenset(rest))})
                    if key in seen:
                        continue
                    seen.add(key)
                    if len(arc_a) + 2 * len(chosen) < 2 or len(arc_b) + 2 * len(rest) < 2:
                        continue

                    side_a, side_b = arc_a + chosen, arc_b + rest
                    twist_a = (-2 - weight(side_a)) % r
                    twist_b = (r - 2 - twist_a) % r
                    legal_a = ((weight(side_a) + twist_a + 2) // r - legal_count(side_a)) % 2
                    legal_b = ((weight(side_b) + twist_b + 2) // r - legal_count(side_b)) % 2

                    candidate = _build_split(spin, vertex, other, half_a, half_b, arc_a, arc_b, side_b,
                                             (twist_a, twist_b), (legal_a, legal_b))
                    report = validate_spin(candidate)
                    if report.is_valid():
                        results.append(candidate)
                    else:
                        logger.debug("splitting %s | %s rejected: %s", side_a, side_b, report.describe())
    return results


def _build_split(spin, vertex, other, half_a, half_b, arc_a, arc_b, side_b, twists, legality):
    base = spin.get_base()
    vertex_kinds = base.get_vertex_kinds()
    vertex_kinds[other] = OPEN
    half_edge_kinds = base.get_half_edge_kinds()
    half_edge_kinds[half_a] = half_edge_kinds[half_b] = BOUNDARY
    sigma0 = base.get_sigma0()
    for half_edge in side_b:
        sigma0[half_edge] = other
    sigma0[half_a], sigma0[half_b] = vertex, other
    sigma1 = base.get_sigma1()
    sigma1[half_a], sigma1[half_b] = half_b, half_a

    cycle_a, cycle_b = arc_a + (half_a,), (half_b,) + arc_b
    sigma2 = base.get_sigma2()
    for cycle in (cycle_a, cycle_b):
        for index, half_edge in enumerate(cycle):
            sigma2[half_edge] = cycle[(index + 1) % len(cycle)]
    blocks = base.get_block_map()
    blocks[vertex], blocks[other] = (cycle_a,), (cycle_b,)

    small_genus = base.get_small_genus_map()
    small_genus[other] = 0
    num_boundaries = base.get_num_boundaries_map()
    num_boundaries[other] = 1

    new_base = base.replace(vertex_kinds=vertex_kinds, half_edge_kinds=half_edge_kinds, sigma0=sigma0,
                            sigma1=sigma1, blocks=blocks, sigma2=sigma2, small_genus=small_genus,
                            num_boundaries=num_boundaries)
    spin_twists = spin.get_twists()
    spin_twists[half_a], spin_twists[half_b] = twists
    spin_legality = spin.get_legality_map()
    spin_legality[half_a], spin_legality[half_b] = legality
    return spin.replace(base=new_base, twists=spin_twists, legality=spin_legality)


def _contract_boundary(spin, vertex):
    """Returns the graph where the boundary of the empty-boundary vertex 'vertex' is contracted to a cb tail"""
    base = spin.get_base()
    tail = max(base.get_half_edges(), default=-1) + 1
    vertex_kinds = base.get_vertex_kinds()
    vertex_kinds[vertex] = CLOSED
    half_edge_kinds = base.get_half_edge_kinds()
    half_edge_kinds[tail] = INTERNAL
    sigma0 = base.get_sigma0()
    sigma0[tail] = vertex
    blocks = base.get_block_map()
    blocks[vertex] = ()
    num_boundaries = base.get_num_boundaries_map()
    num_boundaries[vertex] = 0
    new_base = base.replace(vertex_kinds=vertex_kinds, half_edge_kinds=half_edge_kinds, sigma0=sigma0,
                            blocks=blocks, num_boundaries=num_boundaries, cb_tails=base.get_cb_tails() | {tail})
    twists = spin.get_twists()
    twists[tail] = spin.get_r() - 1
    return spin.replace(base=new_base, twists=twists)


def _require_smooth_disk(spin):
    base = spin.get_base()
    if not base.is_smooth() or len(base.get_vertices()) != 1:
        raise PreconditionError("Expected a smooth graph with a single vertex")
    vertex = base.get_vertices()[0]
    _require_disk_vertex(base, vertex)
    return vertex


def codim1_boundaries(spin: SpinGraph) -> List[SpinGraph]:
    """Lists the codimension-1 boundary graphs of a smooth genus-0 disk

    These are the boundary edge splittings of the unique vertex and, when the
    disk has no boundary tails, the graph with the boundary contracted.

    Raises:
        PreconditionError: if 'spin' is not a smooth single open genus-0 vertex
    """
    vertex = _require_smooth_disk(spin)
    facets = split_vertex(spin, vertex)
    if spin.get_base().get_boundary_degree(vertex) == 0:
        contracted = _contract_boundary(spin, vertex)
        if validate_spin(contracted).is_valid():
            facets.append(contracted)
    logger.debug("%d codimension-1 boundaries", len(facets))
    return facets


def codim2_boundaries(spin: SpinGraph) -> List[SpinGraph]:
    """Lists the corners of a smooth genus-0 disk: graphs with two boundary edges, up to isomorphism"""
    _require_smooth_disk(spin)
    corners = []
    for facet in codim1_boundaries(spin):
        base = facet.get_base()
        for vertex in base.get_vertices():
            if base.is_open(vertex):
                corners.extend(split_vertex(facet, vertex))
    return unique_up_to_isomorphism(corners)
