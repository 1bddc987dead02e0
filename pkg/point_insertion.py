"""
(r, h)-graphs and the point insertion correspondence

An (r, h)-graph is a family of legal level-h spin graphs (its components)
joined by dashed lines, each pairing an internal tail of twist a with a
boundary tail of twist r - 2 - 2a on another component. Point insertion
exchanges a boundary edge whose illegal half has a small even twist t for a
dashed line to a new internal point of twist t / 2, matching the BI and AI
boundaries of the cells of the glued moduli.
"""

import itertools
import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from core import (AI, BI, BOUNDARY, CB, INTERNAL, NS_PLUS, OPEN, RAMOND, STRUCTURE, InsertionError,
                  PreconditionError, TailRef, ValidationError, ValidationReport)
from degeneration import DegenerationSite, codim1_boundaries, degeneration_sites, smooth
from dual_graph import graph_genus
from isomorphism import IsomorphismIndex, are_rh_isomorphic, encode_rh
from spin import SpinGraph, create_disk, is_level_h, spin_exists, stratum_dimension, validate_spin

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)


class RHGraph:
    """An (r, h)-graph: spin graph components joined by dashed lines

    Tails are referred to by TailRefs (component index, half-edge id).
    Components may be degenerate (carry edges), in which case the graph
    names a boundary stratum of a cell rather than a cell.
    """

    def __init__(self, r: int, h: int, components: Sequence[SpinGraph],
                 dashed: Iterable[Tuple[TailRef, TailRef]] = (),
                 boundary_labels: Dict[TailRef, int] = None, internal_labels: Dict[TailRef, int] = None):
        """Constructor

        Parameters:
            r (int): The spin index
            h (int): The level, 0 <= h <= (r - 2) // 2
            components (list<SpinGraph>): The components
            dashed (iterable<tuple<TailRef, TailRef>>): (internal tail, boundary tail) pairs
            boundary_labels (dict<TailRef, int>): Labels of the unpaired boundary tails
            internal_labels (dict<TailRef, int>): Labels of the unpaired internal tails
        """
        self._r = r
        self._h = h
        self._components = tuple(components)
        self._dashed = tuple(sorted((tuple(internal), tuple(boundary)) for internal, boundary in dashed))
        self._boundary_labels = dict(boundary_labels or {})
        self._internal_labels = dict(internal_labels or {})

        self._partners = {}
        for internal, boundary in self._dashed:
            self._partners[internal] = boundary
            self._partners[boundary] = internal

    def replace(self, **changes):
        """(RHGraph) Returns a copy with some constructor arguments replaced"""
        arguments = {
            "r": self._r,
            "h": self._h,
            "components": self._components,
            "dashed": self._dashed,
            "boundary_labels": self._boundary_labels,
            "internal_labels": self._internal_labels,
        }
        arguments.update(changes)
        return RHGraph(**arguments)

    def replace_component(self, index: int, component: SpinGraph):
        """(RHGraph) Returns a copy where component 'index' is replaced; tail ids must be preserved"""
        components = list(self._components)
        components[index] = component
        return self.replace(components=components)

    def get_r(self) -> int:
        return self._r

    def get_h(self) -> int:
        return self._h

    def get_components(self) -> Tuple[SpinGraph, ...]:
        return self._components

    def get_component(self, index: int) -> SpinGraph:
        return self._components[index]

    def get_dashed(self) -> Tuple[Tuple[TailRef, TailRef], ...]:
        """(tuple<tuple<TailRef, TailRef>>) Returns the dashed lines as sorted (internal, boundary) pairs"""
        return self._dashed

    def get_num_dashed(self) -> int:
        """(int) Returns |E(G)|, the number of dashed lines"""
        return len(self._dashed)

    def get_partner_tail(self, tail: TailRef) -> Optional[TailRef]:
        """(TailRef) Returns the other end of the dashed line at 'tail', or None if it is unpaired"""
        return self._partners.get(tuple(tail))

    def get_paired_tails(self) -> frozenset:
        return frozenset(self._partners)

    def get_boundary_labels(self) -> Dict[TailRef, int]:
        return dict(self._boundary_labels)

    def get_internal_labels(self) -> Dict[TailRef, int]:
        return dict(self._internal_labels)

    def is_smooth(self) -> bool:
        return all(component.get_base().is_smooth() for component in self._components)

    def get_dimension(self) -> int:
        """(int) Returns the real dimension of the stratum: the sum over the components"""
        return sum(stratum_dimension(component) for component in self._components)

    def __repr__(self):
        return (f"RHGraph(r={self._r}, h={self._h}, components={len(self._components)}, "
                f"dashed={len(self._dashed)})")


def _tail_twist(rh, tail):
    return rh.get_component(tail[0]).get_twist(tail[1])


def validate_rh(rh: RHGraph) -> ValidationReport:
    """Checks that 'rh' is an (r, h)-graph

    Component reports are merged with a 'component <i>: ' prefix.
    """
    report = ValidationReport()
    r, h = rh.get_r(), rh.get_h()
    if not 0 <= h <= (r - 2) // 2:
        report.add(STRUCTURE, f"level {h} outside 0..{(r - 2) // 2}")
        return report

    for index, component in enumerate(rh.get_components()):
        prefix = f"component {index}: "
        if component.get_r() != r:
            report.add("component", prefix + "different r", index)
            continue
        component_report = validate_spin(component)
        report.merge(component_report, prefix)
        if not component_report.is_valid():
            continue
        base = component.get_base()
        if not base.is_connected():
            report.add("component", prefix + "not connected", index)
        if not base.get_open_vertices() and not base.get_cb_tails():
            report.add("component", prefix + "has neither open vertices nor contracted boundary tails", index)
        if not component.is_legal_graph():
            report.add("legal", prefix + "has an illegal boundary tail", index)
        if not is_level_h(component, h):
            report.add("level", prefix + f"is not of level {h}", index)
    if not report.is_valid():
        return report

    used = set()
    for internal, boundary in rh.get_dashed():
        name = f"dashed pair {internal}->{boundary}"
        if internal in used or boundary in used:
            report.add("dashed", name + " reuses a tail", internal, boundary)
        used.update((internal, boundary))
        if not _is_tail(rh, internal, INTERNAL) or not _is_tail(rh, boundary, BOUNDARY):
            report.add("dashed", name + " must join an internal tail to a boundary tail", internal, boundary)
            continue
        if internal[0] == boundary[0]:
            report.add("dashed", name + " joins a component to itself", internal, boundary)
        a, b = _tail_twist(rh, internal), _tail_twist(rh, boundary)
        if 2 * a + b != r - 2:
            report.add("dashed", name + f" violates 2a + b = r - 2 ({2 * a + b} != {r - 2})", internal, boundary)
        if not 0 <= a <= h:
            report.add("dashed", name + f" has internal twist {a} outside 0..{h}", internal, boundary)

    _check_labels(rh, report)
    _check_bubbles(rh, report)

    if rh.get_components() and not nx.is_connected(_dashed_graph(rh)):
        report.add("connected", "the graph of components and dashed lines is not connected")
    return report


def _is_tail(rh, tail, kind):
    index, half_edge = tail
    if not 0 <= index < len(rh.get_components()):
        return False
    base = rh.get_component(index).get_base()
    return (base.has_half_edge(half_edge) and base.is_tail(half_edge)
            and base.get_half_edge_kind(half_edge) == kind and not base.is_cb_tail(half_edge))


def _check_labels(rh, report):
    paired = rh.get_paired_tails()
    for kind, labels, getter in ((BOUNDARY, rh.get_boundary_labels(), "get_boundary_tails"),
                                 (INTERNAL, rh.get_internal_labels(), "get_internal_tails")):
        unpaired = {(index, tail) for index, component in enumerate(rh.get_components())
                    for tail in getattr(component.get_base(), getter)() if (index, tail) not in paired}
        if set(labels) != unpaired:
            report.add("labels", f"{kind} labels do not cover exactly the unpaired {kind} tails")
        elif sorted(labels.values()) != list(range(1, len(unpaired) + 1)):
            report.add("labels", f"{kind} labels are not a bijection onto 1..{len(unpaired)}")


def _check_bubbles(rh, report):
    """Rejects every genus-0 component made of one boundary tail and one dashed internal tail

    The shape is rejected whatever its decorations, which is stricter than
    the no-transporter rule. The r = 2, h = 0 sphere complex with one
    internal point has its 16 cells only under the stricter rule.
    """
    for index, component in enumerate(rh.get_components()):
        base = component.get_base()
        half_edges = base.get_half_edges()
        if len(base.get_vertices()) != 1 or len(half_edges) != 2 or graph_genus(base):
            continue
        internal = [h for h in half_edges if not base.is_boundary(h)]
        if len(internal) == 1 and (index, internal[0]) in rh.get_paired_tails():
            report.add("bubble", f"component {index} is one boundary tail and one paired internal tail", index)


def _dashed_graph(rh):
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(rh.get_components())))
    graph.add_edges_from((internal[0], boundary[0]) for internal, boundary in rh.get_dashed())
    return graph


def require_valid_rh(rh: RHGraph, context: str = "(r, h)-graph") -> RHGraph:
    report = validate_rh(rh)
    if not report.is_valid():
        raise ValidationError(f"Invalid {context}", report)
    return rh


def rh_genus(rh: RHGraph) -> int:
    """(int) Returns the sum of the component genera plus the genus |E| - |V| + 1 of the dashed graph"""
    components = sum(graph_genus(component.get_base()) for component in rh.get_components())
    return components + rh.get_num_dashed() - len(rh.get_components()) + 1


class BoundaryStratumRef:
    """A codimension-1 boundary of a cell: a component of the cell replaced by one of its boundary graphs"""

    def __init__(self, rh: RHGraph, component: int, facet: SpinGraph, site: DegenerationSite = None):
        """Constructor

        Parameters:
            rh (RHGraph): The cell
            component (int): Index of the degenerating component
            facet (SpinGraph): The boundary graph replacing that component
            site (DegenerationSite): The degeneration of 'facet'; its unique site if None
        """
        if site is None:
            sites = degeneration_sites(facet)
            if len(sites) != 1:
                raise PreconditionError("A facet needs a site unless it has exactly one")
            site = sites[0]
        self._rh = rh
        self._component = component
        self._facet = facet
        self._site = site
        self._type = None

    def get_rh(self) -> RHGraph:
        return self._rh

    def get_component_index(self) -> int:
        return self._component

    def get_facet(self) -> SpinGraph:
        return self._facet

    def get_site(self) -> DegenerationSite:
        return self._site

    def get_degenerate(self) -> RHGraph:
        """(RHGraph) Returns the cell with the degenerating component replaced by the facet"""
        return self._rh.replace_component(self._component, self._facet)

    def get_type(self) -> str:
        if self._type is None:
            self._type = classify_boundary(self)
        return self._type

    def __repr__(self):
        return f"BoundaryStratumRef(component={self._component}, site={self._site})"


def facets_of(rh: RHGraph) -> List[BoundaryStratumRef]:
    """(list<BoundaryStratumRef>) Returns every codimension-1 boundary of a smooth cell, component by component"""
    return [BoundaryStratumRef(rh, index, facet)
            for index, component in enumerate(rh.get_components())
            for facet in codim1_boundaries(component)]


def _legal_and_illegal(component, half_edge):
    """Returns (illegal half, legal half) of the NS boundary edge containing 'half_edge'"""
    base = component.get_base()
    first, second = base.get_edge(half_edge)
    if not base.is_boundary(first):
        raise PreconditionError(f"Edge {(first, second)} is not a boundary edge")
    if component.get_legality(first) == component.get_legality(second):
        raise PreconditionError(f"Edge {(first, second)} does not have exactly one legal half")
    return (first, second) if component.get_legality(second) else (second, first)


def classify_site(rh: RHGraph, index: int, component: SpinGraph, site: DegenerationSite) -> str:
    """(str) Returns the boundary type (CB, R, NS+, AI or BI) of one degeneration of a component

    Parameters:
        rh (RHGraph): The (r, h)-graph supplying the level and the dashed lines
        index (int): The index of 'component' in 'rh'
        component (SpinGraph): The degenerate component
        site (DegenerationSite): The degeneration to classify

    Raises:
        PreconditionError: if the site is an internal edge or a malformed boundary edge
    """
    if not site.is_edge():
        return CB
    base = component.get_base()
    if not base.is_boundary(site.get_half_edge()):
        raise PreconditionError("Internal edges are not boundary strata")
    if component.is_ramond(site.get_half_edge()):
        return RAMOND
    illegal, legal = _legal_and_illegal(component, site.get_half_edge())
    if component.get_twist(illegal) > 2 * rh.get_h():
        return NS_PLUS
    others = [h for h in base.get_half_edges_at(base.get_vertex(legal)) if h != legal]
    if len(others) == 1:
        other = others[0]
        if (not base.is_boundary(other) and base.is_tail(other) and not base.is_cb_tail(other)
                and (index, other) in rh.get_paired_tails()):
            return AI
    return BI


def classify_boundary(boundary: BoundaryStratumRef) -> str:
    """(str) Returns the type of a codimension-1 boundary: CB, R, NS+, AI or BI"""
    return classify_site(boundary.get_rh(), boundary.get_component_index(), boundary.get_facet(),
                         boundary.get_site())


def _restrict(component: SpinGraph, vertices, cut=()) -> SpinGraph:
    """Returns the part of 'component' on 'vertices'; half-edges in 'cut' become tails"""
    base = component.get_base()
    half_edges = {h for h in base.get_half_edges() if base.get_vertex(h) in vertices}
    sigma1 = {h: (h if h in cut else base.get_partner(h)) for h in half_edges}
    new_base = base.replace(
        vertex_kinds={v: k for v, k in base.get_vertex_kinds().items() if v in vertices},
        half_edge_kinds={h: k for h, k in base.get_half_edge_kinds().items() if h in half_edges},
        sigma0={h: v for h, v in base.get_sigma0().items() if h in half_edges},
        sigma1=sigma1,
        blocks={v: b for v, b in base.get_block_map().items() if v in vertices},
        sigma2={h: n for h, n in base.get_sigma2().items() if h in half_edges},
        small_genus={v: g for v, g in base.get_small_genus_map().items() if v in vertices},
        num_boundaries={v: n for v, n in base.get_num_boundaries_map().items() if v in vertices},
        cb_tails=base.get_cb_tails() & half_edges,
        boundary_marking=None,
        internal_marking=None,
    )
    return component.replace(
        base=new_base,
        twists={h: t for h, t in component.get_twists().items() if h in half_edges},
        legality={h: a for h, a in component.get_legality_map().items() if h in half_edges},
        anchors=component.get_anchors() & half_edges,
        ncb_tails=component.get_ncb_tails() & half_edges,
    )


def _remap_tails(rh, mapping, dropped=()):
    """Returns (dashed, boundary labels, internal labels) of 'rh' with tails renamed by 'mapping'

    'mapping' receives a TailRef and returns its new TailRef; dashed lines
    touching a tail in 'dropped' are removed.
    """
    dashed = [(mapping(internal), mapping(boundary)) for internal, boundary in rh.get_dashed()
              if internal not in dropped and boundary not in dropped]
    boundary_labels = {mapping(tail): label for tail, label in rh.get_boundary_labels().items()}
    internal_labels = {mapping(tail): label for tail, label in rh.get_internal_labels().items()}
    return dashed, boundary_labels, internal_labels


def insert_point(rh: RHGraph, index: int, half_edge) -> Tuple[RHGraph, int, Tuple[int, int]]:
    """Performs point insertion at a boundary edge of a (possibly degenerate) component

    The part on the legal side of the edge becomes a new last component whose
    legal half is now a boundary tail. The illegal side keeps the edge, which
    now ends at a new bubble vertex holding a legal half of the same twist as
    the old legal half and a new internal tail of half the illegal twist,
    dashed to the old legal half.

    Parameters:
        rh (RHGraph): The graph
        index (int): The component holding the edge
        half_edge (int): Either half of the edge

    Return:
        tuple<RHGraph, int, tuple<int, int>>: The new graph, the index of the
            component holding the bubble edge, and that edge as (illegal half, bubble half)

    Raises:
        InsertionError: if the edge is Ramond, the illegal twist is odd or above 2h, or the edge does not separate
    """
    component = rh.get_component(index)
    base = component.get_base()
    if component.is_ramond(half_edge):
        raise InsertionError("Point insertion needs an NS boundary edge")
    illegal, legal = _legal_and_illegal(component, half_edge)
    twist = component.get_twist(illegal)
    if twist % 2:
        raise InsertionError(f"Odd illegal twist {twist}")
    if twist > 2 * rh.get_h():
        raise InsertionError(f"Illegal twist {twist} exceeds 2h = {2 * rh.get_h()}")
    parts = base.separated_parts(illegal)
    if parts is None:
        raise InsertionError("Point insertion on a non-separating boundary edge is not supported")
    near, far = parts

    bubble = max(base.get_vertices()) + 1
    bubble_half = max(base.get_half_edges()) + 1
    new_internal = bubble_half + 1

    kept = _restrict(component, near)
    kept_base = kept.get_base()
    vertex_kinds = kept_base.get_vertex_kinds()
    vertex_kinds[bubble] = OPEN
    half_edge_kinds = kept_base.get_half_edge_kinds()
    half_edge_kinds[bubble_half], half_edge_kinds[new_internal] = BOUNDARY, INTERNAL
    sigma0 = kept_base.get_sigma0()
    sigma0[bubble_half] = sigma0[new_internal] = bubble
    sigma1 = kept_base.get_sigma1()
    sigma1[illegal], sigma1[bubble_half] = bubble_half, illegal
    sigma2 = kept_base.get_sigma2()
    sigma2[bubble_half] = bubble_half
    blocks = kept_base.get_block_map()
    blocks[bubble] = ((bubble_half,),)
    num_boundaries = kept_base.get_num_boundaries_map()
    num_boundaries[bubble] = 1
    small_genus = kept_base.get_small_genus_map()
    small_genus[bubble] = 0
    with_bubble = kept_base.replace(vertex_kinds=vertex_kinds, half_edge_kinds=half_edge_kinds, sigma0=sigma0,
                                    sigma1=sigma1, sigma2=sigma2, blocks=blocks, num_boundaries=num_boundaries,
                                    small_genus=small_genus, boundary_marking=None, internal_marking=None)
    twists = kept.get_twists()
    twists[bubble_half], twists[new_internal] = component.get_twist(legal), twist // 2
    legality = kept.get_legality_map()
    legality[bubble_half] = 1
    inserted = kept.replace(base=with_bubble, twists=twists, legality=legality)

    moved = _restrict(component, far, cut=(legal,))
    new_index = len(rh.get_components())
    far_half_edges = set(moved.get_base().get_half_edges())

    def mapping(tail):
        if tail[0] == index and tail[1] in far_half_edges:
            return (new_index, tail[1])
        return tail

    dashed, boundary_labels, internal_labels = _remap_tails(rh, mapping)
    dashed.append(((index, new_internal), (new_index, legal)))
    components = list(rh.get_components())
    components[index] = inserted
    components.append(moved)
    result = rh.replace(components=components, dashed=dashed, boundary_labels=boundary_labels,
                        internal_labels=internal_labels)
    return result, index, (illegal, bubble_half)


def _shifted(component: SpinGraph, vertex_offset: int, half_offset: int) -> SpinGraph:
    """Returns a copy of 'component' with every vertex id and half-edge id shifted"""
    base = component.get_base()

    def v(vertex):
        return vertex + vertex_offset

    def e(half_edge):
        return half_edge + half_offset

    new_base = base.replace(
        vertex_kinds={v(x): kind for x, kind in base.get_vertex_kinds().items()},
        half_edge_kinds={e(x): kind for x, kind in base.get_half_edge_kinds().items()},
        sigma0={e(x): v(y) for x, y in base.get_sigma0().items()},
        sigma1={e(x): e(y) for x, y in base.get_sigma1().items()},
        blocks={v(x): tuple(tuple(e(h) for h in block) for block in blocks)
                for x, blocks in base.get_block_map().items()},
        sigma2={e(x): e(y) for x, y in base.get_sigma2().items()},
        small_genus={v(x): g for x, g in base.get_small_genus_map().items()},
        num_boundaries={v(x): n for x, n in base.get_num_boundaries_map().items()},
        cb_tails={e(x) for x in base.get_cb_tails()},
        boundary_marking={e(x): m for x, m in base.get_boundary_marking().items()},
        internal_marking={e(x): m for x, m in base.get_internal_marking().items()},
    )
    return component.replace(
        base=new_base,
        twists={e(x): t for x, t in component.get_twists().items()},
        legality={e(x): a for x, a in component.get_legality_map().items()},
        anchors={e(x) for x in component.get_anchors()},
        ncb_tails={e(x) for x in component.get_ncb_tails()},
    )


def _bubble_of(rh, index, half_edge):
    """Returns (illegal half, bubble half, bubble internal tail, dashed partner) of an insertion bubble edge"""
    component = rh.get_component(index)
    base = component.get_base()
    if component.is_ramond(half_edge):
        raise InsertionError("Not an insertion bubble: Ramond edge")
    illegal, legal = _legal_and_illegal(component, half_edge)
    others = [h for h in base.get_half_edges_at(base.get_vertex(legal)) if h != legal]
    if len(others) != 1 or base.is_boundary(others[0]) or not base.is_tail(others[0]):
        raise InsertionError("Not an insertion bubble: the legal vertex must hold one internal tail")
    partner = rh.get_partner_tail((index, others[0]))
    if partner is None:
        raise InsertionError("Not an insertion bubble: the internal tail is unpaired")
    if partner[0] == index:
        raise InsertionError("Point removal on a dashed line within one component is not supported")
    return illegal, legal, others[0], partner


def remove_point(rh: RHGraph, index: int, half_edge) -> Tuple[RHGraph, int, Tuple[int, int]]:
    """Undoes point insertion at an insertion bubble edge of a (possibly degenerate) component

    The bubble vertex is removed and the component dashed to its internal
    tail is glued in its place, its paired boundary tail becoming the legal
    half of the restored edge.

    Return:
        tuple<RHGraph, int, tuple<int, int>>: The new graph, the index of the
            merged component, and the restored edge as (illegal half, legal half)

    Raises:
        InsertionError: if the edge does not end at an insertion bubble
    """
    illegal, legal, internal, partner = _bubble_of(rh, index, half_edge)
    component = rh.get_component(index)
    base = component.get_base()
    bubble = base.get_vertex(legal)
    other_index, other_tail = partner

    kept = _restrict(component, set(base.get_vertices()) - {bubble}, cut=(illegal,))
    vertex_offset = max(base.get_vertices()) + 1
    half_offset = max(base.get_half_edges()) + 1
    moved = _shifted(rh.get_component(other_index), vertex_offset, half_offset)
    restored = other_tail + half_offset

    kept_base, moved_base = kept.get_base(), moved.get_base()
    sigma1 = kept_base.get_sigma1()
    sigma1.update(moved_base.get_sigma1())
    sigma1[illegal], sigma1[restored] = restored, illegal

    def union(first, second):
        merged = dict(first)
        merged.update(second)
        return merged

    merged_base = kept_base.replace(
        vertex_kinds=union(kept_base.get_vertex_kinds(), moved_base.get_vertex_kinds()),
        half_edge_kinds=union(kept_base.get_half_edge_kinds(), moved_base.get_half_edge_kinds()),
        sigma0=union(kept_base.get_sigma0(), moved_base.get_sigma0()),
        sigma1=sigma1,
        blocks=union(kept_base.get_block_map(), moved_base.get_block_map()),
        sigma2=union(kept_base.get_sigma2(), moved_base.get_sigma2()),
        small_genus=union(kept_base.get_small_genus_map(), moved_base.get_small_genus_map()),
        num_boundaries=union(kept_base.get_num_boundaries_map(), moved_base.get_num_boundaries_map()),
        cb_tails=kept_base.get_cb_tails() | moved_base.get_cb_tails(),
        boundary_marking=None,
        internal_marking=None,
    )
    merged = kept.replace(
        base=merged_base,
        twists=union(kept.get_twists(), moved.get_twists()),
        legality=union(kept.get_legality_map(), moved.get_legality_map()),
        anchors=kept.get_anchors() | moved.get_anchors(),
        ncb_tails=kept.get_ncb_tails() | moved.get_ncb_tails(),
    )

    def new_position(position):
        return position - 1 if position > other_index else position

    merged_index = new_position(index)

    def mapping(tail):
        if tail[0] == other_index:
            return (merged_index, tail[1] + half_offset)
        return (new_position(tail[0]), tail[1])

    dashed, boundary_labels, internal_labels = _remap_tails(rh, mapping, dropped={(index, internal)})
    components = [c for position, c in enumerate(rh.get_components()) if position != other_index]
    components[merged_index] = merged
    result = rh.replace(components=components, dashed=dashed, boundary_labels=boundary_labels,
                        internal_labels=internal_labels)
    return result, merged_index, (illegal, restored)


def pi_forward(boundary: BoundaryStratumRef) -> Tuple[RHGraph, BoundaryStratumRef]:
    """Maps a BI boundary to the cell and AI boundary it is glued to

    Raises:
        InsertionError: if 'boundary' is not of type BI
    """
    if boundary.get_type() != BI:
        raise InsertionError(f"pi_forward needs a BI boundary, got {boundary.get_type()}")
    degenerate, index, edge = insert_point(boundary.get_degenerate(), boundary.get_component_index(),
                                           boundary.get_site().get_half_edge())
    site = DegenerationSite.edge(*edge)
    facet = degenerate.get_component(index)
    cell = degenerate.replace_component(index, smooth(facet, site))
    return cell, BoundaryStratumRef(cell, index, facet, site)


def pi_backward(boundary: BoundaryStratumRef) -> Tuple[RHGraph, BoundaryStratumRef]:
    """Maps an AI boundary to the cell and BI boundary it is glued to

    Raises:
        InsertionError: if 'boundary' is not of type AI
    """
    if boundary.get_type() != AI:
        raise InsertionError(f"pi_backward needs an AI boundary, got {boundary.get_type()}")
    degenerate, index, edge = remove_point(boundary.get_degenerate(), boundary.get_component_index(),
                                           boundary.get_site().get_half_edge())
    site = DegenerationSite.edge(*edge)
    facet = degenerate.get_component(index)
    cell = degenerate.replace_component(index, smooth(facet, site))
    return cell, BoundaryStratumRef(cell, index, facet, site)


def same_boundary(first: BoundaryStratumRef, second: BoundaryStratumRef) -> bool:
    """(bool) Returns True iff the two boundaries have isomorphic degenerate graphs"""
    return are_rh_isomorphic(first.get_degenerate(), second.get_degenerate()) is not None


# Enumeration of smooth (r, h)-graphs
#
# A smooth genus-0 (r, h)-graph is a tree of disks. The tree is grown from the
# disk holding the first unpaired tail; every subtree hanging off a dashed
# line consumes a nonempty set of unpaired tails (its leaves need them to be
# stable), so the sets handed to the children of a disk partition the tails
# it does not keep. An end ('int', a) is a paired internal tail of twist a,
# an end ('bd', a) a paired boundary tail of twist r - 2 - 2a.

INTERNAL_END = "int"
BOUNDARY_END = "bd"


class _Disk:
    """A disk of an enumerated tree: its own unpaired tails, the end toward its parent and its children"""

    def __init__(self, tails, parent_end, children, cost):
        self.tails = tails
        self.parent_end = parent_end
        self.children = children
        self.cost = cost


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for size in range(len(rest) + 1):
        for others in itertools.combinations(rest, size):
            remaining = [item for item in rest if item not in others]
            for partition in _set_partitions(remaining):
                yield [frozenset((first,) + others)] + partition


def _subsets(items):
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


class _TreeSearch:
    """Enumerates the disk trees with given unpaired tails"""

    def __init__(self, r, h, twists):
        self._r = r
        self._h = h
        self._twists = twists
        self._ends = [(role, a) for a in range(h + 1) for role in (INTERNAL_END, BOUNDARY_END)]
        self._exact = lru_cache(maxsize=None)(self._exact_uncached)

    def _disk_ok(self, tails, ends):
        boundary = [self._twists[t] for t in tails if t[0] == "B"]
        internal = [self._twists[t] for t in tails if t[0] == "I"]
        paired_internal = 0
        for role, a in ends:
            if role == INTERNAL_END:
                internal.append(a)
                paired_internal += 1
            else:
                boundary.append(self._r - 2 - 2 * a)
        k, l = len(boundary), len(internal)
        if k + 2 * l < 3:
            return None
        if k == 1 and l == 1 and paired_internal:
            return None
        total = 2 * sum(internal) + sum(boundary) + 2
        if total % self._r or (total // self._r - k) % 2:
            return None
        return k + 2 * l - 3

    def disks(self, available, parent_end, budget, must_hold=None):
        """Yields every disk using exactly 'available', with the given end toward its parent"""
        items = sorted(available)
        for kept in _subsets(items):
            if must_hold is not None and must_hold not in kept:
                continue
            rest = [item for item in items if item not in kept]
            for partition in _set_partitions(rest):
                for choices in itertools.product(self._ends, repeat=len(partition)):
                    ends = list(choices) if parent_end is None else [parent_end] + list(choices)
                    cost = self._disk_ok(kept, ends)
                    if cost is None or cost > budget:
                        continue
                    options = []
                    for block, (role, a) in zip(partition, choices):
                        opposite = BOUNDARY_END if role == INTERNAL_END else INTERNAL_END
                        options.append(self._exact(block, (opposite, a), budget - cost))
                    for children in itertools.product(*options):
                        total = cost + sum(child.cost for child in children)
                        if total <= budget:
                            yield _Disk(tuple(kept), parent_end, tuple(zip(choices, children)), total)

    def _exact_uncached(self, available, parent_end, budget):
        return tuple(self.disks(available, parent_end, budget))


def _validate_enumeration_input(r, h, boundary_twists, internal_twists):
    if r < 2 or not 0 <= h <= (r - 2) // 2:
        raise PreconditionError(f"Invalid twist ranges: need r >= 2 and 0 <= h <= {(r - 2) // 2}")
    for twist in boundary_twists:
        if not r - 2 - 2 * h <= twist <= r - 2 or (r - 2 - twist) % 2:
            raise PreconditionError(f"Invalid twist ranges: boundary twist {twist} is not in "
                                    f"{{{r - 2 - 2 * h}, ..., {r - 2}}} step 2")
    for twist in internal_twists:
        if not 0 <= twist <= r - 1:
            raise PreconditionError(f"Invalid twist ranges: internal twist {twist} outside 0..{r - 1}")


def _flatten(root):
    """Lists the disks of a tree depth first, as (tails, ends) with ends (role, a, link id)"""
    disks = []
    links = itertools.count()

    def visit(disk, parent_link):
        position = len(disks)
        ends = [] if parent_link is None else [disk.parent_end + (parent_link,)]
        disks.append((disk.tails, ends))
        for (role, a), child in disk.children:
            link = next(links)
            disks[position][1].append((role, a, link))
            visit(child, link)

    visit(root, None)
    return disks


def _realize(r, h, root, twists):
    """Yields one RHGraph per choice of cyclic orders on the disks of a tree"""
    disks = _flatten(root)
    orders = []
    for tails, ends in disks:
        boundary = [("tail", t) for t in tails if t[0] == "B"]
        boundary += [("end", link) for role, _, link in ends if role == BOUNDARY_END]
        if boundary:
            orders.append([(boundary[0],) + rest for rest in itertools.permutations(boundary[1:])])
        else:
            orders.append([()])

    for choice in itertools.product(*orders):
        components, dashed_ends = [], {}
        boundary_labels, internal_labels = {}, {}
        for index, ((tails, ends), order) in enumerate(zip(disks, choice)):
            end_twists = {link: (role, a) for role, a, link in ends}
            internal = [("tail", t) for t in tails if t[0] == "I"]
            internal += [("end", link) for role, _, link in ends if role == INTERNAL_END]

            def twist(item):
                kind, value = item
                if kind == "tail":
                    return twists[value]
                role, a = end_twists[value]
                return a if role == INTERNAL_END else r - 2 - 2 * a

            components.append(create_disk(r, [twist(item) for item in order], [twist(item) for item in internal]))
            for half_edge, (kind, value) in enumerate(list(order) + internal):
                reference = (index, half_edge)
                if kind == "end":
                    role = end_twists[value][0]
                    dashed_ends.setdefault(value, {})[role] = reference
                elif value[0] == "B":
                    boundary_labels[reference] = value[1]
                else:
                    internal_labels[reference] = value[1]
        dashed = [(ends[INTERNAL_END], ends[BOUNDARY_END]) for _, ends in sorted(dashed_ends.items())]
        yield RHGraph(r, h, components, dashed, boundary_labels, internal_labels)


def enumerate_smooth_rh(r: int, h: int, boundary_twists: Sequence[int],
                        internal_twists: Sequence[int] = ()) -> List[RHGraph]:
    """Lists the smooth genus-0 (r, h)-graphs with the given unpaired tails, up to isomorphism

    Unpaired boundary tails are labelled 1..k in the order of
    'boundary_twists', internal tails 1..l in the order of 'internal_twists';
    all boundary tails are legal. The output order is canonical: by number of
    dashed lines, then in search order.

    Raises:
        PreconditionError: if a twist is outside its range
    """
    _validate_enumeration_input(r, h, boundary_twists, internal_twists)
    dimension = len(boundary_twists) + 2 * len(internal_twists) - 3
    if dimension < 0 or not spin_exists(r, 0, internal_twists, boundary_twists):
        return []

    twists = {("B", j): t for j, t in enumerate(boundary_twists, start=1)}
    twists.update({("I", i): t for i, t in enumerate(internal_twists, start=1)})
    search = _TreeSearch(r, h, twists)
    tokens = frozenset(twists)

    index = IsomorphismIndex(encode_rh)
    cells = []
    for root in search.disks(tokens, None, dimension, must_hold=min(tokens)):
        if root.cost != dimension:
            continue
        for cell in _realize(r, h, root, twists):
            report = validate_rh(cell)
            if not report.is_valid():
                logger.debug("enumerated graph rejected: %s", report.describe())
                continue
            if index.add(cell):
                cells.append(cell)
    cells.sort(key=RHGraph.get_num_dashed)
    logger.info("enumerated %d smooth (%d, %d)-graphs for B=%s I=%s", len(cells), r, h,
                list(boundary_twists), list(internal_twists))
    return cells
