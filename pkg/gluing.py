"""
Assembly of the glued moduli as a combinatorial cell complex

Top cells are the smooth (r, h)-graphs with the requested unpaired tails.
Their codimension-1 boundaries are glued in BI/AI pairs by point insertion;
CB, Ramond and NS+ boundaries stay free. In dimension 2 every top cell is
checked to be a polygon and the corners are identified by carrying them
through the facet identifications.
"""

import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from core import AI, BI, FREE_BOUNDARY_TYPES, GluingError, PreconditionError
from degeneration import DegenerationSite, codim2_boundaries, degeneration_sites, smooth
from isomorphism import IsomorphismIndex, are_rh_isomorphic, encode_rh
from orientation import pi_pair_sign
from point_insertion import BoundaryStratumRef, RHGraph, enumerate_smooth_rh, facets_of, insert_point, pi_forward
from spin import spin_exists

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

FacetId = Tuple[int, int]
CornerId = Tuple[int, int]


class Corner:
    """A codimension-2 corner of a cell: a degenerate graph with exactly two degenerations

    Parameters:
        rh (RHGraph): The degenerate graph
        sites (list<tuple<int, DegenerationSite>>): The two (component index, site) degenerations
    """

    def __init__(self, rh: RHGraph, sites: Sequence[Tuple[int, DegenerationSite]]):
        self._rh = rh
        self._sites = tuple(sites)

    def get_rh(self) -> RHGraph:
        return self._rh

    def get_sites(self) -> Tuple[Tuple[int, DegenerationSite], ...]:
        return self._sites

    def keep_only(self, position: int) -> RHGraph:
        """(RHGraph) Returns the facet graph obtained by smoothing every site except sites[position]"""
        index, site = self._sites[1 - position]
        return self._rh.replace_component(index, smooth(self._rh.get_component(index), site))

    def __repr__(self):
        return f"Corner(sites={self._sites})"


def cell_corners(cell: RHGraph) -> List[Corner]:
    """Lists the corners of a smooth cell

    Corners inside one component are its boundary graphs with two boundary
    edges; corners spread over two components combine one facet of each.
    """
    corners = []
    components = cell.get_components()
    for index, component in enumerate(components):
        for degenerate in codim2_boundaries(component):
            sites = [(index, site) for site in degeneration_sites(degenerate)]
            corners.append(Corner(cell.replace_component(index, degenerate), sites))

    facets = facets_of(cell)
    for position, first in enumerate(facets):
        for second in facets[position + 1:]:
            if first.get_component_index() >= second.get_component_index():
                continue
            rh = (cell.replace_component(first.get_component_index(), first.get_facet())
                  .replace_component(second.get_component_index(), second.get_facet()))
            corners.append(Corner(rh, [(first.get_component_index(), first.get_site()),
                                       (second.get_component_index(), second.get_site())]))
    return corners


class CellComplex:
    """The glued cell complex of one moduli problem

    Facets are addressed as (cell index, facet index) and corners as
    (cell index, corner index), indices into get_facets and get_corners.
    """

    def __init__(self, r: int, h: int, boundary_twists: Sequence[int], internal_twists: Sequence[int],
                 dimension: int, cells: Sequence[RHGraph] = ()):
        self._r = r
        self._h = h
        self._boundary_twists = tuple(boundary_twists)
        self._internal_twists = tuple(internal_twists)
        self._dimension = dimension
        self._cells = tuple(cells)
        self._facets: Dict[int, List[BoundaryStratumRef]] = {i: [] for i in range(len(self._cells))}
        self._corners: Dict[int, List[Corner]] = {i: [] for i in range(len(self._cells))}
        self._incidence: Dict[CornerId, Tuple[int, int]] = {}
        self._identifications: List[Tuple[FacetId, FacetId]] = []
        self._free: List[Tuple[FacetId, str]] = []
        self._corner_classes: Dict[CornerId, int] = {}

    def get_r(self) -> int:
        return self._r

    def get_h(self) -> int:
        return self._h

    def get_boundary_twists(self) -> Tuple[int, ...]:
        return self._boundary_twists

    def get_internal_twists(self) -> Tuple[int, ...]:
        return self._internal_twists

    def get_dimension(self) -> int:
        return self._dimension

    def get_cells(self) -> Tuple[RHGraph, ...]:
        return self._cells

    def is_empty(self) -> bool:
        return not self._cells

    def get_facets(self, cell: int) -> List[BoundaryStratumRef]:
        return list(self._facets[cell])

    def get_facet(self, facet: FacetId) -> BoundaryStratumRef:
        return self._facets[facet[0]][facet[1]]

    def get_all_facets(self) -> List[FacetId]:
        return [(cell, index) for cell in range(len(self._cells)) for index in range(len(self._facets[cell]))]

    def get_corners(self, cell: int) -> List[Corner]:
        return list(self._corners[cell])

    def get_corner_facets(self, corner: CornerId) -> Tuple[int, int]:
        """(tuple<int, int>) Returns the indices of the two facets of its cell meeting at 'corner'"""
        return self._incidence[corner]

    def get_identifications(self) -> List[Tuple[FacetId, FacetId]]:
        """(list<tuple<FacetId, FacetId>>) Returns the glued (BI facet, AI facet) pairs"""
        return list(self._identifications)

    def get_free_boundaries(self) -> List[Tuple[FacetId, str]]:
        """(list<tuple<FacetId, str>>) Returns the unglued facets with their type"""
        return list(self._free)

    def get_corner_classes(self) -> Dict[CornerId, int]:
        """(dict<CornerId, int>) Returns the 0-cell of the quotient each corner is identified to"""
        return dict(self._corner_classes)

    def set_facets(self, cell: int, facets: Sequence[BoundaryStratumRef]):
        self._facets[cell] = list(facets)

    def set_corners(self, cell: int, corners: Sequence[Corner]):
        self._corners[cell] = list(corners)

    def set_corner_facets(self, corner: CornerId, facets: Sequence[int]):
        self._incidence[corner] = tuple(facets)

    def set_corner_class(self, corner: CornerId, vertex: int):
        self._corner_classes[corner] = vertex

    def add_identification(self, bi_facet: FacetId, ai_facet: FacetId):
        self._identifications.append((bi_facet, ai_facet))

    def add_free_boundary(self, facet: FacetId, kind: str):
        self._free.append((facet, kind))

    def __repr__(self):
        return (f"CellComplex(r={self._r}, h={self._h}, dimension={self._dimension}, cells={len(self._cells)}, "
                f"identifications={len(self._identifications)}, free={len(self._free)})")


def build_complex(r: int, h: int, boundary_twists: Sequence[int], internal_twists: Sequence[int] = (),
                  check_polygons: bool = True) -> CellComplex:
    """Builds the glued cell complex for unpaired boundary twists B and internal twists I

    Parameters:
        r (int): The spin index
        h (int): The level
        boundary_twists (list<int>): B, all legal
        internal_twists (list<int>): I
        check_polygons (bool): Whether to require every 2-cell to be a polygon

    Return:
        CellComplex: The complex; empty when no spin structure exists

    Raises:
        PreconditionError: if the dimension |B| + 2|I| - 3 is not 1 or 2
        GluingError: if a BI or AI facet has no unique partner, or a 2-cell is not a polygon
    """
    dimension = len(boundary_twists) + 2 * len(internal_twists) - 3
    if not spin_exists(r, 0, internal_twists, boundary_twists):
        logger.info("no spin structure for B=%s I=%s, empty complex", list(boundary_twists), list(internal_twists))
        return CellComplex(r, h, boundary_twists, internal_twists, dimension)
    if dimension not in (1, 2):
        raise PreconditionError(f"Only complexes of dimension 1 or 2 are built, not {dimension}")

    cells = enumerate_smooth_rh(r, h, boundary_twists, internal_twists)
    complex_ = CellComplex(r, h, boundary_twists, internal_twists, dimension, cells)
    for index, cell in enumerate(cells):
        complex_.set_facets(index, facets_of(cell))
    _match_facets(complex_)
    if dimension == 2:
        _attach_corners(complex_, check_polygons)
    logger.info("built %r", complex_)
    return complex_


def _match_facets(complex_):
    ai_index = IsomorphismIndex(encode_rh)
    bi_facets = []
    for facet in complex_.get_all_facets():
        boundary = complex_.get_facet(facet)
        kind = boundary.get_type()
        if kind in FREE_BOUNDARY_TYPES:
            complex_.add_free_boundary(facet, kind)
        elif kind == AI:
            if not ai_index.add(boundary.get_degenerate(), facet):
                raise GluingError(f"AI facet {facet} duplicates another AI facet")
        else:
            bi_facets.append(facet)

    matched = set()
    for facet in bi_facets:
        cell, image = pi_forward(complex_.get_facet(facet))
        partner = ai_index.find(image.get_degenerate())
        if partner is None:
            raise GluingError(f"BI facet {facet} has no AI partner")
        if partner in matched:
            raise GluingError(f"AI facet {partner} is the image of two BI facets")
        if are_rh_isomorphic(cell, complex_.get_cells()[partner[0]]) is None:
            raise GluingError(f"BI facet {facet} is glued to a facet of the wrong cell")
        matched.add(partner)
        complex_.add_identification(facet, partner)

    if len(matched) != len(ai_index):
        raise GluingError(f"{len(ai_index) - len(matched)} AI facets have no BI partner")
    logger.debug("matched %d BI/AI pairs, %d free facets", len(matched), len(complex_.get_free_boundaries()))


def _attach_corners(complex_, check_polygons):
    corner_index = IsomorphismIndex(encode_rh)
    for cell_index, cell in enumerate(complex_.get_cells()):
        facet_index = IsomorphismIndex(encode_rh)
        for position, facet in enumerate(complex_.get_facets(cell_index)):
            facet_index.add(facet.get_degenerate(), position)

        corners = cell_corners(cell)
        complex_.set_corners(cell_index, corners)
        for position, corner in enumerate(corners):
            ends = []
            for kept in range(2):
                facet = facet_index.find(corner.keep_only(kept))
                if facet is None:
                    raise GluingError(f"Corner {position} of cell {cell_index} lies on no facet")
                ends.append(facet)
            complex_.set_corner_facets((cell_index, position), ends)
            corner_index.add(corner.get_rh(), (cell_index, position))

        if check_polygons and not _is_polygon(complex_, cell_index):
            raise GluingError(f"Cell {cell_index} is not a polygon")

    _identify_corners(complex_, corner_index)


def _polygon_graph(complex_, cell_index):
    graph = nx.MultiGraph()
    graph.add_nodes_from(("facet", position) for position in range(len(complex_.get_facets(cell_index))))
    for position in range(len(complex_.get_corners(cell_index))):
        for facet in complex_.get_corner_facets((cell_index, position)):
            graph.add_edge(("corner", position), ("facet", facet))
    return graph


def _is_polygon(complex_, cell_index) -> bool:
    """(bool) Returns True iff the facets and corners of a cell form a single cycle"""
    graph = _polygon_graph(complex_, cell_index)
    if graph.number_of_nodes() < 4 or any(degree != 2 for _, degree in graph.degree()):
        return False
    return nx.is_connected(graph)


def _identify_corners(complex_, corner_index):
    """Identifies corners along every glued facet pair, closing under composition"""
    classes = UnionFind()
    for cell_index in range(len(complex_.get_cells())):
        for position in range(len(complex_.get_corners(cell_index))):
            classes[(cell_index, position)]

    for (bi_cell, bi_facet), _ in complex_.get_identifications():
        for position, corner in enumerate(complex_.get_corners(bi_cell)):
            ends = complex_.get_corner_facets((bi_cell, position))
            if bi_facet not in ends:
                continue
            component, site = corner.get_sites()[ends.index(bi_facet)]
            moved, _, _ = insert_point(corner.get_rh(), component, site.get_half_edge())
            image = corner_index.find(moved)
            if image is None:
                raise GluingError(f"Corner {position} of cell {bi_cell} has no image under point insertion")
            classes.union((bi_cell, position), image)

    representatives = {}
    for corner in sorted(classes):
        root = classes[corner]
        representatives.setdefault(root, len(representatives))
        complex_.set_corner_class(corner, representatives[root])


class ComponentSummary:
    """Topology of one connected component of the quotient"""

    def __init__(self, cells, vertices, edges, faces, free, facet_counts, edge_sides, orientable=True):
        self._cells = tuple(cells)
        self._vertices = vertices
        self._edges = edges
        self._faces = faces
        self._free = dict(free)
        self._facet_counts = tuple(sorted(facet_counts, reverse=True))
        self._edge_sides = edge_sides
        self._orientable = orientable

    def get_cells(self) -> Tuple[int, ...]:
        return self._cells

    def get_vertices(self) -> int:
        return self._vertices

    def get_edges(self) -> int:
        return self._edges

    def get_faces(self) -> int:
        return self._faces

    def get_euler(self) -> int:
        return self._vertices - self._edges + self._faces

    def is_closed(self) -> bool:
        return not any(self._free.values())

    def get_free_census(self) -> Dict[str, int]:
        return dict(self._free)

    def get_facet_counts(self) -> Tuple[int, ...]:
        """(tuple<int>) Returns the number of facets of each top cell, largest first"""
        return self._facet_counts

    def get_edge_sides(self) -> int:
        return self._edge_sides

    def is_orientable(self) -> Optional[bool]:
        """(bool) Returns whether the orientation cocycle is trivial, None if signs were not computed"""
        return self._orientable

    def get_genus(self) -> Optional[int]:
        """(int) Returns the genus (2 - chi) / 2 of a closed surface component, None otherwise"""
        if self._faces == 0 or not self.is_closed() or not self._orientable:
            return None
        return (2 - self.get_euler()) // 2

    def to_dict(self) -> dict:
        return {
            "cells": list(self._cells),
            "vertices": self._vertices,
            "edges": self._edges,
            "faces": self._faces,
            "euler": self.get_euler(),
            "closed": self.is_closed(),
            "free_boundaries": dict(self._free),
            "facet_counts": list(self._facet_counts),
            "edge_sides": self._edge_sides,
            "orientable": self._orientable,
            "genus": self.get_genus(),
        }


class TopologyReport:
    """Components, Euler characteristics, free boundaries and orientation signs of a CellComplex"""

    def __init__(self, dimension, components, pair_signs, cocycle_trivial, perfect_matching):
        self._dimension = dimension
        self._components = tuple(components)
        self._pair_signs = tuple(pair_signs)
        self._cocycle_trivial = cocycle_trivial
        self._perfect_matching = perfect_matching

    def get_dimension(self) -> int:
        return self._dimension

    def get_components(self) -> Tuple[ComponentSummary, ...]:
        return self._components

    def get_num_components(self) -> int:
        return len(self._components)

    def get_euler(self) -> int:
        return sum(component.get_euler() for component in self._components)

    def is_closed(self) -> bool:
        return all(component.is_closed() for component in self._components)

    def get_free_census(self) -> Dict[str, int]:
        census = Counter({kind: 0 for kind in FREE_BOUNDARY_TYPES})
        for component in self._components:
            census.update(component.get_free_census())
        return dict(census)

    def get_pair_signs(self) -> Tuple[Tuple[FacetId, FacetId, int], ...]:
        return self._pair_signs

    def signs_opposite(self) -> bool:
        """(bool) Returns True iff every glued pair induces opposite orientations"""
        return all(value == -1 for _, _, value in self._pair_signs)

    def is_cocycle_trivial(self) -> bool:
        return self._cocycle_trivial

    def is_perfect_matching(self) -> bool:
        return self._perfect_matching

    def to_dict(self) -> dict:
        return {
            "dimension": self._dimension,
            "components": [component.to_dict() for component in self._components],
            "num_components": len(self._components),
            "euler": self.get_euler(),
            "closed": self.is_closed(),
            "free_boundaries": self.get_free_census(),
            "perfect_matching": self._perfect_matching,
            "signs": {
                "pairs": [{"bi": list(bi), "ai": list(ai), "sign": value} for bi, ai, value in self._pair_signs],
                "all_opposite": self.signs_opposite(),
                "cocycle_trivial": self._cocycle_trivial,
            },
        }


def _cell_graph(complex_):
    graph = nx.Graph()
    graph.add_nodes_from(range(len(complex_.get_cells())))
    for (bi_cell, _), (ai_cell, _) in complex_.get_identifications():
        graph.add_edge(bi_cell, ai_cell)
    corner_cells = {}
    for (cell, _), vertex in complex_.get_corner_classes().items():
        corner_cells.setdefault(vertex, set()).add(cell)
    for cells in corner_cells.values():
        first = min(cells)
        graph.add_edges_from((first, other) for other in cells if other != first)
    return graph


def _summarize(complex_, cells, orientable):
    cells = sorted(cells)
    cell_set = set(cells)
    free = Counter({kind: 0 for kind in FREE_BOUNDARY_TYPES})
    for (cell, _), kind in complex_.get_free_boundaries():
        if cell in cell_set:
            free[kind] += 1
    glued = sum(1 for (cell, _), _ in complex_.get_identifications() if cell in cell_set)
    facet_counts = [len(complex_.get_facets(cell)) for cell in cells]
    sides = sum(facet_counts)
    facet_classes = glued + sum(free.values())

    if complex_.get_dimension() == 1:
        return ComponentSummary(cells, facet_classes, len(cells), 0, free, facet_counts, sides, orientable)
    vertices = {vertex for (cell, _), vertex in complex_.get_corner_classes().items() if cell in cell_set}
    return ComponentSummary(cells, len(vertices), facet_classes, len(cells), free, facet_counts, sides, orientable)


def _orientation_cocycle(signs, cells) -> bool:
    """(bool) Returns True iff the given cells can be oriented so that every glued pair induces opposite orientations

    A pair with sign s asks for cell orientations e, e' with e * e' * s = -1.
    """
    graph = nx.Graph()
    graph.add_nodes_from(cells)
    for bi, ai, value in signs:
        if bi[0] not in cells:
            continue
        required = -value
        if graph.has_edge(bi[0], ai[0]) and graph[bi[0]][ai[0]]["required"] != required:
            return False
        graph.add_edge(bi[0], ai[0], required=required)

    orientation = {}
    for start in graph.nodes:
        if start in orientation:
            continue
        orientation[start] = 1
        for parent, child in nx.bfs_edges(graph, start):
            orientation[child] = orientation[parent] * graph[parent][child]["required"]
    return all(orientation[a] * orientation[b] == data["required"] for a, b, data in graph.edges(data=True))


def topology_report(complex_: CellComplex, with_signs: bool = True) -> TopologyReport:
    """Computes components, Euler characteristics, closedness, free boundaries and the sign checks

    Parameters:
        complex_ (CellComplex): A built complex
        with_signs (bool): Whether to compute pi_pair_sign for every glued pair
    """
    if complex_.is_empty():
        return TopologyReport(complex_.get_dimension(), [], [], True, True)

    signs = []
    if with_signs:
        for bi, ai in complex_.get_identifications():
            signs.append((bi, ai, pi_pair_sign(complex_.get_facet(bi), complex_.get_facet(ai))))

    components = []
    for cells in sorted(nx.connected_components(_cell_graph(complex_)), key=min):
        orientable = _orientation_cocycle(signs, cells) if with_signs else None
        components.append(_summarize(complex_, cells, orientable))
    cocycle_trivial = all(component.is_orientable() is not False for component in components)

    types = Counter(complex_.get_facet(facet).get_type() for facet in complex_.get_all_facets())
    perfect = types[BI] == types[AI] == len(complex_.get_identifications())
    report = TopologyReport(complex_.get_dimension(), components, signs, cocycle_trivial, perfect)
    logger.info("topology: %d components, euler %d, closed %s", report.get_num_components(),
                report.get_euler(), report.is_closed())
    return report
