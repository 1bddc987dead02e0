"""
Graded r-spin decorations of dual graphs

A SpinGraph adds to a PreStableGraph the twist of every half-edge, the
legality (alternation) of every boundary half-edge and the anchor and
normalized contracted boundary tail sets. validate_spin checks the eight
conditions of a stable graded r-spin graph, each reported separately.
"""

import logging
from typing import Dict, Iterable, Optional, Sequence

from core import (BOUNDARY, INTERNAL, LEGAL, OPEN, STRUCTURE, HalfEdgeId, NonIntegralMDeltaError,
                  NonIntegralRankError, PreconditionError, UnstableVertexError, ValidationError,
                  ValidationReport, VertexId)
from dual_graph import PreStableGraph, graph_genus, require_stable, validate_prestable

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)


class SpinGraph:
    """A pre-stable graph decorated with an r-spin twist and a grading"""

    def __init__(self, base: PreStableGraph, r: int, twists: Dict[HalfEdgeId, int],
                 legality: Dict[HalfEdgeId, int] = None, anchors: Iterable[HalfEdgeId] = (),
                 ncb_tails: Iterable[HalfEdgeId] = ()):
        """Constructor

        Parameters:
            base (PreStableGraph): The underlying dual graph
            r (int): The spin index, at least 2
            twists (dict<int, int>): Twist of every half-edge, in {-1, ..., r - 1}
            legality (dict<int, int>): 1 (legal) or 0 (illegal) for every boundary half-edge
            anchors (iterable<int>): The anchor tails
            ncb_tails (iterable<int>): The normalized contracted boundary tails
        """
        self._base = base
        self._r = r
        self._twists = dict(twists)
        self._legality = dict(legality or {})
        self._anchors = frozenset(anchors)
        self._ncb_tails = frozenset(ncb_tails)

    def replace(self, **changes):
        """(SpinGraph) Returns a copy with some constructor arguments replaced"""
        arguments = {
            "base": self._base,
            "r": self._r,
            "twists": self._twists,
            "legality": self._legality,
            "anchors": self._anchors,
            "ncb_tails": self._ncb_tails,
        }
        arguments.update(changes)
        return SpinGraph(**arguments)

    def get_base(self) -> PreStableGraph:
        return self._base

    def get_r(self) -> int:
        return self._r

    def get_twist(self, half_edge: HalfEdgeId) -> int:
        return self._twists[half_edge]

    def get_twists(self) -> Dict[HalfEdgeId, int]:
        return dict(self._twists)

    def get_legality(self, half_edge: HalfEdgeId) -> int:
        """(int) Returns alt(half_edge): 1 if legal, 0 if illegal"""
        return self._legality[half_edge]

    def get_legality_map(self) -> Dict[HalfEdgeId, int]:
        return dict(self._legality)

    def is_legal(self, half_edge: HalfEdgeId) -> bool:
        return self._legality.get(half_edge) == LEGAL

    def get_anchors(self) -> frozenset:
        return self._anchors

    def get_ncb_tails(self) -> frozenset:
        return self._ncb_tails

    def is_ramond(self, half_edge: HalfEdgeId) -> bool:
        """(bool) Returns True iff the twist of 'half_edge' is -1 or r - 1"""
        return self._twists[half_edge] in (-1, self._r - 1)

    def get_decoration(self, half_edge: HalfEdgeId) -> tuple:
        """(tuple) Returns the spin decorations of 'half_edge', as compared by isomorphisms"""
        return (self._twists.get(half_edge), self._legality.get(half_edge),
                half_edge in self._anchors, half_edge in self._ncb_tails)

    def is_legal_graph(self) -> bool:
        """(bool) Returns True iff every boundary tail is legal"""
        return all(self.is_legal(h) for h in self._base.get_boundary_tails())

    def __repr__(self):
        base = self._base
        return (f"SpinGraph(r={self._r}, vertices={len(base.get_vertices())}, "
                f"edges={len(base.get_edges())}, tails={len(base.get_tails())})")


def create_disk(r: int, boundary_twists: Sequence[int], internal_twists: Sequence[int] = (),
                legality: Sequence[int] = None) -> SpinGraph:
    """Creates a smooth disk: one open vertex with g-hat = 0 and one boundary block

    Boundary half-edges get ids 0..k-1 in cyclic order and markings 1..k;
    internal tails get ids k..k+l-1 and markings 1..l.

    Parameters:
        r (int): The spin index
        boundary_twists (list<int>): Twists of the boundary tails in cyclic order
        internal_twists (list<int>): Twists of the internal tails
        legality (list<int>): alt of each boundary tail, all legal if None

    Return:
        SpinGraph: The (not yet validated) disk
    """
    k = len(boundary_twists)
    boundary = list(range(k))
    internal = list(range(k, k + len(internal_twists)))
    kinds = {h: BOUNDARY for h in boundary}
    kinds.update({h: INTERNAL for h in internal})
    base = PreStableGraph({0: OPEN}, kinds, {h: 0 for h in kinds}, blocks={0: [boundary]})

    twists = dict(zip(boundary, boundary_twists))
    twists.update(zip(internal, internal_twists))
    if legality is None:
        legality = [LEGAL] * k
    return SpinGraph(base, r, twists, dict(zip(boundary, legality)))


def _twist_sum(spin: SpinGraph, half_edges) -> int:
    """(int) Returns 2 * (internal twists) + (boundary twists) over 'half_edges'"""
    base = spin.get_base()
    return sum(spin.get_twist(h) if base.is_boundary(h) else 2 * spin.get_twist(h) for h in half_edges)


def validate_spin(spin: SpinGraph) -> ValidationReport:
    """Checks that 'spin' is a stable graded r-spin graph

    Conditions (i) to (viii) are reported under their roman numerals, the
    shape of the decorations under 'structure' and unstable vertices under
    'stability'. The Ramond/NS status of every edge is recorded as the note
    'ramond' (dict<tuple<int, int>, bool>).

    Parameters:
        spin (SpinGraph): The graph to check

    Return:
        ValidationReport: Empty iff 'spin' is valid
    """
    base = spin.get_base()
    report = validate_prestable(base)
    if not report.is_valid():
        return report

    r = spin.get_r()
    if r < 2:
        report.add(STRUCTURE, "r must be at least 2")
        return report
    twists, legality = spin.get_twists(), spin.get_legality_map()
    for half_edge in base.get_half_edges():
        twist = twists.get(half_edge)
        if twist is None or not -1 <= twist <= r - 1:
            report.add(STRUCTURE, "twist out of range", half_edge)
        if base.is_boundary(half_edge) and legality.get(half_edge) not in (0, 1):
            report.add(STRUCTURE, "boundary half-edge without legality", half_edge)
    internal_tails = set(base.get_internal_tails())
    for name, tails in (("anchor", spin.get_anchors()), ("normalized contracted boundary", spin.get_ncb_tails())):
        for tail in tails - internal_tails:
            report.add(STRUCTURE, f"{name} tail is not an internal tail", tail)
    if not report.is_valid():
        return report

    require_stable(base, report)
    _check_vertices(spin, report)
    _check_anchors(spin, report)
    _check_edges(spin, report)
    _check_boundary_legality(spin, report)
    _warn_negative_rank(spin, report)

    report.note("ramond", {edge: spin.is_ramond(edge[0]) for edge in base.get_edges()})
    return report


def _check_vertices(spin, report):
    base, r = spin.get_base(), spin.get_r()
    for vertex in base.get_vertices():
        here = base.get_half_edges_at(vertex)
        genus = base.get_vertex_genus(vertex)
        if base.is_open(vertex):
            total = _twist_sum(spin, here)
            if (total - 2 * genus + 2) % r:
                report.add("i", f"twist sum {total} is not 2g - 2 mod {r}", vertex)
                continue
            legal = sum(1 for h in here if base.is_boundary(h) and spin.is_legal(h))
            if ((total - 2 * genus + 2) // r + genus - legal) % 2:
                report.add("i", "grading parity fails", vertex)
        else:
            total = sum(spin.get_twist(h) for h in here)
            if (total - 2 * genus + 2) % r:
                report.add("ii", f"twist sum {total} is not 2g - 2 mod {r}", vertex)


def _check_anchors(spin, report):
    base = spin.get_base()
    anchors = spin.get_anchors()
    for component in base.get_components():
        here = [tail for tail in anchors if base.get_vertex(tail) in component]
        expected = 1 if base.part_is_closed(component) else 0
        if len(here) != expected:
            report.add("iii", f"component needs {expected} anchor(s), has {len(here)}", *sorted(component))
    for tail in base.get_tails():
        if spin.get_twist(tail) == -1 and tail not in anchors:
            report.add("iii", "tail with twist -1 is not an anchor", tail)


def _check_edges(spin, report):
    base, r = spin.get_base(), spin.get_r()
    anchors = spin.get_anchors()
    for half_edge in base.get_half_edges():
        if base.is_boundary(half_edge) and spin.get_twist(half_edge) == -1:
            report.add("iv", "boundary half-edge with twist -1", half_edge)

    for first, second in base.get_edges():
        if (spin.get_twist(first) + spin.get_twist(second) - (r - 2)) % r:
            report.add("iv", "twists of an edge do not add to r - 2 mod r", first, second)
        if base.is_boundary(first):
            continue
        parts = base.separated_parts(first)
        for half_edge, part in ((first, parts[0] if parts else None), (second, parts[1] if parts else None)):
            if spin.get_twist(half_edge) % r != r - 1:
                continue
            isolated = (part is not None and base.part_is_closed(part)
                        and not any(base.get_vertex(tail) in part for tail in anchors))
            if isolated != (spin.get_twist(half_edge) == -1):
                expected = -1 if isolated else r - 1
                report.add("iv", f"Ramond internal half-edge must have twist {expected}", half_edge)


def _check_boundary_legality(spin, report):
    base, r = spin.get_base(), spin.get_r()
    for tail in base.get_cb_tails() | spin.get_ncb_tails():
        if spin.get_twist(tail) != r - 1:
            report.add("v", "contracted boundary tail must have twist r - 1", tail)
    for tail in spin.get_anchors():
        if spin.get_twist(tail) == r - 1 and tail not in spin.get_ncb_tails():
            report.add("vi", "anchor with twist r - 1 is not a normalized contracted boundary tail", tail)

    for first, second in base.get_boundary_edges():
        alternation = spin.get_legality(first) + spin.get_legality(second)
        if spin.get_twist(first) != r - 1 and alternation != 1:
            report.add("vii", "exactly one half of an NS boundary edge must be legal", first, second)
        if spin.get_twist(first) == r - 1 and alternation != 0:
            report.add("vii", "both halves of a Ramond boundary edge must be illegal", first, second)

    for half_edge in base.get_half_edges():
        if not base.is_boundary(half_edge):
            continue
        twist, alternation = spin.get_twist(half_edge), spin.get_legality(half_edge)
        if r % 2 and alternation != twist % 2:
            report.add("viii", "legality must equal twist mod 2 for odd r", half_edge)
        if not r % 2 and twist % 2:
            report.add("viii", "tw(h) must be 0 mod 2 for even r", half_edge)


def _warn_negative_rank(spin, report):
    base, r = spin.get_base(), spin.get_r()
    for component in base.get_components():
        if not all(base.is_open(v) for v in component) or graph_genus(base, component):
            continue
        tails = [h for h in base.get_tails() if base.get_vertex(h) in component and not base.is_cb_tail(h)]
        numerator = _twist_sum(spin, tails) - (r - 2)
        if not numerator % r and numerator < 0:
            report.warn(f"negative Witten rank {numerator // r} on component {sorted(component)}")


def spin_exists(r: int, g: int, internal_twists: Iterable[int], boundary_twists: Optional[Iterable[int]] = ()) -> bool:
    """(bool) Returns True iff the twists admit a twisted r-spin structure in genus 'g'

    Parameters:
        boundary_twists (iterable<int>): Boundary twists, or None for a closed surface
    """
    if boundary_twists is None:
        return (sum(internal_twists) + (g - 1) * (r - 2)) % r == 0
    return (2 * sum(internal_twists) + sum(boundary_twists) + (g - 1) * (r - 2)) % r == 0


def _rank_half_edges(spin, vertex):
    """Returns the half-edges counted as markings for a rank computation"""
    base = spin.get_base()
    if vertex is not None:
        if not base.is_open(vertex) or base.get_vertex_genus(vertex):
            raise PreconditionError(f"Vertex {vertex} is not a genus-0 open vertex")
        return base.get_half_edges_at(vertex)
    if not base.is_connected() or graph_genus(base):
        raise PreconditionError("Witten rank needs a connected genus-0 graph")
    return [h for h in base.get_tails() if not base.is_cb_tail(h)]


def witten_rank(spin: SpinGraph, vertex: VertexId = None) -> int:
    """(int) Returns the real rank (2 sum a + sum b - (r - 2)) / r of the Witten bundle

    With 'vertex' the sum runs over every half-edge of that open vertex;
    otherwise over the tails of the connected genus-0 graph.

    Raises:
        NonIntegralRankError: if r does not divide the numerator
        PreconditionError: if the graph or vertex is not genus 0
    """
    r = spin.get_r()
    numerator = _twist_sum(spin, _rank_half_edges(spin, vertex)) - (r - 2)
    if numerator % r:
        raise NonIntegralRankError(f"Rank numerator {numerator} is not divisible by {r}")
    if numerator < 0:
        logger.warning("negative Witten rank %d", numerator // r)
    return numerator // r


def closed_witten_rank(spin: SpinGraph, vertex: VertexId) -> int:
    """(int) Returns m^c, the complex rank (sum tw - (r - 2)) / r of the bundle at a genus-0 closed vertex

    Every half-edge of the vertex, half-nodes included, contributes its twist.
    """
    base, r = spin.get_base(), spin.get_r()
    if base.is_open(vertex) or base.get_vertex_genus(vertex):
        raise PreconditionError(f"Vertex {vertex} is not a genus-0 closed vertex")
    numerator = sum(spin.get_twist(h) for h in base.get_half_edges_at(vertex)) - (r - 2)
    if numerator % r:
        raise NonIntegralRankError(f"Rank numerator {numerator} is not divisible by {r}")
    return numerator // r


def m_delta(spin: SpinGraph, vertex: VertexId = None) -> int:
    """(int) Returns m^delta = (rank + 1 - #legal) / 2

    Legal boundary half-edges are counted at 'vertex' if given, otherwise
    over the boundary tails.

    Raises:
        NonIntegralMDeltaError: if rank + 1 - #legal is odd
    """
    base = spin.get_base()
    rank = witten_rank(spin, vertex)
    counted = _rank_half_edges(spin, vertex)
    legal = sum(1 for h in counted if base.is_boundary(h) and spin.is_legal(h))
    if (rank + 1 - legal) % 2:
        raise NonIntegralMDeltaError(f"rank {rank} + 1 - {legal} legal points is odd")
    return (rank + 1 - legal) // 2


def stratum_dimension(spin: SpinGraph) -> int:
    """(int) Returns the real dimension of the stratum of 'spin'

    Open vertices contribute 3g - 3 + k + 2l, closed vertices twice 3g - 3 + l.

    Raises:
        UnstableVertexError: if a vertex is unstable
    """
    base = spin.get_base()
    dimension = 0
    for vertex in base.get_vertices():
        if not base.is_stable_vertex(vertex):
            raise UnstableVertexError(f"Vertex {vertex} is unstable")
        genus = base.get_vertex_genus(vertex)
        if base.is_open(vertex):
            dimension += 3 * genus - 3 + base.get_boundary_degree(vertex) + 2 * base.get_internal_degree(vertex)
        else:
            dimension += 2 * (3 * genus - 3 + base.get_internal_degree(vertex))
    return dimension


def is_level_h(spin: SpinGraph, h: int) -> bool:
    """(bool) Returns True iff legal boundary tails have twist >= r - 2 - 2h and illegal ones <= 2h"""
    r = spin.get_r()
    for tail in spin.get_base().get_boundary_tails():
        twist = spin.get_twist(tail)
        if spin.is_legal(tail) and twist < r - 2 - 2 * h:
            return False
        if not spin.is_legal(tail) and twist > 2 * h:
            return False
    return True


def require_valid(spin: SpinGraph, context: str = "spin graph") -> SpinGraph:
    """Returns 'spin' unchanged if it validates

    Raises:
        ValidationError: carrying the failing report otherwise
    """
    report = validate_spin(spin)
    if not report.is_valid():
        raise ValidationError(f"Invalid {context}", report)
    return spin
