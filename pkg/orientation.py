"""
Sign calculus of canonical relative orientations

Orientations are never constructed geometrically. Each cell carries a
canonical orientation token, and every comparison between orientations
reduces to a product of signs read off the combinatorics of the graphs:
base-point moves, restriction of the canonical orientation to a boundary
facet, and the (-1)^|E| twist of an (r, h)-graph.
"""

import logging

from core import AI, BI, OrientationError, PreconditionError, sign
from isomorphism import are_rh_isomorphic, encode_rh, invariant_key
from point_insertion import BoundaryStratumRef, RHGraph, pi_forward
from spin import SpinGraph, closed_witten_rank, m_delta, witten_rank

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

OPEN_OPEN = "open-open"
CLOSED_OPEN = "closed-open"


class OrientationToken:
    """A formal orientation: a sign relative to the canonical orientation of a reference cell"""

    def __init__(self, reference, sign: int):
        """Constructor

        Parameters:
            reference (hashable): Names the cell whose canonical orientation is the unit
            sign (int): +1 or -1
        """
        if sign not in (1, -1):
            raise PreconditionError(f"An orientation sign is +1 or -1, not {sign}")
        self._reference = reference
        self._sign = sign

    def get_reference(self):
        return self._reference

    def get_sign(self) -> int:
        return self._sign

    def _require_same_reference(self, other):
        if self._reference != other.get_reference():
            raise OrientationError("Orientation tokens over different cells cannot be compared")

    def __mul__(self, other):
        """Composes with another token over the same cell, or with a plain sign"""
        if isinstance(other, int):
            return OrientationToken(self._reference, self._sign * other)
        self._require_same_reference(other)
        return OrientationToken(self._reference, self._sign * other.get_sign())

    def relative_to(self, other) -> int:
        """(int) Returns the sign s with self = s * other"""
        self._require_same_reference(other)
        return self._sign * other.get_sign()

    def __eq__(self, other):
        return (isinstance(other, OrientationToken) and self._reference == other.get_reference()
                and self._sign == other.get_sign())

    def __hash__(self):
        return hash((self._reference, self._sign))

    def __repr__(self):
        return f"OrientationToken({self._reference!r}, {self._sign:+d})"


def basepoint_transition_sign(boundary_tails) -> int:
    """(int) Returns the sign (-1)^(|B| - 1) relating the orientations based at x and at sigma2(x)

    Parameters:
        boundary_tails (collection | int): The boundary tails B, or their number

    Raises:
        PreconditionError: if B is empty
    """
    count = boundary_tails if isinstance(boundary_tails, int) else len(boundary_tails)
    if count < 1:
        raise PreconditionError("A base-point transition needs a boundary tail")
    return sign(count - 1)


def rh_sign(rh: RHGraph) -> int:
    """(int) Returns (-1)^|E(G)|, the sign of the canonical orientation of G against its components"""
    return sign(rh.get_num_dashed())


def canonical_token(rh: RHGraph) -> OrientationToken:
    """(OrientationToken) Returns the canonical orientation of a cell relative to the product of its components"""
    return OrientationToken(invariant_key(encode_rh(rh)), rh_sign(rh))


class RestrictionRecord:
    """The constituent signs of restricting a canonical orientation to a boundary facet"""

    def __init__(self, kind, moduli_sign, commute_sign, bundle_sign, correction_sign, m_deltas):
        """Constructor

        Parameters:
            kind (str): 'open-open' or 'closed-open'
            moduli_sign (int): Sign of the moduli orientation against o_N times the product
            commute_sign (int): Sign from reordering the product of the moduli and bundle factors
            bundle_sign (int): Sign of the bundle orientation against the product
            correction_sign (int): (-1)^(m_delta - sum of the parts)
            m_deltas (dict<str, int>): The m^delta (and m^c) values involved
        """
        self._kind = kind
        self._moduli_sign = moduli_sign
        self._commute_sign = commute_sign
        self._bundle_sign = bundle_sign
        self._correction_sign = correction_sign
        self._m_deltas = dict(m_deltas)

    def get_kind(self) -> str:
        return self._kind

    def get_moduli_sign(self) -> int:
        return self._moduli_sign

    def get_commute_sign(self) -> int:
        return self._commute_sign

    def get_bundle_sign(self) -> int:
        return self._bundle_sign

    def get_correction_sign(self) -> int:
        return self._correction_sign

    def get_m_deltas(self) -> dict:
        return dict(self._m_deltas)

    def get_net(self) -> int:
        """(int) Returns the product of the constituent signs"""
        return self._moduli_sign * self._commute_sign * self._bundle_sign * self._correction_sign

    def to_dict(self) -> dict:
        return {
            "kind": self._kind,
            "moduli": self._moduli_sign,
            "commute": self._commute_sign,
            "bundle": self._bundle_sign,
            "correction": self._correction_sign,
            "net": self.get_net(),
            "m_delta": dict(self._m_deltas),
        }

    def __repr__(self):
        return f"RestrictionRecord({self._kind}, net={self.get_net():+d})"


def _single_edge(facet, site):
    base = facet.get_base()
    if site is None:
        edges = base.get_edges()
        if len(edges) != 1:
            raise PreconditionError("A facet without a site must have exactly one edge")
        return edges[0]
    return base.get_edge(site.get_half_edge())


def restriction_sign_open_open(facet: SpinGraph, site=None) -> RestrictionRecord:
    """Restricts the canonical orientation of a disk to an NS boundary-edge facet

    v1 is the vertex of the illegal half h1 with k1 further boundary half-edges,
    v2 that of the legal half h2 with k2 further boundary half-edges. The
    moduli sign (-1)^((k1 - 1) k2) cancels against the sign of commuting the
    v2 factors past the v1 bundle factor, and the bundle splits with sign +1
    once m^delta is additive.

    Raises:
        PreconditionError: if the facet is not a genus-0 two-vertex NS boundary facet
        OrientationError: if m^delta is not additive
    """
    base = facet.get_base()
    first, second = _single_edge(facet, site)
    if not base.is_boundary(first) or facet.is_ramond(first):
        raise PreconditionError("Open-open restriction needs an NS boundary edge")
    if len(base.get_vertices()) != 2:
        raise PreconditionError("Open-open restriction needs exactly two vertices")
    illegal, legal = (first, second) if facet.is_legal(second) else (second, first)
    if facet.is_legal(illegal) or not facet.is_legal(legal):
        raise PreconditionError("The boundary edge needs one legal and one illegal half")
    v1, v2 = base.get_vertex(illegal), base.get_vertex(legal)
    k1 = base.get_boundary_degree(v1) - 1
    k2 = base.get_boundary_degree(v2) - 1

    whole = m_delta(facet)
    part1, part2 = m_delta(facet, v1), m_delta(facet, v2)
    if whole != part1 + part2:
        raise OrientationError(f"m^delta is not additive: {whole} != {part1} + {part2}")
    record = RestrictionRecord(OPEN_OPEN, sign((k1 - 1) * k2), sign((k1 - 1) * k2), 1,
                               sign(whole - part1 - part2), {"whole": whole, "v1": part1, "v2": part2})
    logger.debug("open-open restriction k1=%d k2=%d ranks=(%d, %d): %r", k1, k2,
                 witten_rank(facet, v1), witten_rank(facet, v2), record)
    return record


def restriction_sign_closed_open(facet: SpinGraph, site=None) -> RestrictionRecord:
    """Restricts the canonical orientation of a disk to a facet with a closed vertex on an internal edge

    The bundle picks up (-1)^(m^c), which cancels against the m^delta change
    m^delta = m^c + m^delta(open part).

    Raises:
        PreconditionError: if the facet is not one open and one closed genus-0 vertex on an internal edge
        OrientationError: if m^delta is not additive
    """
    base = facet.get_base()
    first, second = _single_edge(facet, site)
    if base.is_boundary(first) or len(base.get_vertices()) != 2:
        raise PreconditionError("Closed-open restriction needs two vertices joined by an internal edge")
    vertices = (base.get_vertex(first), base.get_vertex(second))
    open_vertices = [v for v in vertices if base.is_open(v)]
    closed_vertices = [v for v in vertices if not base.is_open(v)]
    if len(open_vertices) != 1 or len(closed_vertices) != 1:
        raise PreconditionError("Closed-open restriction needs one open and one closed vertex")

    whole = m_delta(facet)
    closed_rank = closed_witten_rank(facet, closed_vertices[0])
    open_part = m_delta(facet, open_vertices[0])
    if whole != closed_rank + open_part:
        raise OrientationError(f"m^delta is not additive: {whole} != {closed_rank} + {open_part}")
    return RestrictionRecord(CLOSED_OPEN, 1, 1, sign(closed_rank), sign(whole - open_part),
                             {"whole": whole, "closed": closed_rank, "open": open_part})


def _facet_record(boundary: BoundaryStratumRef) -> RestrictionRecord:
    return restriction_sign_open_open(boundary.get_facet(), boundary.get_site())


def _bubble_sign(boundary: BoundaryStratumRef) -> int:
    """(int) Returns (-1)^(m^delta) of the insertion bubble of an AI facet"""
    facet = boundary.get_facet()
    base = facet.get_base()
    first, second = base.get_edge(boundary.get_site().get_half_edge())
    legal = second if facet.is_legal(second) else first
    return sign(m_delta(facet, base.get_vertex(legal)))


def boundary_token(boundary: BoundaryStratumRef, reference=None) -> OrientationToken:
    """(OrientationToken) Returns the orientation a cell induces on one of its NS facets

    Parameters:
        boundary (BoundaryStratumRef): An NS boundary-edge facet
        reference (hashable): Reference of the token, the facet's invariant key if None
    """
    if reference is None:
        reference = invariant_key(encode_rh(boundary.get_degenerate()))
    value = rh_sign(boundary.get_rh()) * _facet_record(boundary).get_net()
    if boundary.get_type() == AI:
        value *= _bubble_sign(boundary)
    return OrientationToken(reference, value)


def pi_pair_sign(bi_boundary: BoundaryStratumRef, ai_boundary: BoundaryStratumRef) -> int:
    """(int) Compares the orientations two PI-paired cells induce on their common facet

    Both induced orientations are expressed as tokens over the BI facet, the
    AI side being transported through point insertion: the per-component
    canonical orientations correspond, so only the (r, h)-graph signs, the
    restriction signs and the bubble's m^delta remain.

    Raises:
        OrientationError: if the boundaries are not paired by pi_forward
    """
    if bi_boundary.get_type() != BI or ai_boundary.get_type() != AI:
        raise OrientationError("pi_pair_sign needs a BI boundary and an AI boundary")
    _, image = pi_forward(bi_boundary)
    if are_rh_isomorphic(image.get_degenerate(), ai_boundary.get_degenerate()) is None:
        raise OrientationError("The boundaries are not paired by point insertion")
    if are_rh_isomorphic(image.get_rh(), ai_boundary.get_rh()) is None:
        raise OrientationError("The AI boundary does not belong to the point insertion image cell")

    reference = invariant_key(encode_rh(bi_boundary.get_degenerate()))
    before = boundary_token(bi_boundary, reference)
    after = boundary_token(ai_boundary, reference)
    result = before.relative_to(after)
    logger.debug("PI pair sign %+d (|E| %d -> %d)", result, bi_boundary.get_rh().get_num_dashed(),
                 ai_boundary.get_rh().get_num_dashed())
    return result
